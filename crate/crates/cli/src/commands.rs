use crate::{Check, Cli, Cmd, Format, QSpec, Table};
use g2core::braidrep::{assemble, bundle, AssembleOptions, BraidError, Mode};
use g2core::bratteli::{build_diagram, export, BratteliError};
use g2core::catalog::{
    b3_conditions, b3_semisimple, classify_w, degeneracy_report, expand, g2_eigenvalues, generic_table,
    subquotient_table, w_cases_closed, CatalogError,
};
use g2core::dims::{classical_dim, is_admissible, qdim, qdim_laurent};
use g2core::fusion::{alcove_weights, mul_basis, FusionError};
use g2core::lattice::{LevelRule, Weight};
use g2core::qarith::{QContext, QError};
use g2core::verify::{
    check_burnside, check_distinctness, check_lemma459, check_recent_predicates, check_tl_obstruction, report,
    verify_representation, Verdict, VerifyError,
};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Solver(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Solver(_) => 3,
        }
    }
}

impl From<FusionError> for CliError {
    fn from(e: FusionError) -> Self {
        match e {
            FusionError::NegativeMultiplicity(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<BratteliError> for CliError {
    fn from(e: BratteliError) -> Self {
        match e {
            BratteliError::Fusion(f) => f.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<QError> for CliError {
    fn from(e: QError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<BraidError> for CliError {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::SolverFailed { .. } | BraidError::GaugeSolverFailed { .. } => CliError::Solver(e.to_string()),
            BraidError::ConditionsViolated { .. } => CliError::Solver(e.to_string()),
            BraidError::InadmissibleQ(_) | BraidError::TooLarge { .. } | BraidError::NeedsNumericQ(_) => {
                CliError::Usage(e.to_string())
            }
            BraidError::Fusion(f) => f.into(),
            BraidError::Bratteli(b) => b.into(),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Precondition(s) => CliError::Usage(s),
            VerifyError::Braid(b) => b.into(),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::ZeroEigenvalue(_) | CatalogError::NotDistinct(..) => CliError::Usage(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

/// Rendered output and whether every verdict in it passed.
pub struct Output {
    pub text: String,
    pub pass: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, pass: true }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn format_of(cli: &Cli, allowed: &[Format]) -> Result<Format, CliError> {
    let f = cli.format.unwrap_or(Format::Json);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("format {f:?} is not available for this command").to_lowercase()))
    }
}

/// The q-spec in force: the explicit one, else ζ_{2(k+12)} at level k, else
/// the indeterminate (or 1.1 when a numerical value is needed).
fn resolve_q(level: LevelRule, q: Option<QSpec>, numeric: bool) -> Result<QSpec, CliError> {
    let spec = default_q(level, q, numeric)?;
    if !is_admissible(level, &spec.context()) {
        return Err(CliError::Usage(format!("q = {spec} is not admissible at level {level}")));
    }
    Ok(spec)
}

fn default_q(level: LevelRule, q: Option<QSpec>, numeric: bool) -> Result<QSpec, CliError> {
    let spec = match (q, level) {
        (Some(s), _) => s,
        (None, LevelRule::Level(k)) => QSpec::Root { m: 2 * (k + 12) as u64, e: 1 },
        (None, LevelRule::Generic) if numeric => QSpec::Float(num_complex::Complex64::new(1.1, 0.0)),
        (None, LevelRule::Generic) => QSpec::Generic,
    };
    if numeric && spec == QSpec::Generic {
        return Err(CliError::Usage("this command needs a root or float value of q".into()));
    }
    Ok(spec)
}

/// Exact entries by default when q is a root of unity.
fn mode_for(cli: &Cli, spec: &QSpec) -> Mode {
    cli.mode.unwrap_or(match spec {
        QSpec::Root { .. } => Mode::Exact,
        _ => Mode::Float,
    })
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Exact => "exact",
        Mode::Float => "float",
    }
}

fn assemble_opts(cli: &Cli, mode: Mode) -> AssembleOptions {
    AssembleOptions { mode, max_n: cli.max_n, seed: cli.seed, tol: cli.tol, ..AssembleOptions::default() }
}

fn verdict_text(vs: &[Verdict]) -> String {
    let mut s = String::new();
    for v in vs {
        let res = v.residual.map(|r| format!(" residual {r:.3e}")).unwrap_or_default();
        let _ = writeln!(s, "{} {}{}", if v.pass { "PASS" } else { "FAIL" }, v.check, res);
    }
    s
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    if !(cli.tol > 0.0) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    match &cli.cmd {
        Cmd::Fuse { a, b } => fuse(cli, a, b),
        Cmd::Synth { mu, n } => synth(cli, mu, *n),
        Cmd::Bratteli { n } => bratteli(cli, *n),
        Cmd::Dims { mu } => dims(cli, mu),
        Cmd::Catalog { table } => catalog(cli, *table),
        Cmd::Verify { check, ell, mu, n, max_size, rank_tol } => {
            verify(cli, *check, *ell, mu, *n, *max_size, *rank_tol)
        }
    }
}

fn fuse(cli: &Cli, a: &Weight, b: &Weight) -> Result<Output, CliError> {
    let f = format_of(cli, &[Format::Json, Format::Text])?;
    let v = mul_basis(a, b, cli.level)?;
    Ok(Output::ok(match f {
        Format::Text => format!("{v}\n"),
        _ => pretty(&v),
    }))
}

fn synth(cli: &Cli, mu: &Weight, n: usize) -> Result<Output, CliError> {
    let f = format_of(cli, &[Format::Json, Format::Text])?;
    if n > cli.max_n {
        return Err(CliError::Usage(format!("n = {n} exceeds the maximum {} (see --max-n)", cli.max_n)));
    }
    if n < 1 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let spec = resolve_q(cli.level, cli.q, true)?;
    let mode = mode_for(cli, &spec);
    let rep = assemble(mu, n, cli.level, &spec.context(), &assemble_opts(cli, mode))?;
    let verdicts = verify_representation(&rep, cli.tol)?;
    let pass = verdicts.iter().all(|v| v.pass);
    let text = match f {
        Format::Text => {
            let mut s = format!("mu {mu} n {n} level {} q {spec} mode {} dim {}\n", cli.level, mode_name(mode), rep.dim());
            s.push_str(&verdict_text(&verdicts));
            s
        }
        _ => pretty(&json!({
            "config": config_json(cli, &spec, mode),
            "representation": bundle(&rep),
            "verdicts": report(&verdicts),
            "pass": pass,
        })),
    };
    Ok(Output { text, pass })
}

fn config_json(cli: &Cli, spec: &QSpec, mode: Mode) -> Value {
    json!({
        "level": cli.level,
        "q": spec.to_string(),
        "mode": mode,
        "tol": cli.tol,
        "seed": cli.seed,
        "max_n": cli.max_n,
    })
}

fn bratteli(cli: &Cli, n: usize) -> Result<Output, CliError> {
    let f = format_of(cli, &[Format::Json, Format::Dot, Format::Text])?;
    let d = build_diagram(n, cli.level)?;
    let text = match f {
        Format::Json => {
            let mut s = export(&d, "json")?;
            s.push('\n');
            s
        }
        Format::Dot => export(&d, "dot")?,
        Format::Text => {
            let mut s = String::new();
            for (i, level) in d.levels.iter().enumerate() {
                let cells: Vec<String> = level.iter().map(|e| format!("{}x{}", e.weight, e.multiplicity)).collect();
                let _ = writeln!(s, "{i}: {}", cells.join(" "));
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn dims(cli: &Cli, mu: &Weight) -> Result<Output, CliError> {
    let f = format_of(cli, &[Format::Json, Format::Text])?;
    let spec = resolve_q(cli.level, cli.q, false)?;
    let ctx = spec.context();
    let value = match ctx {
        QContext::Formal => qdim_laurent(mu).to_string(),
        _ => qdim(mu, &ctx).to_string(),
    };
    let approx = qdim(mu, &ctx).to_complex();
    let text = match f {
        Format::Text => format!("{value}\n"),
        _ => pretty(&json!({
            "weight": mu,
            "q": spec.to_string(),
            "qdim": value,
            "approx": approx.map(|z| [z.re, z.im]),
            "classical": classical_dim(mu),
        })),
    };
    Ok(Output::ok(text))
}

fn catalog(cli: &Cli, table: Table) -> Result<Output, CliError> {
    format_of(cli, &[Format::Json])?;
    let mut out = serde_json::Map::new();
    let want = |t: Table| table == Table::All || table == t;
    if want(Table::Generic) {
        out.insert("generic".into(), json!(expand(&generic_table())));
    }
    if want(Table::Subquotient) {
        out.insert("subquotient".into(), json!(expand(&subquotient_table())));
    }
    if want(Table::W) {
        out.insert("w_cases".into(), json!(w_cases_closed()));
    }
    if want(Table::B3) {
        out.insert("b3_conditions".into(), json!(b3_conditions()));
    }
    if cli.q.is_some() {
        // any nonzero q will do here; the eigenvalues need not come from an admissible level
        let spec = default_q(cli.level, cli.q, false)?;
        let ctx = spec.context();
        let lam = g2_eigenvalues(&ctx.q_pow(1))?;
        let mut at = serde_json::Map::new();
        at.insert("q".into(), json!(spec.to_string()));
        at.insert("eigenvalues".into(), json!(lam.iter().map(ToString::to_string).collect::<Vec<_>>()));
        if want(Table::W) {
            at.insert("w".into(), json!(classify_w(&lam)?));
        }
        if want(Table::B3) {
            at.insert("b3".into(), json!(b3_semisimple(&lam)?));
        }
        if want(Table::Generic) || want(Table::Subquotient) {
            at.insert("degeneracy".into(), json!(degeneracy_report(&lam)?));
        }
        out.insert("at_q".into(), Value::Object(at));
    }
    Ok(Output::ok(pretty(&out)))
}

fn verify(
    cli: &Cli,
    check: Check,
    ell: Option<i64>,
    mu: &Weight,
    n: usize,
    max_size: i64,
    rank_tol: f64,
) -> Result<Output, CliError> {
    let f = format_of(cli, &[Format::Json, Format::Text])?;
    let need_ell = || ell.ok_or_else(|| CliError::Usage(format!("{check:?} needs --ell").to_lowercase()));
    let verdicts = match check {
        Check::Lemma459 => {
            let e = need_ell()?;
            if e < 1 {
                return Err(CliError::Usage("--ell must be positive".into()));
            }
            vec![check_lemma459(e as u64)?]
        }
        Check::TlObstruction => vec![check_tl_obstruction(need_ell()?, cli.level)?],
        Check::Recent => vec![check_recent_predicates(cli.level)?],
        Check::Distinctness => {
            let ws = match cli.level {
                LevelRule::Level(k) => alcove_weights(k),
                LevelRule::Generic => Weight::up_to_size(max_size),
            };
            let mut vs = Vec::with_capacity(ws.len());
            for w in &ws {
                let mut v = check_distinctness(w, cli.level)?;
                v.check = format!("{} {w}", v.check);
                vs.push(v);
            }
            vs
        }
        Check::Rep => {
            if n > cli.max_n {
                return Err(CliError::Usage(format!("n = {n} exceeds the maximum {} (see --max-n)", cli.max_n)));
            }
            let spec = resolve_q(cli.level, cli.q, true)?;
            let rep = assemble(mu, n, cli.level, &spec.context(), &assemble_opts(cli, mode_for(cli, &spec)))?;
            let mut vs = verify_representation(&rep, cli.tol)?;
            vs.push(check_burnside(&rep, rank_tol));
            vs
        }
    };
    let pass = verdicts.iter().all(|v| v.pass);
    let text = match f {
        Format::Text => verdict_text(&verdicts),
        _ => pretty(&report(&verdicts)),
    };
    Ok(Output { text, pass })
}
