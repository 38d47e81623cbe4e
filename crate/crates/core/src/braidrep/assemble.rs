use super::{
    ab2_params, block_identity_residual, eigen_data, lm, synth_block_seeded, BlockMethod, BraidError, QMatrix,
    SynthBlock,
};
use crate::bratteli::{blocks_of, paths, Block, Path};
use crate::dims::is_admissible;
use crate::lattice::{LevelRule, Weight};
use crate::qarith::{QContext, QValue};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            _ => Err(format!("unknown mode {s:?} (expected exact or float)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssembleOptions {
    pub mode: Mode,
    pub max_n: usize,
    pub seed: u64,
    pub tol: f64,
    pub starts: usize,
}

impl Default for AssembleOptions {
    fn default() -> Self {
        AssembleOptions { mode: Mode::Float, max_n: 5, seed: 0, tol: 1e-9, starts: 16 }
    }
}

/// One generator S_i as a list of blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct BraidMatrix {
    pub n: usize,
    pub i: usize,
    pub mu: Weight,
    pub rule: LevelRule,
    pub blocks: Vec<(Block, SynthBlock)>,
    /// diagonal gauge g with S = G·(blocks)·G⁻¹; `None` when already folded in
    pub gauge: Option<Vec<Complex64>>,
}

impl BraidMatrix {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|(b, _)| b.size()).sum()
    }

    /// Dense complex matrix in the path basis.
    pub fn dense(&self) -> Option<DMatrix<Complex64>> {
        let n = self.dim();
        let mut s = DMatrix::zeros(n, n);
        for (b, sb) in &self.blocks {
            let a = sb.matrix.to_complex()?;
            for (u, &pu) in b.paths.iter().enumerate() {
                for (r, &pr) in b.paths.iter().enumerate() {
                    let g = self.gauge.as_ref().map_or(Complex64::new(1.0, 0.0), |g| g[pu] / g[pr]);
                    s[(pu, pr)] = a[(u, r)] * g;
                }
            }
        }
        Some(s)
    }

    /// Dense matrix with exact entries, available when no gauge is pending.
    pub fn dense_exact(&self, ctx: &QContext) -> Option<QMatrix> {
        if self.gauge.is_some() || !self.blocks.iter().all(|(_, sb)| sb.matrix.is_exact()) {
            return None;
        }
        let mut m = QMatrix::from_fn(self.dim(), |_, _| ctx.zero());
        for (b, sb) in &self.blocks {
            for (u, &pu) in b.paths.iter().enumerate() {
                for (r, &pr) in b.paths.iter().enumerate() {
                    m.set(pu, pr, sb.matrix.get(u, r).clone());
                }
            }
        }
        Some(m)
    }
}

/// S₁ … S_{n−1} on Hom(V_μ, V^⊗n).
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub mu: Weight,
    pub n: usize,
    pub rule: LevelRule,
    pub ctx: QContext,
    pub mode: Mode,
    pub paths: Vec<Path>,
    pub generators: Vec<BraidMatrix>,
    /// final residual of each gauge solve (0 for S₁ and exact generators)
    pub gauge_residuals: Vec<f64>,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn dense(&self) -> Vec<DMatrix<Complex64>> {
        self.generators.iter().map(|g| g.dense().expect("numeric context")).collect()
    }

    /// True when every generator is held with exact entries and no gauge.
    pub fn is_exact(&self) -> bool {
        self.generators.iter().all(|g| g.dense_exact(&self.ctx).is_some())
    }
}

type BlockKey = (Weight, Weight);

struct Entry {
    row: usize,
    col: usize,
    block: usize,
    u: usize,
    r: usize,
}

/// Generator template: block matrices plus the scatter pattern into the path basis.
struct Template {
    blocks: Vec<Block>,
    keys: Vec<BlockKey>,
    entries: Vec<Entry>,
}

impl Template {
    fn new(blocks: Vec<Block>) -> Self {
        let mut entries = Vec::new();
        for (bi, b) in blocks.iter().enumerate() {
            for (u, &pu) in b.paths.iter().enumerate() {
                for (r, &pr) in b.paths.iter().enumerate() {
                    entries.push(Entry { row: pu, col: pr, block: bi, u, r });
                }
            }
        }
        let keys = blocks.iter().map(|b| (b.lambda, b.nu)).collect();
        Template { blocks, keys, entries }
    }
}

pub fn assemble(
    mu: &Weight,
    n: usize,
    rule: LevelRule,
    ctx: &QContext,
    opts: &AssembleOptions,
) -> Result<Representation, BraidError> {
    if n > opts.max_n {
        return Err(BraidError::TooLarge { n, max: opts.max_n });
    }
    eigen_data(ctx)?;
    if !is_admissible(rule, ctx) {
        return Err(BraidError::InadmissibleQ(format!("{ctx:?} for level {rule}")));
    }
    if opts.mode == Mode::Float && ctx.q_complex().is_none() {
        return Err(BraidError::NeedsNumericQ("float-mode assembly".into()));
    }
    let ps = paths(mu, n, rule)?;
    let mut synth: HashMap<BlockKey, SynthBlock> = HashMap::new();
    let mut generators: Vec<BraidMatrix> = Vec::new();
    let mut residuals = Vec::new();
    let mut dense_prev: Vec<DMatrix<Complex64>> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for i in 1..n {
        let bs = blocks_of(&ps, i, rule)?;
        for b in &bs {
            let key = (b.lambda, b.nu);
            if let std::collections::hash_map::Entry::Vacant(e) = synth.entry(key) {
                let p = ab2_params(&b.lambda, &b.nu, &b.intermediates, rule, ctx)?;
                e.insert(synth_block_seeded(b, &p, ctx, opts.seed)?);
            }
        }
        let tpl = Template::new(bs);
        let raw: Vec<SynthBlock> = tpl.keys.iter().map(|k| synth[k].clone()).collect();
        let mut gm = BraidMatrix {
            n,
            i,
            mu: *mu,
            rule,
            blocks: tpl.blocks.iter().cloned().zip(raw.iter().cloned()).collect(),
            gauge: None,
        };
        if i == 1 || (opts.mode == Mode::Exact && exact_relations_hold(&gm, &generators, ctx)) {
            if opts.mode == Mode::Float {
                gm = to_float(gm);
            }
            // formal generators have no complex image; only exact checks apply to them
            dense_prev.push(gm.dense().unwrap_or_else(|| DMatrix::zeros(0, 0)));
            generators.push(gm);
            residuals.push(0.0);
            continue;
        }
        let (s, gauge, corr, res) = gauge_solve(&tpl, &raw, &dense_prev, ps.len(), ctx, opts, &mut rng, i, rule)?;
        for (bi, (_, sb)) in gm.blocks.iter_mut().enumerate() {
            if let Some(c) = corr.get(&tpl.keys[bi]) {
                let a = sb.matrix.to_complex().unwrap() + c;
                sb.matrix = QMatrix::from_complex(&a);
                sb.residual = res;
            }
        }
        match opts.mode {
            Mode::Float => {
                for (b, sb) in gm.blocks.iter_mut() {
                    sb.matrix = QMatrix::from_complex(&DMatrix::from_fn(b.size(), b.size(), |u, r| {
                        s[(b.paths[u], b.paths[r])]
                    }));
                }
            }
            Mode::Exact => gm.gauge = Some(gauge),
        }
        dense_prev.push(s);
        generators.push(gm);
        residuals.push(res);
    }
    Ok(Representation {
        mu: *mu,
        n,
        rule,
        ctx: *ctx,
        mode: opts.mode,
        paths: ps,
        generators,
        gauge_residuals: residuals,
    })
}

fn to_float(mut g: BraidMatrix) -> BraidMatrix {
    for (_, sb) in g.blocks.iter_mut() {
        if let Some(m) = sb.matrix.to_complex() {
            sb.matrix = QMatrix::from_complex(&m);
        }
    }
    g
}

/// Exact check that `g` braids with the previous generator and commutes with the rest.
fn exact_relations_hold(g: &BraidMatrix, prev: &[BraidMatrix], ctx: &QContext) -> bool {
    let Some(s) = g.dense_exact(ctx) else { return false };
    for (j, p) in prev.iter().enumerate() {
        let Some(t) = p.dense_exact(ctx) else { return false };
        let ok = if j + 2 == g.i {
            let l = t.try_mul(&s).and_then(|x| x.try_mul(&t));
            let r = s.try_mul(&t).and_then(|x| x.try_mul(&s));
            matches!((l, r), (Ok(l), Ok(r)) if l.try_sub(&r).map_or(false, |d| d.is_zero_tol(0.0)))
        } else {
            let l = t.try_mul(&s);
            let r = s.try_mul(&t);
            matches!((l, r), (Ok(l), Ok(r)) if l.try_sub(&r).map_or(false, |d| d.is_zero_tol(0.0)))
        };
        if !ok {
            return false;
        }
    }
    true
}

type GaugeOut = (DMatrix<Complex64>, Vec<Complex64>, HashMap<BlockKey, DMatrix<Complex64>>, f64);

struct Corrected {
    key: BlockKey,
    k: usize,
    base: DMatrix<Complex64>,
    x: Vec<Complex64>,
    delta: Complex64,
    distinct: Vec<Complex64>,
}

#[allow(clippy::too_many_arguments)]
fn gauge_solve(
    tpl: &Template,
    raw: &[SynthBlock],
    prev: &[DMatrix<Complex64>],
    np: usize,
    ctx: &QContext,
    opts: &AssembleOptions,
    rng: &mut ChaCha8Rng,
    i: usize,
    rule: LevelRule,
) -> Result<GaugeOut, BraidError> {
    if ctx.q_complex().is_none() {
        return Err(BraidError::NeedsNumericQ(format!("gauge solve for generator {i}")));
    }
    let ed = eigen_data(ctx)?;
    let base: Vec<DMatrix<Complex64>> = raw.iter().map(|sb| sb.matrix.to_complex().expect("numeric block")).collect();
    // numerically solved blocks get additive corrections, shared per (λ, ν)
    let mut corrected: Vec<Corrected> = Vec::new();
    let mut corr_index: BTreeMap<BlockKey, usize> = BTreeMap::new();
    for (bi, key) in tpl.keys.iter().enumerate() {
        if raw[bi].method != BlockMethod::FourEigSolver || corr_index.contains_key(key) {
            continue;
        }
        let b = &tpl.blocks[bi];
        let p = ab2_params(&b.lambda, &b.nu, &b.intermediates, rule, ctx)?;
        corr_index.insert(*key, corrected.len());
        corrected.push(Corrected {
            key: *key,
            k: b.size(),
            base: base[bi].clone(),
            x: p.x.iter().map(|v| v.to_complex().unwrap()).collect(),
            delta: p.delta.to_complex().unwrap(),
            distinct: b.eigen.keys().map(|l| ed.value(*l).to_complex().unwrap()).collect(),
        });
    }
    let nc: usize = corrected.iter().map(|c| c.k * c.k).sum();
    let block_corr: Vec<Option<usize>> = tpl.keys.iter().map(|k| corr_index.get(k).copied()).collect();
    let offsets: Vec<usize> = corrected
        .iter()
        .scan(np, |o, c| {
            let cur = *o;
            *o += c.k * c.k;
            Some(cur)
        })
        .collect();

    let build = |v: &[Complex64]| -> DMatrix<Complex64> {
        let mut s = DMatrix::zeros(np, np);
        for e in &tpl.entries {
            let mut a = base[e.block][(e.u, e.r)];
            if let Some(ci) = block_corr[e.block] {
                a += v[offsets[ci] + e.u * corrected[ci].k + e.r];
            }
            s[(e.row, e.col)] = a * (v[e.row] - v[e.col]).exp();
        }
        s
    };
    let sp = &prev[i - 2];
    let residual = |v: &[Complex64]| -> Vec<Complex64> {
        let s = build(v);
        let mut out: Vec<Complex64> = Vec::new();
        let l = sp * &s * sp;
        let r = &s * sp * &s;
        out.extend((l - r).iter());
        for far in &prev[..i - 2] {
            out.extend((far * &s - &s * far).iter());
        }
        for (ci, c) in corrected.iter().enumerate() {
            let a = DMatrix::from_fn(c.k, c.k, |u, r| c.base[(u, r)] + v[offsets[ci] + u * c.k + r]);
            out.extend(block_identity_residual(&a, &c.x, c.delta, &c.distinct));
        }
        out.push(v[0]);
        out
    };
    let mut best: Option<lm::LmResult> = None;
    for _ in 0..opts.starts.max(1) {
        let mut x0 = vec![Complex64::new(0.0, 0.0); np + nc];
        for z in x0.iter_mut().take(np) {
            *z = Complex64::new(0.0, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI));
        }
        x0[0] = Complex64::new(0.0, 0.0);
        let res = lm::solve(&residual, x0, 200, 1e-13);
        if best.as_ref().map_or(true, |b| res.residual < b.residual) {
            best = Some(res);
        }
        if best.as_ref().unwrap().residual < 1e-12 {
            break;
        }
    }
    let best = best.unwrap();
    if best.residual > opts.tol {
        return Err(BraidError::GaugeSolverFailed { generator: i, residual: best.residual });
    }
    let v = &best.x;
    let s = build(v);
    let gauge = v[..np].iter().map(|z| z.exp()).collect();
    let mut corr = HashMap::new();
    for (ci, c) in corrected.iter().enumerate() {
        corr.insert(c.key, DMatrix::from_fn(c.k, c.k, |u, r| v[offsets[ci] + u * c.k + r]));
    }
    Ok((s, gauge, corr, best.residual))
}

fn cjson(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// JSON bundle: path basis, per-generator blocks with entries and method tags.
pub fn bundle(rep: &Representation) -> Value {
    let gens: Vec<Value> = rep
        .generators
        .iter()
        .map(|g| {
            let blocks: Vec<Value> = g
                .blocks
                .iter()
                .map(|(b, sb)| {
                    let entries = sb.matrix.to_complex().map(|m| {
                        (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| cjson(m[(r, c)])).collect::<Vec<_>>()).collect::<Vec<_>>()
                    });
                    let exact = sb.matrix.is_exact().then(|| {
                        sb.matrix.rows().iter().map(|row| row.iter().map(QValue::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()
                    });
                    json!({
                        "lambda": b.lambda,
                        "nu": b.nu,
                        "intermediates": b.intermediates,
                        "paths": b.paths,
                        "method": sb.method,
                        "limit": sb.limit,
                        "entries": entries,
                        "exact": exact,
                    })
                })
                .collect();
            json!({
                "i": g.i,
                "blocks": blocks,
                "gauge": g.gauge.as_ref().map(|v| v.iter().map(|z| cjson(*z)).collect::<Vec<_>>()),
            })
        })
        .collect();
    json!({
        "mu": rep.mu,
        "n": rep.n,
        "rule": rep.rule,
        "q": rep.ctx,
        "mode": rep.mode,
        "paths": rep.paths.iter().map(|p| &p.weights).collect::<Vec<_>>(),
        "generators": gens,
        "gauge_residuals": rep.gauge_residuals,
        "exact_assembly": rep.is_exact(),
    })
}
