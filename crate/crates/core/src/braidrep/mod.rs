//! Braid generators S_i on Hom(V_μ, V^⊗n) in the path basis.
//!
//! Each S_i is block diagonal, one block per (μ⁽ⁱ⁻¹⁾, μ⁽ⁱ⁺¹⁾). Blocks with at
//! most three distinct eigenvalues and a rank-one λ₃ part have closed forms;
//! the rest are found numerically. A diagonal gauge per generator is then
//! solved for so that adjacent generators satisfy the braid relation.

mod assemble;
pub mod lm;
mod qmat;
mod tl;

pub use assemble::{assemble, bundle, AssembleOptions, Mode, Representation};
pub use qmat::{max_abs, QMatrix};
pub use tl::{markov_check, spectral_projection, tl_elements, MarkovReport, TlReport};

use crate::bratteli::{eigen_multiset, Block, BratteliError, EigenLabel};
use crate::dims;
use crate::fusion::FusionError;
use crate::lattice::{casimir, LevelRule, Weight};
use crate::qarith::{QContext, QError, QValue, DEFAULT_TOL};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Casimir of V.
pub const C_V: i64 = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BraidError {
    #[error("inadmissible q: {0}")]
    InadmissibleQ(String),
    #[error("closed-form conditions fail for block {lambda} -> {nu}: {failed:?}")]
    ConditionsViolated { lambda: Weight, nu: Weight, failed: Vec<String> },
    #[error("eigenvalue solver failed for block {lambda} -> {nu} (residual {residual:.3e})")]
    SolverFailed { lambda: Weight, nu: Weight, residual: f64 },
    #[error("gauge solve failed at generator {generator} (residual {residual:.3e})")]
    GaugeSolverFailed { generator: usize, residual: f64 },
    #[error("Temperley-Lieb relation fails: {0}")]
    TLViolation(String),
    #[error("n = {n} exceeds the maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("{0} needs a numerical value of q")]
    NeedsNumericQ(String),
    #[error("block {lambda} -> {nu} is inconsistent: {what}")]
    Inconsistent { lambda: Weight, nu: Weight, what: String },
    #[error(transparent)]
    Q(#[from] QError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Bratteli(#[from] BratteliError),
}

/// Eigenvalues of the braiding on V⊗V and the twist of V.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenData {
    pub l1: QValue,
    pub l2: QValue,
    pub l3: QValue,
    pub l4: QValue,
    pub theta_v: QValue,
}

impl EigenData {
    pub fn value(&self, l: EigenLabel) -> &QValue {
        match l {
            EigenLabel::L1 => &self.l1,
            EigenLabel::L2 => &self.l2,
            EigenLabel::L3 => &self.l3,
            EigenLabel::L4 => &self.l4,
        }
    }
}

fn q_squared_is_one(ctx: &QContext) -> bool {
    match *ctx {
        QContext::Formal => false,
        QContext::Cyclo { m, e } => (2 * e) % m == 0,
        QContext::Float { re, im } => {
            let q = Complex64::new(re, im);
            (q * q - 1.0).norm() <= DEFAULT_TOL
        }
    }
}

pub fn eigen_data(ctx: &QContext) -> Result<EigenData, BraidError> {
    if let Some(q) = ctx.q_complex() {
        if q.norm() == 0.0 {
            return Err(BraidError::InadmissibleQ("q = 0".into()));
        }
    }
    if q_squared_is_one(ctx) {
        return Err(BraidError::InadmissibleQ("q^2 = 1 gives a symmetric braiding".into()));
    }
    let ed = EigenData {
        l1: ctx.q_pow(2),
        l2: -ctx.one(),
        l3: -ctx.q_pow(-6),
        l4: ctx.q_pow(-12),
        theta_v: ctx.q_pow(C_V),
    };
    let chain = [
        ("l3 = -l1^-3", ed.l3.try_add(&ed.l1.powi(-3)?)?),
        ("l4 = l1^-6", ed.l4.try_sub(&ed.l1.powi(-6)?)?),
        ("theta_V = l3^-2", ed.theta_v.try_sub(&ed.l3.powi(-2)?)?),
        ("l4^2 = l3^4", ed.l4.powi(2)?.try_sub(&ed.l3.powi(4)?)?),
    ];
    for (name, v) in chain {
        if !v.is_zero() {
            return Err(BraidError::InadmissibleQ(format!("ribbon relation {name} fails")));
        }
    }
    Ok(ed)
}

/// Θ_μ = q^{C_μ}.
pub fn twist(mu: &Weight, ctx: &QContext) -> QValue {
    ctx.q_pow(casimir(mu))
}

/// Which closed-form preconditions hold for a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ab2Conditions {
    /// x_r pairwise distinct
    pub x_distinct: bool,
    /// δ + λ₁λ₂x_rx_s ≠ 0 for all r, s
    pub delta_fac: bool,
    /// δ ≠ λ_k²x_r² for k = 1, 2 and all r
    pub delta_square: bool,
}

impl Ab2Conditions {
    pub fn all(&self) -> bool {
        self.x_distinct && self.delta_fac && self.delta_square
    }

    pub fn failed(&self) -> Vec<String> {
        let mut v = Vec::new();
        if !self.x_distinct {
            v.push("x_distinct".to_string());
        }
        if !self.delta_fac {
            v.push("delta_plus_l1l2_xx_nonzero".to_string());
        }
        if !self.delta_square {
            v.push("delta_not_lk2_x2".to_string());
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AB2Params {
    pub lambda: Weight,
    pub nu: Weight,
    pub intermediates: Vec<Weight>,
    /// δ = q^{delta_exp}
    pub delta_exp: i64,
    /// x_r = q^{x_exp[r]}
    pub x_exp: Vec<i64>,
    pub delta: QValue,
    pub x: Vec<QValue>,
    pub eigen: BTreeMap<EigenLabel, usize>,
    pub conditions: Ab2Conditions,
}

impl AB2Params {
    /// `Err(ConditionsViolated)` unless every precondition holds.
    pub fn require(&self) -> Result<(), BraidError> {
        if self.conditions.all() {
            Ok(())
        } else {
            Err(BraidError::ConditionsViolated { lambda: self.lambda, nu: self.nu, failed: self.conditions.failed() })
        }
    }
}

pub fn ab2_params(
    lambda: &Weight,
    nu: &Weight,
    intermediates: &[Weight],
    rule: LevelRule,
    ctx: &QContext,
) -> Result<AB2Params, BraidError> {
    let ed = eigen_data(ctx)?;
    let eigen = eigen_multiset(lambda, nu, rule)?;
    let delta_exp = casimir(nu) - casimir(lambda) - 2 * C_V;
    let x_exp: Vec<i64> = intermediates.iter().map(|m| casimir(m) - casimir(lambda) - C_V).collect();
    let delta = ctx.q_pow(delta_exp);
    let x: Vec<QValue> = x_exp.iter().map(|e| ctx.q_pow(*e)).collect();
    let l12 = &ed.l1 * &ed.l2;
    let mut c = Ab2Conditions { x_distinct: true, delta_fac: true, delta_square: true };
    for r in 0..x.len() {
        for s in 0..x.len() {
            if r != s && x[r].approx_eq(&x[s], DEFAULT_TOL) {
                c.x_distinct = false;
            }
            if (&delta + &(&l12 * &(&x[r] * &x[s]))).is_zero() {
                c.delta_fac = false;
            }
        }
        for lk in [&ed.l1, &ed.l2] {
            let v = lk * lk * &x[r] * &x[r];
            if delta.approx_eq(&v, DEFAULT_TOL) {
                c.delta_square = false;
            }
        }
    }
    Ok(AB2Params {
        lambda: *lambda,
        nu: *nu,
        intermediates: intermediates.to_vec(),
        delta_exp,
        x_exp,
        delta,
        x,
        eigen,
        conditions: c,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockMethod {
    Diagonal,
    TwoEig,
    Ab2ClosedForm,
    FourEigSolver,
}

/// One synthesized block of a generator.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthBlock {
    pub method: BlockMethod,
    pub matrix: QMatrix,
    /// closed form evaluated as a limit through the formal context
    pub limit: bool,
    /// solver residual (0 for closed forms)
    pub residual: f64,
}

/// Diagonal of the λ_b-eigenprojection of a 2×2 block with eigenvalues (la, lb).
pub fn two_eig_diagonals(x: &[QValue], la: &QValue, lb: &QValue) -> Result<[QValue; 2], QError> {
    let (xr, xs) = (&x[0], &x[1]);
    let den = xr.try_sub(xs)?.try_mul(&lb.try_sub(la)?)?;
    let dr = -(lb * xs + la * xr).try_div(&den)?;
    let ds = (lb * xr + la * xs).try_div(&den)?;
    Ok([dr, ds])
}

fn two_eig_block(x: &[QValue], la: &QValue, lb: &QValue, ctx: &QContext) -> Result<QMatrix, QError> {
    let [dr, ds] = two_eig_diagonals(x, la, lb)?;
    let d = [dr, ds];
    let c = lb - la;
    Ok(QMatrix::from_fn(2, |r, s| {
        let base = if r == s { la.clone() } else { ctx.zero() };
        &base + &(&c * &d[r])
    }))
}

/// Diagonal of the rank-one λ₃-eigenprojection for a block with eigenvalues
/// λ₁, λ₂ (any multiplicity) and λ₃ (multiplicity one).
pub fn ab2_diagonals(x: &[QValue], delta: &QValue, ed: &EigenData) -> Result<Vec<QValue>, QError> {
    let n = x.len();
    let (l1, l2, l3) = (&ed.l1, &ed.l2, &ed.l3);
    let l12 = l1 * l2;
    let eps = if n % 2 == 1 { 0 } else { 1 };
    let px = x.iter().skip(1).fold(x[0].clone(), |a, b| &a * b);
    let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
    let base = (-delta).try_div(&l12)?.powi(((n - 1 - eps) / 2) as i64)?;
    let pre = l3.try_div(&l3.try_sub(l1)?.try_mul(&l3.try_sub(l2)?)?)?;
    let mut out = Vec::with_capacity(n);
    for r in 0..n {
        let mut pr = x[0].one_like();
        for t in 0..n {
            if t != r {
                let num = delta + &(&l12 * &(&x[r] * &x[t]));
                let den = delta.try_mul(&x[r].try_sub(&x[t])?)?;
                pr = pr.try_mul(&num.try_div(&den)?)?;
            }
        }
        let inner = (&l12 * &x[r]).try_add(&delta.try_div(&x[r])?)?;
        let mut br = l3.try_mul(&inner)?.try_div(delta)?.try_mul(&px)?;
        if sign < 0 {
            br = -br;
        }
        let tail = (l1 + l2).try_mul(&base)?.try_mul(&x[r].powi(eps as i64)?)?;
        br = br.try_sub(&tail)?;
        out.push(pre.try_mul(&pr)?.try_mul(&br)?);
    }
    Ok(out)
}

fn ab2_block(x: &[QValue], delta: &QValue, ed: &EigenData) -> Result<QMatrix, QError> {
    let d = ab2_diagonals(x, delta, ed)?;
    let (l1, l2, l3) = (&ed.l1, &ed.l2, &ed.l3);
    let l12 = l1 * l2;
    let c3 = l3.try_sub(l1)?.try_mul(&l3.try_sub(l2)?)?.try_div(l3)?;
    let n = x.len();
    let mut out = Vec::with_capacity(n * n);
    for r in 0..n {
        for s in 0..n {
            // row gauge P_rs = d_r; A from δ(A)_rs(δ + λ₁λ₂x_rx_s)⁻¹ form
            let mut num = c3.try_mul(&d[r])?;
            if r == s {
                num = num.try_add(&(l1 + l2))?;
            }
            let fac = delta + &(&l12 * &(&x[r] * &x[s]));
            out.push(delta.try_mul(&num)?.try_div(&fac)?);
        }
    }
    let mut it = out.into_iter();
    Ok(QMatrix::from_fn(n, |_, _| it.next().unwrap()))
}

fn eigen_list(eigen: &BTreeMap<EigenLabel, usize>) -> Vec<EigenLabel> {
    eigen.iter().flat_map(|(l, m)| std::iter::repeat(*l).take(*m)).collect()
}

/// Synthesize the block matrix of a generator.
pub fn synth_block(block: &Block, params: &AB2Params, ctx: &QContext) -> Result<SynthBlock, BraidError> {
    synth_block_seeded(block, params, ctx, 0)
}

pub fn synth_block_seeded(block: &Block, params: &AB2Params, ctx: &QContext, seed: u64) -> Result<SynthBlock, BraidError> {
    let ed = eigen_data(ctx)?;
    let k = block.size();
    let eig = eigen_list(&block.eigen);
    let (lambda, nu) = (block.lambda, block.nu);
    let inconsistent = |what: &str| BraidError::Inconsistent { lambda, nu, what: what.to_string() };
    if eig.len() != k {
        return Err(inconsistent("eigenvalue multiset does not match the block size"));
    }
    let done = |method, matrix| Ok(SynthBlock { method, matrix, limit: false, residual: 0.0 });
    if k == 1 {
        let v = ed.value(eig[0]).clone();
        let lhs = &(&v * &v) * &(&params.x[0] * &params.x[0]);
        if !lhs.approx_eq(&params.delta, DEFAULT_TOL) {
            return Err(inconsistent("λ²x² ≠ δ"));
        }
        return done(BlockMethod::Diagonal, QMatrix::scalar(1, &v, ctx));
    }
    if block.eigen.len() == 1 {
        return done(BlockMethod::Diagonal, QMatrix::scalar(k, ed.value(eig[0]), ctx));
    }
    if !params.conditions.x_distinct {
        return Err(BraidError::ConditionsViolated { lambda, nu, failed: vec!["x_distinct".into()] });
    }
    if k == 2 {
        let m = two_eig_block(&params.x, ed.value(eig[0]), ed.value(eig[1]), ctx)?;
        return done(BlockMethod::TwoEig, m);
    }
    let m3 = block.eigen.get(&EigenLabel::L3).copied().unwrap_or(0);
    let has4 = block.eigen.contains_key(&EigenLabel::L4);
    if m3 > 1 {
        return Err(BraidError::ConditionsViolated { lambda, nu, failed: vec!["lambda3_multiplicity".into()] });
    }
    if !has4 && m3 == 1 {
        if params.conditions.all() {
            return done(BlockMethod::Ab2ClosedForm, ab2_block(&params.x, &params.delta, &ed)?);
        }
        if *ctx == QContext::Formal {
            return Err(BraidError::ConditionsViolated { lambda, nu, failed: params.conditions.failed() });
        }
        // removable singularity: evaluate formally, then specialize
        let f = QContext::Formal;
        let fed = eigen_data(&f)?;
        let fx: Vec<QValue> = params.x_exp.iter().map(|e| f.q_pow(*e)).collect();
        let fm = ab2_block(&fx, &f.q_pow(params.delta_exp), &fed)?;
        let mut vals = Vec::with_capacity(k * k);
        for r in 0..k {
            for s in 0..k {
                let rf = fm.get(r, s).as_ratfunc().expect("formal entry");
                vals.push(ctx.specialize(rf).map_err(|_| BraidError::ConditionsViolated {
                    lambda,
                    nu,
                    failed: params.conditions.failed(),
                })?);
            }
        }
        let mut it = vals.into_iter();
        let m = QMatrix::from_fn(k, |_, _| it.next().unwrap());
        return Ok(SynthBlock { method: BlockMethod::Ab2ClosedForm, matrix: m, limit: true, residual: 0.0 });
    }
    let (a, residual) = four_eig_solve(block, params, &ed, ctx, seed)?;
    Ok(SynthBlock { method: BlockMethod::FourEigSolver, matrix: QMatrix::from_complex(&a), limit: false, residual })
}

fn cplx(v: &QValue) -> Complex64 {
    v.to_complex().expect("numeric context")
}

/// Residual of a candidate block against the identities every block obeys:
/// the minimal polynomial over its distinct eigenvalues and TATA = δ.
pub fn block_identity_residual(a: &DMatrix<Complex64>, x: &[Complex64], delta: Complex64, distinct: &[Complex64]) -> Vec<Complex64> {
    let k = a.nrows();
    let id = DMatrix::<Complex64>::identity(k, k);
    let mut mp = id.clone();
    for e in distinct {
        mp = mp * (a - &id * *e);
    }
    let t = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(x));
    let tata = &t * a * &t * a - &id * delta;
    mp.iter().chain(tata.iter()).copied().collect()
}

struct FourSetup {
    k: usize,
    x: Vec<Complex64>,
    delta: Complex64,
    l: [Complex64; 4],
    has3: bool,
    has4: bool,
    d4: Vec<Complex64>,
    fac: DMatrix<Complex64>,
    zero: Vec<(usize, usize)>,
    distinct: Vec<Complex64>,
}

impl FourSetup {
    fn nun(&self) -> usize {
        (if self.has3 { 2 * self.k } else { 0 }) + self.zero.len()
    }

    fn c(&self, lk: Complex64) -> Complex64 {
        (lk - self.l[0]) * (lk - self.l[1]) / lk
    }

    #[allow(clippy::type_complexity)]
    fn unpack(&self, v: &[Complex64]) -> (DMatrix<Complex64>, Vec<Complex64>, Vec<Complex64>, DMatrix<Complex64>) {
        let k = self.k;
        let zero = Complex64::new(0.0, 0.0);
        let (a, b, fr) = if self.has3 { (v[..k].to_vec(), v[k..2 * k].to_vec(), &v[2 * k..]) } else { (vec![zero; k], vec![zero; k], v) };
        let (l1, l2) = (self.l[0], self.l[1]);
        let mut r = DMatrix::<Complex64>::identity(k, k) * (l1 + l2);
        let (c3, c4) = (self.c(self.l[2]), self.c(self.l[3]));
        for i in 0..k {
            for j in 0..k {
                r[(i, j)] += c3 * a[i] * b[j];
                if self.has4 {
                    r[(i, j)] += c4 * self.d4[i];
                }
            }
        }
        let mut am = DMatrix::<Complex64>::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                if self.fac[(i, j)].norm() > DEFAULT_TOL {
                    am[(i, j)] = self.delta * r[(i, j)] / self.fac[(i, j)];
                }
            }
        }
        for (t, (i, j)) in self.zero.iter().enumerate() {
            am[(*i, *j)] = fr[t];
        }
        (am, a, b, r)
    }

    fn residual(&self, v: &[Complex64]) -> Vec<Complex64> {
        let k = self.k;
        let (am, a, b, r) = self.unpack(v);
        let mut out = Vec::new();
        let (l3, l4) = (self.l[2], self.l[3]);
        if self.has3 {
            let av = &am * nalgebra::DVector::from_column_slice(&a);
            let bv = nalgebra::RowDVector::from_row_slice(&b) * &am;
            for i in 0..k {
                out.push(av[i] - l3 * a[i]);
            }
            for i in 0..k {
                out.push(bv[i] - l3 * b[i]);
            }
            out.push(a.iter().zip(&b).map(|(x, y)| x * y).sum::<Complex64>() - 1.0);
            if self.has4 {
                out.push(a.iter().sum());
                out.push(b.iter().zip(&self.d4).map(|(x, y)| x * y).sum());
            }
        }
        if self.has4 {
            let p4 = DMatrix::from_fn(k, k, |i, _| self.d4[i]);
            let m = &am * &p4 - &p4 * l4;
            out.extend(m.iter().copied());
        }
        out.extend(block_identity_residual(&am, &self.x, self.delta, &self.distinct));
        for (i, j) in &self.zero {
            out.push(r[(*i, *j)]);
        }
        out
    }
}

fn four_eig_solve(
    block: &Block,
    params: &AB2Params,
    ed: &EigenData,
    ctx: &QContext,
    seed: u64,
) -> Result<(DMatrix<Complex64>, f64), BraidError> {
    if ctx.q_complex().is_none() {
        return Err(BraidError::NeedsNumericQ(format!("block {} -> {}", block.lambda, block.nu)));
    }
    let k = block.size();
    let x: Vec<Complex64> = params.x.iter().map(cplx).collect();
    let delta = cplx(&params.delta);
    let l = [cplx(&ed.l1), cplx(&ed.l2), cplx(&ed.l3), cplx(&ed.l4)];
    let has3 = block.eigen.contains_key(&EigenLabel::L3);
    let has4 = block.eigen.contains_key(&EigenLabel::L4);
    let dl = cplx(&dims::qdim(&block.lambda, ctx)) * cplx(&dims::qdim(&Weight::L1, ctx));
    let d4 = block.intermediates.iter().map(|m| cplx(&dims::qdim(m, ctx)) / dl).collect();
    let fac = DMatrix::from_fn(k, k, |i, j| delta + l[0] * l[1] * x[i] * x[j]);
    let zero = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).filter(|&(i, j)| fac[(i, j)].norm() <= DEFAULT_TOL).collect();
    let distinct = block.eigen.keys().map(|e| l[*e as usize]).collect();
    let s = FourSetup { k, x, delta, l, has3, has4, d4, fac, zero, distinct };
    let nun = s.nun();
    if nun == 0 {
        let r = s.residual(&[]);
        return Ok((s.unpack(&[]).0, max_abs_vec(&r)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<lm::LmResult> = None;
    for _ in 0..8 {
        let x0: Vec<Complex64> = (0..nun).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let res = lm::solve(|v| s.residual(v), x0, 200, 1e-13);
        if best.as_ref().map_or(true, |b| res.residual < b.residual) {
            best = Some(res);
        }
        if best.as_ref().unwrap().residual < 1e-12 {
            break;
        }
    }
    let best = best.unwrap();
    if best.residual > 1e-6 {
        return Err(BraidError::SolverFailed { lambda: block.lambda, nu: block.nu, residual: best.residual });
    }
    Ok((s.unpack(&best.x).0, best.residual))
}

fn max_abs_vec(r: &[Complex64]) -> f64 {
    r.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
