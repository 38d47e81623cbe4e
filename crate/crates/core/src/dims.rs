//! Quantum dimensions of simple G₂ modules, their vanishing at roots of
//! unity, and the admissible values of q for each level.

use crate::fusion::{self, FusionError};
use crate::lattice::{in_alcove, LevelRule, Weight};
use crate::qarith::{exact_divide, qint, LaurentPoly, QContext, QValue};
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DimsError {
    #[error("recursion value for {0} disagrees with the product formula")]
    Mismatch(Weight),
    #[error("boundary weight {0} should have vanishing dimension")]
    BoundaryNonzero(Weight),
    #[error("alcove weight {0} has vanishing dimension")]
    AlcoveZero(Weight),
    #[error("q context is not admissible for level {0}")]
    Inadmissible(LevelRule),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

/// Arguments of the numerator quantum integers; the denominator is [1][5][4][6][3][9].
pub fn numerator_factors(mu: &Weight) -> [i64; 6] {
    let (m1, m2) = mu.eps2();
    [m1 - m2 + 1, 2 * m1 + m2 + 5, m1 + 2 * m2 + 4, 3 * m1 + 6, 3 * m2 + 3, 3 * (m1 + m2) + 9]
}

pub const DENOMINATOR_FACTORS: [i64; 6] = [1, 5, 4, 6, 3, 9];

/// d_μ as a Laurent polynomial (the quotient is exact).
pub fn qdim_laurent(mu: &Weight) -> LaurentPoly {
    static CACHE: OnceLock<Mutex<HashMap<Weight, LaurentPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(mu) {
        return p.clone();
    }
    let num = numerator_factors(mu).iter().fold(LaurentPoly::one(), |acc, n| &acc * &qint(*n));
    let den = DENOMINATOR_FACTORS.iter().fold(LaurentPoly::one(), |acc, n| &acc * &qint(*n));
    let d = exact_divide(&num, &den).expect("quantum dimension is a Laurent polynomial");
    cache.lock().unwrap().insert(*mu, d.clone());
    d
}

/// d_μ in the given context, obtained by specializing the Laurent polynomial.
pub fn qdim(mu: &Weight, ctx: &QContext) -> QValue {
    ctx.specialize_laurent(&qdim_laurent(mu))
}

/// Classical dimension: the q → 1 limit, computed by [n] ↦ n.
pub fn classical_dim(mu: &Weight) -> i64 {
    let num: i64 = numerator_factors(mu).iter().product();
    let den: i64 = DENOMINATOR_FACTORS.iter().product();
    num / den
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingEntry {
    pub weight: Weight,
    pub zero: bool,
}

/// Exact evaluation of d_μ at q = ζ_{2ℓ} for all |μ| ≤ maxdeg.
pub fn vanishing_scan(ell: u64, maxdeg: i64) -> Vec<VanishingEntry> {
    let ctx = QContext::Cyclo { m: 2 * ell, e: 1 };
    Weight::up_to_size(maxdeg)
        .into_iter()
        .map(|w| VanishingEntry { weight: w, zero: qdim(&w, &ctx).is_zero() })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecursionReport {
    pub rule: LevelRule,
    pub checked: Vec<Weight>,
    pub boundary_zero: Vec<Weight>,
}

/// Recomputes d_μ from d_{Λ₁} and d_{Λ₂} through the fusion recursion and
/// compares with the product formula. At level k also checks that the first
/// excluded row has dimension zero and the alcove does not.
pub fn dim_recursion_check(rule: LevelRule, maxdeg: i64, ctx: &QContext) -> Result<RecursionReport, DimsError> {
    if !is_admissible(rule, ctx) {
        return Err(DimsError::Inadmissible(rule));
    }
    let weights: Vec<Weight> =
        Weight::up_to_size(maxdeg).into_iter().filter(|w| in_alcove(w, rule)).collect();
    let mut d: BTreeMap<Weight, QValue> = BTreeMap::new();
    d.insert(Weight::ZERO, ctx.one());
    d.insert(Weight::L1, qdim(&Weight::L1, ctx));
    d.insert(Weight::L2, qdim(&Weight::L2, ctx));
    for g in &weights {
        if d.contains_key(g) {
            continue;
        }
        let (prev, gen) = if g.a() >= 1 {
            (Weight::new(g.a() - 1, g.b()).unwrap(), Weight::L1)
        } else {
            (Weight::new(g.a(), g.b() - 1).unwrap(), Weight::L2)
        };
        let e = fusion::mul_basis(&prev, &gen, rule)?;
        let c = e.get(g);
        if c != 1 {
            return Err(DimsError::Fusion(FusionError::NotExpressible(*g, rule)));
        }
        let mut val = &d[&prev] * &d[&gen];
        for (mu, m) in e.iter() {
            if mu != *g {
                val = &val - &(&ctx.int(m) * &d[&mu]);
            }
        }
        d.insert(*g, val);
    }
    let mut checked = Vec::new();
    for g in &weights {
        if !d[g].approx_eq(&qdim(g, ctx), crate::qarith::DEFAULT_TOL) {
            return Err(DimsError::Mismatch(*g));
        }
        if matches!(rule, LevelRule::Level(_)) && d[g].is_zero() {
            return Err(DimsError::AlcoveZero(*g));
        }
        checked.push(*g);
    }
    let mut boundary_zero = Vec::new();
    if let LevelRule::Level(k) = rule {
        for w in boundary_weights(k, maxdeg) {
            if !qdim(&w, ctx).is_zero() {
                return Err(DimsError::BoundaryNonzero(w));
            }
            boundary_zero.push(w);
        }
    }
    Ok(RecursionReport { rule, checked, boundary_zero })
}

/// The first row outside P₊,ₖ: 3(μ₁+μ₂) = k+3 when 3 | k, 2μ₁+μ₂ = k+7 otherwise.
pub fn boundary_weights(k: i64, maxdeg: i64) -> Vec<Weight> {
    Weight::up_to_size(maxdeg.max(k + 7))
        .into_iter()
        .filter(|w| {
            let (m1, m2) = w.eps2();
            if k.rem_euclid(3) == 0 {
                3 * (m1 + m2) == k + 3
            } else {
                2 * m1 + m2 == k + 7
            }
        })
        .collect()
}

/// Admissible values of q for a rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum QSpecSet {
    /// q² is not a root of unity (in particular q² ≠ 1)
    Generic,
    /// q = ζ_m^e with m = 2(k+12) and e in `exponents`; q² is then a primitive (k+12)-th root
    Roots { m: u64, ell: u64, exponents: Vec<u64> },
}

pub fn admissible_q(rule: LevelRule) -> QSpecSet {
    match rule {
        LevelRule::Generic => QSpecSet::Generic,
        LevelRule::Level(k) => {
            let ell = (k + 12) as u64;
            let m = 2 * ell;
            QSpecSet::Roots { m, ell, exponents: (1..m).filter(|e| e.gcd(&m) == 1).collect() }
        }
    }
}

/// Largest root-of-unity order tested for float values.
const FLOAT_ORDER_SCAN: i32 = 200;

fn float_order(z: Complex64, tol: f64) -> Option<i32> {
    (1..=FLOAT_ORDER_SCAN).find(|j| (z.powi(*j) - 1.0).norm() <= tol)
}

/// Whether q in `ctx` is admissible for `rule`. Float values are tested up
/// to root-of-unity order 200 with tolerance 1e-9.
pub fn is_admissible(rule: LevelRule, ctx: &QContext) -> bool {
    match (rule, ctx) {
        (LevelRule::Generic, QContext::Formal) => true,
        (LevelRule::Generic, QContext::Cyclo { .. }) => false,
        (LevelRule::Generic, QContext::Float { .. }) => {
            let q = ctx.q_complex().unwrap();
            q.norm() > 0.0 && float_order(q * q, 1e-9).is_none()
        }
        (LevelRule::Level(_), QContext::Formal) => false,
        (LevelRule::Level(k), QContext::Cyclo { m, e }) => {
            let o = m / m.gcd(e);
            let o2 = if o % 2 == 0 { o / 2 } else { o };
            o2 as i64 == k + 12
        }
        (LevelRule::Level(k), QContext::Float { .. }) => {
            let q = ctx.q_complex().unwrap();
            float_order(q * q, 1e-9) == Some((k + 12) as i32)
        }
    }
}
