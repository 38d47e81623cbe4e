//! Tensor products in the G₂ representation ring and its level-k quotient.
//!
//! Products with V and V_{Λ₂} use the Brauer–Klimyk rule (λ + weights of the
//! generator, moved to the dominant chamber with signs). At level k the same
//! signed sum is reduced by the affine Weyl group (Kac–Walton). Products with
//! any other basis element are expanded through the generators.

use crate::lattice::{
    add, in_alcove, kac_walton_reduce, to_dominant_chamber, Eps, LevelRule, Weight, LONG_ROOTS,
    RHO, SHORT_ROOTS,
};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error("{0} is not in the alcove of level {1}")]
    NotInAlcove(Weight, LevelRule),
    #[error("{0} cannot be reduced through the generators V and V_(Λ2) at level {1}")]
    NotExpressible(Weight, LevelRule),
    #[error("truncated product {0} has negative multiplicities")]
    NegativeMultiplicity(String),
}

/// Integer combination of simple objects, ordered by (|λ|, a, b).
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct FusionVector(BTreeMap<Weight, i64>);

impl FusionVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: Weight) -> Self {
        let mut v = Self::new();
        v.add_term(w, 1);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, i64)>>(terms: I) -> Self {
        let mut v = Self::new();
        for (w, m) in terms {
            v.add_term(w, m);
        }
        v
    }

    pub fn add_term(&mut self, w: Weight, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.0.entry(w).or_insert(0);
        *e += m;
        if *e == 0 {
            self.0.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, o: &FusionVector, c: i64) {
        for (w, m) in o.iter() {
            self.add_term(w, m * c);
        }
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Weight, i64)> + '_ {
        self.0.iter().map(|(w, m)| (*w, *m))
    }

    pub fn support(&self) -> Vec<Weight> {
        self.0.keys().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.values().all(|m| *m > 0)
    }

    pub fn total_multiplicity(&self) -> i64 {
        self.0.values().sum()
    }
}

impl fmt::Display for FusionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .rev()
            .map(|(w, m)| if *m == 1 { w.to_string() } else { format!("{m}{w}") })
            .collect();
        write!(f, "{}", parts.join("+").replace("+-", "-"))
    }
}

impl fmt::Debug for FusionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FusionVector({self})")
    }
}

impl Serialize for FusionVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (w, m) in &self.0 {
            map.serialize_entry(&w.to_string(), m)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for FusionVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, i64>::deserialize(d)?;
        let mut v = FusionVector::new();
        for (k, m) in raw {
            let w: Weight = k.parse().map_err(serde::de::Error::custom)?;
            v.add_term(w, m);
        }
        Ok(v)
    }
}

/// Weights of V with multiplicity.
pub fn weights_v() -> Vec<(Eps, i64)> {
    let mut w: Vec<(Eps, i64)> = SHORT_ROOTS.iter().map(|r| (*r, 1)).collect();
    w.push(([0, 0, 0], 1));
    w
}

/// Weights of the adjoint representation V_{Λ₂}.
pub fn weights_adjoint() -> Vec<(Eps, i64)> {
    let mut w: Vec<(Eps, i64)> = SHORT_ROOTS.iter().chain(LONG_ROOTS.iter()).map(|r| (*r, 1)).collect();
    w.push(([0, 0, 0], 2));
    w
}

/// Signed Klimyk sum λ ⊗ (character), reduced under the rule.
pub fn klimyk(l: &Weight, character: &[(Eps, i64)], rule: LevelRule) -> FusionVector {
    let mut out = FusionVector::new();
    let base = add(&l.eps(), &RHO);
    for (w, m) in character {
        let x = add(&base, w);
        let r = match rule {
            LevelRule::Generic => to_dominant_chamber(&x),
            LevelRule::Level(k) => kac_walton_reduce(&x, k),
        };
        if let Some((mu, s)) = r {
            out.add_term(mu, s * m);
        }
    }
    out
}

type CacheKey = (LevelRule, Weight, Weight);

fn cache() -> &'static RwLock<HashMap<CacheKey, FusionVector>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, FusionVector>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Number of memoized basis products.
pub fn cache_len() -> usize {
    cache().read().unwrap().len()
}

/// Memoized basis products as (rule, λ, γ, λ⊗γ), for persisting to disk.
pub fn cache_snapshot() -> Vec<(LevelRule, Weight, Weight, FusionVector)> {
    let mut v: Vec<_> =
        cache().read().unwrap().iter().map(|((r, a, b), v)| (*r, *a, *b, v.clone())).collect();
    v.sort_by(|x, y| (x.0, x.1, x.2).cmp(&(y.0, y.1, y.2)));
    v
}

/// Seeds the memo table, e.g. from a disk cache. Entries already present win.
pub fn cache_preload<I: IntoIterator<Item = (LevelRule, Weight, Weight, FusionVector)>>(entries: I) {
    let mut c = cache().write().unwrap();
    for (r, a, b, v) in entries {
        c.entry((r, a, b)).or_insert(v);
    }
}

fn check_alcove(w: &Weight, rule: LevelRule) -> Result<(), FusionError> {
    if in_alcove(w, rule) {
        Ok(())
    } else {
        Err(FusionError::NotInAlcove(*w, rule))
    }
}

fn generator_product(l: &Weight, g: &Weight, rule: LevelRule) -> Result<FusionVector, FusionError> {
    let ch = if *g == Weight::L1 { weights_v() } else { weights_adjoint() };
    let v = klimyk(l, &ch, rule);
    if !v.is_nonnegative() || v.support().iter().any(|w| !in_alcove(w, rule)) {
        return Err(FusionError::NegativeMultiplicity(v.to_string()));
    }
    Ok(v)
}

/// V_λ ⊗ V_γ for simple objects in the alcove.
pub fn mul_basis(l: &Weight, g: &Weight, rule: LevelRule) -> Result<FusionVector, FusionError> {
    check_alcove(l, rule)?;
    check_alcove(g, rule)?;
    if let Some(v) = cache().read().unwrap().get(&(rule, *l, *g)) {
        return Ok(v.clone());
    }
    let v = if *g == Weight::ZERO {
        FusionVector::single(*l)
    } else if *l == Weight::ZERO {
        FusionVector::single(*g)
    } else if *g == Weight::L1 || *g == Weight::L2 {
        generator_product(l, g, rule)?
    } else {
        expand_through_generators(l, g, rule)?
    };
    cache().write().unwrap().insert((rule, *l, *g), v.clone());
    Ok(v)
}

fn expand_through_generators(l: &Weight, g: &Weight, rule: LevelRule) -> Result<FusionVector, FusionError> {
    let routes = [(Weight::L1, g.a() >= 1), (Weight::L2, g.b() >= 1)];
    for (gen, ok) in routes {
        if !ok {
            continue;
        }
        let prev = if gen == Weight::L1 {
            Weight::new(g.a() - 1, g.b()).unwrap()
        } else {
            Weight::new(g.a(), g.b() - 1).unwrap()
        };
        if !in_alcove(&prev, rule) {
            continue;
        }
        let e = mul_basis(&prev, &gen, rule)?;
        if e.get(g) != 1 || e.support().iter().any(|m| m != g && m >= g) {
            continue;
        }
        // λ⊗γ = (λ⊗prev)⊗gen − Σ_{μ≠γ} E_μ λ⊗μ
        let mut out = FusionVector::new();
        for (nu, c) in mul_basis(l, &prev, rule)?.iter() {
            out.add_scaled(&mul_basis(&nu, &gen, rule)?, c);
        }
        for (mu, c) in e.iter() {
            if mu != *g {
                out.add_scaled(&mul_basis(l, &mu, rule)?, -c);
            }
        }
        return Ok(out);
    }
    Err(FusionError::NotExpressible(*g, rule))
}

/// V_λ ⊗ V under the rule.
pub fn tensor_v(l: &Weight, rule: LevelRule) -> Result<FusionVector, FusionError> {
    mul_basis(l, &Weight::L1, rule)
}

/// V_λ ⊗ V_{Λ₂} under the rule.
pub fn tensor_adjoint(l: &Weight, rule: LevelRule) -> Result<FusionVector, FusionError> {
    mul_basis(l, &Weight::L2, rule)
}

/// Product in the (truncated) Grothendieck ring, extended bilinearly.
pub fn grothendieck_mul(x: &FusionVector, y: &FusionVector, rule: LevelRule) -> Result<FusionVector, FusionError> {
    let mut out = FusionVector::new();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&mul_basis(&a, &b, rule)?, ca * cb);
        }
    }
    Ok(out)
}

/// Linear extension of `tensor_v`.
pub fn tensor_v_vec(x: &FusionVector, rule: LevelRule) -> Result<FusionVector, FusionError> {
    grothendieck_mul(x, &FusionVector::single(Weight::L1), rule)
}

/// Linear extension of `tensor_adjoint`.
pub fn tensor_adjoint_vec(x: &FusionVector, rule: LevelRule) -> Result<FusionVector, FusionError> {
    grothendieck_mul(x, &FusionVector::single(Weight::L2), rule)
}

/// All weights of P₊,ₖ sorted by (|λ|, a).
pub fn alcove_weights(k: i64) -> Vec<Weight> {
    let rule = LevelRule::Level(k);
    Weight::up_to_size((k + 6).max(0)).into_iter().filter(|w| in_alcove(w, rule)).collect()
}
