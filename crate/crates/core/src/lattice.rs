//! The G₂ weight lattice in ε-coordinates, the level-k alcove and the
//! affine dot action.
//!
//! A weight λ = aΛ₁ + bΛ₂ has ε-coordinates (a+b, b, −a−2b); the inner
//! product is the standard one on the plane x₁+x₂+x₃ = 0.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// A vector in ε-coordinates.
pub type Eps = [i64; 3];

pub const RHO: Eps = [2, 1, -3];

pub const SHORT_ROOTS: [Eps; 6] =
    [[1, -1, 0], [-1, 1, 0], [0, 1, -1], [0, -1, 1], [1, 0, -1], [-1, 0, 1]];

pub const LONG_ROOTS: [Eps; 6] =
    [[2, -1, -1], [-2, 1, 1], [-1, 2, -1], [1, -2, 1], [-1, -1, 2], [1, 1, -2]];

/// Simple roots α₁ (short) and α₂ (long).
pub const SIMPLE_ROOTS: [Eps; 2] = [[1, -1, 0], [-1, 2, -1]];

pub fn dot(x: &Eps, y: &Eps) -> i64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

pub fn add(x: &Eps, y: &Eps) -> Eps {
    [x[0] + y[0], x[1] + y[1], x[2] + y[2]]
}

pub fn sub(x: &Eps, y: &Eps) -> Eps {
    [x[0] - y[0], x[1] - y[1], x[2] - y[2]]
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("({0}, {1}) is not a dominant weight")]
    NotDominant(i64, i64),
    #[error("level must be at least -2, got {0}")]
    BadLevel(i64),
}

/// Dominant integral weight, stored in fundamental coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Weight {
    a: i64,
    b: i64,
}

impl Weight {
    pub const ZERO: Weight = Weight { a: 0, b: 0 };
    pub const L1: Weight = Weight { a: 1, b: 0 };
    pub const L2: Weight = Weight { a: 0, b: 1 };

    /// aΛ₁ + bΛ₂
    pub fn new(a: i64, b: i64) -> Result<Self, LatticeError> {
        if a < 0 || b < 0 {
            return Err(LatticeError::NotDominant(a, b));
        }
        Ok(Weight { a, b })
    }

    /// The weight with ε-coordinates (μ₁, μ₂, −μ₁−μ₂).
    pub fn from_eps(m1: i64, m2: i64) -> Result<Self, LatticeError> {
        if m2 < 0 || m1 < m2 {
            return Err(LatticeError::NotDominant(m1, m2));
        }
        Ok(Weight { a: m1 - m2, b: m2 })
    }

    /// Recovers a dominant weight from a triple, if it is one.
    pub fn from_triple(t: &Eps) -> Option<Self> {
        if t[0] + t[1] + t[2] != 0 {
            return None;
        }
        Weight::from_eps(t[0], t[1]).ok()
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn eps(&self) -> Eps {
        [self.a + self.b, self.b, -self.a - 2 * self.b]
    }

    /// (μ₁, μ₂)
    pub fn eps2(&self) -> (i64, i64) {
        (self.a + self.b, self.b)
    }

    /// |λ| = μ₁ + μ₂, the filtration degree.
    pub fn size(&self) -> i64 {
        self.a + 2 * self.b
    }

    /// Ordering key (|λ|, a, b) used for listings and path order.
    pub fn sort_key(&self) -> (i64, i64, i64) {
        (self.size(), self.a, self.b)
    }

    /// All dominant weights with |λ| ≤ n, in sort order.
    pub fn up_to_size(n: i64) -> Vec<Weight> {
        let mut out = Vec::new();
        for s in 0..=n {
            for b in 0..=s / 2 {
                out.push(Weight { a: s - 2 * b, b });
            }
        }
        out.sort();
        out
    }
}

impl Ord for Weight {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sort_key().cmp(&o.sort_key())
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m1, m2) = self.eps2();
        write!(f, "[{m1},{m2}]")
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (m1, m2) = self.eps2();
        [m1, m2].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [m1, m2] = <[i64; 2]>::deserialize(d)?;
        Weight::from_eps(m1, m2).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Weight {
    type Err = String;
    /// Parses "μ₁,μ₂" or "[μ₁,μ₂]".
    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(format!("expected two comma-separated integers, got {s:?}"));
        }
        let m1: i64 = parts[0].parse().map_err(|_| format!("bad integer in {s:?}"))?;
        let m2: i64 = parts[1].parse().map_err(|_| format!("bad integer in {s:?}"))?;
        Weight::from_eps(m1, m2).map_err(|e| e.to_string())
    }
}

/// Casimir number (λ+2ρ, λ).
pub fn casimir(l: &Weight) -> i64 {
    casimir_triple(&l.eps())
}

/// (t+2ρ, t) for an arbitrary triple.
pub fn casimir_triple(t: &Eps) -> i64 {
    dot(&add(t, &[4, 2, -6]), t)
}

/// Weyl group element: v ↦ s·(v_{p(0)}, v_{p(1)}, v_{p(2)}).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylElement {
    perm: [usize; 3],
    sign: i64,
}

impl WeylElement {
    pub fn apply(&self, v: &Eps) -> Eps {
        [self.sign * v[self.perm[0]], self.sign * v[self.perm[1]], self.sign * v[self.perm[2]]]
    }

    /// Determinant on the ε-plane. The central −1 is a rotation by π.
    pub fn det(&self) -> i64 {
        let p = self.perm;
        let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// The 12 elements of W(G₂) = S₃ × {±1}.
pub fn weyl_group() -> Vec<WeylElement> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(12);
    for perm in perms {
        for sign in [1, -1] {
            out.push(WeylElement { perm, sign });
        }
    }
    out
}

/// For a ρ-shifted triple x, finds w with w(x) − ρ dominant.
/// Returns `None` when x lies on a finite wall.
pub fn to_dominant_chamber(x: &Eps) -> Option<(Weight, i64)> {
    for w in weyl_group() {
        let u = w.apply(x);
        if u[0] > u[1] && u[1] > 0 {
            return Some((Weight { a: u[0] - u[1] - 1, b: u[1] - 1 }, w.det()));
        }
    }
    None
}

/// Generic representation ring or its level-k quotient.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum LevelRule {
    Generic,
    Level(i64),
}

impl LevelRule {
    pub fn level(k: i64) -> Result<Self, LatticeError> {
        if k < -2 {
            return Err(LatticeError::BadLevel(k));
        }
        Ok(LevelRule::Level(k))
    }

    /// ℓ = k + 12, the order of q² at this level.
    pub fn ell(&self) -> Option<i64> {
        match self {
            LevelRule::Generic => None,
            LevelRule::Level(k) => Some(k + 12),
        }
    }

    /// Highest root used for the affine wall: long when 3 | k, short otherwise.
    pub fn theta(&self) -> Option<Eps> {
        match self {
            LevelRule::Generic => None,
            LevelRule::Level(k) if k.rem_euclid(3) == 0 => Some([1, 1, -2]),
            LevelRule::Level(_) => Some([1, 0, -1]),
        }
    }
}

impl fmt::Display for LevelRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelRule::Generic => write!(f, "generic"),
            LevelRule::Level(k) => write!(f, "{k}"),
        }
    }
}

impl std::str::FromStr for LevelRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("generic") {
            return Ok(LevelRule::Generic);
        }
        let k: i64 = s.trim().parse().map_err(|_| format!("bad level {s:?}"))?;
        LevelRule::level(k).map_err(|e| e.to_string())
    }
}

impl Serialize for LevelRule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LevelRule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub fn in_alcove(l: &Weight, rule: LevelRule) -> bool {
    match rule {
        LevelRule::Generic => true,
        LevelRule::Level(k) => {
            let (m1, m2) = l.eps2();
            if k.rem_euclid(3) == 0 {
                3 * (m1 + m2) <= k
            } else {
                2 * m1 + m2 <= k + 6
            }
        }
    }
}

/// Result of the affine reflection s₀ in the dot action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineReflection {
    /// s₀.λ as an ε-triple (not necessarily dominant)
    pub triple: Eps,
    /// s₀.λ when it is dominant
    pub weight: Option<Weight>,
    pub sign: i64,
    /// λ+ρ lies on a reflection hyperplane of the affine Weyl group
    pub fixed: bool,
}

fn s0(x: &Eps, theta: &Eps, ell: i64) -> Eps {
    let tt = dot(theta, theta);
    let c = 2 * (dot(x, theta) - ell) / tt;
    sub(x, &[c * theta[0], c * theta[1], c * theta[2]])
}

/// Dot action of s₀ on an arbitrary weight triple t: s₀(t+ρ) − ρ.
pub fn affine_reflect_triple(t: &Eps, k: i64) -> AffineReflection {
    let rule = LevelRule::Level(k);
    let theta = rule.theta().unwrap();
    let x = add(t, &RHO);
    let y = sub(&s0(&x, &theta, k + 12), &RHO);
    AffineReflection {
        triple: y,
        weight: Weight::from_triple(&y),
        sign: -1,
        fixed: kac_walton_reduce(&x, k).is_none(),
    }
}

pub fn affine_reflect(l: &Weight, k: i64) -> AffineReflection {
    affine_reflect_triple(&l.eps(), k)
}

/// Moves a ρ-shifted triple into the level-k alcove by the affine Weyl group.
/// Returns the alcove weight and the sign of the reflecting element, or
/// `None` if x lies on a wall.
pub fn kac_walton_reduce(x: &Eps, k: i64) -> Option<(Weight, i64)> {
    let rule = LevelRule::Level(k);
    let theta = rule.theta().unwrap();
    let ell = k + 12;
    let mut x = *x;
    let mut sign = 1;
    loop {
        let w = weyl_group().into_iter().find(|w| {
            let u = w.apply(&x);
            u[0] >= u[1] && u[1] >= 0
        })?;
        x = w.apply(&x);
        sign *= w.det();
        if x[0] == x[1] || x[1] == 0 {
            return None;
        }
        let v = dot(&x, &theta);
        if v == ell {
            return None;
        }
        if v < ell {
            return Some((Weight { a: x[0] - x[1] - 1, b: x[1] - 1 }, sign));
        }
        x = s0(&x, &theta, ell);
        sign = -sign;
    }
}
