//! Atlas of small K₃/K₄ representations: the generically irreducible K₄
//! families, their degeneracy equations, the simple subquotients that appear
//! on the degeneracy loci, and the possible composition series of the
//! 8-dimensional B₄ module Hom(V_{Λ₁+Λ₂}, V^⊗4).
//!
//! Eigenvalues are indexed 1..3 in labels and 0..3 in arrays. Rows are stored
//! once with indices (i,j,k) = (1,2,3); the other members of a family come
//! from [`K4RepDescriptor::permuted`].

use crate::qarith::{CycNumber, QError, QValue};
use itertools::Itertools;
use num_complex::Complex64;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// Relative tolerance for zero tests on float eigenvalues.
pub const FLOAT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("eigenvalue λ{0} is zero")]
    ZeroEigenvalue(usize),
    #[error("eigenvalues are not mutually distinct (λ{0} = λ{1})")]
    NotDistinct(usize, usize),
    #[error("relation sets of several cases hold at once: {0:?}")]
    AmbiguousCase(Vec<String>),
    #[error(transparent)]
    Q(#[from] QError),
}

/// A primitive third root of unity: θ = e^{2πi/3} or θ² = e^{4πi/3}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theta {
    Omega,
    OmegaBar,
}

impl Theta {
    pub const BOTH: [Theta; 2] = [Theta::Omega, Theta::OmegaBar];

    /// k with θ = ζ₃^k.
    fn exponent(self) -> u32 {
        match self {
            Theta::Omega => 1,
            Theta::OmegaBar => 2,
        }
    }

    /// θ as an element of Q(ζ_m), when 3 | m.
    pub fn cyc(self, m: u64) -> Option<CycNumber> {
        (m % 3 == 0).then(|| CycNumber::zeta_pow(m, (self.exponent() as u64 * m / 3) as i64))
    }

    pub fn complex(self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * self.exponent() as f64 / 3.0)
    }

    /// θ in the same context as `like`, if that field contains it.
    pub fn value_like(self, like: &QValue) -> Option<QValue> {
        match like {
            QValue::Formal(_) => None,
            QValue::Cyclo { m, e, .. } => self.cyc(*m).map(|value| QValue::Cyclo { m: *m, e: *e, value }),
            QValue::Float(_) => Some(QValue::Float(self.complex())),
        }
    }
}

const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn sup(mut n: u32) -> String {
    let mut ds = Vec::new();
    loop {
        ds.push(SUP[(n % 10) as usize]);
        n /= 10;
        if n == 0 {
            break;
        }
    }
    ds.iter().rev().collect()
}

/// λ₁^{e₁}λ₂^{e₂}λ₃^{e₃} as text; "1" for the empty monomial.
pub fn mono_string(exps: &[u32; 3]) -> String {
    let mut s = String::new();
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        s.push('λ');
        s.push(SUB[i + 1]);
        if e > 1 {
            s.push_str(&sup(e));
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

fn permute_exps(exps: &[u32; 3], perm: &[usize; 3]) -> [u32; 3] {
    let mut out = [0; 3];
    for a in 0..3 {
        out[perm[a]] = exps[a];
    }
    out
}

/// c · θ^t · λ^exps with c = ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: i64,
    pub theta: u32,
    pub exps: [u32; 3],
}

impl Term {
    pub const fn new(coeff: i64, theta: u32, exps: [u32; 3]) -> Self {
        Term { coeff, theta, exps }
    }

    fn permuted(&self, perm: &[usize; 3]) -> Term {
        Term { exps: permute_exps(&self.exps, perm), ..*self }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.abs() != 1 {
            write!(f, "{}", self.coeff.abs())?;
        }
        match self.theta % 3 {
            0 => {}
            1 => write!(f, "θ")?,
            _ => write!(f, "θ²")?,
        }
        if self.exps != [0; 3] || (self.coeff.abs() == 1 && self.theta % 3 == 0) {
            write!(f, "{}", mono_string(&self.exps))?;
        }
        Ok(())
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&format!("{}{}", if self.coeff < 0 { "−" } else { "" }, self))
    }
}

/// A polynomial in λ₁, λ₂, λ₃ and θ with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly(pub Vec<Term>);

impl Poly {
    fn permuted(&self, perm: &[usize; 3]) -> Poly {
        Poly(self.0.iter().map(|t| t.permuted(perm)).collect())
    }

    /// Terms in a fixed order, for comparing polynomials up to term order.
    pub fn key(&self) -> Vec<(i64, u32, [u32; 3])> {
        let mut k: Vec<_> = self.0.iter().map(|t| (t.coeff, t.theta % 3, t.exps)).collect();
        k.sort();
        k
    }

    pub fn uses_theta(&self) -> bool {
        self.0.iter().any(|t| t.theta % 3 != 0)
    }

    /// For a binomial t₁ + t₂: the relation t₁ + t₂ = 0 as λ^v = ζ₆^c.
    fn as_unit_relation(&self, theta: Theta) -> Option<([i64; 3], u32)> {
        let [a, b] = self.0.as_slice() else { return None };
        let v = [0, 1, 2].map(|i| a.exps[i] as i64 - b.exps[i] as i64);
        // λ^v = −(c_b/c_a) θ^{t_b − t_a}
        let sign = if -(b.coeff * a.coeff) > 0 { 0 } else { 3 };
        let th = 2 * theta.exponent() as i64 * (b.theta as i64 - a.theta as i64);
        Some((v, (sign + th).rem_euclid(6) as u32))
    }

    /// Whether the polynomial vanishes at `lam`, with θ specialized to `theta`.
    ///
    /// When the coefficient field has no primitive cube root, θ is treated as
    /// algebraic of degree 2 over it, so P₀ + θP₁ + θ²P₂ = 0 iff P₀ = P₁ = P₂.
    pub fn vanishes(&self, lam: &[QValue; 3], theta: Theta) -> Result<bool, CatalogError> {
        let one = lam[0].one_like();
        let mut parts = [one.zero_like(), one.zero_like(), one.zero_like()];
        let mut scale = 0.0f64;
        for t in &self.0 {
            let mut v = QValue::one_like(&one);
            for (l, &e) in lam.iter().zip(&t.exps) {
                v = v.try_mul(&l.powi(e as i64)?)?;
            }
            if let Some(z) = v.to_complex() {
                scale = scale.max(z.norm());
            }
            let c = one.scale_int(t.coeff);
            parts[(t.theta % 3) as usize] = parts[(t.theta % 3) as usize].try_add(&v.try_mul(&c)?)?;
        }
        let zero = |v: &QValue| v.is_zero_tol(FLOAT_TOL * scale.max(1.0));
        if !self.uses_theta() {
            return Ok(zero(&parts[0]));
        }
        match theta.value_like(&one) {
            Some(th) => {
                let th2 = th.try_mul(&th)?;
                let total = parts[0].try_add(&parts[1].try_mul(&th)?)?.try_add(&parts[2].try_mul(&th2)?)?;
                Ok(zero(&total))
            }
            None => Ok(zero(&parts[0].try_sub(&parts[2])?) && zero(&parts[1].try_sub(&parts[2])?)),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, t) in self.0.iter().enumerate() {
            match (n, t.coeff < 0) {
                (0, true) => write!(f, "−")?,
                (0, false) => {}
                (_, true) => write!(f, " − ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

trait QValueExt {
    fn zero_like(&self) -> QValue;
    fn scale_int(&self, n: i64) -> QValue;
}

impl QValueExt for QValue {
    fn zero_like(&self) -> QValue {
        self.scale_int(0)
    }

    fn scale_int(&self, n: i64) -> QValue {
        let one = self.one_like();
        let mut acc = one.try_sub(&one).unwrap();
        for _ in 0..n.unsigned_abs() {
            acc = acc.try_add(&one).unwrap();
        }
        if n < 0 {
            -&acc
        } else {
            acc
        }
    }
}

macro_rules! poly {
    ($(($c:expr, $t:expr, [$a:expr, $b:expr, $d:expr])),* $(,)?) => {
        Poly(vec![$(Term::new($c, $t, [$a, $b, $d])),*])
    };
}

/// Name of a K₃ or K₄ representation: {det σ₁}, with an optional bar split
/// and the exceptional marker *. The bar carries no structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RepLabel {
    pub det: [u32; 3],
    pub bar: Option<[u32; 3]>,
    pub star: bool,
    pub theta: Option<Theta>,
}

impl RepLabel {
    pub const fn det(det: [u32; 3]) -> Self {
        RepLabel { det, bar: None, star: false, theta: None }
    }

    pub const fn star(det: [u32; 3]) -> Self {
        RepLabel { det, bar: None, star: true, theta: None }
    }

    pub const fn bar(lead: [u32; 3], det: [u32; 3]) -> Self {
        RepLabel { det, bar: Some(lead), star: false, theta: None }
    }

    /// Dimension of the K₃ representation with this determinant.
    pub fn k3_dimension(&self) -> u32 {
        self.det.iter().sum()
    }

    fn permuted(&self, perm: &[usize; 3]) -> Self {
        RepLabel {
            det: permute_exps(&self.det, perm),
            bar: self.bar.map(|b| permute_exps(&b, perm)),
            ..*self
        }
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bar {
            Some(lead) => {
                let rest = [0, 1, 2].map(|i| self.det[i] - lead[i]);
                write!(f, "{{{}|{}}}", mono_string(&lead), mono_string(&rest))?;
            }
            None => write!(f, "{{{}}}", mono_string(&self.det))?,
        }
        if self.star {
            write!(f, "*")?;
        }
        match self.theta {
            Some(Theta::Omega) => write!(f, "_θ"),
            Some(Theta::OmegaBar) => write!(f, "_θ²"),
            None => Ok(()),
        }
    }
}

impl Serialize for RepLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Weight (i,j) (1-based) with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightMult {
    pub i: usize,
    pub j: usize,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct K4RepDescriptor {
    pub label: RepLabel,
    pub dimension: u32,
    pub determinant: [u32; 3],
    /// scalar of Δ₄²; θ refers to the row's own `label.theta`
    pub delta4_sq: Term,
    pub weights: Vec<WeightMult>,
    pub restriction: Vec<RepLabel>,
    /// defining equation (= 0) for subquotients; None for generic families
    pub equation: Option<Poly>,
    /// polynomials whose vanishing makes the family reducible
    pub degeneracy: Vec<Poly>,
}

fn w(i: usize, j: usize, mult: u32) -> WeightMult {
    WeightMult { i, j, mult }
}

fn sorted(mut ws: Vec<WeightMult>) -> Vec<WeightMult> {
    ws.sort();
    ws
}

/// Adds (j,i) for each listed (i,j), i ≠ j.
fn symmetrize(ws: Vec<WeightMult>) -> Vec<WeightMult> {
    let mut out = ws.clone();
    for x in ws {
        if x.i != x.j {
            out.push(w(x.j, x.i, x.mult));
        }
    }
    sorted(out)
}

fn l(i: usize) -> [u32; 3] {
    let mut e = [0; 3];
    e[i - 1] = 1;
    e
}

fn l2(i: usize, j: usize) -> [u32; 3] {
    let mut e = l(i);
    e[j - 1] += 1;
    e
}

const L123: [u32; 3] = [1, 1, 1];

impl K4RepDescriptor {
    /// The representation obtained by relabelling eigenvalue a as perm[a] (0-based).
    pub fn permuted(&self, perm: &[usize; 3]) -> Self {
        K4RepDescriptor {
            label: self.label.permuted(perm),
            dimension: self.dimension,
            determinant: permute_exps(&self.determinant, perm),
            delta4_sq: self.delta4_sq.permuted(perm),
            weights: sorted(self.weights.iter().map(|x| w(perm[x.i - 1] + 1, perm[x.j - 1] + 1, x.mult)).collect()),
            restriction: self.restriction.iter().map(|r| r.permuted(perm)).collect(),
            equation: self.equation.as_ref().map(|p| p.permuted(perm)),
            degeneracy: self.degeneracy.iter().map(|p| p.permuted(perm)).collect(),
        }
    }

    fn with_theta(&self, t: Theta) -> Self {
        let mut out = self.clone();
        out.label.theta = Some(t);
        out
    }

    fn theta(&self) -> Theta {
        self.label.theta.unwrap_or(Theta::Omega)
    }

    /// Internal consistency failures; empty when the row is consistent.
    ///
    /// Checks: weights reproduce det σ₁ (σ₁ acts by λ_i on weight (i,j));
    /// weight multiplicities and restriction dimensions add up to the
    /// dimension; the restricted determinants multiply to det σ₁; (i,j) and
    /// (j,i) have equal multiplicity; and (Δ₄²)^dim = det(σ₁)^12, on the
    /// row's equation locus for subquotients.
    pub fn consistency_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut det = [0u32; 3];
        let mut total = 0;
        for x in &self.weights {
            det[x.i - 1] += x.mult;
            total += x.mult;
        }
        if det != self.determinant {
            out.push(format!("weights give det {} not {}", mono_string(&det), mono_string(&self.determinant)));
        }
        if total != self.dimension {
            out.push(format!("weight multiplicities sum to {total}, dimension {}", self.dimension));
        }
        for x in &self.weights {
            let back: u32 = self.weights.iter().filter(|y| y.i == x.j && y.j == x.i).map(|y| y.mult).sum();
            if back != x.mult {
                out.push(format!("weight ({},{}) and its transpose differ", x.i, x.j));
            }
        }
        let rdim: u32 = self.restriction.iter().map(RepLabel::k3_dimension).sum();
        if rdim != self.dimension {
            out.push(format!("restriction dimensions sum to {rdim}, dimension {}", self.dimension));
        }
        let mut rdet = [0u32; 3];
        for r in &self.restriction {
            for i in 0..3 {
                rdet[i] += r.det[i];
            }
        }
        if rdet != self.determinant {
            out.push(format!("restriction determinants give {}", mono_string(&rdet)));
        }
        if !self.twist_power_consistent() {
            out.push("(Δ₄²)^dim ≠ det(σ₁)^12".into());
        }
        out
    }

    /// Δ₄² = (σ₁σ₂σ₃)⁴ and the σ_i are conjugate, so (Δ₄²)^dim = det(σ₁)^12.
    /// The ratio is λ^v times a sixth root of unity ζ₆^a; it must be 1 on
    /// the equation locus λ^e = ζ₆^c, i.e. v = s·e with s·c + a ≡ 0 mod 6.
    fn twist_power_consistent(&self) -> bool {
        let d = self.dimension as i64;
        let v = [0, 1, 2].map(|i| self.delta4_sq.exps[i] as i64 * d - 12 * self.determinant[i] as i64);
        let sign = if self.delta4_sq.coeff < 0 && d % 2 == 1 { 3 } else { 0 };
        let a = (sign + 2 * self.theta().exponent() as i64 * self.delta4_sq.theta as i64 * d).rem_euclid(6);
        let Some((e, c)) = self.equation.as_ref().and_then(|p| p.as_unit_relation(self.theta())) else {
            return v == [0; 3] && a == 0;
        };
        let nz = (0..3).find(|&i| e[i] != 0).unwrap();
        if v[nz] % e[nz] != 0 {
            return false;
        }
        let s = v[nz] / e[nz];
        (0..3).all(|i| v[i] == s * e[i]) && (s * c as i64 + a).rem_euclid(6) == 0
    }

    /// Evaluates the Δ₄² scalar at the given eigenvalues.
    pub fn delta4_sq_value(&self, lam: &[QValue; 3]) -> Result<Option<QValue>, CatalogError> {
        let one = lam[0].one_like();
        let mut v = one.scale_int(self.delta4_sq.coeff);
        for (x, &e) in lam.iter().zip(&self.delta4_sq.exps) {
            v = v.try_mul(&x.powi(e as i64)?)?;
        }
        if self.delta4_sq.theta % 3 != 0 {
            let Some(th) = self.theta().value_like(&one) else { return Ok(None) };
            v = v.try_mul(&th.powi(self.delta4_sq.theta as i64)?)?;
        }
        Ok(Some(v))
    }
}

/// The seven generically irreducible families of K₄, one row each with
/// indices (i,j,k) = (1,2,3); the nine-dimensional row carries θ.
pub fn generic_table() -> Vec<K4RepDescriptor> {
    let all_weights = (1..=3).cartesian_product(1..=3).map(|(i, j)| w(i, j, 1)).collect_vec();
    let mut eight = all_weights.clone();
    eight[0].mult = 2;
    eight.retain(|x| x.i != x.j || x.i == 1);
    vec![
        K4RepDescriptor {
            label: RepLabel { theta: Some(Theta::Omega), ..RepLabel::det([3, 3, 3]) },
            dimension: 9,
            determinant: [3, 3, 3],
            delta4_sq: Term::new(1, 1, [4, 4, 4]),
            weights: all_weights,
            restriction: vec![RepLabel::det(L123), RepLabel::det(l2(1, 2)), RepLabel::det(l2(1, 3)), RepLabel::det(l2(2, 3))],
            equation: None,
            degeneracy: (1..=3)
                .permutations(2)
                .map(|p| {
                    let (i, j) = (p[0] - 1, p[1] - 1);
                    let mut a = [0; 3];
                    let mut b = [0; 3];
                    a[i] = 1;
                    b[j] = 1;
                    Poly(vec![Term::new(1, 0, a), Term::new(1, 1, b)])
                })
                .chain([poly![(1, 0, [2, 0, 0]), (-1, 1, [0, 1, 1])], poly![(1, 0, [0, 2, 0]), (-1, 1, [1, 0, 1])], poly![(1, 0, [0, 0, 2]), (-1, 1, [1, 1, 0])]])
                .collect(),
        },
        K4RepDescriptor {
            label: RepLabel::det([4, 2, 2]),
            dimension: 8,
            determinant: [4, 2, 2],
            delta4_sq: Term::new(1, 0, [6, 3, 3]),
            weights: sorted(eight),
            restriction: vec![RepLabel::det(L123), RepLabel::det(l2(1, 2)), RepLabel::det(l2(1, 3)), RepLabel::det(l(1))],
            equation: None,
            degeneracy: vec![
                poly![(1, 0, [2, 1, 0]), (-1, 0, [0, 0, 3])],
                poly![(1, 0, [2, 0, 1]), (-1, 0, [0, 3, 0])],
                poly![(1, 0, [2, 0, 0]), (-1, 1, [0, 1, 1])],
                poly![(1, 0, [2, 0, 0]), (-1, 2, [0, 1, 1])],
            ],
        },
        K4RepDescriptor {
            label: RepLabel::det([3, 2, 1]),
            dimension: 6,
            determinant: [3, 2, 1],
            delta4_sq: Term::new(1, 0, [6, 4, 2]),
            weights: sorted(vec![w(1, 1, 1), w(1, 2, 1), w(1, 3, 1), w(2, 1, 1), w(3, 1, 1), w(2, 2, 1)]),
            restriction: vec![RepLabel::det(L123), RepLabel::det(l2(1, 2)), RepLabel::det(l(1))],
            equation: None,
            degeneracy: vec![
                poly![(1, 0, [1, 0, 0]), (1, 0, [0, 0, 1])],
                poly![(1, 0, [0, 1, 0]), (1, 0, [0, 0, 1])],
                poly![(1, 0, [0, 2, 0]), (1, 0, [1, 0, 1])],
                poly![(1, 0, [3, 0, 0]), (-1, 0, [0, 2, 1])],
            ],
        },
        K4RepDescriptor {
            label: RepLabel::det(L123),
            dimension: 3,
            determinant: L123,
            delta4_sq: Term::new(1, 0, [4, 4, 4]),
            weights: vec![w(1, 1, 1), w(2, 2, 1), w(3, 3, 1)],
            restriction: vec![RepLabel::det(L123)],
            equation: None,
            degeneracy: vec![
                poly![(1, 0, [2, 0, 0]), (1, 0, [0, 1, 1])],
                poly![(1, 0, [0, 2, 0]), (1, 0, [1, 0, 1])],
                poly![(1, 0, [0, 0, 2]), (1, 0, [1, 1, 0])],
            ],
        },
        K4RepDescriptor {
            label: RepLabel::det([2, 1, 0]),
            dimension: 3,
            determinant: [2, 1, 0],
            delta4_sq: Term::new(1, 0, [8, 4, 0]),
            weights: vec![w(1, 1, 1), w(1, 2, 1), w(2, 1, 1)],
            restriction: vec![RepLabel::det(l2(1, 2)), RepLabel::det(l(1))],
            equation: None,
            degeneracy: vec![poly![(1, 0, [2, 0, 0]), (1, 0, [0, 2, 0])]],
        },
        K4RepDescriptor {
            label: RepLabel::det(l2(1, 2)),
            dimension: 2,
            determinant: l2(1, 2),
            delta4_sq: Term::new(1, 0, [6, 6, 0]),
            weights: vec![w(1, 1, 1), w(2, 2, 1)],
            restriction: vec![RepLabel::det(l2(1, 2))],
            equation: None,
            degeneracy: vec![poly![(1, 0, [2, 0, 0]), (-1, 0, [1, 1, 0]), (1, 0, [0, 2, 0])]],
        },
        K4RepDescriptor {
            label: RepLabel::det(l(1)),
            dimension: 1,
            determinant: l(1),
            delta4_sq: Term::new(1, 0, [12, 0, 0]),
            weights: vec![w(1, 1, 1)],
            restriction: vec![RepLabel::det(l(1))],
            equation: None,
            degeneracy: vec![],
        },
    ]
}

/// Simple B₄ representations living on degeneracy loci, one row each with
/// (i,j,k) = (1,2,3). Rows whose equation involves θ are listed with θ.
pub fn subquotient_table() -> Vec<K4RepDescriptor> {
    vec![
        K4RepDescriptor {
            label: RepLabel::star(l2(1, 2)),
            dimension: 2,
            determinant: l2(1, 2),
            delta4_sq: Term::new(1, 0, [8, 4, 0]),
            weights: symmetrize(vec![w(1, 2, 1)]),
            restriction: vec![RepLabel::det(l2(1, 2))],
            equation: Some(poly![(1, 0, [2, 0, 0]), (1, 0, [0, 2, 0])]),
            degeneracy: vec![],
        },
        K4RepDescriptor {
            label: RepLabel::bar(l(2), L123),
            dimension: 3,
            determinant: L123,
            delta4_sq: Term::new(1, 0, [6, 4, 2]),
            weights: symmetrize(vec![w(2, 2, 1), w(1, 3, 1)]),
            restriction: vec![RepLabel::det(L123)],
            equation: Some(poly![(1, 0, [1, 0, 0]), (1, 0, [0, 0, 1])]),
            degeneracy: vec![],
        },
        K4RepDescriptor {
            label: RepLabel::det([2, 1, 1]),
            dimension: 4,
            determinant: [2, 1, 1],
            delta4_sq: Term::new(1, 0, [6, 4, 2]),
            weights: symmetrize(vec![w(1, 2, 1), w(1, 3, 1)]),
            restriction: vec![RepLabel::det(L123), RepLabel::det(l(1))],
            equation: Some(poly![(1, 0, [0, 1, 0]), (1, 0, [0, 0, 1])]),
            degeneracy: vec![],
        },
        K4RepDescriptor {
            label: RepLabel::det([2, 2, 1]),
            dimension: 5,
            determinant: [2, 2, 1],
            delta4_sq: Term::new(1, 0, [6, 4, 2]),
            weights: symmetrize(vec![w(2, 2, 1), w(1, 2, 1), w(1, 3, 1)]),
            restriction: vec![RepLabel::det(L123), RepLabel::det(l2(1, 2))],
            equation: Some(poly![(1, 0, [3, 0, 0]), (-1, 0, [0, 2, 1])]),
            degeneracy: vec![],
        },
        K4RepDescriptor {
            label: RepLabel { theta: Some(Theta::Omega), ..RepLabel::det([3, 2, 2]) },
            dimension: 7,
            determinant: [3, 2, 2],
            delta4_sq: Term::new(1, 0, [6, 3, 3]),
            weights: symmetrize(vec![w(1, 1, 1), w(1, 2, 1), w(1, 3, 1), w(2, 3, 1)]),
            restriction: vec![RepLabel::det(L123), RepLabel::det(l2(1, 2)), RepLabel::det(l2(1, 3))],
            equation: Some(poly![(1, 0, [2, 0, 0]), (-1, 1, [0, 1, 1])]),
            degeneracy: vec![],
        },
    ]
}

/// All six relabellings of the eigenvalues.
pub fn permutations() -> Vec<[usize; 3]> {
    (0..3).permutations(3).map(|p| [p[0], p[1], p[2]]).collect()
}

/// Closure of `rows` under eigenvalue permutations and both choices of θ
/// (for rows that carry one), without duplicates.
pub fn expand(rows: &[K4RepDescriptor]) -> Vec<K4RepDescriptor> {
    let mut out: Vec<K4RepDescriptor> = Vec::new();
    for row in rows {
        let thetas: Vec<Option<Theta>> = match row.label.theta {
            Some(_) => Theta::BOTH.iter().copied().map(Some).collect(),
            None => vec![None],
        };
        for t in thetas {
            let base = match t {
                Some(t) => row.with_theta(t),
                None => row.clone(),
            };
            for p in permutations() {
                let r = base.permuted(&p);
                if !out.iter().any(|o| o.label == r.label && o.weights == r.weights) {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn check_nonzero(lam: &[QValue; 3]) -> Result<(), CatalogError> {
    for (i, x) in lam.iter().enumerate() {
        if x.is_zero_tol(0.0) {
            return Err(CatalogError::ZeroEigenvalue(i + 1));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct B3Report {
    pub semisimple: bool,
    pub failing: Vec<Poly>,
}

/// The conditions under which K₃ fails to be semisimple, over all index choices:
/// λ_i − λ_j, λ_i² − λ_iλ_j + λ_j², and λ_i² + λ_jλ_k.
pub fn b3_conditions() -> Vec<Poly> {
    let mut out = Vec::new();
    for p in (0..3).combinations(2) {
        let (i, j) = (p[0], p[1]);
        out.push(Poly(vec![Term::new(1, 0, l(i + 1)), Term::new(-1, 0, l(j + 1))]));
        let mut ii = [0; 3];
        ii[i] = 2;
        let mut jj = [0; 3];
        jj[j] = 2;
        out.push(Poly(vec![Term::new(1, 0, ii), Term::new(-1, 0, l2(i + 1, j + 1)), Term::new(1, 0, jj)]));
    }
    for i in 0..3 {
        let mut ii = [0; 3];
        ii[i] = 2;
        let mut jk = [1; 3];
        jk[i] = 0;
        out.push(Poly(vec![Term::new(1, 0, ii), Term::new(1, 0, jk)]));
    }
    out
}

/// Semisimplicity of K₃ with eigenvalues λ₁, λ₂, λ₃.
pub fn b3_semisimple(lam: &[QValue; 3]) -> Result<B3Report, CatalogError> {
    check_nonzero(lam)?;
    let mut failing = Vec::new();
    for p in b3_conditions() {
        if p.vanishes(lam, Theta::Omega)? {
            failing.push(p);
        }
    }
    Ok(B3Report { semisimple: failing.is_empty(), failing })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompositionFactor {
    pub label: RepLabel,
    pub dimension: u32,
}

/// A possible composition series of the 8-dimensional W. `swapped` marks the
/// image of a case under λ₂ ↔ λ₃.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WCompositionCase {
    pub id: u8,
    pub swapped: bool,
    pub relations: Vec<Poly>,
    pub factors: Vec<CompositionFactor>,
    /// the θ for which the relations hold, when they involve θ
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Theta>,
}

impl WCompositionCase {
    pub fn name(&self) -> String {
        format!("({}){}", self.id, if self.swapped { "'" } else { "" })
    }

    fn swap(&self) -> Self {
        let p = [0, 2, 1];
        WCompositionCase {
            id: self.id,
            swapped: true,
            relations: self.relations.iter().map(|r| r.permuted(&p)).collect(),
            factors: self.factors.iter().map(|f| CompositionFactor { label: f.label.permuted(&p), dimension: f.dimension }).collect(),
            theta: self.theta,
        }
    }

    pub fn uses_theta(&self) -> bool {
        self.relations.iter().any(Poly::uses_theta)
    }
}

fn factor(label: RepLabel, dimension: u32) -> CompositionFactor {
    CompositionFactor { label, dimension }
}

/// The six cases as tabulated.
pub fn w_cases() -> Vec<WCompositionCase> {
    let r1 = poly![(1, 0, [0, 3, 0]), (-1, 0, [2, 0, 1])];
    let r1b = poly![(1, 0, [0, 0, 3]), (-1, 0, [2, 1, 0])];
    let r2 = poly![(1, 0, [2, 0, 0]), (-1, 1, [0, 1, 1])];
    let case = |id, relations: Vec<Poly>, factors: Vec<CompositionFactor>| WCompositionCase {
        id,
        swapped: false,
        relations,
        factors,
        theta: None,
    };
    vec![
        case(1, vec![r1.clone()], vec![factor(RepLabel::bar([2, 0, 0], [2, 2, 1]), 5), factor(RepLabel::det([2, 0, 1]), 3)]),
        case(2, vec![r2.clone()], vec![factor(RepLabel::det([3, 2, 2]), 7), factor(RepLabel::det(l(1)), 1)]),
        case(
            3,
            vec![r1.clone(), r1b.clone(), poly![(1, 0, [0, 2, 0]), (1, 0, [0, 0, 2])]],
            vec![factor(RepLabel::det([2, 1, 0]), 3), factor(RepLabel::det([2, 0, 1]), 3), factor(RepLabel::star(l2(2, 3)), 2)],
        ),
        case(
            4,
            vec![r1.clone(), r1b, poly![(1, 0, [0, 1, 0]), (1, 0, [0, 0, 1])]],
            vec![
                factor(RepLabel::bar(l(1), L123), 3),
                factor(RepLabel::star(l2(1, 2)), 2),
                factor(RepLabel::star(l2(1, 3)), 2),
                factor(RepLabel::det(l(1)), 1),
            ],
        ),
        case(
            5,
            vec![r1.clone(), r2.clone(), poly![(1, 0, [2, 0, 0]), (1, 0, [0, 0, 2])]],
            vec![factor(RepLabel::bar([2, 0, 0], [2, 2, 1]), 5), factor(RepLabel::star(l2(1, 3)), 2), factor(RepLabel::det(l(1)), 1)],
        ),
        case(
            6,
            vec![r1, r2, poly![(1, 0, [1, 0, 0]), (1, 0, [0, 0, 1])]],
            vec![factor(RepLabel::det([1, 2, 1]), 4), factor(RepLabel::det([2, 0, 1]), 3), factor(RepLabel::det(l(1)), 1)],
        ),
    ]
}

/// The tabulated cases together with the λ₂ ↔ λ₃ images of the ones that
/// are not symmetric (W itself is symmetric under this exchange).
pub fn w_cases_closed() -> Vec<WCompositionCase> {
    let base = w_cases();
    let mut out = base.clone();
    for c in &base {
        let s = c.swap();
        let same = {
            let mut a = c.relations.iter().map(Poly::key).collect_vec();
            let mut b = s.relations.iter().map(Poly::key).collect_vec();
            a.sort();
            b.sort();
            a == b
        };
        if !same {
            out.push(s);
        }
    }
    out
}

/// Determinant of σ₁ on W.
pub const W_DETERMINANT: [u32; 3] = [4, 2, 2];

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WClass {
    Irreducible,
    Case(WCompositionCase),
}

fn relation_subset(a: &WCompositionCase, b: &WCompositionCase) -> bool {
    a.relations.iter().all(|r| b.relations.iter().any(|x| x.key() == r.key()))
}

/// Composition series type of W at the eigenvalues λ₁, λ₂, λ₃.
///
/// A case holds when all of its relations vanish (with one θ for all of
/// them). Cases whose relation set is contained in that of another holding
/// case are dropped; more than one survivor is reported as ambiguous.
pub fn classify_w(lam: &[QValue; 3]) -> Result<WClass, CatalogError> {
    check_nonzero(lam)?;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if lam[i].try_sub(&lam[j])?.is_zero_tol(FLOAT_TOL) {
            return Err(CatalogError::NotDistinct(i + 1, j + 1));
        }
    }
    let mut holding = Vec::new();
    for c in w_cases_closed() {
        let thetas: &[Theta] = if c.uses_theta() { &Theta::BOTH } else { &[Theta::Omega] };
        for &t in thetas {
            let mut ok = true;
            for r in &c.relations {
                if !r.vanishes(lam, t)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                holding.push(WCompositionCase { theta: c.uses_theta().then_some(t), ..c.clone() });
                break;
            }
        }
    }
    let maximal: Vec<WCompositionCase> = holding
        .iter()
        .filter(|a| !holding.iter().any(|b| b.name() != a.name() && relation_subset(a, b) && !relation_subset(b, a)))
        .cloned()
        .collect();
    match maximal.len() {
        0 => Ok(WClass::Irreducible),
        1 => Ok(WClass::Case(maximal.into_iter().next().unwrap())),
        _ => Err(CatalogError::AmbiguousCase(maximal.iter().map(WCompositionCase::name).collect())),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegeneracyEntry {
    pub representation: RepLabel,
    pub dimension: u32,
    pub vanished: Vec<Poly>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegeneracyReport {
    /// generic families with at least one vanished degeneracy polynomial
    pub degenerate: Vec<DegeneracyEntry>,
    /// subquotient representations whose defining equation holds
    pub subquotients: Vec<K4RepDescriptor>,
}

impl DegeneracyReport {
    pub fn is_empty(&self) -> bool {
        self.degenerate.is_empty() && self.subquotients.is_empty()
    }
}

/// Which families degenerate at λ₁, λ₂, λ₃, and which subquotients exist there.
///
/// Polynomials in a family row refer to that row's θ; the eight-dimensional
/// family lists both θ and θ².
pub fn degeneracy_report(lam: &[QValue; 3]) -> Result<DegeneracyReport, CatalogError> {
    check_nonzero(lam)?;
    let mut degenerate = Vec::new();
    for row in expand(&generic_table()) {
        let t = row.theta();
        let mut vanished = Vec::new();
        for p in &row.degeneracy {
            if p.vanishes(lam, t)? {
                vanished.push(p.clone());
            }
        }
        if !vanished.is_empty() {
            degenerate.push(DegeneracyEntry { representation: row.label.clone(), dimension: row.dimension, vanished });
        }
    }
    let mut subquotients = Vec::new();
    for row in expand(&subquotient_table()) {
        if row.equation.as_ref().expect("subquotient rows carry an equation").vanishes(lam, row.theta())? {
            subquotients.push(row);
        }
    }
    Ok(DegeneracyReport { degenerate, subquotients })
}

/// Eigenvalues (q², −1, −q⁻⁶) of the braiding on V⊗V restricted to the
/// summands 2Λ₁, Λ₂, Λ₁, in the context of `q`.
pub fn g2_eigenvalues(q: &QValue) -> Result<[QValue; 3], CatalogError> {
    let one = q.one_like();
    Ok([q.powi(2)?, -&one, -&q.powi(-6)?])
}
