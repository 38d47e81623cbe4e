use super::laurent::{forward_owned, rat_from_str, rat_to_string, LaurentPoly};
use super::poly::{self, Poly};
use super::QError;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

/// Per-order data: Φ_m and the reductions of ζ^t for 0 ≤ t < m.
#[derive(Debug)]
pub(crate) struct CycloField {
    pub phi: Poly,
    pub powers: Vec<Poly>,
}

fn cyclotomic_poly(m: u64, cache: &mut HashMap<u64, Poly>) -> Poly {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    let mut num: Poly = vec![BigRational::zero(); m as usize + 1];
    num[0] = -BigRational::one();
    num[m as usize] = BigRational::one();
    for d in 1..m {
        if m % d == 0 {
            let pd = cyclotomic_poly(d, cache);
            num = poly::divrem(&num, &pd).0;
        }
    }
    cache.insert(m, num.clone());
    num
}

pub(crate) fn field(m: u64) -> Arc<CycloField> {
    static FIELDS: OnceLock<Mutex<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();
    static PHIS: OnceLock<Mutex<HashMap<u64, Poly>>> = OnceLock::new();
    let fields = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = fields.lock().unwrap().get(&m) {
        return f.clone();
    }
    let phi = {
        let mut phis = PHIS.get_or_init(|| Mutex::new(HashMap::new())).lock().unwrap();
        cyclotomic_poly(m, &mut phis)
    };
    let deg = phi.len() - 1;
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur: Poly = vec![BigRational::one()];
    for _ in 0..m {
        let mut padded = cur.clone();
        padded.resize(deg, BigRational::zero());
        powers.push(padded);
        let mut next = vec![BigRational::zero()];
        next.extend(cur.iter().cloned());
        cur = poly::divrem(&next, &phi).1;
    }
    let f = Arc::new(CycloField { phi, powers });
    fields.lock().unwrap().insert(m, f.clone());
    f
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    (1..=m).filter(|k| num_integer::gcd(*k, m) == 1).count() as u64
}

/// Element of Q(ζ_m) in the power basis 1, ζ, …, ζ^{φ(m)−1}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    m: u64,
    coords: Vec<BigRational>,
}

impl CycNumber {
    pub fn zero(m: u64) -> Self {
        let deg = field(m).phi.len() - 1;
        Self { m, coords: vec![BigRational::zero(); deg] }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_rational(m: u64, c: BigRational) -> Self {
        let mut z = Self::zero(m);
        z.coords[0] = c;
        z
    }

    pub fn from_int(m: u64, n: i64) -> Self {
        Self::from_rational(m, BigRational::from_integer(n.into()))
    }

    /// ζ_m^k for any integer k.
    pub fn zeta_pow(m: u64, k: i64) -> Self {
        let f = field(m);
        let t = k.rem_euclid(m as i64) as usize;
        Self { m, coords: f.powers[t].clone() }
    }

    /// Builds from coordinates in the power basis; the length must be φ(m).
    pub fn from_coords(m: u64, coords: Vec<BigRational>) -> Result<Self, QError> {
        let deg = field(m).phi.len() - 1;
        if coords.len() != deg {
            return Err(QError::BadCoordinates { m, expected: deg, got: coords.len() });
        }
        Ok(Self { m, coords })
    }

    /// Reduces an arbitrary polynomial in ζ.
    fn from_poly(m: u64, p: &[BigRational]) -> Self {
        let f = field(m);
        let deg = f.phi.len() - 1;
        let mut coords = vec![BigRational::zero(); deg];
        for (i, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i < deg {
                coords[i] += c;
            } else {
                for (j, pj) in f.powers[i % m as usize].iter().enumerate() {
                    if !pj.is_zero() {
                        coords[j] += c * pj;
                    }
                }
            }
        }
        Self { m, coords }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// Evaluates a Laurent polynomial at q = ζ_m^e.
    pub fn eval_laurent(p: &LaurentPoly, m: u64, e: u64) -> Self {
        let f = field(m);
        let deg = f.phi.len() - 1;
        let mut coords = vec![BigRational::zero(); deg];
        for (k, c) in p.terms() {
            let t = (k * e as i64).rem_euclid(m as i64) as usize;
            for (j, pj) in f.powers[t].iter().enumerate() {
                if !pj.is_zero() {
                    coords[j] += c * pj;
                }
            }
        }
        Self { m, coords }
    }

    pub fn recip(&self) -> Result<Self, QError> {
        let f = field(self.m);
        let mut a = self.coords.clone();
        poly::trim(&mut a);
        let inv = poly::inverse_mod(&a, &f.phi).ok_or(QError::DivisionByZero)?;
        Ok(Self::from_poly(self.m, &inv))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, QError> {
        Ok(self * &o.recip()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, QError> {
        let mut base = if e < 0 { self.recip()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.m);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Complex embedding ζ_m ↦ exp(2πi/m).
    pub fn to_complex(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.m as f64);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coords.iter().rev() {
            acc = acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        }
        acc
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.m, o.m, "cyclotomic orders differ");
    }
}

impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, o: &CycNumber) -> CycNumber {
        self.check(o);
        CycNumber { m: self.m, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, o: &CycNumber) -> CycNumber {
        self.check(o);
        CycNumber { m: self.m, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber { m: self.m, coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, o: &CycNumber) -> CycNumber {
        self.check(o);
        CycNumber::from_poly(self.m, &poly::mul(&self.coords, &o.coords))
    }
}

/// Panics on division by zero; use [`CycNumber::checked_div`] when that is possible.
impl Div for &CycNumber {
    type Output = CycNumber;
    fn div(self, o: &CycNumber) -> CycNumber {
        self.checked_div(o).expect("division by zero in cyclotomic field")
    }
}

forward_owned!(CycNumber, Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = LaurentPoly::from_terms(
            self.coords.iter().enumerate().map(|(i, c)| (i as i64, c.clone())),
        );
        let s = p.to_string().replace('q', "z");
        write!(f, "{s} (z = zeta_{})", self.m)
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    m: u64,
    coords: Vec<String>,
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycRepr { m: self.m, coords: self.coords.iter().map(rat_to_string).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = CycRepr::deserialize(d)?;
        if r.m == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        let coords = r
            .coords
            .iter()
            .map(|c| rat_from_str(c).ok_or_else(|| D::Error::custom(format!("bad rational {c:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        CycNumber::from_coords(r.m, coords).map_err(D::Error::custom)
    }
}

/// Φ_m as integer coefficients, lowest degree first.
pub fn cyclotomic_coeffs(m: u64) -> Vec<BigInt> {
    field(m).phi.iter().map(|c| c.to_integer()).collect()
}
