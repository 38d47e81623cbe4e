use super::laurent::{forward_owned, LaurentPoly};
use super::poly;
use super::QError;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Rational function in q.
///
/// Canonical form: numerator and denominator coprime, denominator with lowest
/// exponent 0 and lowest coefficient 1. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(n))
    }

    pub fn q_pow(k: i64) -> Self {
        Self::from_laurent(LaurentPoly::q_pow(k))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a Laurent polynomial when the denominator is a unit.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    fn reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (ln, n) = num.dense();
        let (ld, d) = den.dense();
        let g = poly::gcd(n, d);
        let (n2, d2) = if g.len() > 1 {
            (poly::divrem(n, &g).0, poly::divrem(d, &g).0)
        } else {
            (n.to_vec(), d.to_vec())
        };
        let c = d2[0].clone();
        let inv = c.recip();
        let n2: Vec<BigRational> = n2.iter().map(|x| x * &inv).collect();
        let d2: Vec<BigRational> = d2.iter().map(|x| x * &inv).collect();
        Self { num: LaurentPoly::from_dense(ln - ld, n2), den: LaurentPoly::from_dense(0, d2) }
    }

    pub fn recip(&self) -> Result<Self, QError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<Self, QError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        Ok(Self { num: base.num.pow(e.unsigned_abs()), den: base.den.pow(e.unsigned_abs()) })
    }

    pub fn bar(&self) -> Self {
        Self::reduced(self.num.bar(), self.den.bar())
    }

    pub fn eval_complex(&self, q: Complex64) -> Complex64 {
        self.num.eval_complex(q) / self.den.eval_complex(q)
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<RatFunc, QError> {
        if o.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(self * &RatFunc { num: o.den.clone(), den: o.num.clone() })
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::reduced(&self.num + &o.num, self.den.clone());
        }
        RatFunc::reduced(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_laurent(&self.num * &o.num);
        }
        RatFunc::reduced(&self.num * &o.num, &self.den * &o.den)
    }
}

/// Panics on division by zero; use [`RatFunc::checked_div`] when that is possible.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        self.checked_div(o).expect("division by zero rational function")
    }
}

forward_owned!(RatFunc, Add add, Sub sub, Mul mul, Div div);

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

#[derive(Deserialize)]
struct RatFuncRepr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RatFuncRepr::deserialize(d)?;
        RatFunc::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}
