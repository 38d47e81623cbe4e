//! Coefficient tower: Laurent polynomials and rational functions in q over Q,
//! cyclotomic fields, and complex floating values.

mod cyclo;
mod laurent;
mod poly;
mod ratfunc;

pub use cyclo::{cyclotomic_coeffs, totient, CycNumber};
pub use laurent::{qint, LaurentPoly};
pub use ratfunc::RatFunc;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

/// Default comparison tolerance in float mode.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("values from different contexts: {0} and {1}")]
    TagMismatch(&'static str, &'static str),
    #[error("expected {expected} coordinates for order {m}, got {got}")]
    BadCoordinates { m: u64, expected: usize, got: usize },
}

/// Where q lives: an indeterminate, ζ_m^e, or a complex number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum QContext {
    Formal,
    Cyclo { m: u64, e: u64 },
    Float { re: f64, im: f64 },
}

impl QContext {
    pub fn float(q: Complex64) -> Self {
        QContext::Float { re: q.re, im: q.im }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, QContext::Float { .. })
    }

    /// The complex number q, when the context has one.
    pub fn q_complex(&self) -> Option<Complex64> {
        match *self {
            QContext::Formal => None,
            QContext::Cyclo { m, e } => {
                Some(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / m as f64))
            }
            QContext::Float { re, im } => Some(Complex64::new(re, im)),
        }
    }

    pub fn from_rational(&self, c: BigRational) -> QValue {
        match *self {
            QContext::Formal => QValue::Formal(RatFunc::from_laurent(LaurentPoly::constant(c))),
            QContext::Cyclo { m, e } => QValue::Cyclo { m, e, value: CycNumber::from_rational(m, c) },
            QContext::Float { .. } => QValue::Float(Complex64::new(num_traits::ToPrimitive::to_f64(&c).unwrap_or(f64::NAN), 0.0)),
        }
    }

    pub fn int(&self, n: i64) -> QValue {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn zero(&self) -> QValue {
        self.int(0)
    }

    pub fn one(&self) -> QValue {
        self.int(1)
    }

    /// q^k
    pub fn q_pow(&self, k: i64) -> QValue {
        match *self {
            QContext::Formal => QValue::Formal(RatFunc::q_pow(k)),
            QContext::Cyclo { m, e } => {
                QValue::Cyclo { m, e, value: CycNumber::zeta_pow(m, k * e as i64) }
            }
            QContext::Float { re, im } => QValue::Float(Complex64::new(re, im).powi(k as i32)),
        }
    }

    pub fn specialize_laurent(&self, p: &LaurentPoly) -> QValue {
        match *self {
            QContext::Formal => QValue::Formal(RatFunc::from_laurent(p.clone())),
            QContext::Cyclo { m, e } => QValue::Cyclo { m, e, value: CycNumber::eval_laurent(p, m, e) },
            QContext::Float { re, im } => QValue::Float(p.eval_complex(Complex64::new(re, im))),
        }
    }

    /// Ring-homomorphic evaluation of a rational function.
    pub fn specialize(&self, f: &RatFunc) -> Result<QValue, QError> {
        match *self {
            QContext::Formal => Ok(QValue::Formal(f.clone())),
            QContext::Float { .. } => {
                let d = self.specialize_laurent(f.denominator());
                if d.is_zero_tol(0.0) {
                    return Err(QError::DivisionByZero);
                }
                self.specialize_laurent(f.numerator()).try_div(&d)
            }
            QContext::Cyclo { .. } => {
                let d = self.specialize_laurent(f.denominator());
                self.specialize_laurent(f.numerator()).try_div(&d)
            }
        }
    }
}

/// Free-function form of [`QContext::specialize`].
pub fn specialize(f: &RatFunc, ctx: &QContext) -> Result<QValue, QError> {
    ctx.specialize(f)
}

/// Exact division in the Laurent ring.
pub fn exact_divide(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, QError> {
    a.exact_divide(b)
}

/// A value in one of the three coefficient contexts.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QValue {
    Formal(RatFunc),
    Cyclo { m: u64, e: u64, value: CycNumber },
    Float(Complex64),
}

impl QValue {
    pub fn tag(&self) -> &'static str {
        match self {
            QValue::Formal(_) => "formal",
            QValue::Cyclo { .. } => "cyclo",
            QValue::Float(_) => "float",
        }
    }

    /// Exact zero test in exact contexts, |z| ≤ tol in float.
    pub fn is_zero_tol(&self, tol: f64) -> bool {
        match self {
            QValue::Formal(f) => f.is_zero(),
            QValue::Cyclo { value, .. } => value.is_zero(),
            QValue::Float(z) => z.norm() <= tol,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero_tol(DEFAULT_TOL)
    }

    pub fn approx_eq(&self, o: &QValue, tol: f64) -> bool {
        (self - o).is_zero_tol(tol)
    }

    /// Complex value; `None` in formal mode.
    pub fn to_complex(&self) -> Option<Complex64> {
        match self {
            QValue::Formal(_) => None,
            QValue::Cyclo { value, .. } => Some(value.to_complex()),
            QValue::Float(z) => Some(*z),
        }
    }

    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        match self {
            QValue::Formal(f) => Some(f),
            _ => None,
        }
    }

    fn same(&self, o: &QValue) -> Result<(), QError> {
        let ok = match (self, o) {
            (QValue::Formal(_), QValue::Formal(_)) | (QValue::Float(_), QValue::Float(_)) => true,
            (QValue::Cyclo { m, e, .. }, QValue::Cyclo { m: m2, e: e2, .. }) => m == m2 && e == e2,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(QError::TagMismatch(self.tag(), o.tag()))
        }
    }

    pub fn try_add(&self, o: &QValue) -> Result<QValue, QError> {
        self.same(o)?;
        Ok(match (self, o) {
            (QValue::Formal(a), QValue::Formal(b)) => QValue::Formal(a + b),
            (QValue::Cyclo { m, e, value: a }, QValue::Cyclo { value: b, .. }) => {
                QValue::Cyclo { m: *m, e: *e, value: a + b }
            }
            (QValue::Float(a), QValue::Float(b)) => QValue::Float(a + b),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, o: &QValue) -> Result<QValue, QError> {
        self.try_add(&-o)
    }

    pub fn try_mul(&self, o: &QValue) -> Result<QValue, QError> {
        self.same(o)?;
        Ok(match (self, o) {
            (QValue::Formal(a), QValue::Formal(b)) => QValue::Formal(a * b),
            (QValue::Cyclo { m, e, value: a }, QValue::Cyclo { value: b, .. }) => {
                QValue::Cyclo { m: *m, e: *e, value: a * b }
            }
            (QValue::Float(a), QValue::Float(b)) => QValue::Float(a * b),
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, o: &QValue) -> Result<QValue, QError> {
        self.same(o)?;
        Ok(match (self, o) {
            (QValue::Formal(a), QValue::Formal(b)) => QValue::Formal(a.checked_div(b)?),
            (QValue::Cyclo { m, e, value: a }, QValue::Cyclo { value: b, .. }) => {
                QValue::Cyclo { m: *m, e: *e, value: a.checked_div(b)? }
            }
            (QValue::Float(a), QValue::Float(b)) => {
                if b.norm() == 0.0 {
                    return Err(QError::DivisionByZero);
                }
                QValue::Float(a / b)
            }
            _ => unreachable!(),
        })
    }

    /// 1 in the same context as `self`.
    pub fn one_like(&self) -> QValue {
        match self {
            QValue::Formal(_) => QValue::Formal(RatFunc::one()),
            QValue::Cyclo { m, e, .. } => QValue::Cyclo { m: *m, e: *e, value: CycNumber::one(*m) },
            QValue::Float(_) => QValue::Float(Complex64::new(1.0, 0.0)),
        }
    }

    pub fn recip(&self) -> Result<QValue, QError> {
        self.one_like().try_div(self)
    }

    pub fn powi(&self, k: i64) -> Result<QValue, QError> {
        match self {
            QValue::Formal(f) => Ok(QValue::Formal(f.pow(k as i32)?)),
            QValue::Cyclo { m, e, value } => Ok(QValue::Cyclo { m: *m, e: *e, value: value.pow(k)? }),
            QValue::Float(z) => {
                if k < 0 && z.norm() == 0.0 {
                    return Err(QError::DivisionByZero);
                }
                Ok(QValue::Float(z.powi(k as i32)))
            }
        }
    }
}

impl Neg for &QValue {
    type Output = QValue;
    fn neg(self) -> QValue {
        match self {
            QValue::Formal(a) => QValue::Formal(-a),
            QValue::Cyclo { m, e, value } => QValue::Cyclo { m: *m, e: *e, value: -value },
            QValue::Float(z) => QValue::Float(-z),
        }
    }
}

impl Neg for QValue {
    type Output = QValue;
    fn neg(self) -> QValue {
        -&self
    }
}

// The operator forms panic on cross-context use or division by zero; the
// `try_*` methods report those as errors.
macro_rules! qvalue_op {
    ($($tr:ident $m:ident $try:ident),*) => {$(
        impl $tr for &QValue {
            type Output = QValue;
            fn $m(self, o: &QValue) -> QValue {
                self.$try(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    )*};
}
qvalue_op!(Add add try_add, Sub sub try_sub, Mul mul try_mul, Div div try_div);
laurent::forward_owned!(QValue, Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QValue::Formal(r) => write!(f, "{r}"),
            QValue::Cyclo { value, .. } => write!(f, "{value}"),
            QValue::Float(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

impl fmt::Debug for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({self})", self.tag())
    }
}
