//! Small dense square matrices over QValue.

use crate::qarith::{QContext, QError, QValue};
use nalgebra::DMatrix;
use num_complex::Complex64;

#[derive(Clone, PartialEq, Debug)]
pub struct QMatrix {
    n: usize,
    data: Vec<QValue>,
}

impl QMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> QValue) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        QMatrix { n, data }
    }

    pub fn identity(n: usize, ctx: &QContext) -> Self {
        Self::from_fn(n, |r, c| if r == c { ctx.one() } else { ctx.zero() })
    }

    pub fn scalar(n: usize, v: &QValue, ctx: &QContext) -> Self {
        Self::from_fn(n, |r, c| if r == c { v.clone() } else { ctx.zero() })
    }

    pub fn from_complex(m: &DMatrix<Complex64>) -> Self {
        Self::from_fn(m.nrows(), |r, c| QValue::Float(m[(r, c)]))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &QValue {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: QValue) {
        self.data[r * self.n + c] = v;
    }

    pub fn rows(&self) -> Vec<Vec<QValue>> {
        self.data.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(|v| !matches!(v, QValue::Float(_)))
    }

    pub fn try_mul(&self, o: &QMatrix) -> Result<QMatrix, QError> {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = self.get(r, 0).try_mul(o.get(0, c))?;
                for k in 1..n {
                    acc = acc.try_add(&self.get(r, k).try_mul(o.get(k, c))?)?;
                }
                data.push(acc);
            }
        }
        Ok(QMatrix { n, data })
    }

    pub fn try_sub(&self, o: &QMatrix) -> Result<QMatrix, QError> {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.try_sub(b)).collect::<Result<_, _>>()?;
        Ok(QMatrix { n: self.n, data })
    }

    pub fn try_scale(&self, s: &QValue) -> Result<QMatrix, QError> {
        let data = self.data.iter().map(|a| a.try_mul(s)).collect::<Result<_, _>>()?;
        Ok(QMatrix { n: self.n, data })
    }

    pub fn trace(&self) -> Result<QValue, QError> {
        let mut t = self.get(0, 0).clone();
        for i in 1..self.n {
            t = t.try_add(self.get(i, i))?;
        }
        Ok(t)
    }

    pub fn is_zero_tol(&self, tol: f64) -> bool {
        self.data.iter().all(|v| v.is_zero_tol(tol))
    }

    /// Complex image; `None` in formal mode.
    pub fn to_complex(&self) -> Option<DMatrix<Complex64>> {
        let vals: Option<Vec<Complex64>> = self.data.iter().map(|v| v.to_complex()).collect();
        vals.map(|v| DMatrix::from_row_slice(self.n, self.n, &v))
    }

    /// Largest absolute entry of the complex image.
    pub fn max_norm(&self) -> Option<f64> {
        self.to_complex().map(|m| max_abs(&m))
    }
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
