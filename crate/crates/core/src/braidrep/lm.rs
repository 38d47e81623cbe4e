//! Levenberg–Marquardt for holomorphic residual maps C^m → C^r.
//!
//! The Jacobian is taken by central differences along the real axis, which
//! gives the complex derivative for holomorphic maps.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub struct LmResult {
    pub x: Vec<Complex64>,
    /// max |r_j| at `x`
    pub residual: f64,
}

fn max_abs(r: &[Complex64]) -> f64 {
    r.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn sq(r: &[Complex64]) -> f64 {
    r.iter().map(|z| z.norm_sqr()).sum()
}

pub fn solve<F>(f: F, x0: Vec<Complex64>, max_iter: usize, target: f64) -> LmResult
where
    F: Fn(&[Complex64]) -> Vec<Complex64>,
{
    let mut x = x0;
    let mut r = f(&x);
    let mut cost = sq(&r);
    let m = x.len();
    if m == 0 {
        return LmResult { residual: max_abs(&r), x };
    }
    let mut mu = 1e-3;
    for _ in 0..max_iter {
        if max_abs(&r) < target {
            break;
        }
        let nr = r.len();
        let mut jac = DMatrix::<Complex64>::zeros(nr, m);
        for j in 0..m {
            let h = 1e-6 * (1.0 + x[j].norm());
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            let (fp, fm) = (f(&xp), f(&xm));
            for i in 0..nr {
                jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
            }
        }
        let jh = jac.adjoint();
        let jtj = &jh * &jac;
        let g = &jh * DVector::from_column_slice(&r);
        let mut improved = false;
        for _ in 0..30 {
            let mut a = jtj.clone();
            for i in 0..m {
                a[(i, i)] += Complex64::new(mu * (1.0 + jtj[(i, i)].re), 0.0);
            }
            let Some(step) = a.lu().solve(&(-&g)) else {
                mu *= 10.0;
                continue;
            };
            let xn: Vec<Complex64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let rn = f(&xn);
            let cn = sq(&rn);
            if cn.is_finite() && cn < cost {
                let small = step.norm() < 1e-15 * (1.0 + x.iter().map(|z| z.norm()).fold(0.0, f64::max));
                x = xn;
                r = rn;
                cost = cn;
                mu = (mu / 3.0).max(1e-15);
                improved = !small;
                break;
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
    }
    LmResult { residual: max_abs(&r), x }
}
