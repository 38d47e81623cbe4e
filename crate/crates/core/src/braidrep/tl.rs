use super::{eigen_data, max_abs, BraidError, Representation};
use crate::bratteli::EigenLabel;
use crate::dims::qdim;
use crate::lattice::Weight;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

/// Projection onto the `target` eigenspace of a diagonalizable `s` whose
/// spectrum lies in `spectrum` (Lagrange interpolation).
pub fn spectral_projection(s: &DMatrix<Complex64>, spectrum: &[Complex64], target: Complex64) -> DMatrix<Complex64> {
    let n = s.nrows();
    let id = DMatrix::<Complex64>::identity(n, n);
    let mut p = id.clone();
    for f in spectrum {
        if (f - target).norm() > 1e-12 {
            p = p * (s - &id * *f) / (target - f);
        }
    }
    p
}

fn distinct_eigenvalues(rep: &Representation) -> Result<Vec<Complex64>, BraidError> {
    let ed = eigen_data(&rep.ctx)?;
    let mut out: Vec<Complex64> = Vec::new();
    for l in EigenLabel::ALL {
        let z = ed.value(l).to_complex().ok_or_else(|| BraidError::NeedsNumericQ("spectral projection".into()))?;
        if out.iter().all(|w| (w - z).norm() > 1e-9) {
            out.push(z);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct TlReport {
    /// e_i for i = 1..n−1
    pub elements: Vec<DMatrix<Complex64>>,
    /// max residual over the checked relations
    pub residual: f64,
}

/// e_i = λ₂-eigenprojection of S_i, checked against the Temperley–Lieb relations
/// e_i² = e_i, e_ie_j = e_je_i (|i−j| ≥ 2) and e_ie_{i±1}e_i = e_i/[2]².
pub fn tl_elements(rep: &Representation, tol: f64) -> Result<TlReport, BraidError> {
    if rep.mu.size() != rep.n as i64 {
        return Err(BraidError::TLViolation(format!("{} is not in the new part of V^⊗{}", rep.mu, rep.n)));
    }
    let ed = eigen_data(&rep.ctx)?;
    let l1 = ed.l1.to_complex().unwrap();
    let l2 = ed.l2.to_complex().unwrap();
    let two_sq = -l1 / l2 + 2.0 - l2 / l1;
    let spec = distinct_eigenvalues(rep)?;
    let es: Vec<DMatrix<Complex64>> = rep.dense().iter().map(|s| spectral_projection(s, &spec, l2)).collect();
    let mut worst = 0.0f64;
    let mut check = |name: String, r: f64| -> Result<(), BraidError> {
        worst = worst.max(r);
        if r > tol {
            Err(BraidError::TLViolation(format!("{name} (residual {r:.3e})")))
        } else {
            Ok(())
        }
    };
    for (a, e) in es.iter().enumerate() {
        check(format!("e{}^2 = e{}", a + 1, a + 1), max_abs(&(e * e - e)))?;
        for (b, f) in es.iter().enumerate() {
            if b > a + 1 {
                check(format!("e{}e{} = e{}e{}", a + 1, b + 1, b + 1, a + 1), max_abs(&(e * f - f * e)))?;
            }
            if b + 1 == a || a + 1 == b {
                check(format!("e{}e{}e{} = e{}/[2]^2", a + 1, b + 1, a + 1, a + 1), max_abs(&(e * f * e - e / two_sq)))?;
            }
        }
    }
    Ok(TlReport { elements: es, residual: worst })
}

#[derive(Debug, Clone, Serialize)]
pub struct MarkovReport {
    /// false when λ₄ does not occur in S₂ (nothing to check)
    pub applicable: bool,
    pub residual: f64,
}

/// p₂ p_{λ,1} p₂ = (d_γ / d_V²) p₂ for each eigenvalue λ of S₁ with summand γ,
/// where p₂ is the λ₄-projection of S₂.
pub fn markov_check(rep: &Representation) -> Result<MarkovReport, BraidError> {
    if rep.n < 3 {
        return Ok(MarkovReport { applicable: false, residual: 0.0 });
    }
    let ed = eigen_data(&rep.ctx)?;
    let spec = distinct_eigenvalues(rep)?;
    let dense = rep.dense();
    let l4 = ed.l4.to_complex().unwrap();
    let p2 = spectral_projection(&dense[1], &spec, l4);
    if max_abs(&p2) < 1e-12 {
        return Ok(MarkovReport { applicable: false, residual: 0.0 });
    }
    let dv = qdim(&Weight::L1, &rep.ctx).to_complex().unwrap();
    let mut worst = 0.0f64;
    for l in EigenLabel::ALL {
        let z = ed.value(l).to_complex().unwrap();
        let p1 = spectral_projection(&dense[0], &spec, z);
        let dg = qdim(&l.gamma(), &rep.ctx).to_complex().unwrap();
        let r = max_abs(&(&p2 * &p1 * &p2 - &p2 * (dg / (dv * dv))));
        worst = worst.max(r);
    }
    Ok(MarkovReport { applicable: true, residual: worst })
}
