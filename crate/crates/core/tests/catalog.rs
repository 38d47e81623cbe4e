use g2core::braidrep::{assemble, spectral_projection, AssembleOptions};
use g2core::catalog::*;
use g2core::lattice::{LevelRule, Weight};
use g2core::qarith::{CycNumber, QContext, QValue};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fl(z: Complex64) -> QValue {
    QValue::Float(z)
}

fn re(x: f64) -> QValue {
    fl(Complex64::new(x, 0.0))
}

fn cyc(m: u64, k: i64) -> QValue {
    QValue::Cyclo { m, e: 1, value: CycNumber::zeta_pow(m, k) }
}

fn theta_c(t: Theta) -> Complex64 {
    t.complex()
}

#[test]
fn generic_rows_match_table() {
    let rows = generic_table();
    assert_eq!(rows.iter().map(|r| r.dimension).collect::<Vec<_>>(), vec![9, 8, 6, 3, 3, 2, 1]);
    let eight = &rows[1];
    assert_eq!(eight.determinant, [4, 2, 2]);
    assert_eq!(eight.delta4_sq, Term::new(1, 0, [6, 3, 3]));
    assert_eq!(eight.weights.iter().find(|w| w.i == 1 && w.j == 1).unwrap().mult, 2);
    assert_eq!(eight.label.to_string(), "{λ₁⁴λ₂²λ₃²}");
    assert_eq!(rows[6].delta4_sq, Term::new(1, 0, [12, 0, 0]));
    assert_eq!(rows[0].delta4_sq, Term::new(1, 1, [4, 4, 4]));
    assert_eq!(rows[0].label.to_string(), "{λ₁³λ₂³λ₃³}_θ");
}

#[test]
fn every_row_is_consistent() {
    for row in expand(&generic_table()).iter().chain(expand(&subquotient_table()).iter()) {
        let f = row.consistency_failures();
        assert!(f.is_empty(), "{}: {f:?}", row.label);
    }
}

#[test]
fn corrupted_row_is_caught() {
    let mut row = generic_table()[1].clone();
    row.weights[0].mult = 1;
    assert!(!row.consistency_failures().is_empty());
    let mut row = generic_table()[2].clone();
    row.delta4_sq = Term::new(1, 0, [6, 3, 3]);
    assert!(!row.consistency_failures().is_empty());
    let mut row = subquotient_table()[4].clone();
    row.delta4_sq = Term::new(1, 0, [6, 4, 2]);
    assert!(!row.consistency_failures().is_empty());
}

#[test]
fn expansion_counts() {
    let g = expand(&generic_table());
    let count = |d| g.iter().filter(|r| r.dimension == d).count();
    assert_eq!((count(9), count(8), count(6), count(3), count(2), count(1)), (2, 3, 6, 7, 3, 3));
    let s = expand(&subquotient_table());
    let count = |d| s.iter().filter(|r| r.dimension == d).count();
    assert_eq!((count(2), count(3), count(4), count(5), count(7)), (3, 3, 3, 6, 6));
}

/// A random point on the locus of a binomial equation, solved numerically
/// for one eigenvalue.
fn point_on(row: &K4RepDescriptor, rng: &mut ChaCha8Rng) -> [Complex64; 3] {
    let eq = row.equation.as_ref().unwrap();
    let th = theta_c(row.label.theta.unwrap_or(Theta::Omega));
    let (a, b) = (eq.0[0], eq.0[1]);
    let m = (0..3).find(|&i| a.exps[i] != b.exps[i]).unwrap();
    let mut lam = [0; 3].map(|_| Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(-3.0..3.0)));
    let rest = |t: &g2core::catalog::Term, lam: &[Complex64; 3]| {
        let mut v = Complex64::new(t.coeff as f64, 0.0) * th.powu(t.theta);
        for i in (0..3).filter(|&i| i != m) {
            v *= lam[i].powu(t.exps[i]);
        }
        v
    };
    // a·λ_m^{p} + b·λ_m^{r} = 0 with p ≠ r
    let (p, r) = (a.exps[m] as i32, b.exps[m] as i32);
    let rhs = -rest(&b, &lam) / rest(&a, &lam);
    lam[m] = rhs.powf(1.0 / (p - r) as f64);
    lam
}

#[test]
fn subquotient_twist_power_on_locus() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for row in expand(&subquotient_table()) {
        for _ in 0..3 {
            let lam = point_on(&row, &mut rng);
            let q = lam.map(fl);
            assert!(row.equation.as_ref().unwrap().vanishes(&q, row.label.theta.unwrap_or(Theta::Omega)).unwrap());
            let d = row.delta4_sq_value(&q).unwrap().unwrap().to_complex().unwrap();
            let det: Complex64 = (0..3).map(|i| lam[i].powu(row.determinant[i])).product();
            let lhs = d.powu(row.dimension);
            let rhs = det.powu(12);
            assert!((lhs - rhs).norm() < 1e-8 * rhs.norm().max(1.0), "{}", row.label);
        }
    }
}

#[test]
fn w_case_factors_add_up() {
    for c in w_cases_closed() {
        let dim: u32 = c.factors.iter().map(|f| f.dimension).sum();
        assert_eq!(dim, 8, "{}", c.name());
        let mut det = [0; 3];
        for f in &c.factors {
            for i in 0..3 {
                det[i] += f.label.det[i];
            }
        }
        assert_eq!(det, W_DETERMINANT, "{}", c.name());
    }
    assert_eq!(w_cases_closed().len(), 9);
    let labels: Vec<String> = w_cases()[0].factors.iter().map(|f| f.label.to_string()).collect();
    assert_eq!(labels, vec!["{λ₁²|λ₂²λ₃}", "{λ₁²λ₃}"]);
}

#[test]
fn b3_examples() {
    let q = Complex64::new(1.37, 0.0);
    let g2 = g2_eigenvalues(&fl(q)).unwrap();
    assert!(b3_semisimple(&g2).unwrap().semisimple);
    let r = b3_semisimple(&[re(2.0), re(2.0), re(5.0)]).unwrap();
    assert!(!r.semisimple);
    assert!(r.failing.iter().any(|p| p.to_string() == "λ₁ − λ₂"));
    // λ₁² + λ₂λ₃ = 0
    let r = b3_semisimple(&[re(1.0), re(2.0), re(-0.5)]).unwrap();
    assert_eq!(r.failing.iter().map(|p| p.to_string()).collect::<Vec<_>>(), vec!["λ₁² + λ₂λ₃"]);
    // λ₂/λ₁ a primitive sixth root of unity
    let r = b3_semisimple(&[cyc(6, 0), cyc(6, 1), cyc(6, 3)]).unwrap();
    assert!(r.failing.iter().any(|p| p.to_string() == "λ₁² − λ₁λ₂ + λ₂²"));
    // 1, θ, θ²: all seven simple K₃ modules survive
    let r = b3_semisimple(&[cyc(3, 0), cyc(3, 1), cyc(3, 2)]).unwrap();
    assert!(r.semisimple, "{:?}", r.failing);
    assert!(b3_semisimple(&[re(0.0), re(1.0), re(2.0)]).is_err());
}

fn case_of(lam: &[QValue; 3]) -> String {
    match classify_w(lam).unwrap() {
        WClass::Irreducible => "irreducible".into(),
        WClass::Case(c) => c.name(),
    }
}

#[test]
fn classify_w_examples() {
    assert_eq!(case_of(&g2_eigenvalues(&re(1.37)).unwrap()), "irreducible");
    assert_eq!(case_of(&g2_eigenvalues(&QValue::Formal(g2core::qarith::RatFunc::q_pow(1))).unwrap()), "irreducible");
    assert_eq!(case_of(&[re(2.0), re(3.0), re(27.0 / 4.0)]), "(1)");
    assert_eq!(case_of(&[re(2.0), re(27.0 / 4.0), re(3.0)]), "(1)'");
    let th = Theta::Omega.complex();
    assert_eq!(case_of(&[fl((10.0 * th).sqrt()), re(2.0), re(5.0)]), "(2)");
    assert_eq!(case_of(&[cyc(8, 3), cyc(8, 0), cyc(8, 2)]), "(3)");
    assert_eq!(case_of(&[cyc(4, 1), cyc(4, 2), cyc(4, 0)]), "(4)");
    assert_eq!(case_of(&[cyc(12, 7), cyc(12, 0), cyc(12, 10)]), "(5)");
    assert_eq!(case_of(&[cyc(6, 5), cyc(6, 0), cyc(6, 2)]), "(6)");
    assert_eq!(case_of(&[cyc(6, 3), cyc(6, 0), cyc(6, 4)]), "(6)'");
    // q = ζ₃₀ gives q¹⁰ = θ
    let q = cyc(30, 1);
    let WClass::Case(c) = classify_w(&g2_eigenvalues(&q).unwrap()).unwrap() else { panic!() };
    assert_eq!((c.id, c.swapped, c.theta), (2, false, Some(Theta::Omega)));
    assert!(matches!(classify_w(&[re(1.0), re(1.0), re(2.0)]), Err(CatalogError::NotDistinct(1, 2))));
}

#[test]
fn degeneracy_examples() {
    let q = cyc(30, 1);
    let rep = degeneracy_report(&g2_eigenvalues(&q).unwrap()).unwrap();
    let eight = rep.degenerate.iter().find(|e| e.representation.to_string() == "{λ₁⁴λ₂²λ₃²}").unwrap();
    assert_eq!(eight.vanished.iter().map(|p| p.to_string()).collect::<Vec<_>>(), vec!["λ₁² − θλ₂λ₃"]);
    assert!(rep.subquotients.iter().any(|r| r.dimension == 7 && r.label.det == [3, 2, 2]));

    let rep = degeneracy_report(&[re(1.5), re(2.0), re(-2.0)]).unwrap();
    let four = rep.subquotients.iter().find(|r| r.dimension == 4).unwrap();
    assert_eq!(four.label.to_string(), "{λ₁²λ₂λ₃}");
    assert_eq!(four.delta4_sq, Term::new(1, 0, [6, 4, 2]));

    assert!(degeneracy_report(&g2_eigenvalues(&re(1.37)).unwrap()).unwrap().is_empty());
}

#[test]
fn theta_in_fields() {
    assert!(Theta::Omega.cyc(5).is_none());
    let t = Theta::Omega.cyc(12).unwrap();
    assert!(t.pow(3).unwrap().is_one() && !t.is_one());
    assert_eq!(Theta::OmegaBar.cyc(12).unwrap(), t.pow(2).unwrap());
    // θ is not in Q(ζ₅): the θ-relation cannot vanish there
    let p = &generic_table()[1].degeneracy[2];
    assert!(!p.vanishes(&[cyc(5, 1), cyc(5, 2), cyc(5, 3)], Theta::Omega).unwrap());
}

/// Joint eigenspaces of S₁ and S₃ on W = Hom(V_{Λ₁+Λ₂}, V^⊗4) reproduce the
/// weights of the eight-dimensional family; Δ₄² is its tabulated scalar.
#[test]
fn assembled_w_matches_eight_dimensional_row() {
    let ctx = QContext::Float { re: 1.1, im: 0.0 };
    let rep = assemble(&Weight::new(1, 1).unwrap(), 4, LevelRule::Generic, &ctx, &AssembleOptions::default()).unwrap();
    assert_eq!(rep.dim(), 8);
    let lam = g2_eigenvalues(&fl(Complex64::new(1.1, 0.0))).unwrap();
    let lc = lam.clone().map(|x| x.to_complex().unwrap());
    let s = rep.dense();
    let row = &generic_table()[1];
    for i in 1..=3 {
        for j in 1..=3 {
            let p = spectral_projection(&s[0], &lc, lc[i - 1]) * spectral_projection(&s[2], &lc, lc[j - 1]);
            let mult = p.trace().re.round() as u32;
            let want = row.weights.iter().find(|w| w.i == i && w.j == j).map_or(0, |w| w.mult);
            assert_eq!(mult, want, "weight ({i},{j})");
        }
    }
    let d = &s[0] * &s[1] * &s[2];
    let full = d.pow(4);
    let alpha = row.delta4_sq_value(&lam).unwrap().unwrap().to_complex().unwrap();
    let id = nalgebra::DMatrix::<Complex64>::identity(8, 8) * alpha;
    assert!((full - id).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-9 * alpha.norm());
    assert_eq!(case_of(&lam), "irreducible");
}

proptest! {
    #[test]
    fn generic_points_are_irreducible(a in 0.3f64..3.0, b in -3.0f64..3.0) {
        let q = Complex64::from_polar(a, b);
        prop_assume!((q * q - 1.0).norm() > 1e-2 && (q.powi(8) - 1.0).norm() > 1e-2);
        let lam = g2_eigenvalues(&fl(q)).unwrap();
        let r = classify_w(&lam);
        prop_assert!(r.is_ok());
    }

    #[test]
    fn permuting_rows_keeps_consistency(k in 0usize..6, r in 0usize..7) {
        let p = permutations()[k];
        let row = generic_table()[r].permuted(&p);
        prop_assert!(row.consistency_failures().is_empty());
    }
}
