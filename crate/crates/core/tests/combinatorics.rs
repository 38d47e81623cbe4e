use g2core::bratteli::*;
use g2core::dims::*;
use g2core::fusion::*;
use g2core::lattice::*;
use g2core::qarith::*;
use proptest::prelude::*;

fn w(m1: i64, m2: i64) -> Weight {
    Weight::from_eps(m1, m2).unwrap()
}

fn fv(terms: &[(i64, i64, i64)]) -> FusionVector {
    FusionVector::from_terms(terms.iter().map(|&(a, b, m)| (w(a, b), m)))
}

/// Weyl dimension formula over the six positive roots.
fn weyl_dim(mu: &Weight) -> i64 {
    let pos: [Eps; 6] = [[1, -1, 0], [0, 1, -1], [1, 0, -1], [-1, 2, -1], [1, 1, -2], [2, -1, -1]];
    let x = add(&mu.eps(), &RHO);
    let (mut num, mut den) = (1i64, 1i64);
    for a in pos {
        num *= dot(&x, &a);
        den *= dot(&RHO, &a);
    }
    num / den
}

/// Hexagon rule: λ + short roots when dominant, plus λ itself unless λ = bΛ₂.
fn hexagon(l: &Weight) -> Vec<Weight> {
    let mut out: Vec<Weight> =
        SHORT_ROOTS.iter().filter_map(|r| Weight::from_triple(&add(&l.eps(), r))).collect();
    if l.a() != 0 {
        out.push(*l);
    }
    out.sort();
    out
}

#[test]
fn casimir_examples() {
    assert_eq!(casimir(&Weight::L1), 12);
    assert_eq!(casimir(&Weight::ZERO), 0);
    assert_eq!(casimir(&Weight::L2), 24);
    assert_eq!(casimir(&w(2, 0)), 28);
    assert_eq!(casimir(&w(2, 1)), 42);
    assert_eq!(casimir(&w(3, 0)), 48);
}

#[test]
fn simple_coroots_are_dual_to_fundamental_weights() {
    let fund = [Weight::L1.eps(), Weight::L2.eps()];
    for (i, f) in fund.iter().enumerate() {
        for (j, a) in SIMPLE_ROOTS.iter().enumerate() {
            let pairing = 2 * dot(f, a) / dot(a, a);
            assert_eq!(pairing, (i == j) as i64);
        }
    }
    for r in SHORT_ROOTS {
        assert_eq!(dot(&r, &r), 2);
    }
    for r in LONG_ROOTS {
        assert_eq!(dot(&r, &r), 6);
    }
}

#[test]
fn alcove_membership_examples() {
    assert!(!in_alcove(&w(2, 1), LevelRule::Level(-2)));
    assert!(in_alcove(&w(2, 0), LevelRule::Level(-2)));
    assert!(in_alcove(&w(40, 7), LevelRule::Generic));
}

#[test]
fn affine_reflection_examples() {
    let r = affine_reflect(&w(2, 1), 3);
    assert_eq!(r.weight, Some(Weight::L1));
    assert_eq!(r.sign, -1);
    assert!(!r.fixed);
    assert!(affine_reflect(&w(2, 0), 3).fixed);
    // λ with 2λ₁+λ₂ = k+6 at k = 1 sits inside the alcove; its self term
    // in λ⊗V is cancelled by the reflection of λ+Λ₁.
    for l in alcove_weights(1) {
        let (m1, m2) = l.eps2();
        if 2 * m1 + m2 == 7 {
            assert!(!affine_reflect(&l, 1).fixed);
            let t = tensor_v(&l, LevelRule::Level(1)).unwrap();
            assert_eq!(t.get(&l), 0, "{l}");
        }
    }
}

#[test]
fn fixed_locus_for_levels_divisible_by_three() {
    for k in [0, 3, 6, 9, 12] {
        for l in Weight::up_to_size(k / 3 + 2) {
            let (m1, m2) = l.eps2();
            if 3 * (m1 + m2) > k + 3 {
                continue;
            }
            assert_eq!(affine_reflect(&l, k).fixed, 3 * (m1 + m2) == k + 3, "k={k} {l}");
        }
    }
}

#[test]
fn tensor_v_examples() {
    assert_eq!(tensor_v(&Weight::L1, LevelRule::Generic).unwrap(), fv(&[(0, 0, 1), (1, 0, 1), (1, 1, 1), (2, 0, 1)]));
    assert_eq!(tensor_v(&Weight::L2, LevelRule::Generic).unwrap(), fv(&[(1, 0, 1), (2, 0, 1), (2, 1, 1)]));
    assert_eq!(tensor_v(&Weight::L1, LevelRule::Level(3)).unwrap(), fv(&[(0, 0, 1), (1, 0, 1)]));
    assert!(matches!(tensor_v(&w(9, 9), LevelRule::Level(1)), Err(FusionError::NotInAlcove(..))));
}

#[test]
fn tensor_adjoint_examples() {
    let g = LevelRule::Generic;
    assert_eq!(
        tensor_adjoint(&w(2, 0), g).unwrap(),
        fv(&[(3, 1, 1), (3, 0, 1), (2, 1, 1), (2, 0, 1), (1, 1, 1), (1, 0, 1)])
    );
    assert_eq!(
        tensor_adjoint(&w(1, 1), g).unwrap(),
        fv(&[(2, 2, 1), (3, 0, 1), (2, 0, 1), (1, 1, 1), (0, 0, 1)])
    );
    assert_eq!(tensor_adjoint(&Weight::ZERO, g).unwrap(), fv(&[(1, 1, 1)]));
}

#[test]
fn grothendieck_examples() {
    let g = LevelRule::Generic;
    let x = fv(&[(2, 0, 1)]);
    assert_eq!(
        grothendieck_mul(&x, &x, g).unwrap(),
        fv(&[(4, 0, 1), (3, 1, 1), (2, 2, 1), (3, 0, 1), (2, 1, 2), (2, 0, 2), (1, 1, 1), (1, 0, 1), (0, 0, 1)])
    );
    let y = fv(&[(3, 1, 2), (0, 0, -1)]);
    assert_eq!(grothendieck_mul(&y, &fv(&[(0, 0, 1)]), g).unwrap(), y);
    assert_eq!(
        grothendieck_mul(&fv(&[(1, 1, 1)]), &fv(&[(1, 0, 1)]), g).unwrap(),
        fv(&[(2, 1, 1), (2, 0, 1), (1, 0, 1)])
    );
    // virtual identity [2,0] = [1,0]^2 − [1,1] − [1,0] − [0,0]
    let v = fv(&[(1, 0, 1)]);
    let mut lhs = grothendieck_mul(&v, &v, g).unwrap();
    lhs.add_scaled(&fv(&[(1, 1, 1), (1, 0, 1), (0, 0, 1)]), -1);
    assert_eq!(lhs, x);
}

#[test]
fn alcove_listings() {
    assert_eq!(alcove_weights(3), vec![w(0, 0), w(1, 0)]);
    assert_eq!(alcove_weights(6).len(), 4);
    assert_eq!(alcove_weights(-2), vec![w(0, 0), w(1, 0), w(1, 1), w(2, 0)]);
    assert_eq!(alcove_weights(1).len(), 8);
    assert_eq!(alcove_weights(9).len(), 6);
}

#[test]
fn truncated_products_are_nonnegative_and_closed() {
    for k in -2..=12 {
        let rule = LevelRule::Level(k);
        let alc = alcove_weights(k);
        for a in &alc {
            for b in &alc {
                let p = mul_basis(a, b, rule).unwrap();
                assert!(p.is_nonnegative(), "k={k} {a}x{b} = {p}");
                assert!(p.support().iter().all(|x| alc.contains(x)));
                assert_eq!(p, mul_basis(b, a, rule).unwrap(), "commutativity k={k}");
            }
        }
    }
}

#[test]
fn fusion_ring_associativity() {
    let mut rules = vec![LevelRule::Generic];
    rules.extend((-2..=12).map(LevelRule::Level));
    for rule in rules {
        let ws = match rule {
            LevelRule::Generic => Weight::up_to_size(5),
            LevelRule::Level(k) => alcove_weights(k),
        };
        if !in_alcove(&Weight::L1, rule) || !in_alcove(&Weight::L2, rule) {
            continue;
        }
        for l in ws {
            let x = FusionVector::single(l);
            let a = tensor_adjoint_vec(&tensor_v_vec(&x, rule).unwrap(), rule).unwrap();
            let b = tensor_v_vec(&tensor_adjoint_vec(&x, rule).unwrap(), rule).unwrap();
            assert_eq!(a, b, "{rule} {l}");
        }
    }
}

#[test]
fn fusion_json() {
    let s = serde_json::to_string(&tensor_v(&Weight::L1, LevelRule::Level(3)).unwrap()).unwrap();
    assert_eq!(s, r#"{"[0,0]":1,"[1,0]":1}"#);
    let back: FusionVector = serde_json::from_str(&s).unwrap();
    assert_eq!(back, fv(&[(0, 0, 1), (1, 0, 1)]));
}

#[test]
fn qdim_examples() {
    let d = qdim_laurent(&Weight::L1);
    let expect = LaurentPoly::from_terms(
        [10, 8, 2, 0, -2, -8, -10].iter().map(|e| (*e, num_rational::BigRational::from_integer(1.into()))),
    );
    assert_eq!(d, expect);
    assert!(qdim(&Weight::ZERO, &QContext::Cyclo { m: 26, e: 1 }).approx_eq(&QContext::Cyclo { m: 26, e: 1 }.one(), 0.0));
    assert_eq!(classical_dim(&Weight::L2), 14);
    for (mu, n) in [(w(0, 0), 1), (w(1, 0), 7), (w(1, 1), 14), (w(2, 0), 27), (w(2, 1), 64)] {
        assert_eq!(classical_dim(&mu), n);
        assert_eq!(weyl_dim(&mu), n);
    }
}

#[test]
fn qdim_bar_invariant_and_classical_limit() {
    for mu in Weight::up_to_size(8) {
        let d = qdim_laurent(&mu);
        assert!(d.is_bar_invariant(), "{mu}");
        assert_eq!(d.at_one(), num_rational::BigRational::from_integer(weyl_dim(&mu).into()));
        assert_eq!(classical_dim(&mu), weyl_dim(&mu));
    }
}

#[test]
fn numerator_factors_nonzero_in_estimate_range() {
    for n in 0..=6i64 {
        for mu in Weight::up_to_size(n) {
            for f in numerator_factors(&mu) {
                if f % 3 == 0 && (1..=n + 3).contains(&(f / 3)) || (2..=2 * n + 5).contains(&f) {
                    assert!(!qint(f).is_zero());
                }
            }
        }
    }
}

#[test]
fn vanishing_scan_examples() {
    let zeros = |ell, deg| -> Vec<Weight> {
        vanishing_scan(ell, deg).into_iter().filter(|e| e.zero).map(|e| e.weight).collect()
    };
    assert_eq!(zeros(4, 3), vec![w(2, 1)]);
    assert_eq!(zeros(9, 6), vec![w(4, 2)]);
    assert_eq!(zeros(5, 12), vec![w(8, 4)]);
    let j = serde_json::to_string(&vanishing_scan(4, 0)).unwrap();
    assert_eq!(j, r#"[{"weight":[0,0],"zero":false}]"#);
}

#[test]
fn dimension_recursion() {
    let r = dim_recursion_check(LevelRule::Generic, 6, &QContext::Formal).unwrap();
    assert_eq!(r.checked.len(), Weight::up_to_size(6).len());
    let r = dim_recursion_check(LevelRule::Level(9), 6, &QContext::Cyclo { m: 42, e: 1 }).unwrap();
    assert!(r.boundary_zero.contains(&w(4, 0)));
    assert!(r.boundary_zero.iter().all(|b| {
        let (m1, m2) = b.eps2();
        3 * (m1 + m2) == 12
    }));
    let r = dim_recursion_check(LevelRule::Level(1), 10, &QContext::Cyclo { m: 26, e: 1 }).unwrap();
    assert_eq!(r.checked, alcove_weights(1));
    assert!(matches!(
        dim_recursion_check(LevelRule::Level(1), 4, &QContext::Formal),
        Err(DimsError::Inadmissible(_))
    ));
}

#[test]
fn admissible_q_examples() {
    match admissible_q(LevelRule::Level(1)) {
        QSpecSet::Roots { m, ell, exponents } => {
            assert_eq!((m, ell), (26, 13));
            assert!(exponents.contains(&1) && !exponents.contains(&13));
        }
        _ => panic!(),
    }
    match admissible_q(LevelRule::Level(9)) {
        QSpecSet::Roots { ell, .. } => assert_eq!(ell, 21),
        _ => panic!(),
    }
    assert!(!is_admissible(LevelRule::Generic, &QContext::Float { re: 1.0, im: 0.0 }));
    assert!(is_admissible(LevelRule::Generic, &QContext::Float { re: 1.1, im: 0.0 }));
    assert!(is_admissible(LevelRule::Level(1), &QContext::Cyclo { m: 26, e: 1 }));
    assert!(!is_admissible(LevelRule::Level(2), &QContext::Cyclo { m: 26, e: 1 }));
}

#[test]
fn bratteli_examples() {
    let g = LevelRule::Generic;
    let d = build_diagram(2, g).unwrap();
    assert_eq!(d.vertices(2), vec![w(0, 0), w(1, 0), w(1, 1), w(2, 0)]);
    let d = build_diagram(4, g).unwrap();
    let mut expect = vec![w(0, 0), w(1, 0), w(1, 1), w(2, 0), w(2, 1), w(3, 0), w(2, 2), w(3, 1), w(4, 0)];
    expect.sort();
    assert_eq!(d.vertices(4), expect);
    assert_eq!(homdim(&w(2, 1), 4, g).unwrap(), 8);
    assert_eq!(homdim(&Weight::L1, 3, g).unwrap(), 4);
    assert_eq!(homdim(&Weight::ZERO, 2, g).unwrap(), 1);
    for k in [-2, 1, 3, 9] {
        assert_eq!(build_diagram(1, LevelRule::Level(k)).unwrap().vertices(1), vec![Weight::L1]);
    }
}

#[test]
fn bratteli_dimension_count() {
    let g = LevelRule::Generic;
    let d = build_diagram(6, g).unwrap();
    for n in 0..=6 {
        let total: u64 = d.levels[n].iter().map(|e| e.multiplicity * classical_dim(&e.weight) as u64).sum();
        assert_eq!(total, 7u64.pow(n as u32));
    }
}

#[test]
fn bratteli_matches_hexagon_oracle() {
    for l in Weight::up_to_size(6) {
        assert_eq!(successors(&l, LevelRule::Generic).unwrap(), hexagon(&l), "{l}");
    }
}

#[test]
fn restriction_recursion_and_frobenius() {
    let g = LevelRule::Generic;
    let d = build_diagram(6, g).unwrap();
    for n in 1..=6 {
        for e in &d.levels[n] {
            let s: u64 = d.levels[n - 1]
                .iter()
                .filter(|p| tensor_v(&p.weight, g).unwrap().get(&e.weight) > 0)
                .map(|p| p.multiplicity)
                .sum();
            assert_eq!(s, e.multiplicity);
        }
    }
    for a in Weight::up_to_size(6) {
        for b in tensor_v(&a, g).unwrap().support() {
            assert!(tensor_v(&b, g).unwrap().get(&a) > 0);
        }
    }
}

#[test]
fn fibonacci_at_level_three() {
    let d = build_diagram(5, LevelRule::Level(3)).unwrap();
    for n in 1..=5 {
        assert!(d.vertices(n).iter().all(|v| *v == Weight::ZERO || *v == Weight::L1));
    }
    let kinds: std::collections::BTreeSet<_> = d.edges.iter().flatten().copied().collect();
    assert_eq!(kinds.len(), 3);
    assert_eq!(d.homdim(&Weight::L1, 5), 5);
}

#[test]
fn block_examples() {
    let g = LevelRule::Generic;
    let b = blocks(&Weight::L1, 3, 2, g).unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!(b[0].size(), 4);
    assert_eq!(b[0].eigen.len(), 4);
    assert!(b[0].eigen.values().all(|m| *m == 1));

    let b = blocks(&Weight::L2, 3, 2, g).unwrap();
    let blk = b.iter().find(|b| b.lambda == Weight::L1 && b.nu == Weight::L2).unwrap();
    assert_eq!(blk.intermediates, vec![w(1, 0), w(2, 0)]);
    assert_eq!(blk.eigen.keys().copied().collect::<Vec<_>>(), vec![EigenLabel::L1, EigenLabel::L3]);

    let b = blocks(&w(2, 1), 4, 3, g).unwrap();
    let blk = b.iter().find(|b| b.lambda == w(2, 0)).unwrap();
    assert_eq!(blk.size(), 4);
    assert_eq!(blk.eigen[&EigenLabel::L1], 2);
    assert_eq!(blk.eigen[&EigenLabel::L2], 1);
    assert_eq!(blk.eigen[&EigenLabel::L3], 1);
    assert!(blocks(&w(2, 1), 4, 4, g).is_err());
}

#[test]
fn block_sizes_match_fusion() {
    let mut rules = vec![LevelRule::Generic];
    rules.extend([-2, 1, 3, 6, 9].map(LevelRule::Level));
    for rule in rules {
        let d = build_diagram(5, rule).unwrap();
        for n in 2..=5 {
            for e in &d.levels[n] {
                let mut total = 0;
                for i in 1..n {
                    let bs = blocks(&e.weight, n, i, rule).unwrap();
                    let s: usize = bs.iter().map(|b| b.size()).sum();
                    assert_eq!(s as u64, e.multiplicity);
                    for b in &bs {
                        assert_eq!(b.size(), b.eigen.values().sum::<usize>(), "{rule} {b:?}");
                    }
                    total += 1;
                }
                assert_eq!(total, n - 1);
            }
        }
    }
}

#[test]
fn export_formats() {
    let d = build_diagram(1, LevelRule::Generic).unwrap();
    let dot = export(&d, "dot").unwrap();
    assert_eq!(dot.matches("[label=").count(), 2);
    assert_eq!(dot.matches("->").count(), 1);
    assert!(dot.contains("L0_0_0 -> L1_1_0"));
    let d4 = build_diagram(4, LevelRule::Generic).unwrap();
    let j: serde_json::Value = serde_json::from_str(&export(&d4, "json").unwrap()).unwrap();
    let ecount: usize = d4.edges.iter().map(|e| e.len()).sum();
    assert_eq!(j["edges"].as_array().unwrap().len(), ecount);
    assert_eq!(j["levels"][4].as_array().unwrap().len(), 9);
    assert!(matches!(export(&d, "svg"), Err(BratteliError::UnknownFormat(_))));
}

proptest! {
    #[test]
    fn casimir_is_weyl_invariant(a in 0i64..8, b in 0i64..8) {
        let l = Weight::new(a, b).unwrap();
        let x = add(&l.eps(), &RHO);
        for g in weyl_group() {
            let y = sub(&g.apply(&x), &RHO);
            prop_assert_eq!(casimir_triple(&y), casimir(&l));
        }
        prop_assert!(casimir(&l) >= 0);
        prop_assert_eq!(casimir(&l) == 0, a == 0 && b == 0);
    }

    #[test]
    fn affine_reflection_is_an_involution(m1 in -12i64..12, m2 in -12i64..12, k in -2i64..15) {
        let t = [m1, m2, -m1 - m2];
        let r = affine_reflect_triple(&t, k);
        if !r.fixed {
            let back = affine_reflect_triple(&r.triple, k);
            prop_assert_eq!(back.triple, t);
            prop_assert_eq!(r.sign * back.sign, 1);
        }
    }

    #[test]
    fn tensor_v_dimension_count(a in 0i64..7, b in 0i64..7) {
        let l = Weight::new(a, b).unwrap();
        let t = tensor_v(&l, LevelRule::Generic).unwrap();
        let s: i64 = t.iter().map(|(m, c)| c * classical_dim(&m)).sum();
        prop_assert_eq!(s, 7 * classical_dim(&l));
        let t = tensor_adjoint(&l, LevelRule::Generic).unwrap();
        let s: i64 = t.iter().map(|(m, c)| c * classical_dim(&m)).sum();
        prop_assert_eq!(s, 14 * classical_dim(&l));
    }
}
