use g2core::braidrep::{assemble, AssembleOptions, Representation};
use g2core::fusion::alcove_weights;
use g2core::lattice::{casimir, LevelRule, Weight};
use g2core::qarith::QContext;
use g2core::verify::*;
use num_complex::Complex64;

fn q11() -> QContext {
    QContext::Float { re: 1.1, im: 0.0 }
}

fn rep(mu: Weight, n: usize) -> Representation {
    assemble(&mu, n, LevelRule::Generic, &q11(), &AssembleOptions::default()).unwrap()
}

#[test]
fn burnside_spans() {
    assert_eq!(burnside_span(&rep(Weight::L1, 3), 1e-7), 16);
    assert_eq!(burnside_span(&rep(Weight::new(3, 0).unwrap(), 3), 1e-7), 1);
    assert_eq!(burnside_span(&rep(Weight::new(1, 1).unwrap(), 4), 1e-7), 64);
}

#[test]
fn standard_battery_passes() {
    for (mu, n) in [(Weight::L1, 3), (Weight::L2, 3), (Weight::new(2, 0).unwrap(), 4)] {
        let r = rep(mu, n);
        for v in verify_representation(&r, 1e-9).unwrap() {
            assert!(v.pass, "{mu} n={n}: {v:?}");
        }
    }
}

#[test]
fn corrupted_block_is_located() {
    let mut r = rep(Weight::L1, 3);
    let g = &mut r.generators[1];
    let (_, sb) = &mut g.blocks[0];
    let z = sb.matrix.get(0, 0).to_complex().unwrap();
    sb.matrix.set(0, 0, g2core::qarith::QValue::Float(z + Complex64::new(0.1, 0.0)));
    let v = check_braid_relations(&r, 1e-9);
    assert!(!v.pass);
    assert!(v.residual.unwrap() > 1e-3);
    let wit = v.witness.unwrap();
    let pair: Vec<usize> = serde_json::from_value(wit["pair"].clone()).unwrap();
    assert!(pair.contains(&2));
    assert!(wit["block"]["generator"].is_u64());
}

#[test]
fn distinctness_on_alcoves() {
    for k in [1, 9] {
        for l in alcove_weights(k) {
            assert!(check_distinctness(&l, LevelRule::Level(k)).unwrap().pass, "{l} at level {k}");
        }
    }
    for l in Weight::up_to_size(6) {
        assert!(check_distinctness(&l, LevelRule::Generic).unwrap().pass);
    }
    let outside = Weight::new(5, 5).unwrap();
    assert!(matches!(check_distinctness(&outside, LevelRule::Level(1)), Err(VerifyError::Precondition(_))));
}

/// The same predicates evaluated on complex numbers q = e^{πi/ℓ}.
fn float_recent_failures(k: i64) -> usize {
    let ell = (k + 12) as f64;
    let q = Complex64::from_polar(1.0, std::f64::consts::PI / ell);
    let qp = |e: i64| q.powi(e as i32);
    let mut bad = 0;
    for rb in recent_blocks(LevelRule::Level(k)).unwrap() {
        let cl = casimir(&rb.lambda);
        let d = qp(casimir(&rb.nu) - cl - 24);
        let x: Vec<Complex64> = rb.intermediates.iter().map(|m| qp(casimir(m) - cl - 12)).collect();
        for r in 0..x.len() {
            for s in 0..x.len() {
                if r < s && (x[r] - x[s]).norm() < 1e-9 {
                    bad += 1;
                }
                if r < s && (d - qp(2) * x[r] * x[s]).norm() < 1e-9 {
                    bad += 1;
                }
            }
            if (d - qp(4) * x[r] * x[r]).norm() < 1e-9 {
                bad += 1;
            }
            if (d - x[r] * x[r]).norm() < 1e-9
                && !recent_exception(&rb.lambda, &rb.intermediates[r], &rb.nu, LevelRule::Level(k))
            {
                bad += 1;
            }
        }
    }
    bad
}

#[test]
fn recent_predicates_hold() {
    for k in [1, 9] {
        let v = check_recent_predicates(LevelRule::Level(k)).unwrap();
        assert!(v.pass, "level {k}: {:?}", v.witness);
        assert_eq!(float_recent_failures(k), 0);
        let wit = v.witness.unwrap();
        assert!(wit["blocks"].as_u64().unwrap() > 0);
        // a path paired with itself only matters for blocks where −1 is an eigenvalue
        for c in wit["diagonal_coincidences"].as_array().unwrap() {
            assert!(!c["eigenvalues"].as_array().unwrap().contains(&serde_json::json!("L2")), "{c}");
        }
    }
    assert!(check_recent_predicates(LevelRule::Generic).unwrap().pass);
}

#[test]
fn tl_obstruction_examples() {
    assert!(check_tl_obstruction(13, LevelRule::Level(1)).unwrap().pass);
    assert!(!check_tl_obstruction(4, LevelRule::Generic).unwrap().pass);
    assert!(matches!(check_tl_obstruction(2, LevelRule::Generic), Err(VerifyError::Precondition(_))));
}

#[test]
fn vanishing_sets() {
    for ell in [4, 9, 5] {
        assert!(check_lemma459(ell).unwrap().pass, "ℓ = {ell}");
    }
    assert!(check_lemma459(7).is_err());
}

#[test]
fn report_is_json_array() {
    let vs = vec![check_lemma459(4).unwrap(), check_tl_obstruction(13, LevelRule::Level(1)).unwrap()];
    let j = report(&vs);
    assert_eq!(j.as_array().unwrap().len(), 2);
    assert_eq!(j[0]["check"], "lemma459");
}
