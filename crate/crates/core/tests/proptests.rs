mod common;

use std::f64::consts::TAU;

use coin_qubit::superposition::orthogonal_rule_matrix;
use coin_qubit::*;
use common::*;
use num_complex::Complex64;
use proptest::prelude::*;

const GRID: u64 = 1 << 53;

fn grid_prob() -> impl Strategy<Value = f64> {
    (0..=GRID).prop_map(|k| k as f64 / GRID as f64)
}

fn cube() -> impl Strategy<Value = ProbabilityTriple> {
    (0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(a, b, c)| triple([a, b, c]))
}

fn quantum() -> impl Strategy<Value = ProbabilityTriple> {
    cube().prop_filter("inside the ball", |p| p.radius2() <= 0.25)
}

fn pure() -> impl Strategy<Value = ProbabilityTriple> {
    (-1.0..=1.0f64, 0.0..TAU).prop_map(|(z, phase)| pure_from(z, phase))
}

fn weights() -> impl Strategy<Value = SuperpositionWeights> {
    pure().prop_map(|t| SuperpositionWeights::new(t).unwrap())
}

fn observable() -> impl Strategy<Value = CoinObservable> {
    let r = || -10.0..10.0f64;
    (r(), r(), r(), r()).prop_map(|(x, y, z1, z2)| CoinObservable::new(x, y, z1, z2))
}

fn close(a: [f64; 3], b: [f64; 3], tol: f64) -> std::result::Result<(), TestCaseError> {
    prop_assert!(max_diff(a, b) <= tol, "{a:?} vs {b:?}");
    Ok(())
}

proptest! {
    #[test]
    fn density_round_trip_is_exact(p1 in grid_prob(), p2 in grid_prob(), p3 in grid_prob()) {
        let p = triple([p1, p2, p3]);
        let (rho, _) = prob_to_density(&p);
        prop_assert_eq!(density_to_prob(&rho).unwrap(), p);
    }

    #[test]
    fn matrix_round_trip(p in cube()) {
        let (rho, _) = prob_to_density(&p);
        let again = prob_to_density(&density_to_prob(&rho).unwrap()).0;
        prop_assert!(rho.matrix().max_abs_diff(again.matrix()) <= 1e-14);
    }

    #[test]
    fn purity_radius_identity(p in quantum()) {
        let mu = purity(&p).unwrap();
        prop_assert!((mu - (0.5 + 2.0 * p.radius2())).abs() <= 1e-12);
        let oracle = trace_of_product(&[density(&p), density(&p)]).re;
        prop_assert!((mu - oracle).abs() <= 1e-12);
    }

    #[test]
    fn eigenvalues_nonnegative_iff_quantum(p in cube()) {
        prop_assume!((p.radius2() - 0.25).abs() > 1e-6);
        let (rho, positivity) = prob_to_density(&p);
        prop_assert_eq!(positivity.nonnegative, p.is_quantum());
        // closed-form 2x2 eigenvalues: 1/2 ± r
        let r = p.radius2().sqrt();
        let [lo, hi] = rho.eigenvalues();
        prop_assert!((lo - (0.5 - r)).abs() <= 1e-12 && (hi - (0.5 + r)).abs() <= 1e-12);
    }

    #[test]
    fn fidelity_is_symmetric(p in quantum(), q in quantum()) {
        let f = fidelity(&p, &q).unwrap();
        prop_assert_eq!(f, fidelity(&q, &p).unwrap());
        let oracle = trace_of_product(&[density(&p), density(&q)]).re;
        prop_assert!((f - oracle).abs() <= 1e-12);
    }

    #[test]
    fn pure_self_fidelity_is_one(p in pure()) {
        prop_assert!((fidelity(&p, &p).unwrap() - 1.0).abs() <= 1e-9);
        prop_assert!((purity(&p).unwrap() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn pure_states_satisfy_pairwise_relations(p in pure()) {
        let x = p.to_array();
        let sq = |v: f64| (v - 0.5) * (v - 0.5);
        for k in 0..3 {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            prop_assert!((sq(x[i]) + sq(x[j]) - x[k] * (1.0 - x[k])).abs() <= 1e-10);
        }
    }

    #[test]
    fn complex_coin_round_trip(r in 0.0..=1.0f64, theta in 0.0..TAU) {
        let z = Complex64::from_polar(r, theta);
        let p = complex_to_coins(z).unwrap();
        prop_assert!(p.is_pure());
        let back = coins_to_complex(&p).unwrap();
        prop_assert!((back.norm() - r).abs() <= 1e-12);
        if r > 1e-6 && r < 1.0 - 1e-6 {
            prop_assert!((back - z).norm() <= 1e-9, "{} vs {}", back, z);
        }
    }

    #[test]
    fn spinor_round_trip(p in pure()) {
        let s = prob_to_spinor(&p).unwrap();
        close(spinor_to_prob(&s).to_array(), p.to_array(), 1e-12)?;
        // same ray as the independently built spinor
        let ket = s.ket();
        let ind = spinor(&p);
        let overlap = ket[0].conj() * ind[0] + ket[1].conj() * ind[1];
        prop_assert!((overlap.norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn quantum_mean_matches_trace(obs in observable(), p in quantum()) {
        let h = obs.matrix();
        let raw: M2 = [[h.get(0, 0), h.get(0, 1)], [h.get(1, 0), h.get(1, 1)]];
        let tr = trace_of_product(&[density(&p), raw]).re;
        let mean = quantum_mean(&obs, &p).unwrap();
        prop_assert!((mean - tr).abs() < 1e-10);
        prop_assert!((classical_means(&obs, &p).sum() - tr).abs() < 1e-10);
    }

    #[test]
    fn quantum_mean_is_linear(a in observable(), b in observable(), s in -3.0..3.0f64, t in -3.0..3.0f64, p in quantum()) {
        let combined = s * a + t * b;
        let lhs = quantum_mean(&combined, &p).unwrap();
        let rhs = s * quantum_mean(&a, &p).unwrap() + t * quantum_mean(&b, &p).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10);
    }

    #[test]
    fn orthogonal_paths_agree(p in pure(), w in weights()) {
        let q = antipode(&p);
        prop_assume!(w.lambda1() * w.lambda2() > 1e-6);
        let report = superpose(&p, &q, &w).unwrap();
        prop_assert!(report.paths_agree, "{report:?}");
        prop_assert!(report.orthogonal.is_some() && report.spinor.is_some());
        close(report.oracle.state.to_array(), oracle_superposition(&p, &q, &w.triple()), 1e-9)?;
        for r in [Some(report.result), report.orthogonal, report.spinor].into_iter().flatten() {
            prop_assert!(r.state.is_pure());
        }
    }

    #[test]
    fn general_rule_matches_oracle(p in pure(), q in pure(), w in weights()) {
        let oracle = match superpose_oracle(&p, &q, &w) {
            Ok(r) => r,
            Err(Error::DegenerateSuperposition { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assume!(oracle.normalization > 1e-4);
        let general = superpose_general(&p, &q, &w).unwrap();
        close(general.state.to_array(), oracle.state.to_array(), 1e-9)?;
        close(general.state.to_array(), oracle_superposition(&p, &q, &w.triple()), 1e-9)?;
        prop_assert!(general.state.is_pure());
        if !general.fallback_used {
            prop_assert!((general.normalization - oracle.normalization).abs() <= 1e-9);
        }
    }

    #[test]
    fn orthogonal_rule_matrix_is_a_projector(p in pure(), w in weights()) {
        prop_assume!(w.lambda1() * w.lambda2() > 1e-6);
        let m = orthogonal_rule_matrix(&p, &antipode(&p), &w).unwrap();
        prop_assert!(m.hermiticity_defect() <= 1e-10);
        prop_assert!((m.trace() - Complex64::new(1.0, 0.0)).norm() <= 1e-10);
        prop_assert!((m * m).max_abs_diff(&m) <= 1e-10);
    }

    #[test]
    fn delta_decomposition_reconstructs(p in pure(), w in weights()) {
        prop_assume!(w.lambda1() * w.lambda2() > 1e-6);
        let d = delta_decomposition(&p, &antipode(&p), &w).unwrap();
        close(d.reconstruct(), d.output, 1e-12)?;
    }

    #[test]
    fn identity_weights(p in pure(), q in pure()) {
        let first = SuperpositionWeights::new(triple([0.5, 0.5, 1.0])).unwrap();
        let second = SuperpositionWeights::new(triple([0.5, 0.5, 0.0])).unwrap();
        close(superpose_general(&p, &q, &first).unwrap().state.to_array(), p.to_array(), 1e-9)?;
        close(superpose_general(&p, &q, &second).unwrap().state.to_array(), q.to_array(), 1e-9)?;
    }

    #[test]
    fn interference_fringe(alpha in 0.0..TAU) {
        let w = triple([0.5 + 0.5 * alpha.cos(), 0.5 + 0.5 * alpha.sin(), 0.5]);
        let (up, down) = (triple([0.5, 0.5, 1.0]), triple([0.5, 0.5, 0.0]));
        let expected = [0.5 + 0.5 * alpha.cos(), 0.5 + 0.5 * alpha.sin(), 0.5];
        close(oracle_superposition(&up, &down, &w), expected, 1e-12)?;
        let got = superpose_general(&up, &down, &SuperpositionWeights::new(w).unwrap()).unwrap();
        close(got.state.to_array(), expected, 1e-9)?;
    }

    #[test]
    fn partner_is_orthogonal(p in pure()) {
        let plus = orthogonal_partner(&p, Branch::Plus).unwrap();
        let minus = orthogonal_partner(&p, Branch::Minus).unwrap();
        prop_assert!(fidelity(&p, &plus).unwrap().abs() < 1e-12);
        prop_assert!(fidelity(&p, &minus).unwrap().abs() < 1e-12);
    }

    #[test]
    fn triada_cyclic_covariance(p in cube()) {
        let [p1, p2, p3] = p.to_array();
        let [l1, l2, l3] = triada_sides(&p).sides();
        let rotated = triada_sides(&triple([p2, p3, p1])).sides();
        close(rotated, [l2, l3, l1], 1e-15)?;
        for l in [l1, l2, l3] {
            prop_assert!((0.0..=malevich::MAX_SIDE + 1e-12).contains(&l));
        }
    }

    #[test]
    fn triada_render_is_deterministic(p in cube(), scale in 1.0..500.0f64, labels: bool) {
        let t = triada_sides(&p);
        prop_assert_eq!(render_svg(&t, scale, labels).unwrap(), render_svg(&t, scale, labels).unwrap());
    }

    #[test]
    fn sampling_is_deterministic(p in quantum(), seed: u64, n in 1..200u64) {
        let a = sample_flips(&p, n, seed).unwrap();
        let b = sample_flips(&p, n, seed).unwrap();
        prop_assert_eq!(estimate(&a).unwrap(), estimate(&b).unwrap());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn quantum_mean_identity_on_many_pairs() {
    let mut rng = rng(15);
    for _ in 0..10_000 {
        use rand::Rng;
        let obs = CoinObservable::new(
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
        );
        let p = random_quantum(&mut rng);
        let tr = trace_of_product(&[density(&p), {
            let h = obs.matrix();
            [[h.get(0, 0), h.get(0, 1)], [h.get(1, 0), h.get(1, 1)]]
        }])
        .re;
        assert!((tr - classical_means(&obs, &p).sum()).abs() < 1e-10);
    }
}

#[test]
fn triada_continuity_probe() {
    // finite-difference Lipschitz estimate on a grid, then a check that
    // half-step moves stay within that bound
    let step = 1e-3;
    let h = 1e-7;
    let mut k = 0.0f64;
    let n = (1.0 / step) as usize;
    let sides = |a: f64, b: f64| triada_sides(&triple([a, b, 0.5])).sides();
    for i in 0..=n / 10 {
        for j in 0..=n / 10 {
            let (a, b) = ((i * 10) as f64 * step, (j * 10) as f64 * step);
            let (a2, b2) = ((a + h).min(1.0), (b + h).min(1.0));
            let d = max_diff(sides(a, b), sides(a2, b2)) / h;
            if d.is_finite() {
                k = k.max(d);
            }
        }
    }
    assert!(k.is_finite() && k > 0.0);
    let mut rng = rng(3);
    for _ in 0..10_000 {
        use rand::Rng;
        let (a, b): (f64, f64) = (rng.gen(), rng.gen());
        let eps = 1e-4;
        let moved = sides((a + eps).min(1.0), (b + eps).min(1.0));
        let d = max_diff(sides(a, b), moved);
        // √ is not Lipschitz at 0: allow the square-root modulus there
        assert!(
            d <= k * eps + (8.0 * eps).sqrt() * 1.01,
            "jump {d} at ({a}, {b})"
        );
    }
}
