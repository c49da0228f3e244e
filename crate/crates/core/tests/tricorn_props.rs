use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selfsim_core::misiurewicz::NEWTON_TOL;
use selfsim_core::{
    apply_h, apply_H, iterate_f, iterate_g, phi_k_tricorn, rho_k_tricorn, solve_misiurewicz,
    solve_tricorn_misiurewicz, solve_tricorn_search, Phi_k_tricorn, RealLinearMap,
};

const FIG2_SEED: C = C::new(-1.2222454262925588, 0.18411010266019595);

#[test]
fn certified_antiholomorphic_center_constants() {
    let d = solve_tricorn_misiurewicz(1, 3, FIG2_SEED, NEWTON_TOL).unwrap();
    assert!((d.c0 - FIG2_SEED).norm() < 1e-12);
    assert!(d.residual < 1e-13);
    // odd relation period: the squared-map multiplier is real
    assert!((d.lambda0 - C::new(110.8710049834728, 0.0)).norm() < 1e-9);
    assert!((d.A0 - C::new(-0.6952907775509742, 3.275506604334832)).norm() < 1e-9);
    assert!((d.B0 - C::new(0.19357795542564654, 3.2745628798903166)).norm() < 1e-9);
    assert!((d.B0p - C::new(0.1469615258842053, -1.1609373542322075)).norm() < 1e-9);
    assert!((d.Q - C::new(1.1278262016467484, 0.30996509960896823)).norm() < 1e-9);
    assert!((d.Qp - C::new(0.415812656711761, -0.03469496337648618)).norm() < 1e-9);
    let margin = d.Q.norm() - d.Qp.norm();
    assert!((margin - 0.7523877739109721).abs() < 1e-9);
}

#[test]
fn wirtinger_coefficients_satisfy_the_defining_identities() {
    let d = solve_tricorn_misiurewicz(1, 3, FIG2_SEED, NEWTON_TOL).unwrap();
    // H inverts the parameter expansion: B0 Q + B0' conj(Q') = A0 and
    // B0 Q' + B0' conj(Q) = 0.
    let lhs1 = d.B0 * d.Q + d.B0p * d.Qp.conj();
    assert!((lhs1 - d.A0).norm() < 1e-12, "{lhs1} vs {}", d.A0);
    let lhs2 = d.B0 * d.Qp + d.B0p * d.Q.conj();
    assert!(lhs2.norm() < 1e-12, "{lhs2}");
}

#[test]
fn forward_and_inverse_real_linear_maps_compose_to_identity() {
    let d = solve_tricorn_misiurewicz(1, 3, FIG2_SEED, NEWTON_TOL).unwrap();
    let m = RealLinearMap { Q: d.Q, Qp: d.Qp };
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a0b_0c0d);
    for _ in 0..100 {
        let w = C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let back = apply_h(&m, apply_H(&m, w)).unwrap();
        assert!((back - w).norm() < 1e-12);
        let fwd = apply_H(&m, apply_h(&m, w).unwrap());
        assert!((fwd - w).norm() < 1e-12);
    }
}

#[test]
fn real_slice_solver_cross_checks_against_the_quadratic_family() {
    // On the real axis g coincides with f, so the tricorn certificate at -2
    // must reproduce the quadratic one with squared multiplier.
    let q = solve_misiurewicz(1, 1, C::new(-2.0, 0.0), NEWTON_TOL).unwrap();
    let rq = selfsim_core::compute_Q(&q).unwrap();
    let t = solve_tricorn_misiurewicz(1, 1, C::new(-2.0, 0.0), NEWTON_TOL).unwrap();
    assert!((t.c0 - q.c0).norm() < 1e-12);
    assert!((t.lambda0 - q.lambda0 * q.lambda0).norm() < 1e-9);
    assert!((t.A0 - q.lambda0 * rq.A0).norm() < 1e-9, "{} vs {}", t.A0, q.lambda0 * rq.A0);
    // Implicit differentiation at c0 = -2 of b(c) = (c^2 + conj(c))^2 + c
    // and of the biquadratic fixed point a(c) near 2 (da (1 - 16) = dc +
    // 4 conj(dc)) gives exact rational Wirtinger data:
    // B0 = -15 + 1/15, B0' = 4 + 4/15, hence Q = 7/6 and Q' = 1/3.
    assert!((t.B0 - C::new(-224.0 / 15.0, 0.0)).norm() < 1e-7, "B0 = {}", t.B0);
    assert!((t.B0p - C::new(64.0 / 15.0, 0.0)).norm() < 1e-7, "B0' = {}", t.B0p);
    assert!((t.Q - C::new(7.0 / 6.0, 0.0)).norm() < 1e-7, "Q = {}", t.Q);
    assert!((t.Qp - C::new(1.0 / 3.0, 0.0)).norm() < 1e-7, "Q' = {}", t.Qp);
}

#[test]
fn real_figure_three_center_matches_quadratic_at_doubled_depth() {
    let seed = C::new(-1.4303576324513074, 0.0);
    let t = solve_tricorn_misiurewicz(4, 2, seed, NEWTON_TOL).unwrap();
    let q = solve_misiurewicz(4, 2, seed, NEWTON_TOL).unwrap();
    assert!((t.c0 - q.c0).norm() < 1e-10);
    assert!(t.c0.im.abs() < 1e-12);
    assert!((t.lambda0 - q.lambda0 * q.lambda0).norm() < 1e-8 * t.lambda0.norm());
    // zoom scales interleave: rho_tri(k) = rho_quad(2k + 2)
    let rq = selfsim_core::compute_Q(&q).unwrap();
    for k in 0..3 {
        let a = rho_k_tricorn(&t, k).unwrap();
        let b = selfsim_core::rho_k(&rq, 2 * k + 2).unwrap();
        assert!((a - b).norm() < 1e-10 * a.norm(), "k = {k}: {a} vs {b}");
    }
}

#[test]
fn rotated_center_is_certified_with_identical_multiplier() {
    // T = wT for w = exp(2 pi i/3), so the rotated seed certifies with the
    // same (l, p) and multiplier.
    let om = C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let d = solve_tricorn_misiurewicz(1, 3, FIG2_SEED, NEWTON_TOL).unwrap();
    let dr = solve_tricorn_misiurewicz(1, 3, om * FIG2_SEED, NEWTON_TOL).unwrap();
    assert!((dr.c0 - om * d.c0).norm() < 1e-9);
    assert!((dr.lambda0 - d.lambda0).norm() < 1e-7 * d.lambda0.norm());
}

#[test]
fn search_recovers_the_minimal_antiholomorphic_pair() {
    let d = solve_tricorn_search(FIG2_SEED, NEWTON_TOL, 6, 6).unwrap();
    assert_eq!((d.l, d.p), (1, 3));
    assert!((d.c0 - FIG2_SEED).norm() < 1e-10);
}

#[test]
fn parameter_rescalings_pin_the_landing_point_at_the_origin() {
    let d = solve_tricorn_misiurewicz(1, 3, FIG2_SEED, NEWTON_TOL).unwrap();
    for k in 0..=6 {
        let v = Phi_k_tricorn(&d, k, C::new(0.0, 0.0)).unwrap();
        // drift amplified by one multiplier factor per period
        let tol = 1e-12 + 100.0 * d.residual * d.lambda0.norm().powi(k as i32);
        assert!((v - d.a0).norm() < tol, "k = {k}: {v} vs {}", d.a0);
    }
}

#[test]
fn parameter_rescalings_approach_dynamical_ones() {
    let d = solve_tricorn_misiurewicz(1, 3, FIG2_SEED, NEWTON_TOL).unwrap();
    let mut ws = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x00c0_ffee);
    for _ in 0..60 {
        let t = rng.gen_range(0.0..std::f64::consts::TAU);
        let r = rng.gen_range(0.0..1.0f64).sqrt();
        ws.push(C::from_polar(r, t));
    }
    let sup = |k: u32| -> f64 {
        let mut s = 0.0f64;
        for &w in &ws {
            let a = Phi_k_tricorn(&d, k, w).unwrap();
            let b = phi_k_tricorn(&d, k, w).unwrap();
            s = s.max((a - b).norm());
        }
        s
    };
    // geometric decay at rate ~1/lambda0 until roundoff saturates near k = 5
    let sups: Vec<f64> = (1..=4).map(sup).collect();
    for i in 0..sups.len() - 1 {
        assert!(sups[i + 1] < sups[i], "{sups:?}");
    }
    assert!(sups[3] < 1e-5, "{sups:?}");
}

#[test]
fn real_parameters_make_the_squared_map_orbit_match_the_quadratic() {
    // sanity for the biquadratic view: g^2 equals f^2 on the real slice
    let c = C::new(-1.4303576324513074, 0.0);
    for n in [1u32, 2, 5, 9] {
        let a = iterate_g(c, c, 2 * n);
        let b = iterate_f(c, c, 2 * n);
        assert_eq!(a, b);
    }
}
