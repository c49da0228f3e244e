use num_complex::Complex64 as C;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selfsim_core::dynamics::{f_step, g_step};
use selfsim_core::{escape_time, escape_time_anti, iterate_f, iterate_g, orbit_with_derivatives};

#[test]
fn derivative_channels_match_central_differences() {
    // Sample (c, z0) in a contracting region so orbits and their
    // derivatives stay well scaled over the run.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0d9a_11c5);
    let eps = 1e-6;
    let n = 8;
    for _ in 0..100 {
        let c = C::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
        let z0 = C::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));

        let r = orbit_with_derivatives(c, z0, n, false);
        assert!(!r.overflow);

        // d/dz0 via a complex-step-free central difference along both axes.
        let dx = (iterate_f(c, z0 + C::new(eps, 0.0), n) - iterate_f(c, z0 - C::new(eps, 0.0), n))
            / (2.0 * eps);
        assert!((dx - r.dz).norm() < 1e-5 * (1.0 + r.dz.norm()), "dz vs fd: {dx} {}", r.dz);

        // d/dc with the initial point held fixed.
        let dc_fd = (iterate_f(c + C::new(eps, 0.0), z0, n) - iterate_f(c - C::new(eps, 0.0), z0, n))
            / (2.0 * eps);
        assert!((dc_fd - r.dc).norm() < 1e-5 * (1.0 + r.dc.norm()));

        // Full parameter derivative of c -> f_c^n(c).
        let rc = orbit_with_derivatives(c, c, n, true);
        let full_fd = (iterate_f(c + C::new(eps, 0.0), c + C::new(eps, 0.0), n)
            - iterate_f(c - C::new(eps, 0.0), c - C::new(eps, 0.0), n))
            / (2.0 * eps);
        assert!((full_fd - rc.dc).norm() < 1e-5 * (1.0 + rc.dc.norm()));
    }
}

#[test]
fn escape_test_includes_the_starting_point() {
    let far = C::new(3.0, 0.0);
    assert_eq!(escape_time(C::new(0.0, 0.0), far, 10), Some(0));
    assert_eq!(escape_time_anti(C::new(0.0, 0.0), far, 10), Some(0));
}

#[test]
fn known_real_orbits_are_exact() {
    // -2 -> 2 -> 2 under f_{-2}; the airplane tip is preperiodic exactly.
    let c = C::new(-2.0, 0.0);
    assert_eq!(iterate_f(c, c, 1), C::new(2.0, 0.0));
    assert_eq!(iterate_f(c, c, 2), C::new(2.0, 0.0));
    assert_eq!(iterate_f(c, c, 9), C::new(2.0, 0.0));
    // same orbit under g on the real slice, bitwise
    assert_eq!(iterate_g(c, c, 9), C::new(2.0, 0.0));
}

#[test]
fn anti_orbit_rotation_equivariance() {
    // g_{wc}(w z) = w g_c(z) for w = exp(2 pi i/3); floating point keeps it
    // to roundoff over a moderate run.
    // |c| < 1/4 keeps an attracting fixed point, so these orbits never blow
    // up and the comparison stays finite.
    let om = C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7700_12aa);
    for _ in 0..50 {
        let c = C::new(rng.gen_range(-0.12..0.12), rng.gen_range(-0.12..0.12));
        let z = C::new(rng.gen_range(-0.12..0.12), rng.gen_range(-0.12..0.12));
        let a = iterate_g(om * c, om * z, 16);
        let b = om * iterate_g(c, z, 16);
        assert!(b.is_finite(), "orbit blew up at c = {c}, z = {z}");
        assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()), "{a} vs {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Conjugating both arguments conjugates the orbit bitwise, so escape
    // times agree exactly for both families.
    #[test]
    fn conjugation_symmetry_is_bitwise(cr in -2.0f64..2.0, ci in -2.0f64..2.0) {
        let c = C::new(cr, ci);
        prop_assert_eq!(escape_time(c, c, 300), escape_time(c.conj(), c.conj(), 300));
        prop_assert_eq!(escape_time_anti(c, c, 300), escape_time_anti(c.conj(), c.conj(), 300));
    }

    // A larger budget never changes an escape step already found.
    #[test]
    fn escape_step_is_stable_under_budget_growth(cr in -2.0f64..2.0, ci in -2.0f64..2.0) {
        let c = C::new(cr, ci);
        if let Some(n) = escape_time(c, c, 100) {
            prop_assert_eq!(escape_time(c, c, 400), Some(n));
        }
        if let Some(n) = escape_time_anti(c, c, 100) {
            prop_assert_eq!(escape_time_anti(c, c, 400), Some(n));
        }
    }

    // One step of each family agrees with the closed form.
    #[test]
    fn single_steps_match_closed_forms(zr in -2.0f64..2.0, zi in -2.0f64..2.0,
                                       cr in -2.0f64..2.0, ci in -2.0f64..2.0) {
        let z = C::new(zr, zi);
        let c = C::new(cr, ci);
        prop_assert_eq!(f_step(z, c), z * z + c);
        prop_assert_eq!(g_step(z, c), z.conj() * z.conj() + c);
    }

    // Real parameters keep real orbits real, and f and g coincide there.
    #[test]
    fn real_slice_orbits_coincide(cr in -2.0f64..0.25) {
        let c = C::new(cr, 0.0);
        let zf = iterate_f(c, c, 40);
        let zg = iterate_g(c, c, 40);
        prop_assert_eq!(zf, zg);
        prop_assert_eq!(zf.im, 0.0);
    }
}
