use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selfsim_core::{hausdorff_distance, hausdorff_distance_naive, Error, PlanarSet};

fn random_set(rng: &mut ChaCha8Rng, n: usize, spread: f64) -> PlanarSet {
    let cx = rng.gen_range(-5.0..5.0);
    let cy = rng.gen_range(-5.0..5.0);
    let points = (0..n)
        .map(|_| {
            C::new(
                cx + rng.gen_range(-spread..spread),
                cy + rng.gen_range(-spread..spread),
            )
        })
        .collect();
    PlanarSet { points, scale_hint: spread / n as f64 }
}

#[test]
fn accelerated_distance_equals_brute_force_bitwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd15_7a4ce);
    for trial in 0..100 {
        let na = rng.gen_range(1..=500);
        let nb = rng.gen_range(1..=500);
        // alternate between desk-scale spreads and adversarial tight
        // clusters probed from far away
        let sa = if trial % 3 == 0 { 1e-6 } else { rng.gen_range(0.1..4.0) };
        let sb = if trial % 4 == 0 { 1e-5 } else { rng.gen_range(0.1..4.0) };
        let a = random_set(&mut rng, na, sa);
        let b = random_set(&mut rng, nb, sb);
        let fast = hausdorff_distance(&a, &b).unwrap();
        let brute = hausdorff_distance_naive(&a, &b).unwrap();
        assert_eq!(fast.to_bits(), brute.to_bits(), "trial {trial}: {fast} vs {brute}");
    }
}

#[test]
fn hand_checkable_distances() {
    let origin = PlanarSet { points: vec![C::new(0.0, 0.0)], scale_hint: 1.0 };
    let offset = PlanarSet { points: vec![C::new(3.0, 4.0)], scale_hint: 1.0 };
    assert_eq!(hausdorff_distance(&origin, &offset).unwrap(), 5.0);
    assert_eq!(hausdorff_distance(&origin, &origin).unwrap(), 0.0);
}

#[test]
fn distance_is_symmetric_and_separates_clouds() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e_a5e17);
    for _ in 0..25 {
        let a = random_set(&mut rng, 80, 2.0);
        let b = random_set(&mut rng, 60, 2.0);
        let ab = hausdorff_distance(&a, &b).unwrap();
        let ba = hausdorff_distance(&b, &a).unwrap();
        assert_eq!(ab.to_bits(), ba.to_bits());

        // same cloud in shuffled order is at distance zero
        let mut shuffled = a.points.clone();
        shuffled.reverse();
        let a2 = PlanarSet { points: shuffled, scale_hint: a.scale_hint };
        assert_eq!(hausdorff_distance(&a, &a2).unwrap(), 0.0);

        // one extra distant point separates them
        let mut fat = a.points.clone();
        fat.push(C::new(100.0, 100.0));
        let a3 = PlanarSet { points: fat, scale_hint: a.scale_hint };
        assert!(hausdorff_distance(&a, &a3).unwrap() > 50.0);
    }
}

#[test]
fn triangle_inequality_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7219_0000);
    for _ in 0..50 {
        let a = random_set(&mut rng, 60, 3.0);
        let b = random_set(&mut rng, 70, 3.0);
        let c = random_set(&mut rng, 50, 3.0);
        let ab = hausdorff_distance(&a, &b).unwrap();
        let bc = hausdorff_distance(&b, &c).unwrap();
        let ac = hausdorff_distance(&a, &c).unwrap();
        assert!(ac <= ab + bc + 1e-12, "{ac} > {ab} + {bc}");
    }
}

#[test]
fn empty_inputs_are_rejected() {
    let empty = PlanarSet { points: vec![], scale_hint: 1.0 };
    let one = PlanarSet { points: vec![C::new(1.0, 0.0)], scale_hint: 1.0 };
    for (x, y) in [(&empty, &one), (&one, &empty), (&empty, &empty)] {
        match hausdorff_distance(x, y) {
            Err(Error::EmptyInput) => {}
            other => panic!("expected EmptyInput, got {other:?}"),
        }
    }
}

#[test]
fn collinear_and_degenerate_layouts_stay_exact() {
    // single row (degenerate bounding box), duplicated points, huge spread
    let row = PlanarSet {
        points: (0..200).map(|i| C::new(i as f64, 0.0)).collect(),
        scale_hint: 1.0,
    };
    let dup = PlanarSet {
        points: vec![C::new(0.5, 0.5); 50],
        scale_hint: 1.0,
    };
    let fast = hausdorff_distance(&row, &dup).unwrap();
    let brute = hausdorff_distance_naive(&row, &dup).unwrap();
    assert_eq!(fast.to_bits(), brute.to_bits());
}
