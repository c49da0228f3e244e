//! Hausdorff distance between finite planar point sets, and the per-depth
//! similarity tables comparing rescaled zoom boundaries against the
//! reference set.
//!
//! The accelerated distance is exact, not approximate: bucketing only
//! prunes candidates, every surviving comparison uses the same f64
//! arithmetic as the quadratic scan, so both paths return bitwise-identical
//! results.

use crate::dynamics::C;
use crate::error::{Error, Result};
use crate::render::{
    classify_julia, classify_mandelbrot, classify_tricorn, classify_w_plane_quad,
    classify_w_plane_tricorn, extract_boundary, rescaled_julia_window, rescaled_param_window,
    truncate, PlanarSet, ScaleBase,
};
use crate::rescale::{rho_k, RescaleData};
use crate::tricorn::{apply_h, rho_k_tricorn, RealLinearMap, TricornData};
use std::ops::RangeInclusive;
use std::path::Path;

/// Uniform square buckets over the bounding box of a point set. `None`
/// when the set is degenerate (all points coincide); callers fall back to
/// the quadratic scan, which is also exact.
struct BucketGrid {
    x0: f64,
    y0: f64,
    side: f64,
    n: i64,
    cells: Vec<Vec<u32>>,
}

impl BucketGrid {
    fn build(pts: &[C]) -> Option<BucketGrid> {
        let n = (pts.len() as f64).sqrt().ceil().max(1.0) as i64;
        let mut xmin = f64::INFINITY;
        let mut xmax = f64::NEG_INFINITY;
        let mut ymin = f64::INFINITY;
        let mut ymax = f64::NEG_INFINITY;
        for p in pts {
            xmin = xmin.min(p.re);
            xmax = xmax.max(p.re);
            ymin = ymin.min(p.im);
            ymax = ymax.max(p.im);
        }
        let side = ((xmax - xmin).max(ymax - ymin)) / n as f64;
        if !side.is_finite() || side <= 0.0 {
            return None;
        }
        let mut cells = vec![Vec::new(); (n * n) as usize];
        for (idx, p) in pts.iter().enumerate() {
            let i = (((p.re - xmin) / side) as i64).clamp(0, n - 1);
            let j = (((p.im - ymin) / side) as i64).clamp(0, n - 1);
            cells[(j * n + i) as usize].push(idx as u32);
        }
        Some(BucketGrid {
            x0: xmin,
            y0: ymin,
            side,
            n,
            cells,
        })
    }

    /// Exact nearest-neighbor distance from q to the bucketed set. The
    /// query is first projected onto the bounding box (projection onto a
    /// convex box never increases the distance to any box point), then
    /// rings of cells at Chebyshev distance t from the projected cell are
    /// scanned outward. Any point in ring t is at least (t - 1) * side from
    /// the projection, hence from q, so once the current best beats that
    /// bound no farther ring can improve it; rings stop at n regardless.
    fn nearest_distance(&self, q: C, pts: &[C]) -> f64 {
        let span = self.side * self.n as f64;
        let px = q.re.clamp(self.x0, self.x0 + span);
        let py = q.im.clamp(self.y0, self.y0 + span);
        let qi = (((px - self.x0) / self.side) as i64).clamp(0, self.n - 1);
        let qj = (((py - self.y0) / self.side) as i64).clamp(0, self.n - 1);
        let mut best = f64::INFINITY;
        let scan_cell = |ci: i64, cj: i64, best: &mut f64| {
            if ci < 0 || cj < 0 || ci >= self.n || cj >= self.n {
                return;
            }
            for &idx in &self.cells[(cj * self.n + ci) as usize] {
                let d = (q - pts[idx as usize]).norm();
                if d < *best {
                    *best = d;
                }
            }
        };
        let mut t: i64 = 0;
        while t < self.n {
            if best.is_finite() && (t - 1) as f64 * self.side >= best {
                break;
            }
            if t == 0 {
                scan_cell(qi, qj, &mut best);
            } else {
                for ci in (qi - t)..=(qi + t) {
                    scan_cell(ci, qj - t, &mut best);
                    scan_cell(ci, qj + t, &mut best);
                }
                for cj in (qj - t + 1)..=(qj + t - 1) {
                    scan_cell(qi - t, cj, &mut best);
                    scan_cell(qi + t, cj, &mut best);
                }
            }
            t += 1;
        }
        best
    }
}

fn directed(from: &[C], to: &[C], grid: Option<&BucketGrid>) -> f64 {
    let mut worst = 0.0f64;
    for &a in from {
        let d = match grid {
            Some(g) => g.nearest_distance(a, to),
            None => {
                let mut best = f64::INFINITY;
                for &b in to {
                    let e = (a - b).norm();
                    if e < best {
                        best = e;
                    }
                }
                best
            }
        };
        if d > worst {
            worst = d;
        }
    }
    worst
}

/// Hausdorff distance between two nonempty finite sets.
pub fn hausdorff_distance(a: &PlanarSet, b: &PlanarSet) -> Result<f64> {
    if a.points.is_empty() || b.points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let gb = BucketGrid::build(&b.points);
    let ga = BucketGrid::build(&a.points);
    let ab = directed(&a.points, &b.points, gb.as_ref());
    let ba = directed(&b.points, &a.points, ga.as_ref());
    Ok(ab.max(ba))
}

/// Quadratic-scan reference implementation, kept public as the oracle the
/// accelerated version is required to match exactly.
pub fn hausdorff_distance_naive(a: &PlanarSet, b: &PlanarSet) -> Result<f64> {
    if a.points.is_empty() || b.points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let ab = directed(&a.points, &b.points, None);
    let ba = directed(&b.points, &a.points, None);
    Ok(ab.max(ba))
}

/// One depth of a similarity table: scale magnitude and the two Hausdorff
/// distances (dynamical and parameter panel against the reference set), all
/// in rescaled w-plane units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub k: u32,
    pub rho_abs: f64,
    pub d_julia: f64,
    pub d_param: f64,
}

fn circle_samples(resolution: u32) -> u32 {
    4 * resolution
}

/// Map boundary points from the ambient plane back to the w-plane via a
/// complex scale: w = (z - c0) / scale.
fn pull_back(set: &PlanarSet, c0: C, scale: C, w_pitch: f64) -> PlanarSet {
    PlanarSet {
        points: set.points.iter().map(|z| (z - c0) / scale).collect(),
        scale_hint: w_pitch,
    }
}

/// Tricorn parameter pullback: w = h(c - c0) / rho, pointwise through the
/// inverse real-linear map (H is not complex-linear, so no scalar divides).
fn pull_back_h(set: &PlanarSet, c0: C, map: &RealLinearMap, rho: C, w_pitch: f64) -> Result<PlanarSet> {
    let mut points = Vec::with_capacity(set.points.len());
    for z in &set.points {
        points.push(apply_h(map, z - c0)? / rho);
    }
    Ok(PlanarSet {
        points,
        scale_hint: w_pitch,
    })
}

/// Similarity table for the quadratic family. The reference set is the
/// truncated boundary of {w in D(r) : the depth-k_max proxy orbit stays
/// bounded}, classified once with the same budget; each row then compares
/// the rescaled dynamical and parameter boundaries at depth k against it.
pub fn similarity_table(
    d: &RescaleData,
    k_range: RangeInclusive<u32>,
    r: f64,
    resolution: u32,
    budget: u32,
) -> Result<Vec<ConvergenceRow>> {
    assert!(!k_range.is_empty(), "empty depth range");
    let c0 = d.base.c0;
    let kmax = *k_range.end();
    let w_pitch = 2.0 * r / resolution as f64;
    let samples = circle_samples(resolution);

    let rho_max = rho_k(d, kmax)?;
    let warmup = d.base.l + kmax * d.base.p;
    let ref_grid = classify_w_plane_quad(c0, rho_max, warmup, r, resolution, budget);
    let reference = truncate(&extract_boundary(&ref_grid, false)?, r, samples);

    let base = ScaleBase::Quad(d);
    let mut rows = Vec::new();
    for k in k_range {
        let rho = rho_k(d, k)?;

        let jw = rescaled_julia_window(&base, k, r, resolution)?;
        let jg = classify_julia(c0, &jw, budget, false);
        let jset = truncate(
            &pull_back(&extract_boundary(&jg, false)?, c0, rho, w_pitch),
            r,
            samples,
        );
        let d_julia = hausdorff_distance(&reference, &jset)?;

        let pw = rescaled_param_window(&base, k, r, resolution)?;
        let pg = classify_mandelbrot(&pw, budget);
        let pset = truncate(
            &pull_back(&extract_boundary(&pg, false)?, c0, d.Q * rho, w_pitch),
            r,
            samples,
        );
        let d_param = hausdorff_distance(&reference, &pset)?;

        rows.push(ConvergenceRow {
            k,
            rho_abs: rho.norm(),
            d_julia,
            d_param,
        });
    }
    Ok(rows)
}

/// Antiholomorphic analog of `similarity_table`. Iteration counts are in
/// single g-steps; the parameter pullback goes through the inverse of the
/// real-linear transversality map.
pub fn similarity_table_tricorn(
    d: &TricornData,
    k_range: RangeInclusive<u32>,
    r: f64,
    resolution: u32,
    budget: u32,
) -> Result<Vec<ConvergenceRow>> {
    assert!(!k_range.is_empty(), "empty depth range");
    let c0 = d.c0;
    let kmax = *k_range.end();
    let w_pitch = 2.0 * r / resolution as f64;
    let samples = circle_samples(resolution);
    let map = RealLinearMap { Q: d.Q, Qp: d.Qp };

    let rho_max = rho_k_tricorn(d, kmax)?;
    let warmup = 2 * d.l + 2 * kmax * d.p;
    let ref_grid = classify_w_plane_tricorn(c0, rho_max, warmup, r, resolution, budget);
    let reference = truncate(&extract_boundary(&ref_grid, false)?, r, samples);

    let base = ScaleBase::Tri(d);
    let mut rows = Vec::new();
    for k in k_range {
        let rho = rho_k_tricorn(d, k)?;

        let jw = rescaled_julia_window(&base, k, r, resolution)?;
        let jg = classify_julia(c0, &jw, budget, true);
        let jset = truncate(
            &pull_back(&extract_boundary(&jg, false)?, c0, rho, w_pitch),
            r,
            samples,
        );
        let d_julia = hausdorff_distance(&reference, &jset)?;

        let pw = rescaled_param_window(&base, k, r, resolution)?;
        let pg = classify_tricorn(&pw, budget);
        let pset = truncate(
            &pull_back_h(&extract_boundary(&pg, false)?, c0, &map, rho, w_pitch)?,
            r,
            samples,
        );
        let d_param = hausdorff_distance(&reference, &pset)?;

        rows.push(ConvergenceRow {
            k,
            rho_abs: rho.norm(),
            d_julia,
            d_param,
        });
    }
    Ok(rows)
}

/// CSV with a fixed header and 12 significant digits per value, LF line
/// endings, no trailing whitespace; byte-identical across reruns.
pub fn table_csv_string(rows: &[ConvergenceRow]) -> String {
    let mut s = String::from("k,rho_abs,d_julia,d_param\n");
    for row in rows {
        s.push_str(&format!(
            "{},{:.11e},{:.11e},{:.11e}\n",
            row.k, row.rho_abs, row.d_julia, row.d_param
        ));
    }
    s
}

pub fn write_table_csv(rows: &[ConvergenceRow], path: &Path) -> Result<()> {
    std::fs::write(path, table_csv_string(rows))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(points: Vec<C>) -> PlanarSet {
        PlanarSet {
            points,
            scale_hint: 1.0,
        }
    }

    #[test]
    fn identical_sets_are_at_distance_zero() {
        let a = set(vec![C::new(0.0, 0.0), C::new(1.0, 2.0), C::new(-3.0, 0.5)]);
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn singletons_give_the_euclidean_distance() {
        let a = set(vec![C::new(0.0, 0.0)]);
        let b = set(vec![C::new(3.0, 4.0)]);
        assert_eq!(hausdorff_distance(&a, &b).unwrap(), 5.0);
    }

    #[test]
    fn subset_distance_is_driven_by_the_larger_set() {
        // A inside B: the directed distance A -> B is 0, so the value is
        // the farthest B point's distance to A
        let a = set(vec![C::new(0.0, 0.0)]);
        let b = set(vec![C::new(0.0, 0.0), C::new(0.0, 10.0)]);
        assert_eq!(hausdorff_distance(&a, &b).unwrap(), 10.0);
        assert_eq!(hausdorff_distance(&b, &a).unwrap(), 10.0);
    }

    #[test]
    fn empty_input_is_an_error() {
        let a = set(vec![]);
        let b = set(vec![C::new(1.0, 0.0)]);
        assert!(matches!(hausdorff_distance(&a, &b), Err(Error::EmptyInput)));
        assert!(matches!(hausdorff_distance(&b, &a), Err(Error::EmptyInput)));
        assert!(matches!(
            hausdorff_distance_naive(&a, &b),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn bucketing_matches_the_quadratic_scan_bitwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f51);
        for trial in 0..25 {
            // mix broad clouds, tight clusters, collinear points, singletons
            let na = 1 + rng.gen_range(0..160);
            let nb = 1 + rng.gen_range(0..160);
            let spread = if trial % 3 == 0 { 1e-6 } else { 10.0 };
            let mk = |rng: &mut ChaCha8Rng, n: usize, spread: f64| {
                let cx = rng.gen_range(-5.0..5.0);
                let cy = rng.gen_range(-5.0..5.0);
                set((0..n)
                    .map(|_| {
                        C::new(
                            cx + rng.gen_range(-spread..spread),
                            cy + rng.gen_range(-spread..spread),
                        )
                    })
                    .collect())
            };
            let a = mk(&mut rng, na, spread);
            let b = mk(&mut rng, nb, 10.0);
            let fast = hausdorff_distance(&a, &b).unwrap();
            let slow = hausdorff_distance_naive(&a, &b).unwrap();
            assert_eq!(fast.to_bits(), slow.to_bits(), "trial {trial}");
        }
    }

    #[test]
    fn degenerate_single_cluster_falls_back_cleanly() {
        let a = set(vec![C::new(2.0, 2.0); 7]);
        let b = set(vec![C::new(2.0, 2.0), C::new(2.0, 3.0)]);
        assert_eq!(hausdorff_distance(&a, &b).unwrap(), 1.0);
        assert_eq!(hausdorff_distance_naive(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn triangle_inequality_holds_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xabc123);
        for _ in 0..20 {
            let mk = |rng: &mut ChaCha8Rng| {
                let n = 1 + rng.gen_range(0..40);
                set((0..n)
                    .map(|_| C::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)))
                    .collect())
            };
            let (a, b, c) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
            let ab = hausdorff_distance(&a, &b).unwrap();
            let bc = hausdorff_distance(&b, &c).unwrap();
            let ac = hausdorff_distance(&a, &c).unwrap();
            assert!(ac <= ab + bc + 1e-12);
        }
    }

    #[test]
    fn csv_layout_is_fixed() {
        let rows = vec![
            ConvergenceRow {
                k: 4,
                rho_abs: 0.25,
                d_julia: 0.015625,
                d_param: 1.0,
            },
            ConvergenceRow {
                k: 5,
                rho_abs: 0.0625,
                d_julia: 0.0078125,
                d_param: 0.5,
            },
        ];
        let dir = std::env::temp_dir().join("selfsim_hausdorff_csv_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("table.csv");
        write_table_csv(&rows, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            text,
            "k,rho_abs,d_julia,d_param\n\
             4,2.50000000000e-1,1.56250000000e-2,1.00000000000e0\n\
             5,6.25000000000e-2,7.81250000000e-3,5.00000000000e-1\n"
        );
    }

    #[test]
    fn quadratic_similarity_table_smoke() {
        let d = crate::misiurewicz::solve_misiurewicz(
            1,
            2,
            C::new(0.0, 1.0),
            crate::misiurewicz::NEWTON_TOL,
        )
        .unwrap();
        let d = crate::rescale::compute_Q(&d).unwrap();
        let rows = similarity_table(&d, 3..=4, 2.0, 48, 150).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].k, 3);
        assert_eq!(rows[1].k, 4);
        for row in &rows {
            let rho = rho_k(&d, row.k).unwrap();
            assert_eq!(row.rho_abs, rho.norm());
            assert!(row.d_julia.is_finite() && row.d_julia >= 0.0);
            assert!(row.d_param.is_finite() && row.d_param >= 0.0);
            // pulled-back sets live in D(r): distances cannot exceed 2r
            assert!(row.d_julia <= 4.0 && row.d_param <= 4.0);
        }
    }
}
