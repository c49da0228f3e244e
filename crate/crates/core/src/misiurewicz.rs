//! Newton-based location and certification of Misiurewicz parameters of the
//! quadratic family, plus continuation of the landing periodic point a(c)
//! and its multiplier lambda(c).

use crate::dd::polish_root;
use crate::dynamics::{f_step, iterate_f, orbit_with_derivatives, C};
use crate::error::{Error, Result};

pub const NEWTON_TOL: f64 = 1e-13;
pub const NEWTON_MAX_ITERS: u32 = 100;
const DAMPING_MAX_HALVINGS: u32 = 40;
/// Residual threshold below which a smaller (l', p') counts as satisfying
/// the preperiodicity relation, disqualifying (l, p) as minimal.
const MINIMALITY_TOL: f64 = 1e-8;
/// Continuation guard: a Newton result farther than this from its seed is a
/// basin jump, not a continued point.
const BASIN_JUMP_BOUND: f64 = 0.5;
pub const SEARCH_L_MAX: u32 = 12;
pub const SEARCH_P_MAX: u32 = 8;

/// Certified Misiurewicz parameter: the critical orbit of c0 lands after l
/// steps on a repelling cycle of period p.
#[derive(Debug, Clone, Copy)]
pub struct MisiurewiczData {
    pub c0: C,
    pub l: u32,
    pub p: u32,
    /// a0 = f_{c0}^l(c0), the landing point of the critical orbit.
    pub a0: C,
    /// Cycle multiplier (f_{c0}^p)'(a0), |lambda0| > 1.
    pub lambda0: C,
    /// |f^{l+p}(c0) - f^l(c0)| re-evaluated by plain iteration.
    pub residual: f64,
}

/// F(c) = f_c^{l+p}(c) - f_c^l(c) and dF/dc, one orbit pass with the
/// parameter-derivative channel (initial point is c itself).
fn relation_and_derivative(c: C, l: u32, p: u32) -> (C, C) {
    let one = C::new(1.0, 0.0);
    let mut z = c;
    let mut dc = one;
    let mut at_l = (z, dc);
    for i in 0..(l + p) {
        if i == l {
            at_l = (z, dc);
        }
        dc = (z + z) * dc + one;
        z = f_step(z, c);
    }
    (z - at_l.0, dc - at_l.1)
}

fn damped_newton<F>(seed: C, tol: f64, eval: F) -> Result<C>
where
    F: Fn(C) -> (C, C),
{
    let mut c = seed;
    let (mut fc, mut dfc) = eval(c);
    for _ in 0..NEWTON_MAX_ITERS {
        if !fc.is_finite() {
            return Err(Error::NoConvergence);
        }
        if fc.norm() <= tol {
            return Ok(c);
        }
        if dfc.norm_sqr() == 0.0 {
            return Err(Error::NoConvergence);
        }
        let mut step = fc / dfc;
        let mut improved = false;
        for _ in 0..DAMPING_MAX_HALVINGS {
            let cand = c - step;
            let (fc_new, dfc_new) = eval(cand);
            if fc_new.is_finite() && fc_new.norm() < fc.norm() {
                c = cand;
                fc = fc_new;
                dfc = dfc_new;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            return Err(Error::NoConvergence);
        }
    }
    if fc.norm() <= tol {
        Ok(c)
    } else {
        Err(Error::NoConvergence)
    }
}

fn divisors(p: u32) -> Vec<u32> {
    (1..=p).filter(|d| p % d == 0).collect()
}

/// Solve F(c) = f_c^{l+p}(c) - f_c^l(c) = 0 near `seed` and certify the root
/// as a minimal, repelling Misiurewicz parameter.
pub fn solve_misiurewicz(l: u32, p: u32, seed: C, tol: f64) -> Result<MisiurewiczData> {
    assert!(l >= 1 && p >= 1, "preperiod and period must be >= 1");
    assert!(tol > 0.0);
    let c0 = damped_newton(seed, tol, |c| relation_and_derivative(c, l, p))?;
    // Newton stops ~tol/|F'| away from the root; downstream depth-k orbits
    // amplify that offset by |lambda0|^k, so polish to the f64 rounding of
    // the true root before deriving anything from c0.
    let c0 = polish_root(l, p, c0).0.to_c();

    // Minimality: no l' < l (any divisor period) and no proper divisor
    // period at l' = l may already satisfy the relation.
    for lp in 1..=l {
        for &pp in &divisors(p) {
            if lp == l && pp == p {
                continue;
            }
            let r = (iterate_f(c0, c0, lp + pp) - iterate_f(c0, c0, lp)).norm();
            if r < MINIMALITY_TOL {
                return Err(Error::NotMinimal);
            }
        }
    }

    let a0 = iterate_f(c0, c0, l);
    let lambda0 = multiplier(c0, a0, p);
    if !(lambda0.norm() > 1.0) {
        return Err(Error::NotRepelling);
    }
    let residual = (iterate_f(c0, c0, l + p) - a0).norm();
    if residual > 10.0 * tol {
        return Err(Error::NoConvergence);
    }
    Ok(MisiurewiczData {
        c0,
        l,
        p,
        a0,
        lambda0,
        residual,
    })
}

/// Search the (l, p) grid for the certified root nearest to `seed`.
///
/// Figure-caption centers come without (l, p); this recovers both. Ties in
/// distance resolve to the smallest l + p, then smallest l.
pub fn solve_misiurewicz_search(seed: C, tol: f64, l_max: u32, p_max: u32) -> Result<MisiurewiczData> {
    let mut best: Option<MisiurewiczData> = None;
    for l in 1..=l_max {
        for p in 1..=p_max {
            if let Ok(d) = solve_misiurewicz(l, p, seed, tol) {
                let dist = (d.c0 - seed).norm();
                let better = match &best {
                    None => true,
                    Some(b) => {
                        let bd = (b.c0 - seed).norm();
                        dist < bd * (1.0 - 1e-12)
                            || (dist <= bd * (1.0 + 1e-12)
                                && (d.l + d.p, d.l) < (b.l + b.p, b.l))
                    }
                };
                if better {
                    best = Some(d);
                }
            }
        }
    }
    best.ok_or(Error::NoConvergence)
}

/// Continue the period-p point a(c) by Newton on f_c^p(z) - z = 0 from
/// `a_seed`. Guards against jumping to a different cycle branch.
pub fn track_periodic_point(c: C, a_seed: C, p: u32, tol: f64) -> Result<C> {
    let one = C::new(1.0, 0.0);
    let mut z = a_seed;
    for _ in 0..NEWTON_MAX_ITERS {
        let r = orbit_with_derivatives(c, z, p, false);
        if r.overflow {
            return Err(Error::NoConvergence);
        }
        let g = r.final_z - z;
        if g.norm() <= tol {
            if (z - a_seed).norm() > BASIN_JUMP_BOUND {
                return Err(Error::BasinJump);
            }
            return Ok(z);
        }
        let dg = r.dz - one;
        if dg.norm_sqr() == 0.0 {
            return Err(Error::NoConvergence);
        }
        let mut step = g / dg;
        let mut improved = false;
        for _ in 0..DAMPING_MAX_HALVINGS {
            let cand = z - step;
            let rc = orbit_with_derivatives(c, cand, p, false);
            if !rc.overflow && (rc.final_z - cand).norm() < g.norm() {
                z = cand;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            return Err(Error::NoConvergence);
        }
    }
    Err(Error::NoConvergence)
}

/// Cycle multiplier (f_c^p)'(a) via the z-derivative channel.
pub fn multiplier(c: C, a: C, p: u32) -> C {
    orbit_with_derivatives(c, a, p, false).dz
}
