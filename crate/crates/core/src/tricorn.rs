//! Antiholomorphic (tricorn) counterpart: certification of tricorn
//! Misiurewicz parameters, the Wirtinger transversality pair (B0, B0'), the
//! real-linear parameter map H(w) = Q w + Q' conj(w) with inverse h, and the
//! rescaled families of the dynamical and parameter planes.
//!
//! Counting convention: (l, p) are minimal in g-steps. All holomorphic
//! machinery runs on the biquadratic G = g^2 (holomorphic in z) with the
//! same l and p: a0 = G^l(c0), lambda0 = (G^p)'(a0), A0 = (G^l)'(c0).

#![allow(non_snake_case)]

use crate::dynamics::{iterate_g, C};
use crate::error::{Error, Result};
use crate::misiurewicz::{NEWTON_MAX_ITERS, NEWTON_TOL};
use crate::rescale::lambda_pow;

const DAMPING_MAX_HALVINGS: u32 = 40;
const MINIMALITY_TOL: f64 = 1e-8;
const BASIN_JUMP_BOUND: f64 = 0.5;
const A0_DEGENERACY_TOL: f64 = 1e-12;
/// Relative gap below which |B0| and |B0'| are considered degenerate.
const TRANSVERSALITY_MARGIN: f64 = 1e-6;
const OVERFLOW_SQR: f64 = 1e300;
const RANGE_GUARD: f64 = 1e300;
/// Central finite-difference step for the parameter Jacobian, scaled by the
/// parameter magnitude.
const FD_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy)]
pub struct TricornData {
    pub c0: C,
    pub l: u32,
    pub p: u32,
    /// a0 = g_{c0}^{2l}(c0) = G^l(c0).
    pub a0: C,
    /// (G^p)'(a0); real and positive when p is odd.
    pub lambda0: C,
    /// (G^l)'(c0).
    pub A0: C,
    /// Wirtinger pair of c -> g_c^{2l}(c) - a(c) at c0.
    pub B0: C,
    pub B0p: C,
    pub Q: C,
    pub Qp: C,
    /// |g^{l+p}(c0) - g^l(c0)| re-evaluated by plain iteration.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct RealLinearMap {
    pub Q: C,
    pub Qp: C,
}

/// One step of G = g^2 carrying d/dz: t = z^2 + conj(c), z' = t^2 + c,
/// der' = 4 z t der.
#[inline]
fn g2_step_dual(z: C, der: C, c: C) -> (C, C) {
    let t = z * z + c.conj();
    (t * t + c, 4.0 * z * t * der)
}

/// G_c^n(z) and its z-derivative; overflow yields non-finite values.
fn g2_orbit_dual(c: C, z: C, n: u32) -> (C, C) {
    let mut z = z;
    let mut der = C::new(1.0, 0.0);
    for _ in 0..n {
        if z.norm_sqr() > OVERFLOW_SQR {
            return (C::new(f64::INFINITY, f64::INFINITY), der);
        }
        let (zn, dn) = g2_step_dual(z, der, c);
        z = zn;
        der = dn;
    }
    (z, der)
}

/// G_c^n(z) = g_c^{2n}(z), holomorphic in z.
pub fn biquadratic(c: C, z: C, n: u32) -> C {
    g2_orbit_dual(c, z, n).0
}

/// Preperiodicity defect S(c) = g_c^{l+p}(c) - g_c^l(c).
fn g_relation(c: C, l: u32, p: u32) -> C {
    iterate_g(c, c, l + p) - iterate_g(c, c, l)
}

/// 2D Newton on Re/Im of S with a central finite-difference Jacobian; g is
/// only real-analytic in c, so no complex Newton step exists.
fn newton_2d(seed: C, l: u32, p: u32, tol: f64) -> Result<C> {
    let mut c = seed;
    let mut s = g_relation(c, l, p);
    for _ in 0..NEWTON_MAX_ITERS {
        if !s.is_finite() {
            return Err(Error::NoConvergence);
        }
        if s.norm() <= tol {
            return Ok(c);
        }
        let h = 1e-7 * c.norm().max(1.0);
        let sx = (g_relation(c + C::new(h, 0.0), l, p) - g_relation(c - C::new(h, 0.0), l, p))
            / (2.0 * h);
        let sy = (g_relation(c + C::new(0.0, h), l, p) - g_relation(c - C::new(0.0, h), l, p))
            / (2.0 * h);
        // J = [sx.re  sy.re; sx.im  sy.im], solve J d = s by Cramer
        let det = sx.re * sy.im - sy.re * sx.im;
        if det == 0.0 || !det.is_finite() {
            return Err(Error::NoConvergence);
        }
        let dx = (s.re * sy.im - sy.re * s.im) / det;
        let dy = (sx.re * s.im - s.re * sx.im) / det;
        let mut step = C::new(dx, dy);
        let mut improved = false;
        for _ in 0..DAMPING_MAX_HALVINGS {
            let cand = c - step;
            let s_new = g_relation(cand, l, p);
            if s_new.is_finite() && s_new.norm() < s.norm() {
                c = cand;
                s = s_new;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            return Err(Error::NoConvergence);
        }
    }
    if s.norm() <= tol {
        Ok(c)
    } else {
        Err(Error::NoConvergence)
    }
}

/// Continue the G^p-fixed point a(c) by Newton from `a_seed`.
pub fn track_periodic_point_g(c: C, a_seed: C, p: u32, tol: f64) -> Result<C> {
    let one = C::new(1.0, 0.0);
    let mut z = a_seed;
    for _ in 0..NEWTON_MAX_ITERS {
        let (v, dv) = g2_orbit_dual(c, z, p);
        if !v.is_finite() {
            return Err(Error::NoConvergence);
        }
        let g = v - z;
        if g.norm() <= tol {
            if (z - a_seed).norm() > BASIN_JUMP_BOUND {
                return Err(Error::BasinJump);
            }
            return Ok(z);
        }
        let dg = dv - one;
        if dg.norm_sqr() == 0.0 {
            return Err(Error::NoConvergence);
        }
        let mut step = g / dg;
        let mut improved = false;
        for _ in 0..DAMPING_MAX_HALVINGS {
            let cand = z - step;
            let (vc, _) = g2_orbit_dual(c, cand, p);
            if vc.is_finite() && (vc - cand).norm() < g.norm() {
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

/// Decompose a real 2x2 Jacobian M of a map on C into Wirtinger
/// coefficients (B0, B0') with dU = B0 dc + B0' conj(dc).
pub fn wirtinger_pair(m: [[f64; 2]; 2]) -> (C, C) {
    let b0 = C::new((m[0][0] + m[1][1]) / 2.0, (m[1][0] - m[0][1]) / 2.0);
    let b0p = C::new((m[0][0] - m[1][1]) / 2.0, (m[1][0] + m[0][1]) / 2.0);
    (b0, b0p)
}

/// Central-difference real Jacobian of u(c) = g_c^{2l}(c) - a(c) at c0,
/// decomposed into the Wirtinger pair.
fn b0_pair_at(c0: C, l: u32, p: u32, a0: C) -> Result<(C, C)> {
    let h = FD_STEP * c0.norm().max(1.0);
    let u = |c: C| -> Result<C> {
        let a = track_periodic_point_g(c, a0, p, NEWTON_TOL)?;
        Ok(iterate_g(c, c, 2 * l) - a)
    };
    let ux = (u(c0 + C::new(h, 0.0))? - u(c0 - C::new(h, 0.0))?) / (2.0 * h);
    let uy = (u(c0 + C::new(0.0, h))? - u(c0 - C::new(0.0, h))?) / (2.0 * h);
    let m = [[ux.re, uy.re], [ux.im, uy.im]];
    let (b0, b0p) = wirtinger_pair(m);
    if (b0.norm() - b0p.norm()).abs() < TRANSVERSALITY_MARGIN * (b0.norm() + b0p.norm()) {
        return Err(Error::DegenerateTransversality);
    }
    Ok((b0, b0p))
}

/// Re-derive the Wirtinger pair of a certified record (finite-difference
/// oracle surface; the solver already stored the same values).
pub fn compute_B0_pair(d: &TricornData) -> Result<(C, C)> {
    b0_pair_at(d.c0, d.l, d.p, d.a0)
}

/// Q = A0 conj(B0) / (|B0|^2 - |B0'|^2), Q' = -conj(A0) B0' / (same), so
/// that B0 H(rho_k w) + B0' conj(H(rho_k w)) = w / lambda0^k identically.
pub fn compute_QQp(A0: C, B0: C, B0p: C) -> Result<RealLinearMap> {
    let den = B0.norm_sqr() - B0p.norm_sqr();
    if den.abs() < TRANSVERSALITY_MARGIN * (B0.norm_sqr() + B0p.norm_sqr()) {
        return Err(Error::DegenerateTransversality);
    }
    Ok(RealLinearMap {
        Q: A0 * B0.conj() / den,
        Qp: -A0.conj() * B0p / den,
    })
}

pub fn apply_H(m: &RealLinearMap, w: C) -> C {
    m.Q * w + m.Qp * w.conj()
}

pub fn apply_h(m: &RealLinearMap, W: C) -> Result<C> {
    let den = m.Q.norm_sqr() - m.Qp.norm_sqr();
    if den.abs() < 1e-14 * (m.Q.norm_sqr() + m.Qp.norm_sqr()) {
        return Err(Error::NotInvertible);
    }
    Ok((m.Q.conj() * W - m.Qp * W.conj()) / den)
}

/// Solve g_c^{l+p}(c) = g_c^l(c) near `seed` and certify minimality,
/// repelling multiplier, and nondegenerate transversality.
pub fn solve_tricorn_misiurewicz(l: u32, p: u32, seed: C, tol: f64) -> Result<TricornData> {
    assert!(l >= 1 && p >= 1, "preperiod and period must be >= 1");
    let c0 = newton_2d(seed, l, p, tol)?;

    for lp in 1..=l {
        for pp in (1..=p).filter(|d| p % d == 0) {
            if lp == l && pp == p {
                continue;
            }
            let r = (iterate_g(c0, c0, lp + pp) - iterate_g(c0, c0, lp)).norm();
            if r < MINIMALITY_TOL {
                return Err(Error::NotMinimal);
            }
        }
    }

    let a0 = iterate_g(c0, c0, 2 * l);
    let (_, lambda0) = g2_orbit_dual(c0, a0, p);
    if !(lambda0.norm() > 1.0) {
        return Err(Error::NotRepelling);
    }
    let (_, A0) = g2_orbit_dual(c0, c0, l);
    if A0.norm() < A0_DEGENERACY_TOL {
        return Err(Error::DegenerateA0);
    }
    let (B0, B0p) = b0_pair_at(c0, l, p, a0)?;
    let m = compute_QQp(A0, B0, B0p)?;
    let residual = g_relation(c0, l, p).norm();
    if residual > 10.0 * tol {
        return Err(Error::NoConvergence);
    }
    Ok(TricornData {
        c0,
        l,
        p,
        a0,
        lambda0,
        A0,
        B0,
        B0p,
        Q: m.Q,
        Qp: m.Qp,
        residual,
    })
}

/// (l, p) grid search around a seed, nearest certified root wins.
pub fn solve_tricorn_search(seed: C, tol: f64, l_max: u32, p_max: u32) -> Result<TricornData> {
    let mut best: Option<TricornData> = None;
    for l in 1..=l_max {
        for p in 1..=p_max {
            if let Ok(d) = solve_tricorn_misiurewicz(l, p, seed, tol) {
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

/// rho_k = 1/(A0 lambda0^k) for the tricorn record.
pub fn rho_k_tricorn(d: &TricornData, k: u32) -> Result<C> {
    let log_range = (k as f64) * d.lambda0.norm().ln();
    if log_range >= RANGE_GUARD.ln() {
        return Err(Error::RangeExceeded);
    }
    Ok(C::new(1.0, 0.0) / (d.A0 * lambda_pow(d.lambda0, k)))
}

/// Dynamical-plane family phi_k(w) = g_{c0}^{2l + 2kp}(c0 + rho_k w).
pub fn phi_k_tricorn(d: &TricornData, k: u32, w: C) -> Result<C> {
    let rho = rho_k_tricorn(d, k)?;
    let v = iterate_g(d.c0, d.c0 + rho * w, 2 * d.l + 2 * k * d.p);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NoConvergence)
    }
}

/// Parameter-plane family Phi_k(w) = g_c^{2l + 2kp}(c) at
/// c = c0 + H(rho_k w); H is real-linear, applied pointwise.
pub fn Phi_k_tricorn(d: &TricornData, k: u32, w: C) -> Result<C> {
    let rho = rho_k_tricorn(d, k)?;
    let m = RealLinearMap { Q: d.Q, Qp: d.Qp };
    let c = d.c0 + apply_H(&m, rho * w);
    let v = iterate_g(c, c, 2 * d.l + 2 * k * d.p);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NoConvergence)
    }
}
