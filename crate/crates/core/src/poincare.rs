//! Poincare function phi at the landing cycle and the rescaled families
//! phi_k (dynamical plane) and Phi_k (parameter plane).
//!
//! phi(w) = lim_n f^{np}(a0 + w / lambda0^n). The increments of the defining
//! sequence decay geometrically at rate ~1/|lambda0| while every rounding
//! error committed near the repelling cycle is amplified by |lambda0| per
//! period, so a plain f64 scan bottoms out around 1e-8 and cannot reach the
//! 1e-10 increment tolerance. All orbit evaluations here therefore run in
//! compensated double-double arithmetic (dd module) and round once at the
//! end; the tol rule then terminates normally. A floor/rise backstop still
//! returns the best iterate should the decay stall before tol. Arguments
//! outside a small disk are reduced through the conjugacy
//! phi(w) = f^p(phi(w / lambda0)) before scanning, which keeps the scan in
//! its well-conditioned range.

#![allow(non_snake_case)]

use crate::dd::{iterate_f_dd, polish_root, Cdd};
use crate::dynamics::{iterate_f, C};
use crate::error::{Error, Result};
use crate::misiurewicz::MisiurewiczData;
use crate::rescale::{rho_k, RescaleData};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_N_CAP: u32 = 60;
pub const DEFAULT_R_MAX: f64 = 1e3;
/// Relative acceptance for a floor-stopped value: the best increment must be
/// this small (values of phi reach ~30 on D(1) at deep parameters).
const FLOOR_ACCEPT: f64 = 1e-6;
/// An increment this many times above the best seen marks the upward noise
/// branch; isolated sub-floor dips stay below it.
const RISE_FACTOR: f64 = 20.0;
/// Largest argument handled by the direct approximant scan. Beyond it the
/// noise floor (amplified ~|lambda0|^n) crosses the truncation decay too
/// early, so phi(w) = f^p(phi(w / lambda0)) is applied first: one conjugacy
/// step per factor of |lambda0| until the argument lands inside this disk.
const R_DIRECT: f64 = 1.5;

#[derive(Debug, Clone, Copy)]
pub struct PoincareEvaluator {
    pub c0: C,
    pub a0: C,
    pub lambda0: C,
    pub p: u32,
    pub tol: f64,
    pub n_cap: u32,
    pub r_max: f64,
    c0_dd: Cdd,
    a0_dd: Cdd,
}

impl PoincareEvaluator {
    pub fn new(d: &MisiurewiczData) -> Self {
        let (c0_dd, a0_dd) = polish_root(d.l, d.p, d.c0);
        PoincareEvaluator {
            c0: d.c0,
            a0: d.a0,
            lambda0: d.lambda0,
            p: d.p,
            tol: DEFAULT_TOL,
            n_cap: DEFAULT_N_CAP,
            r_max: DEFAULT_R_MAX,
            c0_dd,
            a0_dd,
        }
    }

    /// Evaluate phi(w) together with the Cauchy increments
    /// |phi_n(w) - phi_{n-1}(w)| actually observed before stopping.
    pub fn phi_detailed(&self, w: C) -> Result<(C, Vec<f64>)> {
        if w.norm() > self.r_max {
            return Err(Error::RangeExceeded);
        }
        if w.norm() > R_DIRECT {
            let (inner, increments) = self.phi_detailed(w / self.lambda0)?;
            return Ok((iterate_f(self.c0, inner, self.p), increments));
        }
        // Past n_live the rescaled offset w/lambda0^n underflows against a0
        // at double-double granularity (~1e-32 relative) and every iterate
        // collapses to the exact cycle: increments go to exact zero for the
        // wrong reason. Cap the scan there.
        let umin = 1e-28 * (1.0 + self.a0.norm());
        let n_live_f = (w.norm().max(2.0 * umin) / umin).ln() / self.lambda0.norm().ln();
        let n_live = (n_live_f.floor() as i64).clamp(2, self.n_cap as i64) as u32;

        let mut prev = self.a0_dd + Cdd::from_c(w);
        let mut best_e = f64::INFINITY;
        let mut best_v = prev;
        let mut small = 0u32;
        let mut increments = Vec::with_capacity(n_live as usize);
        let mut wn = w;
        for n in 1..=n_live {
            wn /= self.lambda0;
            let v = iterate_f_dd(self.c0_dd, self.a0_dd + Cdd::from_c(wn), n * self.p);
            if !v.to_c().is_finite() {
                break;
            }
            let e = (v - prev).to_c().norm();
            increments.push(e);
            small = if e < self.tol { small + 1 } else { 0 };
            if small >= 2 {
                return Ok((v.to_c(), increments));
            }
            if e > RISE_FACTOR * best_e && best_e < FLOOR_ACCEPT * (1.0 + best_v.to_c().norm()) {
                return Ok((best_v.to_c(), increments));
            }
            if e < best_e {
                best_e = e;
                best_v = v;
            }
            prev = v;
        }
        if best_e < FLOOR_ACCEPT * (1.0 + best_v.to_c().norm()) {
            Ok((best_v.to_c(), increments))
        } else {
            Err(Error::NoConvergence)
        }
    }

    pub fn phi(&self, w: C) -> Result<C> {
        self.phi_detailed(w).map(|(v, _)| v)
    }

    /// |phi(lambda0 w) - f^p(phi(w))|, the conjugacy defect.
    pub fn functional_equation_residual(&self, w: C) -> Result<f64> {
        let lhs = self.phi(self.lambda0 * w)?;
        let rhs = iterate_f(self.c0, self.phi(w)?, self.p);
        Ok((lhs - rhs).norm())
    }
}

/// phi_k(w) = f_{c0}^{l + kp}(c0 + rho_k w), the depth-k dynamical rescaling.
///
/// The orbit runs in double-double: the depth-k leg amplifies any error in
/// c0 or in the iterates by ~|lambda0|^k, which in plain f64 would swamp the
/// geometric tail |phi_k - phi| ~ |lambda0|^-k beyond k ~ 9.
pub fn phi_k(d: &RescaleData, k: u32, w: C) -> Result<C> {
    let rho = rho_k(d, k)?;
    let (c0_dd, _) = polish_root(d.base.l, d.base.p, d.base.c0);
    let z0 = c0_dd + Cdd::from_c(rho * w);
    let v = iterate_f_dd(c0_dd, z0, d.base.l + k * d.base.p).to_c();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NoConvergence)
    }
}

/// Phi_k(w) = f_c^{l + kp}(c) at the perturbed parameter c = c0 + Q rho_k w.
pub fn Phi_k(d: &RescaleData, k: u32, w: C) -> Result<C> {
    Phi_k_with_Q(d, d.Q, k, w)
}

/// Phi_k with an explicit Q, used by the perturbed-Q negative control.
/// Double-double for the same reason as phi_k.
pub fn Phi_k_with_Q(d: &RescaleData, Q: C, k: u32, w: C) -> Result<C> {
    let rho = rho_k(d, k)?;
    let (c0_dd, _) = polish_root(d.base.l, d.base.p, d.base.c0);
    let c = c0_dd + Cdd::from_c(Q * rho * w);
    let v = iterate_f_dd(c, c, d.base.l + k * d.base.p).to_c();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NoConvergence)
    }
}

/// Uniform n x n grid over the bounding square of D(radius), keeping points
/// inside the closed disk. Deterministic row-major order.
pub fn disk_grid(radius: f64, n: u32) -> Vec<C> {
    let mut pts = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let x = radius * (2.0 * i as f64 / (n - 1) as f64 - 1.0);
            let y = radius * (2.0 * j as f64 / (n - 1) as f64 - 1.0);
            let w = C::new(x, y);
            if w.norm() <= radius {
                pts.push(w);
            }
        }
    }
    pts
}

/// nr x ntheta polar grid strictly inside D(radius); nr * ntheta points.
pub fn polar_grid(radius: f64, nr: u32, ntheta: u32) -> Vec<C> {
    let mut pts = Vec::new();
    for i in 0..nr {
        let r = radius * (i as f64 + 0.5) / nr as f64;
        for j in 0..ntheta {
            let t = 2.0 * std::f64::consts::PI * j as f64 / ntheta as f64;
            pts.push(C::new(r * t.cos(), r * t.sin()));
        }
    }
    pts
}
