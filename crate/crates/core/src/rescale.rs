//! Rescaling constants at a certified Misiurewicz parameter: A0, the zoom
//! scales rho_k = 1/(A0 lambda0^k), the transversality coefficient B0 of
//! b(c) - a(c), and Q = A0/B0 linking dynamical and parameter zooms.

#![allow(non_snake_case)]

use crate::dynamics::{orbit_with_derivatives, C};
use crate::error::{Error, Result};
use crate::misiurewicz::MisiurewiczData;

const A0_DEGENERACY_TOL: f64 = 1e-12;
const B0_DEGENERACY_TOL: f64 = 1e-10;
/// Guard on |lambda0|^k: beyond this the zoom scale underflows doubles.
const RANGE_GUARD: f64 = 1e300;

#[derive(Debug, Clone, Copy)]
pub struct RescaleData {
    pub base: MisiurewiczData,
    /// (f_{c0}^l)'(c0).
    pub A0: C,
    /// Linear coefficient of b(c) - a(c) at c0, b(c) = f_c^l(c).
    pub B0: C,
    /// Q = A0/B0.
    pub Q: C,
    /// q = 1/Q; whole-window rescalings of the parameter plane scale by q
    /// while pointwise pullbacks perturb by Q rho_k w, so both are kept.
    pub q: C,
}

/// A0 = (f_{c0}^l)'(c0) via the z-derivative channel.
pub fn compute_A0(d: &MisiurewiczData) -> Result<C> {
    let A0 = orbit_with_derivatives(d.c0, d.c0, d.l, false).dz;
    if A0.norm() < A0_DEGENERACY_TOL {
        return Err(Error::DegenerateA0);
    }
    Ok(A0)
}

/// B0 = b'(c0) - a'(c0) with b'(c0) from the full parameter channel and
/// a'(c0) = (d f_c^p/dc)(a0) / (1 - lambda0) by implicit differentiation of
/// f_c^p(a(c)) = a(c).
pub fn compute_B0(d: &MisiurewiczData) -> Result<C> {
    let b_prime = orbit_with_derivatives(d.c0, d.c0, d.l, true).dc;
    let df_dc_at_a0 = orbit_with_derivatives(d.c0, d.a0, d.p, false).dc;
    let a_prime = df_dc_at_a0 / (C::new(1.0, 0.0) - d.lambda0);
    let B0 = b_prime - a_prime;
    if B0.norm() < B0_DEGENERACY_TOL {
        return Err(Error::DegenerateB0);
    }
    Ok(B0)
}

/// Assemble the full rescale record for a certified parameter.
pub fn compute_Q(d: &MisiurewiczData) -> Result<RescaleData> {
    let A0 = compute_A0(d)?;
    let B0 = compute_B0(d)?;
    let Q = A0 / B0;
    let q = C::new(1.0, 0.0) / Q;
    Ok(RescaleData {
        base: *d,
        A0,
        B0,
        Q,
        q,
    })
}

/// lambda0^k by sequential multiplication (deterministic, k is small).
pub(crate) fn lambda_pow(lambda0: C, k: u32) -> C {
    let mut acc = C::new(1.0, 0.0);
    for _ in 0..k {
        acc *= lambda0;
    }
    acc
}

/// rho_k = 1/(A0 lambda0^k), the depth-k zoom scale.
pub fn rho_k(d: &RescaleData, k: u32) -> Result<C> {
    let log_range = (k as f64) * d.base.lambda0.norm().ln();
    if log_range >= RANGE_GUARD.ln() {
        return Err(Error::RangeExceeded);
    }
    Ok(C::new(1.0, 0.0) / (d.A0 * lambda_pow(d.base.lambda0, k)))
}
