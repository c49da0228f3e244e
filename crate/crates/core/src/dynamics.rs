//! Orbit iteration and escape-time classification for f_c(z) = z^2 + c and
//! the antiholomorphic g_c(z) = conj(z)^2 + c, plus dual-number derivative
//! channels along holomorphic orbits.

use num_complex::Complex64;

pub type C = Complex64;

/// Escape criterion |z| > 2, squared to avoid the sqrt.
pub const ESCAPE_RADIUS_SQR: f64 = 4.0;

/// Magnitude at which further squaring risks overflow; orbits past this are
/// reported as diverged with non-finite values rather than NaN garbage.
const OVERFLOW_SQR: f64 = 1e300;

#[inline]
pub fn f_step(z: C, c: C) -> C {
    z * z + c
}

#[inline]
pub fn g_step(z: C, c: C) -> C {
    let zc = z.conj();
    zc * zc + c
}

/// f_c^n(z); n = 0 returns z. Overflow yields an infinite value the caller
/// can detect with `is_finite`.
pub fn iterate_f(c: C, z: C, n: u32) -> C {
    let mut z = z;
    for _ in 0..n {
        if z.norm_sqr() > OVERFLOW_SQR {
            return C::new(f64::INFINITY, f64::INFINITY);
        }
        z = f_step(z, c);
    }
    z
}

/// g_c^n(z); for real c and real z this agrees with `iterate_f` exactly.
pub fn iterate_g(c: C, z: C, n: u32) -> C {
    let mut z = z;
    for _ in 0..n {
        if z.norm_sqr() > OVERFLOW_SQR {
            return C::new(f64::INFINITY, f64::INFINITY);
        }
        z = g_step(z, c);
    }
    z
}

#[derive(Debug, Clone, Copy)]
pub struct OrbitResult {
    pub final_z: C,
    /// Smallest n with |f^n(z)| > 2, if any occurred within the run.
    pub escaped_at: Option<u32>,
    /// d/dz0 of f_c^n(z0).
    pub dz: C,
    /// d/dc of f_c^n(z0(c)); whether z0 itself carries dc-dependence is the
    /// caller's choice via `vary_initial`.
    pub dc: C,
    pub overflow: bool,
}

/// Iterate n steps of f carrying both derivative channels.
///
/// dz propagates z' -> 2 z z' (derivative w.r.t. the initial point).
/// dc propagates z' -> 2 z z' + 1 (parameter derivative); with
/// `vary_initial` the initial point is c itself, so dc starts at 1 and the
/// result is the full derivative of c -> f_c^n(c).
pub fn orbit_with_derivatives(c: C, z: C, n: u32, vary_initial: bool) -> OrbitResult {
    let one = C::new(1.0, 0.0);
    let zero = C::new(0.0, 0.0);
    let mut z = z;
    let mut dz = one;
    let mut dc = if vary_initial { one } else { zero };
    let mut escaped_at = if z.norm_sqr() > ESCAPE_RADIUS_SQR {
        Some(0)
    } else {
        None
    };
    for i in 0..n {
        if z.norm_sqr() > OVERFLOW_SQR {
            return OrbitResult {
                final_z: C::new(f64::INFINITY, f64::INFINITY),
                escaped_at,
                dz,
                dc,
                overflow: true,
            };
        }
        let two_z = z + z;
        dz = two_z * dz;
        dc = two_z * dc + one;
        z = f_step(z, c);
        if escaped_at.is_none() && z.norm_sqr() > ESCAPE_RADIUS_SQR {
            escaped_at = Some(i + 1);
        }
    }
    OrbitResult {
        final_z: z,
        escaped_at,
        dz,
        dc,
        overflow: false,
    }
}

/// Smallest n <= n_max with |f_c^n(z)| > 2, None if the orbit stays bounded
/// at this budget (n = 0 tests z itself).
pub fn escape_time(c: C, z: C, n_max: u32) -> Option<u32> {
    let mut z = z;
    for n in 0..=n_max {
        if z.norm_sqr() > ESCAPE_RADIUS_SQR {
            return Some(n);
        }
        if n < n_max {
            z = f_step(z, c);
        }
    }
    None
}

/// `escape_time` for the antiholomorphic family.
pub fn escape_time_anti(c: C, z: C, n_max: u32) -> Option<u32> {
    let mut z = z;
    for n in 0..=n_max {
        if z.norm_sqr() > ESCAPE_RADIUS_SQR {
            return Some(n);
        }
        if n < n_max {
            z = g_step(z, c);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points_and_hand_orbits() {
        let zero = C::new(0.0, 0.0);
        assert_eq!(iterate_f(zero, zero, 17), zero);
        assert_eq!(iterate_g(zero, zero, 9), zero);
        // -2 -> 2 -> 2 -> 2
        assert_eq!(
            iterate_f(C::new(-2.0, 0.0), C::new(-2.0, 0.0), 3),
            C::new(2.0, 0.0)
        );
        // i -> -1+i -> -i -> -1+i
        let i = C::new(0.0, 1.0);
        assert_eq!(iterate_f(i, i, 3), C::new(-1.0, 1.0));
        // g: 0 -> i -> conj(i)^2 + i = -1+i
        assert_eq!(iterate_g(i, zero, 2), C::new(-1.0, 1.0));
    }

    #[test]
    fn real_slice_agrees() {
        let c = C::new(-1.3, 0.0);
        let z = C::new(0.4, 0.0);
        for n in 0..12 {
            assert_eq!(iterate_f(c, z, n), iterate_g(c, z, n));
        }
    }

    #[test]
    fn derivative_channels_hand_values() {
        let c = C::new(-2.0, 0.0);
        // A0 = f'(-2) = -4 on the z-channel
        let r = orbit_with_derivatives(c, C::new(-2.0, 0.0), 1, false);
        assert_eq!(r.dz, C::new(-4.0, 0.0));
        // multiplier at the fixed point 2: f'(2) = 4
        let r = orbit_with_derivatives(c, C::new(2.0, 0.0), 1, false);
        assert_eq!(r.dz, C::new(4.0, 0.0));
        // chain rule at i's cycle: 2(-1+i) * 2(-i) = 4+4i
        let r = orbit_with_derivatives(C::new(0.0, 1.0), C::new(-1.0, 1.0), 2, false);
        assert_eq!(r.dz, C::new(4.0, 4.0));
    }

    #[test]
    fn escape_indices() {
        let zero = C::new(0.0, 0.0);
        assert_eq!(escape_time(zero, zero, 1000), None);
        // 1 -> 2 -> 5: |5| > 2 at n = 2
        assert_eq!(escape_time(C::new(1.0, 0.0), C::new(1.0, 0.0), 10), Some(2));
        assert_eq!(escape_time(C::new(-2.0, 0.0), C::new(-2.0, 0.0), 1000), None);
        // |z| > 2 already at n = 0
        assert_eq!(escape_time(zero, C::new(3.0, 0.0), 5), Some(0));
        assert_eq!(escape_time_anti(zero, zero, 100), None);
    }

    #[test]
    fn overflow_is_flagged() {
        let r = orbit_with_derivatives(C::new(4.0, 0.0), C::new(4.0, 0.0), 400, true);
        assert!(r.overflow);
        assert!(!r.final_z.is_finite());
        assert!(!iterate_f(C::new(4.0, 0.0), C::new(4.0, 0.0), 400).is_finite());
    }
}
