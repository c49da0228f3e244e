//! Compensated double-double arithmetic for the diagnostic paths whose
//! roundoff is amplified by lambda0^k: root polishing and the deep rescaling
//! evaluations. One orbit step near the repelling cycle multiplies every
//! stored error by |lambda0|, so plain f64 caps the observable convergence of
//! phi_k / Phi_k at k ~ 9; two-f64 compensation moves that cap past any depth
//! rho_k can represent. Rendering and classification stay in plain f64.

use crate::dynamics::C;
use std::ops::{Add, Mul, Sub};

const POLISH_MAX_ITERS: u32 = 8;

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd {
        hi: s,
        lo: (a - (s - bb)) + (b - bb),
    }
}

/// Requires |a| >= |b| (or a == 0).
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd {
        hi: p,
        lo: a.mul_add(b, -p),
    }
}

impl Dd {
    pub(crate) fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        quick_two_sum(s.hi, s.lo + self.lo + o.lo)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + Dd {
            hi: -o.hi,
            lo: -o.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let p = two_prod(self.hi, o.hi);
        quick_two_sum(p.hi, p.lo + self.hi * o.lo + self.lo * o.hi)
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Cdd {
    pub(crate) re: Dd,
    pub(crate) im: Dd,
}

impl Cdd {
    pub(crate) fn from_c(z: C) -> Cdd {
        Cdd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub(crate) fn to_c(self) -> C {
        C::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

pub(crate) fn f_step_dd(z: Cdd, c: Cdd) -> Cdd {
    z * z + c
}

pub(crate) fn iterate_f_dd(c: Cdd, z0: Cdd, n: u32) -> Cdd {
    let mut z = z0;
    for _ in 0..n {
        z = f_step_dd(z, c);
    }
    z
}

/// Newton-polish a converged root of F(c) = f_c^{l+p}(c) - f_c^l(c) to
/// double-double accuracy and return (c0, a0 = f^l(c0)).
///
/// Residuals are evaluated in double-double; steps use the plain-f64
/// derivative (relative step error ~1e-13, so the error contracts to the
/// ~1e-28 representation floor in a few iterations). The input is assumed
/// already within the Newton basin; a residual that stops shrinking ends the
/// loop at the best iterate seen, so a poor seed degrades gracefully.
pub(crate) fn polish_root(l: u32, p: u32, c0: C) -> (Cdd, Cdd) {
    let relation = |c: Cdd| -> Cdd {
        let mut z = c;
        let mut at_l = z;
        for i in 0..(l + p) {
            if i == l {
                at_l = z;
            }
            z = f_step_dd(z, c);
        }
        z - at_l
    };
    // full dF/dc of the same relation, f64 dual channel (initial point is c)
    let derivative = |c: C| -> C {
        let one = C::new(1.0, 0.0);
        let mut z = c;
        let mut dc = one;
        let mut dc_at_l = dc;
        for i in 0..(l + p) {
            if i == l {
                dc_at_l = dc;
            }
            dc = (z + z) * dc + one;
            z = crate::dynamics::f_step(z, c);
        }
        dc - dc_at_l
    };

    let mut c = Cdd::from_c(c0);
    let mut best = c;
    let mut best_r = f64::INFINITY;
    for _ in 0..POLISH_MAX_ITERS {
        let g = relation(c);
        let gn = g.to_c().norm();
        if !gn.is_finite() || gn >= best_r {
            break;
        }
        best = c;
        best_r = gn;
        if gn == 0.0 {
            break;
        }
        let dg = derivative(c.to_c());
        if dg.norm_sqr() == 0.0 {
            break;
        }
        let step = g.to_c() / dg;
        c = c - Cdd::from_c(step);
    }
    let a0 = iterate_f_dd(best, best, l);
    (best, a0)
}
