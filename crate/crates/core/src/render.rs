//! Membership-grid classification of dynamical and parameter planes, filled
//! set boundary extraction, truncation to [.]_r point sets, rescaled zoom
//! windows, and deterministic PGM/PNG emission.
//!
//! Classification semantics: a pixel is "bounded at budget" unless its whole
//! closed square provably escapes, certified with an order-1 Taylor model
//! (exact linear term, interval remainder) propagated along the orbit. At
//! Misiurewicz parameters the filled sets have empty interior, so sampling
//! pixel centers alone would classify every pixel as escaping at any sane
//! budget and the rendered sets would be blank; square certification keeps
//! exactly the pixels meeting the set within one pixel of accuracy.

use crate::dynamics::C;
use crate::error::{Error, Result};
use crate::rescale::RescaleData;
use crate::tricorn::TricornData;
use std::io::Write as _;
use std::path::Path;

/// Once the certified radius exceeds this, the enclosure is useless and the
/// pixel stays "bounded at budget" (further iteration proves nothing).
const RADIUS_CAP: f64 = 1e8;

#[derive(Debug, Clone, Copy)]
pub struct Window {
    pub center: C,
    pub width: f64,
    pub resolution: u32,
}

impl Window {
    /// Offset of pixel index idx from the window center, in window units:
    /// (idx + 0.5)/res - 0.5 computed symmetrically so that mirrored indices
    /// give exactly negated offsets (bitwise), which the symmetry suites
    /// rely on.
    #[inline]
    fn offset(idx: u32, res: u32) -> f64 {
        ((2 * idx + 1) as f64 - res as f64) / (2.0 * res as f64)
    }

    /// Center of pixel (i, j); j increases upward.
    #[inline]
    pub fn pixel_center(&self, i: u32, j: u32) -> C {
        let res = self.resolution;
        C::new(
            self.center.re + self.width * Self::offset(i, res),
            self.center.im + self.width * Self::offset(j, res),
        )
    }

    #[inline]
    pub fn pitch(&self) -> f64 {
        self.width / self.resolution as f64
    }

    /// Pixel containing the point, if inside the window.
    pub fn pixel_of(&self, z: C) -> Option<(u32, u32)> {
        let res = self.resolution as f64;
        let i = ((z.re - self.center.re) / self.width + 0.5) * res;
        let j = ((z.im - self.center.im) / self.width + 0.5) * res;
        if i >= 0.0 && i < res && j >= 0.0 && j < res {
            Some((i as u32, j as u32))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone)]
pub struct MembershipGrid {
    pub window: Window,
    /// Row-major with j increasing upward: bits[j * res + i].
    pub bits: Vec<bool>,
    pub budget: u32,
}

impl MembershipGrid {
    #[inline]
    pub fn get(&self, i: u32, j: u32) -> bool {
        self.bits[(j * self.window.resolution + i) as usize]
    }

    pub fn bounded_count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    /// Halve the resolution, a coarse pixel is bounded if any of its four
    /// fine pixels is (outer-approximation semantics).
    pub fn downsample2(&self) -> MembershipGrid {
        let res = self.window.resolution / 2;
        let mut bits = vec![false; (res * res) as usize];
        for j in 0..res {
            for i in 0..res {
                let b = self.get(2 * i, 2 * j)
                    || self.get(2 * i + 1, 2 * j)
                    || self.get(2 * i, 2 * j + 1)
                    || self.get(2 * i + 1, 2 * j + 1);
                bits[(j * res + i) as usize] = b;
            }
        }
        MembershipGrid {
            window: Window {
                resolution: res,
                ..self.window
            },
            bits,
            budget: self.budget,
        }
    }
}

/// Taylor-model escape certification for a holomorphic-in-z orbit
/// z -> z^2 + c with fixed parameter. dz over the pixel square is
/// D * delta + R with |delta| <= rc, |R| <= rr.
#[inline]
fn certify_quad(mut z: C, mut d: C, rc: f64, c: C, param_varies: bool, budget: u32) -> bool {
    let mut rr = 0.0f64;
    for n in 0..=budget {
        let rad = d.norm() * rc + rr;
        if z.norm() - rad > 2.0 {
            return false;
        }
        if rad > RADIUS_CAP {
            return true;
        }
        if n < budget {
            rr = 2.0 * z.norm() * rr + rad * rad;
            d = 2.0 * z * d + if param_varies { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) };
            z = z * z + c;
        }
    }
    true
}

/// Antiholomorphic analog for z -> conj(z)^2 + c. The square's deviation is
/// real-linear: dz = D delta + Dp conj(delta) + R, and one g-step swaps and
/// conjugates the pair: D' = 2 conj(z) conj(Dp) (+1 if c varies),
/// Dp' = 2 conj(z) conj(D).
#[inline]
fn certify_anti(mut z: C, rc: f64, c: C, param_varies: bool, budget: u32) -> bool {
    let mut d = C::new(1.0, 0.0);
    let mut dp = C::new(0.0, 0.0);
    let mut rr = 0.0f64;
    for n in 0..=budget {
        let rad = (d.norm() + dp.norm()) * rc + rr;
        if z.norm() - rad > 2.0 {
            return false;
        }
        if rad > RADIUS_CAP {
            return true;
        }
        if n < budget {
            let zc = z.conj();
            rr = 2.0 * z.norm() * rr + rad * rad;
            let d_new = 2.0 * zc * dp.conj()
                + if param_varies { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) };
            dp = 2.0 * zc * d.conj();
            d = d_new;
            z = zc * zc + c;
        }
    }
    true
}

fn classify<F>(window: &Window, budget: u32, pixel: F) -> MembershipGrid
where
    F: Fn(C, f64) -> bool,
{
    let res = window.resolution;
    // half-diagonal of a pixel square: every point of the closed pixel is
    // within rc of its center
    let rc = window.pitch() * 0.5 * std::f64::consts::SQRT_2;
    let mut bits = vec![false; (res * res) as usize];
    for j in 0..res {
        for i in 0..res {
            bits[(j * res + i) as usize] = pixel(window.pixel_center(i, j), rc);
        }
    }
    MembershipGrid {
        window: *window,
        bits,
        budget,
    }
}

/// Filled-Julia membership grid for f_c (anti = false) or g_c (anti = true).
pub fn classify_julia(c: C, window: &Window, budget: u32, anti: bool) -> MembershipGrid {
    if anti {
        classify(window, budget, |z, rc| {
            // seed the anti model with D = 1, Dp = 0 via certify_anti
            certify_anti(z, rc, c, false, budget)
        })
    } else {
        classify(window, budget, |z, rc| {
            certify_quad(z, C::new(1.0, 0.0), rc, c, false, budget)
        })
    }
}

/// Parameter-plane grid of the quadratic family (critical orbit of each c).
pub fn classify_mandelbrot(window: &Window, budget: u32) -> MembershipGrid {
    classify(window, budget, |c, rc| {
        certify_quad(c, C::new(1.0, 0.0), rc, c, true, budget)
    })
}

/// Parameter-plane grid of the antiholomorphic family.
pub fn classify_tricorn(window: &Window, budget: u32) -> MembershipGrid {
    classify(window, budget, |c, rc| certify_anti(c, rc, c, true, budget))
}

/// Reference-set classifier on the w-plane: pixel w maps through
/// z = c0 + rho * w (derivative rho) and is then certified under f_{c0} for
/// warmup + budget steps. Classifies {w : phi-proxy orbit bounded}.
pub(crate) fn classify_w_plane_quad(
    c0: C,
    rho: C,
    warmup: u32,
    r: f64,
    resolution: u32,
    budget: u32,
) -> MembershipGrid {
    let window = Window {
        center: C::new(0.0, 0.0),
        width: 2.0 * r,
        resolution,
    };
    classify(&window, budget, |w, rc| {
        certify_quad(c0 + rho * w, rho, rc, c0, false, warmup + budget)
    })
}

/// Tricorn analog of `classify_w_plane_quad`, in g-steps.
pub(crate) fn classify_w_plane_tricorn(
    c0: C,
    rho: C,
    warmup_gsteps: u32,
    r: f64,
    resolution: u32,
    budget: u32,
) -> MembershipGrid {
    let window = Window {
        center: C::new(0.0, 0.0),
        width: 2.0 * r,
        resolution,
    };
    // anti model seeded with a holomorphic offset: D = rho, Dp = 0
    classify(&window, budget, |w, rc| {
        let mut z = c0 + rho * w;
        let mut d = rho;
        let mut dp = C::new(0.0, 0.0);
        let mut rr = 0.0f64;
        let total = warmup_gsteps + budget;
        for n in 0..=total {
            let rad = (d.norm() + dp.norm()) * rc + rr;
            if z.norm() - rad > 2.0 {
                return false;
            }
            if rad > RADIUS_CAP {
                return true;
            }
            if n < total {
                let zc = z.conj();
                rr = 2.0 * z.norm() * rr + rad * rad;
                let d_new = 2.0 * zc * dp.conj();
                dp = 2.0 * zc * d.conj();
                d = d_new;
                z = zc * zc + c0;
            }
        }
        true
    })
}

#[derive(Debug, Clone)]
pub struct PlanarSet {
    pub points: Vec<C>,
    /// Pixel pitch of the source grid, for tolerance bookkeeping.
    pub scale_hint: f64,
}

/// Centers of bounded pixels having at least one unbounded 4-neighbor.
/// Pixels on the window frame count as boundary only when `include_frame`.
pub fn extract_boundary(grid: &MembershipGrid, include_frame: bool) -> Result<PlanarSet> {
    let res = grid.window.resolution;
    if grid.bits.iter().all(|b| !b) {
        return Err(Error::EmptySet);
    }
    let mut points = Vec::new();
    for j in 0..res {
        for i in 0..res {
            if !grid.get(i, j) {
                continue;
            }
            let on_frame = i == 0 || j == 0 || i == res - 1 || j == res - 1;
            let exposed = (i > 0 && !grid.get(i - 1, j))
                || (i + 1 < res && !grid.get(i + 1, j))
                || (j > 0 && !grid.get(i, j - 1))
                || (j + 1 < res && !grid.get(i, j + 1))
                || (on_frame && include_frame);
            if exposed {
                points.push(grid.window.pixel_center(i, j));
            }
        }
    }
    Ok(PlanarSet {
        points,
        scale_hint: grid.window.pitch(),
    })
}

/// [.]_r truncation: keep |z| <= r and adjoin equispaced samples of the
/// circle |z| = r, which both compared sets share.
pub fn truncate(set: &PlanarSet, r: f64, circle_samples: u32) -> PlanarSet {
    assert!(r > 0.0);
    let mut points: Vec<C> = set.points.iter().copied().filter(|z| z.norm() <= r).collect();
    points.reserve(circle_samples as usize);
    for s in 0..circle_samples {
        let t = 2.0 * std::f64::consts::PI * s as f64 / circle_samples as f64;
        points.push(C::new(r * t.cos(), r * t.sin()));
    }
    PlanarSet {
        points,
        scale_hint: set.scale_hint,
    }
}

/// Rescale source: quadratic record or tricorn record.
#[derive(Debug, Clone, Copy)]
pub enum ScaleBase<'a> {
    Quad(&'a RescaleData),
    Tri(&'a TricornData),
}

impl ScaleBase<'_> {
    pub fn c0(&self) -> C {
        match self {
            ScaleBase::Quad(d) => d.base.c0,
            ScaleBase::Tri(d) => d.c0,
        }
    }

    pub fn rho_k(&self, k: u32) -> Result<C> {
        match self {
            ScaleBase::Quad(d) => crate::rescale::rho_k(d, k),
            ScaleBase::Tri(d) => crate::tricorn::rho_k_tricorn(d, k),
        }
    }
}

/// Dynamical-plane window for zoom depth k: the w-disk D(r) maps to
/// z = c0 + rho_k w, so the enclosing square has width 2 r |rho_k|.
pub fn rescaled_julia_window(base: &ScaleBase, k: u32, r: f64, resolution: u32) -> Result<Window> {
    let rho = base.rho_k(k)?;
    Ok(Window {
        center: base.c0(),
        width: 2.0 * r * rho.norm(),
        resolution,
    })
}

/// Parameter-plane window for zoom depth k. Quadratic side: c = c0 + Q rho_k w.
/// Tricorn side: c = c0 + H(rho_k w) with H real-linear, so the window
/// circumscribes the image ellipse (radius |rho_k| r (|Q| + |Q'|)); the
/// pullback itself is performed pointwise through h, never as a complex
/// scalar.
pub fn rescaled_param_window(base: &ScaleBase, k: u32, r: f64, resolution: u32) -> Result<Window> {
    let rho = base.rho_k(k)?;
    let halfwidth = match base {
        ScaleBase::Quad(d) => r * rho.norm() * d.Q.norm(),
        ScaleBase::Tri(d) => r * rho.norm() * (d.Q.norm() + d.Qp.norm()),
    };
    Ok(Window {
        center: base.c0(),
        width: 2.0 * halfwidth,
        resolution,
    })
}

fn grid_bytes(grid: &MembershipGrid) -> Vec<u8> {
    let res = grid.window.resolution;
    let mut data = Vec::with_capacity((res * res) as usize);
    for row in 0..res {
        let j = res - 1 - row; // file rows run top to bottom
        for i in 0..res {
            data.push(if grid.get(i, j) { 0u8 } else { 255u8 });
        }
    }
    data
}

/// Binary PGM, maxval 255, member pixels black. Byte-exact for identical
/// inputs.
pub fn write_pgm(grid: &MembershipGrid, path: &Path) -> Result<()> {
    let res = grid.window.resolution;
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    write!(f, "P5\n{res} {res}\n255\n")?;
    f.write_all(&grid_bytes(grid))?;
    Ok(())
}

/// Rasterize a point set onto a window and write it as PGM (set points
/// black).
pub fn write_pgm_set(set: &PlanarSet, window: &Window, path: &Path) -> Result<()> {
    let res = window.resolution;
    let mut bits = vec![false; (res * res) as usize];
    for z in &set.points {
        if let Some((i, j)) = window.pixel_of(*z) {
            bits[(j * res + i) as usize] = true;
        }
    }
    let grid = MembershipGrid {
        window: *window,
        bits,
        budget: 0,
    };
    write_pgm(&grid, path)
}

/// 8-bit grayscale PNG with the same pixel semantics as the PGM writer.
pub fn write_png(grid: &MembershipGrid, path: &Path) -> Result<()> {
    let res = grid.window.resolution;
    let file = std::fs::File::create(path)?;
    let mut enc = png::Encoder::new(std::io::BufWriter::new(file), res, res);
    enc.set_color(png::ColorType::Grayscale);
    enc.set_depth(png::BitDepth::Eight);
    let mut writer = enc
        .write_header()
        .map_err(|e| Error::Io(std::io::Error::new(std::io::ErrorKind::Other, e)))?;
    writer
        .write_image_data(&grid_bytes(grid))
        .map_err(|e| Error::Io(std::io::Error::new(std::io::ErrorKind::Other, e)))?;
    Ok(())
}
