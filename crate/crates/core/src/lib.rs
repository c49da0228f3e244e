//! Numerical toolkit for asymptotic similarity between Julia sets and the
//! parameter planes of the quadratic family f_c(z) = z^2 + c and the
//! antiholomorphic (tricorn) family g_c(z) = conj(z)^2 + c.
//!
//! Pipeline: certify a Misiurewicz parameter, derive its rescaling constants,
//! evaluate the Poincare function at the landing cycle, render rescaled
//! membership grids of the dynamical and parameter planes, and certify the
//! similarity numerically via Hausdorff-distance convergence tables.

mod dd;
pub mod dynamics;
pub mod error;
pub mod hausdorff;
pub mod misiurewicz;
pub mod poincare;
pub mod render;
pub mod rescale;
pub mod tricorn;

pub use dynamics::{
    escape_time, escape_time_anti, iterate_f, iterate_g, orbit_with_derivatives, OrbitResult, C,
};
pub use error::{Error, Result};
pub use hausdorff::{
    hausdorff_distance, hausdorff_distance_naive, similarity_table, similarity_table_tricorn,
    table_csv_string, write_table_csv, ConvergenceRow,
};
pub use misiurewicz::{
    multiplier, solve_misiurewicz, solve_misiurewicz_search, track_periodic_point, MisiurewiczData,
};
pub use poincare::{disk_grid, phi_k, polar_grid, PoincareEvaluator, Phi_k, Phi_k_with_Q};
pub use render::{
    classify_julia, classify_mandelbrot, classify_tricorn, extract_boundary,
    rescaled_julia_window, rescaled_param_window, truncate, write_pgm, write_pgm_set, write_png,
    MembershipGrid, PlanarSet, ScaleBase, Window,
};
pub use rescale::{compute_A0, compute_B0, compute_Q, rho_k, RescaleData};
pub use tricorn::{
    apply_h, apply_H, biquadratic, compute_B0_pair, compute_QQp, phi_k_tricorn, rho_k_tricorn,
    solve_tricorn_misiurewicz, solve_tricorn_search, track_periodic_point_g, Phi_k_tricorn,
    RealLinearMap, TricornData,
};
