//! Subcommand implementations. All stdout/file output is deterministic:
//! floats print in shortest round-trip form, lines end in LF.

use std::fmt;
use std::path::Path;

use selfsim_core::misiurewicz::{NEWTON_TOL, SEARCH_L_MAX, SEARCH_P_MAX};
use selfsim_core::{
    classify_julia, classify_mandelbrot, classify_tricorn, compute_Q, disk_grid, phi_k,
    phi_k_tricorn, polar_grid, rescaled_julia_window, rescaled_param_window, similarity_table,
    similarity_table_tricorn, solve_misiurewicz, solve_misiurewicz_search,
    solve_tricorn_misiurewicz, solve_tricorn_search, table_csv_string, write_pgm, write_png,
    Error as CoreError, MembershipGrid, MisiurewiczData, PoincareEvaluator, Phi_k, Phi_k_tricorn,
    ScaleBase, TricornData, C,
};

use crate::config::{Family, Format, RunConfig};

pub enum CliError {
    /// Bad flag/config combination; exits 1 like a parse error.
    Usage(String),
    Core(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(e) => e.exit_code(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(CoreError::Io(e))
    }
}

/// Shortest round-trip a+bi / a-bi, always with both parts so the output is
/// parseable by the seed syntax. Negative zero prints as 0.
pub fn fmt_c(z: C) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im < 0.0 {
        format!("{}-{}i", re, -im)
    } else {
        format!("{}+{}i", re, im)
    }
}

fn solve_quad(cfg: &RunConfig) -> Result<MisiurewiczData, CoreError> {
    match (cfg.l, cfg.p) {
        (Some(l), Some(p)) => solve_misiurewicz(l, p, cfg.seed, NEWTON_TOL),
        _ => solve_misiurewicz_search(cfg.seed, NEWTON_TOL, SEARCH_L_MAX, SEARCH_P_MAX),
    }
}

fn solve_tri(cfg: &RunConfig) -> Result<TricornData, CoreError> {
    match (cfg.l, cfg.p) {
        (Some(l), Some(p)) => solve_tricorn_misiurewicz(l, p, cfg.seed, NEWTON_TOL),
        _ => solve_tricorn_search(cfg.seed, NEWTON_TOL, SEARCH_L_MAX, SEARCH_P_MAX),
    }
}

/// Certify the seed and dump the derived constants as key=value lines.
pub fn cmd_solve(cfg: &RunConfig) -> Result<(), CliError> {
    let mut out = String::new();
    match cfg.family {
        Family::Quadratic => {
            let d = solve_quad(cfg)?;
            let rd = compute_Q(&d)?;
            out += "family=quadratic\n";
            out += &format!("c0={}\n", fmt_c(d.c0));
            out += &format!("l={}\n", d.l);
            out += &format!("p={}\n", d.p);
            out += &format!("a0={}\n", fmt_c(d.a0));
            out += &format!("lambda0={}\n", fmt_c(d.lambda0));
            out += &format!("A0={}\n", fmt_c(rd.A0));
            out += &format!("B0={}\n", fmt_c(rd.B0));
            out += &format!("Q={}\n", fmt_c(rd.Q));
            out += &format!("residual={}\n", d.residual);
        }
        Family::Tricorn => {
            let t = solve_tri(cfg)?;
            out += "family=tricorn\n";
            out += &format!("c0={}\n", fmt_c(t.c0));
            out += &format!("l={}\n", t.l);
            out += &format!("p={}\n", t.p);
            out += &format!("a0={}\n", fmt_c(t.a0));
            out += &format!("lambda0={}\n", fmt_c(t.lambda0));
            out += &format!("A0={}\n", fmt_c(t.A0));
            out += &format!("B0={}\n", fmt_c(t.B0));
            out += &format!("B0p={}\n", fmt_c(t.B0p));
            out += &format!("Q={}\n", fmt_c(t.Q));
            out += &format!("Qp={}\n", fmt_c(t.Qp));
            out += &format!("residual={}\n", t.residual);
        }
    }
    print!("{out}");
    Ok(())
}

fn write_grid(grid: &MembershipGrid, path: &Path, format: Format) -> Result<(), CoreError> {
    match format {
        Format::Pgm => write_pgm(grid, path),
        Format::Png => write_png(grid, path),
        Format::Csv => unreachable!("rejected before rendering"),
    }
}

fn render_zoom(cfg: &RunConfig, base: &ScaleBase, dir: &Path) -> Result<(), CliError> {
    let ext = match cfg.format {
        Format::Pgm => "pgm",
        Format::Png => "png",
        Format::Csv => {
            return Err(CliError::Usage(
                "zoom emits images; use --format pgm or png".into(),
            ))
        }
    };
    std::fs::create_dir_all(dir)?;
    let anti = matches!(base, ScaleBase::Tri(_));
    let c0 = base.c0();
    let mut index = String::from("k,plane,file,center_re,center_im,width,resolution\n");
    for k in cfg.k.clone() {
        let jw = rescaled_julia_window(base, k, cfg.r, cfg.resolution)?;
        let name = format!("jul_k{k}.{ext}");
        write_grid(&classify_julia(c0, &jw, cfg.budget, anti), &dir.join(&name), cfg.format)?;
        index += &format!(
            "{k},julia,{name},{},{},{},{}\n",
            jw.center.re, jw.center.im, jw.width, jw.resolution
        );

        let pw = rescaled_param_window(base, k, cfg.r, cfg.resolution)?;
        let grid = if anti {
            classify_tricorn(&pw, cfg.budget)
        } else {
            classify_mandelbrot(&pw, cfg.budget)
        };
        let name = format!("par_k{k}.{ext}");
        write_grid(&grid, &dir.join(&name), cfg.format)?;
        index += &format!(
            "{k},param,{name},{},{},{},{}\n",
            pw.center.re, pw.center.im, pw.width, pw.resolution
        );
    }
    std::fs::write(dir.join("index.csv"), index).map_err(CoreError::from)?;
    Ok(())
}

/// Paired Julia-side / parameter-side panels for every depth in k_range,
/// plus an index CSV of the window geometry.
pub fn cmd_zoom(cfg: &RunConfig) -> Result<(), CliError> {
    let dir = cfg
        .output_dir
        .clone()
        .unwrap_or_else(|| std::path::PathBuf::from("out"));
    match cfg.family {
        Family::Quadratic => {
            let d = solve_quad(cfg)?;
            let rd = compute_Q(&d)?;
            render_zoom(cfg, &ScaleBase::Quad(&rd), &dir)
        }
        Family::Tricorn => {
            let t = solve_tri(cfg)?;
            render_zoom(cfg, &ScaleBase::Tri(&t), &dir)
        }
    }
}

/// Hausdorff similarity table on stdout; also written to
/// output_dir/table.csv when an output directory is set.
pub fn cmd_table(cfg: &RunConfig) -> Result<(), CliError> {
    let csv = match cfg.family {
        Family::Quadratic => {
            let d = solve_quad(cfg)?;
            let rd = compute_Q(&d)?;
            let rows = similarity_table(&rd, cfg.k.clone(), cfg.r, cfg.resolution, cfg.budget)?;
            table_csv_string(&rows)
        }
        Family::Tricorn => {
            let t = solve_tri(cfg)?;
            let rows =
                similarity_table_tricorn(&t, cfg.k.clone(), cfg.r, cfg.resolution, cfg.budget)?;
            table_csv_string(&rows)
        }
    };
    print!("{csv}");
    if let Some(dir) = &cfg.output_dir {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("table.csv"), &csv).map_err(CoreError::from)?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Check {
    /// Conjugacy defect |phi(lambda0 w) - f^p(phi(w))| on a polar grid.
    FunctionalEquation,
    /// sup |Phi_k - phi_k| over the unit disk, one row per depth k.
    Intersection,
}

/// Poincare-function diagnostics as CSV on stdout; mirrored into
/// output_dir when one is set.
pub fn cmd_poincare(cfg: &RunConfig, check: Check) -> Result<(), CliError> {
    let (csv, file) = match check {
        Check::FunctionalEquation => {
            if cfg.family != Family::Quadratic {
                return Err(CliError::Usage(
                    "the functional-equation check needs the holomorphic linearizer; \
                     run it with --family quadratic"
                        .into(),
                ));
            }
            let d = solve_quad(cfg)?;
            let ev = PoincareEvaluator::new(&d);
            let mut out = String::from("w_re,w_im,residual\n");
            for w in polar_grid(1.0, 10, 10) {
                let res = ev.functional_equation_residual(w)?;
                out += &format!("{},{},{}\n", w.re, w.im, res);
            }
            (out, "functional_equation.csv")
        }
        Check::Intersection => {
            let pts = disk_grid(1.0, 33);
            let mut out = String::from("k,sup_diff\n");
            match cfg.family {
                Family::Quadratic => {
                    let d = solve_quad(cfg)?;
                    let rd = compute_Q(&d)?;
                    for k in cfg.k.clone() {
                        let mut sup = 0.0f64;
                        for w in &pts {
                            let diff = (Phi_k(&rd, k, *w)? - phi_k(&rd, k, *w)?).norm();
                            sup = sup.max(diff);
                        }
                        out += &format!("{k},{sup}\n");
                    }
                }
                Family::Tricorn => {
                    let t = solve_tri(cfg)?;
                    for k in cfg.k.clone() {
                        let mut sup = 0.0f64;
                        for w in &pts {
                            let diff =
                                (Phi_k_tricorn(&t, k, *w)? - phi_k_tricorn(&t, k, *w)?).norm();
                            sup = sup.max(diff);
                        }
                        out += &format!("{k},{sup}\n");
                    }
                }
            }
            (out, "intersection.csv")
        }
    };
    print!("{csv}");
    if let Some(dir) = &cfg.output_dir {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(file), &csv).map_err(CoreError::from)?;
    }
    Ok(())
}
