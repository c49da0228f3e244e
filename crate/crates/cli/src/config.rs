//! Run configuration: flag parsing, the key=value config file, and the
//! merge between them (flags win over file values, file values win over
//! defaults).

use std::ops::RangeInclusive;
use std::path::PathBuf;

use selfsim_core::C;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    Quadratic,
    Tricorn,
}

impl Family {
    fn from_key(s: &str) -> Result<Self, String> {
        match s {
            "quadratic" => Ok(Family::Quadratic),
            "tricorn" => Ok(Family::Tricorn),
            _ => Err(format!("unknown family {s:?} (expected quadratic or tricorn)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Pgm,
    Png,
    Csv,
}

impl Format {
    fn from_key(s: &str) -> Result<Self, String> {
        match s {
            "pgm" => Ok(Format::Pgm),
            "png" => Ok(Format::Png),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format {s:?} (expected pgm, png, or csv)")),
        }
    }
}

/// Fully resolved configuration shared by all subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub family: Family,
    pub seed: C,
    /// Preperiod and period; both given pins (l, p), neither triggers a
    /// search over small pairs. Mixing one without the other is rejected.
    pub l: Option<u32>,
    pub p: Option<u32>,
    pub budget: u32,
    pub resolution: u32,
    pub r: f64,
    pub k: RangeInclusive<u32>,
    pub output_dir: Option<PathBuf>,
    pub format: Format,
}

/// Raw command-line flags. Every field is optional so that a config file
/// can supply whatever the command line leaves out.
#[derive(Clone, Debug, Default, clap::Args)]
pub struct Flags {
    /// Plain-text config file of key=value lines (# starts a comment).
    /// Keys match the long flag names; explicit flags override the file.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Parameter family.
    #[arg(long, value_enum)]
    pub family: Option<Family>,

    /// Center seed as a complex number: a, bi, or a+bi / a-bi, exponents
    /// allowed (e.g. -2, 0+1i, 1e-3-2.5e2i).
    #[arg(long, allow_hyphen_values = true)]
    pub seed: Option<String>,

    /// Preperiod (requires --p).
    #[arg(long)]
    pub l: Option<u32>,

    /// Period (requires --l).
    #[arg(long)]
    pub p: Option<u32>,

    /// Iteration budget per pixel / per table row.
    #[arg(long)]
    pub budget: Option<u32>,

    /// Image and sampling resolution (pixels per side).
    #[arg(long)]
    pub resolution: Option<u32>,

    /// Truncation radius of the rescaled window.
    #[arg(long)]
    pub r: Option<f64>,

    /// Inclusive depth range, written A..B (e.g. 4..12).
    #[arg(long)]
    pub k: Option<String>,

    /// Directory for emitted files; commands that print to stdout only
    /// write files when this is set.
    #[arg(long, value_name = "DIR")]
    pub output_dir: Option<PathBuf>,

    /// Output format for images / tables.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Parse `a`, `bi`, `a+bi`, or `a-bi`; exponents allowed in either part.
/// Plain `i`, `+i`, `-i` denote unit imaginary values.
pub fn parse_complex(s: &str) -> Result<C, String> {
    let s = s.trim();
    let bad = || format!("cannot parse {s:?} as a complex number (expected a+bi)");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        // Pure real.
        return s.parse::<f64>().map(|re| C::new(re, 0.0)).map_err(|_| bad());
    };
    // Split body at the last +/- that is not a leading sign and not part of
    // an exponent; everything after it (sign included) is the imaginary part.
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let b = bytes[idx];
        if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    let (re_part, im_part) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(C::new(re, im))
}

/// Inclusive range written `A..B` with A <= B.
pub fn parse_k_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let bad = || format!("cannot parse {s:?} as a depth range (expected A..B)");
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(format!("empty depth range {s:?}"));
    }
    Ok(lo..=hi)
}

fn apply_file_line(flags: &mut Flags, key: &str, value: &str) -> Result<(), String> {
    // File values only fill slots the command line left empty.
    match key {
        "family" => {
            let v = Family::from_key(value)?;
            flags.family.get_or_insert(v);
        }
        "seed" => {
            flags.seed.get_or_insert_with(|| value.to_string());
        }
        "l" => {
            let v = value.parse().map_err(|_| format!("bad l value {value:?}"))?;
            flags.l.get_or_insert(v);
        }
        "p" => {
            let v = value.parse().map_err(|_| format!("bad p value {value:?}"))?;
            flags.p.get_or_insert(v);
        }
        "budget" => {
            let v = value.parse().map_err(|_| format!("bad budget value {value:?}"))?;
            flags.budget.get_or_insert(v);
        }
        "resolution" => {
            let v = value
                .parse()
                .map_err(|_| format!("bad resolution value {value:?}"))?;
            flags.resolution.get_or_insert(v);
        }
        "r" => {
            let v = value.parse().map_err(|_| format!("bad r value {value:?}"))?;
            flags.r.get_or_insert(v);
        }
        "k" => {
            flags.k.get_or_insert_with(|| value.to_string());
        }
        "output_dir" => {
            flags.output_dir.get_or_insert_with(|| PathBuf::from(value));
        }
        "format" => {
            let v = Format::from_key(value)?;
            flags.format.get_or_insert(v);
        }
        _ => return Err(format!("unknown config key {key:?}")),
    }
    Ok(())
}

fn merge_config_file(flags: &mut Flags, path: &PathBuf) -> Result<(), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(idx) => &raw[..idx],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected key=value", path.display(), lineno + 1))?;
        apply_file_line(flags, key.trim(), value.trim())
            .map_err(|e| format!("{}:{}: {e}", path.display(), lineno + 1))?;
    }
    Ok(())
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<RunConfig, String> {
        let mut flags = flags.clone();
        if let Some(path) = flags.config.clone() {
            merge_config_file(&mut flags, &path)?;
        }
        let seed_str = flags
            .seed
            .as_deref()
            .ok_or("missing seed (pass --seed or set seed= in the config file)")?;
        let seed = parse_complex(seed_str)?;
        if flags.l.is_some() != flags.p.is_some() {
            return Err("give --l and --p together, or neither to search".into());
        }
        let k = match flags.k.as_deref() {
            Some(s) => parse_k_range(s)?,
            None => 0..=10,
        };
        let budget = flags.budget.unwrap_or(1000);
        let resolution = flags.resolution.unwrap_or(512);
        let r = flags.r.unwrap_or(2.0);
        if budget == 0 {
            return Err("budget must be positive".into());
        }
        if resolution < 2 {
            return Err("resolution must be at least 2".into());
        }
        if !(r > 0.0) {
            return Err("r must be positive".into());
        }
        Ok(RunConfig {
            family: flags.family.unwrap_or(Family::Quadratic),
            seed,
            l: flags.l,
            p: flags.p,
            budget,
            resolution,
            r,
            k,
            output_dir: flags.output_dir,
            format: flags.format.unwrap_or(Format::Pgm),
        })
    }
}
