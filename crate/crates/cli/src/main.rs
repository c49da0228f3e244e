mod commands;
mod config;

use clap::{Parser, Subcommand};

use commands::{cmd_poincare, cmd_solve, cmd_table, cmd_zoom, Check, CliError};
use config::{Flags, RunConfig};

#[derive(Parser)]
#[command(
    name = "selfsim",
    version,
    about = "Misiurewicz self-similarity toolkit: certify centers, render rescaled \
             zoom panels, and emit convergence diagnostics"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify a Misiurewicz parameter and print its constants as key=value lines.
    Solve(Flags),
    /// Render paired Julia/parameter zoom panels, one pair per depth k.
    Zoom(Flags),
    /// Print the rescaled Hausdorff-distance table as CSV.
    Table(Flags),
    /// Poincare-function diagnostics as CSV.
    Poincare {
        #[command(flatten)]
        flags: Flags,
        #[arg(long, value_enum)]
        check: Check,
    },
}

fn run(flags: &Flags, cmd: impl FnOnce(&RunConfig) -> Result<(), CliError>) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(flags).map_err(CliError::Usage)?;
    cmd(&cfg)
}

fn main() {
    // Exit code 2 is reserved for NoConvergence, so flag parse errors exit 1
    // instead of clap's default 2.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print().expect("stderr is writable");
            std::process::exit(code);
        }
    };
    let result = match &cli.cmd {
        Cmd::Solve(f) => run(f, cmd_solve),
        Cmd::Zoom(f) => run(f, cmd_zoom),
        Cmd::Table(f) => run(f, cmd_table),
        Cmd::Poincare { flags, check } => {
            let check = *check;
            run(flags, move |cfg| cmd_poincare(cfg, check))
        }
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
