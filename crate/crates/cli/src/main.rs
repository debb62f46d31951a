use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Exact power expansions, figurate triangles, difference tables and identity audits.
#[derive(Debug, Parser)]
#[command(name = "powerexp", version)]
pub struct Cli {
    /// Output format; not every command supports every format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Never touch the network (the default for every OEIS command).
    #[arg(long, global = true)]
    pub offline: bool,

    /// b-file cache directory; overrides POWEREXP_CACHE_DIR.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print rows 0..=N of a triangle (u, pascal, rascal, scaled-pascal, v<M>, reduced1, reduced2, ones).
    Triangle {
        kind: String,
        #[arg(long, value_name = "N")]
        rows: u64,
    },
    /// Expand x^n with one strategy.
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "v-row")]
        strategy: String,
        /// Include the summands.
        #[arg(long)]
        terms: bool,
    },
    /// Difference table of x^n on x = 0..=xmax.
    Difftable {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        xmax: u64,
        #[arg(long)]
        depth: usize,
    },
    /// Audit registered identities on their grids.
    Audit {
        /// Audit only this identity.
        #[arg(long)]
        id: Option<String>,
        /// Narrow a grid variable: `name=lo..hi` or `name=v` (needs --id).
        #[arg(long = "range", value_name = "NAME=LO..HI")]
        ranges: Vec<String>,
    },
    /// Partial sum of e^x with every power taken from an expansion strategy.
    Exp {
        #[arg(long)]
        x: String,
        /// Choose N so the tail bound is below 10^-D and print D digits.
        #[arg(long, conflicts_with = "terms")]
        digits: Option<u32>,
        /// Sum the terms n = 0..=N.
        #[arg(long, value_name = "N")]
        terms: Option<u32>,
        #[arg(long, default_value = "telescope-geom")]
        strategy: String,
    },
    /// The points (k, U(x,k)) of the parabola through row x, as k,y pairs.
    Parabola {
        #[arg(long, default_value_t = 10)]
        x: u64,
    },
    /// OEIS sequences cited by the identities.
    Oeis(OeisArgs),
}

#[derive(Debug, Args)]
pub struct OeisArgs {
    #[command(subcommand)]
    pub action: OeisAction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Offline,
    Cached,
    Refresh,
}

#[derive(Debug, Subcommand)]
pub enum OeisAction {
    /// Compare generated terms with b-files (all eight sequences without --id).
    Check {
        #[arg(long)]
        id: Option<String>,
        /// Terms to compare; defaults to every term of the b-file.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Offline)]
        mode: Mode,
    },
    /// Load a b-file and report where it came from.
    Fetch {
        #[arg(long)]
        id: String,
        /// Terms to print.
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Mode::Offline)]
        mode: Mode,
    },
    /// Print generated terms in b-file format.
    Gen {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
