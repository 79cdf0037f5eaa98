//! Command-line front end. Exit codes: 0 ok, 1 a checked inequality or
//! agreement failed, 2 bad input.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use drinfeld::cli::{self, BoundCommand, Command, Format, Preset, RunConfig};
use drinfeld::endo::{BoundParams, SEARCH_CAP};
use drinfeld::ffield::DEFAULT_CAP;
use drinfeld::jinv::DeltaTuple;
use drinfeld::Error;

#[derive(Parser)]
#[command(name = "drinfeld", version, about = "Exact computations with higher-rank Drinfeld modules")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Table, global = true)]
    format: FormatArg,
    /// Worker threads for the exhaustive searches.
    #[arg(long, default_value_t = 1, global = true)]
    workers: usize,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the basic J-invariant tuples for (q, r).
    Deltas {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: usize,
    },
    /// Reduction height of T + τ^r at a prime π.
    Ss {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: usize,
        /// Coefficients of π over F_q, constant term first, e.g. "0,1".
        #[arg(long)]
        pi: String,
    },
    /// Count M_n by exhaustive search, with the rank-3 equation cross-check.
    Count {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value = "0,1")]
        radicand: String,
        #[arg(long, default_value = "0,1")]
        pi: String,
        /// A single level; overrides --n-min/--n-max.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        /// Ramification index.
        #[arg(long, default_value_t = 1)]
        e: usize,
        /// Skip the widened-window degree audit.
        #[arg(long)]
        no_audit: bool,
        #[arg(long, default_value_t = SEARCH_CAP)]
        cap: u64,
    },
    /// Evaluate the lower bound on a singular-modulus valuation.
    Bound(BoundArgs),
    /// Count norm-one, trace-zero elements of F_{q^3} and check the Katz bound.
    Katz {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    r_sep: Option<usize>,
    #[arg(long)]
    e: Option<usize>,
    /// δ_1, …, δ_{r−1}; δ_r is derived.
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    radicand: Option<String>,
    #[arg(long)]
    pi: Option<String>,
    #[arg(long)]
    max_m: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    #[value(name = "cm-sep")]
    Sep,
    #[value(name = "cm-insep")]
    Insep,
    #[value(name = "two-roots")]
    TwoRoots,
}

fn coeffs(s: &str) -> Result<Vec<u32>, Error> {
    cli::parse_coeffs(s)
}

fn deltas_arg(s: &str) -> Result<Vec<u64>, Error> {
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| Error::InvalidParameter(format!("bad δ entry {p:?}"))))
        .collect()
}

fn bound_command(a: BoundArgs) -> Result<BoundCommand, Error> {
    let deltas = a.delta.as_deref().map(deltas_arg).transpose()?;
    let mut cmd = match a.preset {
        Some(p) => {
            let preset = match p {
                PresetArg::Sep => Preset::Separable,
                PresetArg::Insep => Preset::Inseparable,
                PresetArg::TwoRoots => Preset::TwoRoots,
            };
            preset.resolve(a.q, deltas)?
        }
        None => {
            let need = |name: &str| Error::InvalidParameter(format!("--{name} is required without --preset"));
            let q = a.q.ok_or_else(|| need("q"))?;
            let params = BoundParams {
                q,
                r: a.r.ok_or_else(|| need("r"))?,
                r_sep: a.r_sep.ok_or_else(|| need("r-sep"))?,
                e: a.e.ok_or_else(|| need("e"))?,
                delta: DeltaTuple::new(q, deltas.ok_or_else(|| need("delta"))?)?,
                radicand: coeffs(a.radicand.as_deref().ok_or_else(|| need("radicand"))?)?,
                pi: coeffs(a.pi.as_deref().unwrap_or("0,1"))?,
                max_m: None,
            };
            BoundCommand { preset: None, params, cm_lhs: false, katz_line: false }
        }
    };
    if a.preset.is_some() {
        let pinned = [a.r.is_some(), a.r_sep.is_some(), a.e.is_some(), a.radicand.is_some(), a.pi.is_some()];
        if pinned.iter().any(|&b| b) {
            return Err(Error::InvalidParameter("presets pin r, r-sep, e, radicand and pi".into()));
        }
    }
    cmd.params.max_m = a.max_m;
    Ok(cmd)
}

fn resolve(cli: Cli) -> Result<RunConfig, Error> {
    let command = match cli.command {
        Cmd::Deltas { q, r } => Command::Deltas { q, r },
        Cmd::Ss { q, r, pi } => Command::Ss { q, r, pi: coeffs(&pi)? },
        Cmd::Count { q, r, radicand, pi, n, n_min, n_max, e, no_audit, cap } => {
            let (n_min, n_max) = n.map_or((n_min, n_max), |n| (n, n));
            Command::Count { q, r, radicand: coeffs(&radicand)?, pi: coeffs(&pi)?, n_min, n_max, e, audit: !no_audit, cap }
        }
        Cmd::Bound(a) => Command::Bound(bound_command(a)?),
        Cmd::Katz { q, cap } => Command::Katz { q, cap },
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Table => Format::Table,
    };
    Ok(RunConfig { format, workers: cli.workers, command })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = resolve(cli).and_then(|config| cli::run(&config).map(|o| (config.format, o)));
    match outcome {
        Ok((format, o)) => {
            println!("{}", o.render(format).trim_end());
            ExitCode::from(o.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::error_exit_code(&e) as u8)
        }
    }
}
