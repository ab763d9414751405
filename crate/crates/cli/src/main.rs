//! `nccr`: command-line front end for the NCCR toolkit.

mod commands;
mod config;
mod error;
mod output;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use config::{Config, FileConfig, OutputFormat, OUT_DIR_ENV};
use error::CliError;
use output::Report;

#[derive(Parser, Debug)]
#[command(name = "nccr", version, about = "Exact computations for the NCCR of the minimal nilpotent orbit closure")]
struct Cli {
    /// TOML file with any of: n, cap, max_len, seed, output, out_dir.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Rank of V.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Highest degree computed for Hilbert series.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Longest path length in quiver computations.
    #[arg(long = "max-len", global = true)]
    max_len: Option<usize>,
    /// Seed for sampled representations.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, value_enum, global = true)]
    output: Option<OutputFormat>,
    /// Write `<command>.<ext>` here instead of printing.
    #[arg(long = "out-dir", global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sheaf cohomology of a homogeneous bundle on P^{n-1}.
    Coh {
        /// e.g. "omega(1,0)", "2*O(-1) + hom(1,2,0)".
        #[arg(long)]
        bundle: String,
    },
    /// Vanishing check for a tilting family.
    Tilting {
        /// Tk, TPlus, TPrime, Sk or SkDual.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        k: i64,
    },
    /// Hilbert series of M(a), L(k), L+(k) or WedgeT(k).
    Hilbert {
        #[arg(long)]
        module: String,
    },
    /// Graded dimensions of the quiver algebra.
    #[command(group(ArgGroup::new("mode").required(true).args(["dims", "compare"])))]
    Quiver {
        #[arg(long)]
        dims: bool,
        /// Compare with graded Homs between line bundles.
        #[arg(long)]
        compare: bool,
    },
    /// Representation attached to (alpha, beta), or sampled ones.
    Rep {
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        /// Number of random triples (uses --seed and --n).
        #[arg(long, conflicts_with_all = ["alpha", "beta"])]
        sample: Option<usize>,
        /// Work over F_p, p = 1000000007.
        #[arg(long)]
        prime: bool,
    },
    /// K-theoretic shadows of the flop functors.
    #[command(group(ArgGroup::new("mode").required(true).args(["matrix", "flopflop", "ptwist_ledger", "kn_table"])))]
    Kflop {
        #[arg(long)]
        matrix: bool,
        #[arg(long)]
        flopflop: bool,
        #[arg(long = "ptwist-ledger")]
        ptwist_ledger: bool,
        #[arg(long = "kn-table")]
        kn_table: bool,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        k: i64,
        /// Use KN' (from Y+ to Y) with --matrix.
        #[arg(long)]
        prime: bool,
    },
    /// Mutation orbit of E_{n-1}.
    #[command(group(ArgGroup::new("mode").required(true).args(["orbit"])))]
    Mutate {
        #[arg(long)]
        orbit: bool,
    },
    /// Run the acceptance criteria.
    Accept {
        /// Only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

fn config(cli: &Cli) -> Result<Config, CliError> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let flags = FileConfig {
        n: cli.n,
        cap: cli.cap,
        max_len: cli.max_len,
        seed: cli.seed,
        output: cli.output,
        out_dir: cli.out_dir.clone(),
    };
    let env = std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    Config::merge(flags, env, file)
}

fn dispatch(cli: &Cli, cfg: &Config) -> Result<Report, CliError> {
    match &cli.command {
        Command::Coh { bundle } => commands::coh(cfg, bundle),
        Command::Tilting { family, k } => commands::tilting(cfg, family, *k),
        Command::Hilbert { module } => commands::hilbert(cfg, module),
        Command::Quiver { compare, .. } => {
            if *compare {
                commands::quiver_compare(cfg)
            } else {
                commands::quiver_dims(cfg)
            }
        }
        Command::Rep {
            alpha,
            beta,
            sample,
            prime,
        } => commands::rep(cfg, alpha.as_deref(), beta.as_deref(), *sample, *prime),
        Command::Kflop {
            matrix,
            flopflop,
            ptwist_ledger,
            k,
            prime,
            ..
        } => {
            if *matrix {
                commands::kflop_matrix(cfg, *k, *prime)
            } else if *flopflop {
                commands::kflop_flopflop(cfg, *k)
            } else if *ptwist_ledger {
                commands::kflop_ledger(cfg)
            } else {
                commands::kflop_table(cfg)
            }
        }
        Command::Mutate { .. } => commands::mutate_orbit(cfg),
        Command::Accept { only } => commands::accept(only),
    }
}

fn emit(report: &Report, cfg: &Config) -> Result<(), CliError> {
    let text = report.render(cfg.output)?;
    match &cfg.out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(format!("{}.{}", report.command, cfg.output.extension()));
            std::fs::write(&path, text)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = config(&cli).and_then(|cfg| {
        let report = dispatch(&cli, &cfg)?;
        emit(&report, &cfg)?;
        Ok(report.pass)
    });
    match result {
        Ok(Some(false)) => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
