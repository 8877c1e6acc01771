//! `fqrigid`: class numbers, rigid-domain searches, congruence frames and
//! additive collapse of line covers from the command line.
//!
//! Exit codes: 0 success, 1 computation error, 2 invalid input, 3 a
//! verification failed (counterexample found, strategies disagree, branch
//! locus escaped), 4 `rigid-search` at `q < 5` where exceptions are expected.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fqrigid::{Error, Guard};

use output::Report;

#[derive(Parser, Debug)]
#[command(name = "fqrigid", version, about)]
struct Cli {
    /// Largest number of items any exhaustive step may enumerate.
    #[arg(long, global = true, default_value_t = Guard::DEFAULT_BOUND)]
    guard: u64,

    /// Worker threads; 0 lets the pool pick one per core.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for sampled inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Point counts, zeta numerator and class number of a catalog curve.
    ClassNumber {
        /// Catalog line, e.g. `q=2 kind=artin-schreier poly=x^3`.
        #[arg(required = true, num_args = 1..)]
        curve: Vec<String>,
    },
    /// Zeta numerator with its functional equation and Weil checks.
    Zeta {
        #[arg(required = true, num_args = 1..)]
        curve: Vec<String>,
    },
    /// Places of a given degree.
    Places {
        #[arg(long, default_value_t = 1)]
        degree: u32,
        #[arg(required = true, num_args = 1..)]
        curve: Vec<String>,
    },
    /// Search for Drinfeldian domains of class number one.
    RigidSearch {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        genus_max: u32,
    },
    /// Quasi-level, level, cusps and modularity of congruence frames.
    Subgroup {
        /// A frame file, or a frame line `q=.. f=.. gens=[..]`.
        #[arg(required = true, num_args = 1..)]
        frame: Vec<String>,
        /// Replace the generators by this many seeded random elements.
        #[arg(long)]
        random: Option<usize>,
        /// Also scan for torsion with entries of degree at most this.
        #[arg(long)]
        torsion_bound: Option<u32>,
    },
    /// Collapse the branch locus of a cover of the line onto two points.
    Belyi {
        /// `q=.. num=<poly> den=<poly> targets=<a>,<b>`.
        #[arg(required = true, num_args = 1..)]
        cover: Vec<String>,
    },
    /// Class group of a Drinfeldian domain by every registered strategy.
    #[command(name = "oracle-clB")]
    OracleClB {
        #[arg(long, default_value_t = 1)]
        place_degree: u32,
        /// Position in the canonical list of places of that degree.
        #[arg(long, default_value_t = 0)]
        place_index: usize,
        /// Starting degree bound of the relation lattice.
        #[arg(long)]
        degree_bound: Option<u32>,
        #[arg(required = true, num_args = 1..)]
        curve: Vec<String>,
    },
}

/// Settings shared by all subcommands.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub guard: Guard,
    pub json: bool,
    pub seed: u64,
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::Parse(_)
            | Error::Invalid(_)
            | Error::UnknownKind(_)
            | Error::NotPrime(_)
            | Error::NotPrimePower(_)
            | Error::NotInBaseField(_)
            | Error::Singular(_),
        ) => 2,
        Some(Error::BranchEscape(_)) => 3,
        _ => 1,
    }
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    if cli.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global()?;
    }
    let cfg = RunConfig {
        guard: Guard::new(cli.guard),
        json: cli.json,
        seed: cli.seed,
    };
    match cli.command {
        Command::ClassNumber { curve } => commands::class_number(&cfg, &curve.join(" ")),
        Command::Zeta { curve } => commands::zeta(&cfg, &curve.join(" ")),
        Command::Places { degree, curve } => commands::places(&cfg, &curve.join(" "), degree),
        Command::RigidSearch { q, genus_max } => commands::rigid_search(&cfg, q, genus_max),
        Command::Subgroup {
            frame,
            random,
            torsion_bound,
        } => commands::subgroup(&cfg, &frame, random, torsion_bound),
        Command::Belyi { cover } => commands::belyi(&cfg, &cover.join(" ")),
        Command::OracleClB {
            place_degree,
            place_index,
            degree_bound,
            curve,
        } => commands::oracle_clb(&cfg, &curve.join(" "), place_degree, place_index, degree_bound),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            report.emit(json);
            ExitCode::from(report.exit)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
