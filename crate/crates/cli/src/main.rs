//! `coble`: runs the computations of coble-core and prints verification
//! certificates. Exit codes: 0 all checks pass, 1 a check failed, 2 usage
//! error, 3 internal error.

mod certificate;
mod commands;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use coble_core::arith::Rational;
use coble_core::nu::Mode;

use certificate::Certificate;
use commands::CliError;

#[derive(Parser)]
#[command(name = "coble", version, about = "Verification certificates for the Coble cubic and its relatives")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Annexe,
    #[value(name = "all_lifts", alias = "all-lifts")]
    AllLifts,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Annexe => Mode::Annexe,
            ModeArg::AllLifts => Mode::AllLifts,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Heisenberg-invariant forms.
    #[command(subcommand)]
    Invariants(InvariantsCmd),
    /// The Coble cubic and the Barth quadrics.
    #[command(subcommand)]
    Coble(CobleCmd),
    /// Restrictions of invariant sextics to the fixed-point planes.
    #[command(subcommand)]
    Nu(NuCmd),
    /// The dual of the Hesse pencil.
    #[command(subcommand)]
    Hesse(HesseCmd),
    /// Enumerative counts.
    #[command(subcommand, name = "enum")]
    Enum(EnumCmd),
    /// Lattice arithmetic for the Prym.
    #[command(subcommand)]
    Prym(PrymCmd),
    /// Runs the full acceptance suite.
    VerifyAll,
}

#[derive(Subcommand)]
enum InvariantsCmd {
    Dim {
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
    Basis {
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
}

#[derive(Subcommand)]
enum CobleCmd {
    Check,
}

#[derive(Subcommand)]
enum NuCmd {
    Charts {
        #[arg(long, value_enum, default_value = "annexe")]
        mode: ModeArg,
    },
    Rank {
        #[arg(long, value_enum, default_value = "annexe")]
        mode: ModeArg,
    },
    Kernel {
        #[arg(long, value_enum, default_value = "annexe")]
        mode: ModeArg,
    },
}

#[derive(Subcommand)]
enum HesseCmd {
    Dual {
        #[arg(long)]
        lambda: Rational,
        #[arg(long)]
        oracle_prime: Option<u64>,
    },
}

#[derive(Subcommand)]
enum EnumCmd {
    DegreeDual,
    Verlinde {
        #[arg(long, default_value_t = 8)]
        kmax: u32,
    },
    QuadricCount,
    Zagier {
        #[arg(long, default_value_t = 1)]
        h: u32,
    },
}

#[derive(Subcommand)]
enum PrymCmd {
    Check,
    Genus {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        t: Option<u32>,
    },
}

fn dispatch(cmd: &Command) -> (String, Result<certificate::Outcome, CliError>) {
    use commands::*;
    match cmd {
        Command::Invariants(InvariantsCmd::Dim { degree }) => ("invariants dim".into(), invariants_dim(*degree)),
        Command::Invariants(InvariantsCmd::Basis { degree }) => ("invariants basis".into(), invariants_basis(*degree)),
        Command::Coble(CobleCmd::Check) => ("coble check".into(), coble_check()),
        Command::Nu(NuCmd::Charts { mode }) => ("nu charts".into(), nu_charts((*mode).into())),
        Command::Nu(NuCmd::Rank { mode }) => ("nu rank".into(), nu_rank((*mode).into())),
        Command::Nu(NuCmd::Kernel { mode }) => ("nu kernel".into(), nu_kernel((*mode).into())),
        Command::Hesse(HesseCmd::Dual { lambda, oracle_prime }) => {
            ("hesse dual".into(), hesse_dual(lambda.clone(), *oracle_prime))
        }
        Command::Enum(EnumCmd::DegreeDual) => ("enum degree-dual".into(), enum_degree_dual()),
        Command::Enum(EnumCmd::Verlinde { kmax }) => ("enum verlinde".into(), enum_verlinde(*kmax)),
        Command::Enum(EnumCmd::QuadricCount) => ("enum quadric-count".into(), enum_quadric_count()),
        Command::Enum(EnumCmd::Zagier { h }) => ("enum zagier".into(), enum_zagier(*h)),
        Command::Prym(PrymCmd::Check) => ("prym check".into(), prym_check()),
        Command::Prym(PrymCmd::Genus { n, g, t }) => ("prym genus".into(), prym_genus(*n, *g, *t)),
        Command::VerifyAll => ("verify-all".into(), verify_all()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (name, result) = dispatch(&cli.command);
    let outcome = match result {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            return ExitCode::from(3);
        }
    };
    let cert = Certificate::new(name, outcome, start.elapsed().as_millis() as u64);
    match cli.format {
        Format::Json => match serde_json::to_string_pretty(&cert) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("internal error: {e}");
                return ExitCode::from(3);
            }
        },
        Format::Text => print!("{}", cert.to_text()),
    }
    if cert.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
