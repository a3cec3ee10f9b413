//! `nilcoh`: command-line front end for the nilcoh library.
//!
//! Exit status is 0 on success, 1 when a mathematical check fails and 2 on
//! usage or parse errors.

mod commands;
mod report;

use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use commands::Input;
use report::{Format, Report};

#[derive(Parser)]
#[command(
    name = "nilcoh",
    version,
    about = "Exact cohomology of nilpotent Lie algebras"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Lines)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FileArg {
    /// Algebra file; stdin when omitted or `-`
    file: Option<PathBuf>,
}

#[derive(Args)]
struct ThetaArg {
    /// Closed 1-form in the real dual basis, e.g. "0 0 0 1"; defaults to the file's theta
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the input: Jacobi, integrability of J, metric, closedness of theta
    Validate(FileArg),
    /// Betti numbers of the Chevalley–Eilenberg complex
    Betti(FileArg),
    /// Cohomology of d_theta = d - theta∧
    TwistedBetti {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        theta: ThetaArg,
    },
    /// Cohomology of (Λ^{p,*}, delbar_theta); untwisted without a theta
    Dolbeault {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        theta: ThetaArg,
        #[arg(long, default_value_t = 0)]
        p: usize,
    },
    /// Filtration and E0/E1 pages of the twisted Dolbeault complex
    Spectral {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        theta: ThetaArg,
    },
    /// Twisted Bott–Chern (1,1) dimension
    BottChern {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        theta: ThetaArg,
    },
    /// Solve omega = d_theta tau with d_theta(I tau) = 0
    Chase {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        theta: ThetaArg,
        /// Real (1,1)-form such as "+1 X^Y -1 Z^T"; defaults to the fundamental form
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
    },
    /// Lee form and LCK/Vaisman checks for the file's J and metric
    Lck(FileArg),
    /// Full LCK certificate
    Classify(FileArg),
    /// Print a built-in algebra in the file format
    Catalog {
        /// heisenberg, kodaira-thurston, abelian or iwasawa
        name: String,
        /// Heisenberg index or abelian dimension
        #[arg(long)]
        n: Option<usize>,
        /// Bare canonical file without comment header
        #[arg(long)]
        export: bool,
    },
}

fn read_source(arg: &FileArg) -> anyhow::Result<(String, String)> {
    match &arg.file {
        Some(p) if p.as_os_str() != "-" => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("cannot read {}", p.display()))?;
            Ok((text, p.display().to_string()))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .context("cannot read stdin")?;
            Ok((text, "<stdin>".into()))
        }
    }
}

fn load(arg: &FileArg) -> anyhow::Result<Input> {
    let (text, source) = read_source(arg)?;
    Input::parse(&text, &source)
}

enum Output {
    Report(Report),
    Raw(String),
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let report = match &cli.command {
        Command::Validate(f) => {
            let (text, source) = read_source(f)?;
            commands::validate(&text, &source)?
        }
        Command::Betti(f) => commands::betti_report(&load(f)?),
        Command::TwistedBetti { file, theta } => {
            commands::twisted_betti_report(&load(file)?, theta.theta.as_deref())?
        }
        Command::Dolbeault { file, theta, p } => {
            commands::dolbeault_report(&load(file)?, theta.theta.as_deref(), *p)?
        }
        Command::Spectral { file, theta } => {
            commands::spectral_report(&load(file)?, theta.theta.as_deref())?
        }
        Command::BottChern { file, theta } => {
            commands::bott_chern_report(&load(file)?, theta.theta.as_deref())?
        }
        Command::Chase { file, theta, omega } => {
            commands::chase_report(&load(file)?, theta.theta.as_deref(), omega.as_deref())?
        }
        Command::Lck(f) => commands::lck_report(&load(f)?)?,
        Command::Classify(f) => commands::classify_report(&load(f)?)?,
        Command::Catalog { name, n, export } => {
            return Ok(Output::Raw(commands::catalog_text(name, *n, *export)?))
        }
    };
    Ok(Output::Report(report))
}

/// Library errors are failed checks on well-formed input; everything else
/// (unreadable files, parse errors, bad arguments) is a usage error.
fn exit_code(err: &anyhow::Error) -> u8 {
    use nilcoh::Error as E;
    match err.downcast_ref::<E>() {
        Some(E::InvalidParameter(_) | E::Missing(_) | E::DimensionTooLarge { .. }) | None => 2,
        Some(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(Output::Raw(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            print!("{}", r.render(cli.format));
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
