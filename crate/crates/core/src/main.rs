use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Parser, Subcommand};

use enriques_cert::exec::Execution;
use enriques_cert::pipeline::{run_all, run_stage, CertificateReport, Options, PairingOverride, Status, STAGES};

/// Exact certificate for the non-finitely-generated automorphism group chain.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Option<Cmd>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Number of generator sets in the non-finite-generation certificate.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    max_gens: u32,
    /// Seed for the specialization search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print the stage names in order and exit.
    #[arg(long, global = true)]
    stage_list: bool,
    /// Replace an intersection number before verification: LABEL,LABEL,VALUE.
    #[arg(long = "override", global = true, value_name = "LABEL,LABEL,VALUE")]
    overrides: Vec<PairingOverride>,
    /// Run everything on the current thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Cmd {
    /// Every stage, in order.
    All,
    Config,
    Cremona,
    Quotient,
    Fibrations,
    Lattice,
    Heights,
    Canonical,
    Dynamics,
    Nonfg,
}

impl Cmd {
    fn stage(self) -> Option<&'static str> {
        Some(match self {
            Cmd::All => return None,
            Cmd::Config => "config",
            Cmd::Cremona => "cremona",
            Cmd::Quotient => "quotient",
            Cmd::Fibrations => "fibrations",
            Cmd::Lattice => "lattice",
            Cmd::Heights => "heights",
            Cmd::Canonical => "canonical",
            Cmd::Dynamics => "dynamics",
            Cmd::Nonfg => "nonfg",
        })
    }
}

fn summarize(report: &CertificateReport) {
    for s in &report.stages {
        eprintln!("{:<11} {:<5} {}", s.name, s.status, s.anchor);
        for c in s.failures() {
            eprintln!("    FAIL {}: expected {}, observed {}", c.statement, c.expected.as_deref().unwrap_or("-"), c.observed.as_deref().unwrap_or("-"));
        }
    }
    eprintln!("verdict: {}", report.verdict);
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let options = Options {
        max_gens: cli.max_gens,
        seed: cli.seed,
        overrides: cli.overrides,
        execution: if cli.sequential { Execution::Sequential } else { Execution::Parallel },
        ..Options::default()
    };
    let report = match cli.command.unwrap_or(Cmd::All).stage() {
        None => run_all(&options),
        Some(name) => CertificateReport::new(&options, vec![run_stage(name, &options)?]),
    };
    let json = report.to_json();
    match &cli.out {
        Some(path) => std::fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{json}"),
    }
    summarize(&report);
    Ok(report.verdict == Status::Pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.stage_list {
        for s in STAGES {
            println!("{s}");
        }
        return ExitCode::SUCCESS;
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
