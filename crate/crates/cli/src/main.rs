use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qsphere::report::{canonical_json, VerificationReport};
use qsphere_cli::{run_command, Command, Settings, SuiteError};

#[derive(Parser, Debug)]
#[command(name = "verify", about = "Numerical checks for quantum spheres and their module categories")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Deformation parameter, 0 < q < 1.
    #[arg(long, global = true, default_value_t = 0.5)]
    q: f64,
    /// Sphere parameter (finite value, or "standard" where accepted).
    #[arg(long, global = true, allow_hyphen_values = true)]
    x: Option<String>,
    /// Second sphere parameter for `orbit`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    y: Option<String>,
    /// Spin label, a non-negative half-integer.
    #[arg(long, global = true)]
    l: Option<f64>,
    /// Truncation size per summand.
    #[arg(long = "N", global = true, default_value_t = 64)]
    n: usize,
    /// Maximal degree for the invariant-subspace search.
    #[arg(long = "D", global = true, default_value_t = 6)]
    d: usize,
    /// Override the main tolerance of the suite.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random samples.
    #[arg(long, global = true, default_value_t = 200)]
    count: usize,
    /// Restrict to one algebra (podles, uqmp, bl, uqsu2, b0m2).
    #[arg(long, global = true)]
    alg: Option<String>,
    /// Emit canonical JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write the JSON report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for plain-text matrix dumps.
    #[arg(long, global = true)]
    dump: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Defining relations, star structure and the rewriting oracle.
    Relations,
    /// Casimir eigenvectors, projections and spectrum.
    Casimir,
    /// Compressions to Casimir eigenspaces.
    Compress,
    /// Highest-weight vectors of the spin-2l modules.
    Theta,
    /// Invariance of the density functional.
    Functional,
    /// Dimension of the invariant subalgebra.
    Ergodic,
    /// Basis change, block form of A(0) and the RP2 suite.
    Theorem2,
    /// Orbit equivalence of sphere parameters.
    Orbit,
    /// Picard group classification.
    Picard,
    /// Every suite at its defaults.
    All,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Relations => Command::Relations,
            Cmd::Casimir => Command::Casimir,
            Cmd::Compress => Command::Compress,
            Cmd::Theta => Command::Theta,
            Cmd::Functional => Command::Functional,
            Cmd::Ergodic => Command::Ergodic,
            Cmd::Theorem2 => Command::Theorem2,
            Cmd::Orbit => Command::Orbit,
            Cmd::Picard => Command::Picard,
            Cmd::All => Command::All,
        }
    }
}

fn emit(cli: &Cli, reports: &[VerificationReport]) -> Result<(), SuiteError> {
    let json = canonical_json(reports);
    let summary: Vec<String> = reports.iter().map(|r| format!("{}\n    {}", r.summary_line(), r.params_line())).collect();
    match (&cli.out, cli.json) {
        (Some(path), _) => {
            fs::write(path, &json).map_err(|source| SuiteError::Io { path: path.clone(), source })?;
            summary.iter().for_each(|l| println!("{l}"));
        }
        (None, true) => {
            print!("{json}");
            summary.iter().for_each(|l| eprintln!("{l}"));
        }
        (None, false) => summary.iter().for_each(|l| println!("{l}")),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, SuiteError> {
    let settings = Settings {
        q: cli.q,
        x: cli.x.clone(),
        y: cli.y.clone(),
        l: cli.l,
        n: cli.n,
        d: cli.d,
        tol: cli.tol,
        seed: cli.seed,
        count: cli.count,
        alg: cli.alg.clone(),
        dump: cli.dump.clone(),
    };
    let reports = run_command(cli.command.into(), &settings)?;
    emit(cli, &reports)?;
    Ok(reports.iter().all(|r| r.passed()))
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
