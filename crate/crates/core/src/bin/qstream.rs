use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use qstream::harness::{
    emit_csv, run_experiment, summarize, verify_suite, write_csv, Algorithm, ExperimentConfig,
    ObjectiveKind, VerifyOptions,
};
use qstream::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_IO: u8 = 3;

/// Run streaming submodular maximization experiments and write CSV metrics.
#[derive(Debug, Parser)]
#[command(version, about)]
struct Cli {
    /// Algorithm to run.
    #[arg(long, value_enum, required_unless_present = "verify")]
    alg: Option<Algorithm>,

    #[arg(long, value_enum, default_value = "maxcover")]
    objective: ObjectiveKind,

    /// Whitespace-separated edge list; `#` starts a comment line.
    #[arg(long)]
    graph: Option<PathBuf>,

    /// Ground set size for the adversarial objective.
    #[arg(long)]
    n: Option<usize>,

    /// Cardinality budget.
    #[arg(long, required_unless_present = "verify")]
    k: Option<usize>,

    /// Block size: elements per oracle query.
    #[arg(long, default_value_t = 1)]
    c: usize,

    #[arg(long, default_value_t = 0.1)]
    eps: f64,

    /// Acceptance multiplier [default: c/10 for qs++, 1 for qs].
    #[arg(long)]
    delta: Option<f64>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Number of trials [default: 10 for randomized runs, else 1].
    #[arg(long)]
    trials: Option<usize>,

    /// Shuffle the stream order with this seed.
    #[arg(long)]
    shuffle: Option<u64>,

    /// Append rows to this CSV instead of printing them.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Run the verification suite and exit.
    #[arg(long)]
    verify: bool,

    #[arg(long, hide = true)]
    mutate_strict_acceptance: bool,

    #[arg(long, hide = true, default_value_t = 4.0)]
    mutate_floor_divisor: f64,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io(_) | Error::Csv(_) | Error::Parse { .. } | Error::EmptyGraph(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

fn verify(cli: &Cli) -> Result<bool, Error> {
    let opts = VerifyOptions {
        eps: cli.eps,
        strict_acceptance: cli.mutate_strict_acceptance,
        floor_divisor: cli.mutate_floor_divisor,
        ..VerifyOptions::default()
    };
    let report = verify_suite(&opts)?;
    print!("{report}");
    Ok(report.passed())
}

fn experiment(cli: Cli) -> Result<(), Error> {
    let config = ExperimentConfig {
        algorithm: cli.alg.expect("required by clap"),
        objective: cli.objective,
        graph: cli.graph,
        n: cli.n,
        k: cli.k.expect("required by clap"),
        c: cli.c,
        eps: cli.eps,
        delta: cli.delta,
        seed: cli.seed,
        trials: cli.trials,
        shuffle: cli.shuffle,
    };
    let rows = run_experiment(&config)?;
    if rows.len() > 1 {
        let values: Vec<f64> = rows.iter().map(|r| r.objective_value).collect();
        let (mean, std) = summarize(&values);
        eprintln!(
            "{}: {} trials, objective mean {mean:.6} stddev {std:.6}",
            config.algorithm,
            rows.len()
        );
    }
    match cli.out {
        Some(path) => emit_csv(&rows, path),
        None => write_csv(&rows, std::io::stdout().lock(), true),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.verify {
        return match verify(&cli) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(EXIT_VERIFY),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_code(&e))
            }
        };
    }
    match experiment(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
