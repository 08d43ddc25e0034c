use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pwlab::acceptance::{run_suites, Suite};
use pwlab::config::{ConfigFile, Experiment, ExperimentConfig, Params};
use pwlab::experiments;
use pwlab_core::Error;

#[derive(Parser)]
#[command(name = "pwlab", version, about = "Paley-Wiener discretization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extreme eigenvalues of the prolate matrices M_n
    Eigensweep(Run),
    /// Sampling identity on the Nyquist lattice
    Shannon(Run),
    /// Banach-frame reconstruction from samples on a lattice
    Frames(Run),
    /// Atomic decomposition through the kernel
    Atomic(Run),
    /// Fat Cantor set: exact measures and kernel norms
    Cantor(Run),
    /// Lacunary spectrum: kernel norms
    Lacunary(Run),
    /// Weighted Young inequality margins
    Young(Run),
    /// Oscillation norms of the kernel over dyadic cubes
    Osc(Run),
    /// Run the acceptance criteria (all, or one suite)
    Acceptance {
        /// Suite name, or `all`
        #[arg(default_value = "all")]
        suite: String,
        /// Write the verdicts as a JSON array
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for side artifacts such as the eigenvalue table
        #[arg(long)]
        artifacts: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Run {
    /// JSON config file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file: CSV, or JSON when the name ends in .json
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    params: Params,
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error [{}]: {e}", e.precondition());
    match e {
        Error::ContractionRefused { .. } => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn write(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}

fn run_experiment(experiment: Experiment, run: Run) -> ExitCode {
    let file = match run.config.as_deref().map(ConfigFile::load).transpose() {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    let config = match ExperimentConfig::resolve(experiment, &run.params, file.as_ref()) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let out = run.out.or_else(|| file.and_then(|f| f.out));
    let outcome = match experiments::run(&config) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    for line in &outcome.summary {
        println!("{line}");
    }
    if let Some(path) = out {
        let contents = if path.extension().is_some_and(|e| e == "json") {
            let doc = json!({"schema_version": config.schema_version, "config": config, "result": outcome.json});
            serde_json::to_string_pretty(&doc).expect("results serialize") + "\n"
        } else {
            outcome.table.to_csv(&config.to_json())
        };
        if let Err(e) = write(&path, &contents) {
            return fail(&e);
        }
    }
    ExitCode::SUCCESS
}

fn run_acceptance(suite: &str, out: Option<PathBuf>, artifacts: Option<PathBuf>) -> ExitCode {
    let chosen = if suite == "all" {
        None
    } else {
        match Suite::from_str(suite, true) {
            Ok(s) => Some(s),
            Err(_) => {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                return fail(&Error::InvalidArgument(format!("unknown suite {suite:?}; expected all or one of {names:?}")));
            }
        }
    };
    let verdicts = run_suites(chosen);
    for v in &verdicts {
        eprintln!("{}", v.line());
        println!("{}", serde_json::to_string(v).expect("verdicts serialize"));
        if let (Some(dir), Some((name, csv))) = (&artifacts, &v.artifact) {
            if let Err(e) = write(&dir.join(name), csv) {
                return fail(&e);
            }
        }
    }
    if let Some(path) = out {
        let doc = serde_json::to_string_pretty(&verdicts).expect("verdicts serialize") + "\n";
        if let Err(e) = write(&path, &doc) {
            return fail(&e);
        }
    }
    let failed: Vec<u32> = verdicts.iter().filter(|v| !v.passed).map(|v| v.id).collect();
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Eigensweep(r) => run_experiment(Experiment::Eigensweep, r),
        Command::Shannon(r) => run_experiment(Experiment::Shannon, r),
        Command::Frames(r) => run_experiment(Experiment::Frames, r),
        Command::Atomic(r) => run_experiment(Experiment::Atomic, r),
        Command::Cantor(r) => run_experiment(Experiment::Cantor, r),
        Command::Lacunary(r) => run_experiment(Experiment::Lacunary, r),
        Command::Young(r) => run_experiment(Experiment::Young, r),
        Command::Osc(r) => run_experiment(Experiment::Osc, r),
        Command::Acceptance { suite, out, artifacts } => run_acceptance(&suite, out, artifacts),
    }
}
