use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use multiconc::cli::{self, exit, AnalyzeFlags, CommandOutput};
use multiconc::verify::VerifyConfig;

#[derive(Parser)]
#[command(name = "multiconc", version, about = "Multipartite concurrence and tangle bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the bounds report for a state spec or analysis request.
    Analyze {
        /// JSON file, or `-` for stdin.
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Decompositions sampled for the convex-roof estimate.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        emit_tensors: bool,
    },
    /// Bisect the noise weight of a GHZ-noise family for a detection predicate.
    Scan {
        /// Family spec; defaults to the three-qubit GHZ-noise family.
        #[arg(long)]
        input: Option<PathBuf>,
        /// `gme` or `entangled`.
        #[arg(long, default_value = "gme")]
        predicate: String,
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
    },
    /// Run the self-verification suites on seeded random states.
    Verify {
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        ns: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        ds: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        n_random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Decompositions per state in the convex-roof sandwich check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Inject a non-Hermitian perturbation of this size into one state.
        #[arg(long)]
        perturb: Option<f64>,
    },
    /// Resolve a state spec into an explicit dense matrix spec.
    GenState {
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn read_input(path: &Path) -> std::io::Result<String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    Ok(text)
}

fn io_failure(path: &Path, err: std::io::Error) -> CommandOutput {
    CommandOutput {
        stdout: String::new(),
        stderr: format!(
            "{}\n",
            serde_json::json!({"error": "io", "message": format!("{}: {err}", path.display())})
        ),
        exit_code: exit::PARSE_ERROR,
    }
}

fn run(cli: Cli) -> CommandOutput {
    match cli.command {
        Command::Analyze {
            input,
            seed,
            samples,
            emit_tensors,
        } => match read_input(&input) {
            Ok(text) => cli::cmd_analyze(
                &text,
                &AnalyzeFlags {
                    seed,
                    samples,
                    emit_tensors,
                },
            ),
            Err(e) => io_failure(&input, e),
        },
        Command::Scan { input, predicate, tol } => match input {
            None => cli::cmd_scan(None, &predicate, tol),
            Some(path) => match read_input(&path) {
                Ok(text) => cli::cmd_scan(Some(&text), &predicate, tol),
                Err(e) => io_failure(&path, e),
            },
        },
        Command::Verify {
            ns,
            ds,
            n_random,
            seed,
            samples,
            perturb,
        } => cli::cmd_verify(&VerifyConfig {
            ns,
            ds,
            n_random,
            seed,
            roof_samples: samples,
            perturbation: perturb,
        }),
        Command::GenState { input, seed } => match read_input(&input) {
            Ok(text) => cli::cmd_gen_state(&text, seed),
            Err(e) => io_failure(&input, e),
        },
    }
}

fn main() -> ExitCode {
    let out = run(Cli::parse());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.exit_code as u8)
}
