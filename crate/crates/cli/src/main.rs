//! `majbound` command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid input or usage,
//! 3 the enumeration guard refused the problem, 4 output could not be
//! written. Machine-readable results go to stdout, diagnostics to stderr.

use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use majbound::bounds::least_upper_bound;
use majbound::entropy::{entropic_chain, lattice_metric, renyi, shannon, ENTROPY_TOL};
use majbound::format::{json_number, json_numbers, round_json};
use majbound::lorenz::{bound_curves, export_curves, write_curves};
use majbound::problem::{load_vector, StateSpec};
use majbound::verify::{deflate, verify_tightness, verify_with_records};
use majbound::{compare, join, meet, presets, DistVector, Error, Problem};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_TOO_LARGE: u8 = 3;
const EXIT_OUTPUT: u8 = 4;

#[derive(Parser)]
#[command(name = "majbound", version, about = "Optimal majorization uncertainty bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the least upper bound and per-level records.
    Bound {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the bound against random and maximizing states.
    Verify {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Lower the bound's partial sum at `--level` by this amount before
        /// checking (negative control).
        #[arg(long, requires = "level")]
        deflate: Option<f64>,
        #[arg(long, requires = "deflate")]
        level: Option<usize>,
    },
    /// Export Lorenz curves of the per-level vectors, the bound and the
    /// maximally mixed state as CSV.
    Lorenz {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Entropy of the bound and, for a given state, the entropic chain.
    Entropy {
        #[command(flatten)]
        problem: ProblemArgs,
        /// State file: {"v":1,"pure":[[re,im],...]} or {"v":1,"density":...}.
        #[arg(long)]
        state: Option<PathBuf>,
        /// Also report the Rényi entropy of this order.
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Compare two vectors under majorization.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Args)]
#[group(skip)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "example"])))]
struct ProblemArgs {
    /// Problem file (JSON, schema version 1).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Built-in problem: qubit-xz, three-pauli or qutrit-coles.
    #[arg(long)]
    example: Option<String>,
    /// Angle between the two qubit observables of `qubit-xz`.
    #[arg(long, default_value_t = FRAC_PI_2)]
    theta: f64,
    /// Comma-separated state spectrum; overrides the problem's.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    spectrum: Option<Vec<f64>>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EnumerationTooLarge { .. } => EXIT_TOO_LARGE,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn output_failure(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_OUTPUT,
        message: e.to_string(),
    }
}

impl ProblemArgs {
    fn load(&self) -> Result<Problem, Failure> {
        let problem = match (&self.input, &self.example) {
            (Some(path), _) => Problem::load(path)?,
            (None, Some(name)) => presets::by_name(name, self.theta).ok_or_else(|| Failure {
                code: EXIT_INVALID,
                message: format!(
                    "unknown example `{name}` (expected one of: {})",
                    presets::NAMES.join(", ")
                ),
            })?,
            (None, None) => unreachable!("clap requires a problem source"),
        };
        match &self.spectrum {
            None => Ok(problem),
            Some(values) => {
                let spectrum = DistVector::sort_descending(values)
                    .map_err(|e| Error::Schema(format!("spectrum: {e}")))?;
                Ok(problem
                    .with_spectrum(spectrum)
                    .map_err(|e| Error::Schema(format!("spectrum: {e}")))?)
            }
        }
    }
}

fn emit_json(value: &serde_json::Value, output: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize") + "\n";
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| output_failure(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Bound { problem, output } => {
            let p = problem.load()?;
            let result = least_upper_bound(&p.measurements, &p.spectrum)?;
            emit_json(&result.to_json(), output.as_deref())?;
            Ok(0)
        }
        Command::Verify {
            problem,
            samples,
            seed,
            tol,
            deflate: eps,
            level,
        } => {
            let p = problem.load()?;
            let result = least_upper_bound(&p.measurements, &p.spectrum)?;
            let mut bound = result.s.components().to_vec();
            if let (Some(eps), Some(level)) = (eps, level) {
                bound = deflate(&bound, level, eps)?;
                eprintln!("deflated bound at level {level} by {eps}");
            }
            let report =
                verify_with_records(&p.measurements, &p.spectrum, &bound, &result, samples, seed, tol)?;
            let tightness = verify_tightness(&result.records, &result.s, tol);
            let passed = report.passed();
            let mut value = serde_json::to_value(&report).expect("report serializes");
            value["passed"] = passed.into();
            value["bound"] = json_numbers(&bound);
            value["tightness"] = serde_json::to_value(&tightness).expect("tightness serializes");
            emit_json(&round_json(value), None)?;
            if !passed {
                eprintln!(
                    "{} violation(s) of the bound found in {} states",
                    report.violation_count, report.samples
                );
            }
            Ok(if passed { 0 } else { EXIT_CHECK_FAILED })
        }
        Command::Lorenz { problem, output } => {
            let p = problem.load()?;
            let result = least_upper_bound(&p.measurements, &p.spectrum)?;
            let curves = bound_curves(&p.measurements, &result)?;
            match output {
                Some(path) => export_curves(&curves, &path).map_err(output_failure)?,
                None => write_curves(&curves, std::io::stdout().lock()).map_err(output_failure)?,
            }
            Ok(0)
        }
        Command::Entropy {
            problem,
            state,
            alpha,
        } => {
            let p = problem.load()?;
            let result = least_upper_bound(&p.measurements, &p.spectrum)?;
            let s = &result.s;
            let mut value = serde_json::json!({
                "s": json_numbers(s.components()),
                "entropy_bound": json_number(shannon(s.components())?),
            });
            if let Some(alpha) = alpha {
                value["alpha"] = json_number(alpha);
                value["renyi_bound"] = json_number(renyi(s.components(), alpha)?);
            }
            let mut code = 0;
            if let Some(path) = state {
                let st = StateSpec::load(&path)?;
                let chain = entropic_chain(&p.measurements, s, &st)?;
                let holds = chain.holds(ENTROPY_TOL);
                value["entropy_sum"] = json_number(chain.entropy_sum);
                value["relative_entropy"] = json_number(chain.divergence);
                value["improved_bound"] = json_number(chain.improved());
                value["chain_holds"] = holds.into();
                if !holds {
                    eprintln!("entropic chain violated");
                    code = EXIT_CHECK_FAILED;
                }
            }
            emit_json(&value, None)?;
            Ok(code)
        }
        Command::Compare { a, b, tol } => {
            let va = load_vector(&a)?;
            let vb = load_vector(&b)?;
            let order = compare(&va, &vb, tol)?;
            let value = serde_json::json!({
                "order": order.to_string(),
                "join": json_numbers(join(&va, &vb)?.components()),
                "meet": json_numbers(meet(&va, &vb)?.components()),
                "distance": json_number(lattice_metric(&va, &vb)?),
            });
            emit_json(&value, None)?;
            Ok(0)
        }
    }
}

fn configure_threads() {
    let Ok(raw) = std::env::var("MAJBOUND_THREADS") else {
        return;
    };
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("warning: could not set thread count: {e}");
            }
        }
        _ => eprintln!("warning: ignoring MAJBOUND_THREADS={raw:?}; expected a positive integer"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
