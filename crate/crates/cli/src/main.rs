//! `uob`: inspect inclusions of multi-matrix algebras and build, export and
//! verify unitary orthonormal bases.
//!
//! Exit codes: 0 success, 1 domain failure, 2 unreadable or malformed
//! input, 3 no known construction.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use uob_core::expectation::mixed_unitary_channel;
use uob_core::verify::{run_all, DEFAULT_SAMPLES, DEFAULT_SEED};
use uob_core::{
    check_spectral_condition, construct, BasisDocument, ConditionalExpectation, Error, InclusionSpec, Method,
    SpecDocument, Tolerances, TraceVector,
};

const CHANNEL_SAMPLES: usize = 20;

#[derive(Parser)]
#[command(
    name = "uob",
    version,
    about = "Unitary orthonormal bases for multi-matrix inclusions"
)]
struct Cli {
    /// Structural tolerance; the other tolerances scale with it.
    #[arg(long, global = true, env = "UOB_TOL")]
    tol: Option<f64>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a spec and report the spectral condition.
    Check { spec: PathBuf },
    /// Print `ln d` for a spec satisfying the spectral condition.
    Entropy { spec: PathBuf },
    /// Construct a basis and write it as a basis document.
    Basis {
        spec: PathBuf,
        #[arg(long, default_value = "auto")]
        method: Method,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a basis document against the expectation of its spec.
    Verify {
        basis: PathBuf,
        /// Also print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the mixed-unitary decomposition of the expectation.
    Channel { spec: PathBuf },
}

/// A failed command with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Document(_) => 2,
            Error::NoKnownConstruction => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = cli.tol.map(Tolerances::scaled).unwrap_or_default();
    let outcome = match &cli.command {
        Command::Check { spec } => check(spec),
        Command::Entropy { spec } => entropy(spec),
        Command::Basis { spec, method, out } => basis(spec, *method, out.as_deref()),
        Command::Verify { basis, json } => verify(basis, &tol, cli.seed, *json),
        Command::Channel { spec } => channel(spec, &tol, cli.seed),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_spec(path: &Path) -> Result<(SpecDocument, InclusionSpec), Failure> {
    let doc = SpecDocument::parse(&read(path)?)?;
    let spec = doc.spec()?;
    Ok((doc, spec))
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn check(path: &Path) -> Outcome {
    let doc = SpecDocument::parse(&read(path)?)?;
    println!("spec: {}", doc.name);
    let validated = doc.spec().and_then(|s| s.validate().map(|_| s));
    let spec = match validated {
        Ok(s) => s,
        Err(e) => {
            println!("valid: no ({e})");
            return Err(e.into());
        }
    };
    println!("valid: yes");
    println!("super_dims: [{}]", list(spec.super_dims()));
    let report = check_spectral_condition(&spec)?;
    println!("A^t n: [{}]", list(&report.at_n));
    match report.d {
        Some(d) => println!("spectral: HOLDS (d={d})"),
        None => println!("spectral: FAILS"),
    }
    println!("connected: {}", if report.connected { "yes" } else { "no" });
    println!("norm_squared={:.10}", report.norm_squared);
    if report.holds {
        let sn: u64 = spec.super_dims().iter().map(|n| n * n).sum();
        let sm: u64 = spec.sub_dims().iter().map(|m| m * m).sum();
        let verdict = if report.quadratic_holds { "HOLDS" } else { "FAILS" };
        println!("quadratic identity: {verdict} ({sn} = d * {sm})");
    }
    match &report.markov_trace {
        Some(TraceVector::Integer(v)) => println!("markov trace: [{}]", list(v)),
        Some(TraceVector::Real(v)) => {
            let v: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
            println!("markov trace: [{}]", v.join(", "));
        }
        None => println!("markov trace: not unique"),
    }
    if let Some(line) = entropy_line(&report.d, report.entropy_value) {
        println!("{line}");
    }
    Ok(())
}

fn entropy_line(d: &Option<u64>, value: Option<f64>) -> Option<String> {
    Some(format!("d={}, entropy=ln {} ≈ {:.4}", (*d)?, (*d)?, value?))
}

fn entropy(path: &Path) -> Outcome {
    let (_, spec) = load_spec(path)?;
    let report = check_spectral_condition(&spec)?;
    let line = entropy_line(&report.d, report.entropy_value).ok_or(Error::SpectralConditionFailed)?;
    println!("{line}");
    Ok(())
}

fn basis(path: &Path, method: Method, out: Option<&Path>) -> Outcome {
    let (doc, spec) = load_spec(path)?;
    let b = construct(&spec, method)?;
    let text = BasisDocument::from_basis(doc.name.clone(), &b).to_json();
    match out {
        Some(p) => {
            fs::write(p, text + "\n").map_err(|e| Failure {
                code: 1,
                message: format!("{}: {e}", p.display()),
            })?;
            println!("{}: {} basis, d={} -> {}", doc.name, b.provenance(), b.d(), p.display());
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn verify(path: &Path, tol: &Tolerances, seed: u64, json: bool) -> Outcome {
    let doc = BasisDocument::parse(&read(path)?)?;
    let b = doc.basis()?;
    let state = doc.spec.state(b.spec())?;
    let e = ConditionalExpectation::new(b.spec(), state)?;
    let report = run_all(&b, &e, tol, seed, DEFAULT_SAMPLES);
    for c in &report.checks {
        let mark = if c.pass { "PASS" } else { "FAIL" };
        let witness = if c.witness.is_empty() {
            String::new()
        } else {
            format!(" witness=[{}]", list(&c.witness))
        };
        println!(
            "{mark} {:<36} residual={:.3e} tol={:.1e}{witness}",
            c.name, c.residual, c.tolerance
        );
    }
    if json {
        println!("{}", report.to_json());
    }
    if report.passed() {
        println!("verification: PASS ({} checks)", report.checks.len());
        Ok(())
    } else {
        println!("verification: FAIL");
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        Err(Failure {
            code: 1,
            message: format!("failed checks: {}", names.join(", ")),
        })
    }
}

fn channel(path: &Path, tol: &Tolerances, seed: u64) -> Outcome {
    let (doc, spec) = load_spec(path)?;
    spec.validate()?;
    let state = doc.state(&spec)?;
    let channel = mixed_unitary_channel(&spec, &state)?;
    let t = channel.total_blocks();
    println!("T={t}");
    let phases: Vec<String> = channel.copy_phases().iter().map(|c| format!("{c}/{t}")).collect();
    println!("K phases: {}", phases.join(", "));
    for (j, cycle) in channel.cycles().iter().enumerate() {
        let members: Vec<String> = cycle.iter().map(|(i, k)| format!("({i},{k})")).collect();
        println!("L_{j}: {}-cycle {}", cycle.len(), members.join(" -> "));
    }
    let e = ConditionalExpectation::new(&spec, state)?;
    let residual = channel.residual_against(&e, seed, CHANNEL_SAMPLES)?;
    // the channel is a sum of exact unitaries, so it is held to the trace tolerance
    let pass = residual <= tol.trace;
    println!(
        "residual={residual:.3e} over {CHANNEL_SAMPLES} samples: {}",
        if pass { "VERIFIED" } else { "MISMATCH" }
    );
    if pass {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: format!("channel deviates from the conditional expectation by {residual:.3e}"),
        })
    }
}
