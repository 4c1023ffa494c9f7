//! `toralclass`: classify integer unimodular 4x4 matrices as automorphisms
//! of the 4-torus.
//!
//! Configuration precedence is flags, then `TORALCLASS_*` environment
//! variables, then built-in defaults. Exit codes: 0 success (verdicts such
//! as "not conjugate" are data, not failures), 1 usage or parse error,
//! 2 violated internal invariant.

mod io;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use toralclass_core::{
    char_poly, classify, decide_conjugacy, dual_orbit_test, entropy, ergodicity_test,
    factor_monic_quartic, leaf_equidistribution, solve_invariant_form, split_decomposable,
    ClassifyConfig, ConjugacyVerdict, Decomposition, Error, IntMatrix, IntPolynomial,
    OrbitStatus, SimConfig,
};

use io::read_matrix;
use report::{build_report, one_line, render_text, Provenance};

const DEFAULT_BOUND_K: i64 = 10;
const DEFAULT_PRECISION: u32 = 50;
const DEFAULT_SIM_N: u64 = 1_000_000;
const DEFAULT_FLOOR: f64 = 0.99;
const DEFAULT_CEILING: f64 = 0.05;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInvariant(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "toralclass",
    version,
    about = "Exact classification of unimodular integer 4x4 matrices acting on the 4-torus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: spectral type, ergodicity, entropy, forms, resonance
    Classify {
        file: PathBuf,
        /// Emit the JSON report document instead of aligned text
        #[arg(long)]
        json: bool,
        /// Decimal digits for numeric fields [default: 50, env: TORALCLASS_PRECISION]
        #[arg(long)]
        digits: Option<u32>,
        /// Witness scan bound for the decomposition attempt [default: 10, env: TORALCLASS_BOUND_K]
        #[arg(short = 'K', long)]
        bound: Option<i64>,
    },
    /// Invariant symplectic forms of a matrix
    Form {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Topological entropy
    Entropy {
        file: PathBuf,
        /// Decimal digits [default: 50, env: TORALCLASS_PRECISION]
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Factor the characteristic polynomial into irreducibles
    Factor { file: PathBuf },
    /// Decide integer unimodular conjugacy of two matrices
    Conjugacy {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Witness scan bound [default: 10, env: TORALCLASS_BOUND_K]
        #[arg(short = 'K', long)]
        bound: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Split off an invariant 2-torus pair when one exists
    Decompose {
        file: PathBuf,
        /// Witness scan bound [default: 10, env: TORALCLASS_BOUND_K]
        #[arg(short = 'K', long)]
        bound: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Emit the companion matrix of the reciprocal lift of z^2 + p z + q
    Generate {
        /// Trace-variable coefficients p q
        #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_negative_numbers = true, required = true)]
        quadratic: Vec<i64>,
    },
    /// Weyl-sum scan over a Fourier mode box, CSV on stdout
    Simulate {
        file: PathBuf,
        /// Points per mode [default: 1000000, env: TORALCLASS_SIM_N]
        #[arg(long)]
        samples: Option<u64>,
        /// Half-width of the mode box [default: 3]
        #[arg(long)]
        mode_box: Option<i64>,
        /// Magnitude a resonant mode must reach [default: 0.99]
        #[arg(long)]
        floor: Option<f64>,
        /// Magnitude a nonresonant mode must stay under [default: 0.05]
        #[arg(long)]
        ceiling: Option<f64>,
    },
    /// Orbit of one Fourier mode under the transpose action
    DualOrbit {
        file: PathBuf,
        /// Mode as four comma-separated integers, e.g. 0,1,0,0
        #[arg(long, allow_hyphen_values = true)]
        mode: String,
        /// Iteration cap [default: 10000]
        #[arg(long)]
        maxiter: Option<u64>,
    },
}

fn main() -> ExitCode {
    // Die quietly on SIGPIPE like other Unix filters; the default Rust
    // handler turns an early-closing consumer (`toralclass ... | head`)
    // into a panic on the next print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(2)
        }
    }
}

/// Flag, then environment, then default.
fn resolve<T: FromStr + Copy>(flag: Option<T>, env: &str, default: T) -> Result<T, CliError> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match std::env::var(env) {
        Ok(raw) => raw
            .parse()
            .map_err(|_| CliError::Usage(format!("{env}: cannot parse {raw:?}"))),
        Err(_) => Ok(default),
    }
}

fn provenance(bound: Option<i64>, digits: Option<u32>, samples: Option<u64>) -> Result<Provenance, CliError> {
    Ok(Provenance {
        bound_k: resolve(bound, "TORALCLASS_BOUND_K", DEFAULT_BOUND_K)?,
        precision: resolve(digits, "TORALCLASS_PRECISION", DEFAULT_PRECISION)?,
        sim_n: resolve(samples, "TORALCLASS_SIM_N", DEFAULT_SIM_N)?,
        resonant_floor: DEFAULT_FLOOR,
        nonresonant_ceiling: DEFAULT_CEILING,
    })
}

/// A decomposition attempt that treats "not decomposable" as a plain
/// answer and anything internally inconsistent as a real error.
fn try_decompose(a: &IntMatrix, bound: i64) -> Result<Option<Decomposition>, CliError> {
    match split_decomposable(a, bound) {
        Ok(d) => Ok(Some(d)),
        Err(Error::InternalInvariant(m)) => Err(CliError::Internal(m)),
        Err(_) => Ok(None),
    }
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Classify { file, json, digits, bound } => {
            let doc = read_matrix(&file)?;
            let prov = provenance(bound, digits, None)?;
            let r = classify(&doc.matrix, &ClassifyConfig { digits: prov.precision })?;
            let decomposition = try_decompose(&doc.matrix, prov.bound_k)?;
            if json {
                let rep = build_report(&doc, &r, decomposition.as_ref(), prov);
                println!("{}", serde_json::to_string_pretty(&rep).expect("report serialization"));
            } else {
                print!("{}", render_text(&r, decomposition.as_ref(), prov));
            }
            Ok(())
        }
        Command::Form { file, json } => {
            let doc = read_matrix(&file)?;
            let fs = solve_invariant_form(&doc.matrix)?;
            if json {
                #[derive(serde::Serialize)]
                struct FormsJson {
                    rank: usize,
                    basis: Vec<Vec<Vec<String>>>,
                    canonical: Option<report::FormJson>,
                }
                let out = FormsJson {
                    rank: fs.rank,
                    basis: fs.basis.iter().map(|f| report::matrix_strings(f.matrix())).collect(),
                    canonical: fs.canonical.as_ref().map(|j| report::FormJson {
                        matrix: report::matrix_strings(j.matrix()),
                        pfaffian: j.pfaffian().to_string(),
                    }),
                };
                println!("{}", serde_json::to_string_pretty(&out).expect("form serialization"));
            } else {
                println!("solution lattice rank {}", fs.rank);
                for (i, f) in fs.basis.iter().enumerate() {
                    println!("basis form {i}: {}", one_line(f.matrix()));
                }
                match &fs.canonical {
                    Some(j) => {
                        println!("canonical form (pfaffian {}):", j.pfaffian());
                        print!("{}", j.matrix());
                    }
                    None => println!("no nondegenerate form in the combination box [-3, 3]"),
                }
            }
            Ok(())
        }
        Command::Entropy { file, digits } => {
            let doc = read_matrix(&file)?;
            let prov = provenance(None, digits, None)?;
            let h = entropy(&doc.matrix, prov.precision)?;
            println!("{}", h.value.to_decimal_string(prov.precision));
            if h.exact_zero {
                println!("exactly zero: every eigenvalue is a root of unity");
            } else {
                for (f, term) in &h.terms {
                    println!("  factor {f}: {}", term.to_decimal_string(prov.precision));
                }
            }
            Ok(())
        }
        Command::Factor { file } => {
            let doc = read_matrix(&file)?;
            let chi = char_poly(&doc.matrix);
            let f = factor_monic_quartic(&chi)?;
            println!("{chi}");
            println!("{f}");
            Ok(())
        }
        Command::Conjugacy { file_a, file_b, bound, json } => {
            let a = read_matrix(&file_a)?;
            let b = read_matrix(&file_b)?;
            let k = resolve(bound, "TORALCLASS_BOUND_K", DEFAULT_BOUND_K)?;
            let verdict = decide_conjugacy(&a.matrix, &b.matrix, k)?;
            if json {
                #[derive(serde::Serialize)]
                struct VerdictJson {
                    verdict: &'static str,
                    witness: Option<Vec<Vec<String>>>,
                    reason: Option<String>,
                    bound: i64,
                    candidates_tried: Option<u64>,
                }
                let out = match &verdict {
                    ConjugacyVerdict::Conjugate(w) => VerdictJson {
                        verdict: "conjugate",
                        witness: Some(report::matrix_strings(&w.w)),
                        reason: None,
                        bound: k,
                        candidates_tried: None,
                    },
                    ConjugacyVerdict::NotConjugate(reason) => VerdictJson {
                        verdict: "not_conjugate",
                        witness: None,
                        reason: Some(reason.clone()),
                        bound: k,
                        candidates_tried: None,
                    },
                    ConjugacyVerdict::Undecided { shell_bound, candidates_tried } => VerdictJson {
                        verdict: "undecided",
                        witness: None,
                        reason: None,
                        bound: *shell_bound,
                        candidates_tried: Some(*candidates_tried),
                    },
                };
                println!("{}", serde_json::to_string_pretty(&out).expect("verdict serialization"));
            } else {
                match &verdict {
                    ConjugacyVerdict::Conjugate(w) => {
                        println!("conjugate");
                        print!("{}", w.w);
                    }
                    ConjugacyVerdict::NotConjugate(reason) => println!("not conjugate: {reason}"),
                    ConjugacyVerdict::Undecided { shell_bound, candidates_tried } => println!(
                        "undecided at bound {shell_bound} after {candidates_tried} candidates"
                    ),
                }
            }
            Ok(())
        }
        Command::Decompose { file, bound, json } => {
            let doc = read_matrix(&file)?;
            let k = resolve(bound, "TORALCLASS_BOUND_K", DEFAULT_BOUND_K)?;
            match split_decomposable(&doc.matrix, k) {
                Ok(d) => {
                    if json {
                        let out = report::decomposition_json(&d);
                        println!("{}", serde_json::to_string_pretty(&out).expect("decomposition serialization"));
                    } else {
                        println!("decomposable: invariant 2-torus pair, rotation order {}", d.elliptic_order);
                        println!("hyperbolic factor {}", d.hyperbolic_factor);
                        println!("elliptic factor   {}", d.elliptic_factor);
                        println!("H = {}", one_line(&d.hyperbolic_action));
                        println!("R = {}", one_line(&d.elliptic_action));
                        println!("stacking index {}", d.index);
                        match &d.splitting {
                            Some(w) => {
                                println!("splitting witness S:");
                                print!("{}", w.w);
                            }
                            None => println!(
                                "no unimodular splitting within bound {k} ({} candidates)",
                                d.candidates_tried
                            ),
                        }
                    }
                    Ok(())
                }
                Err(Error::NotDecomposable(reason)) => {
                    // Verdicts are data: a transitive matrix reports itself
                    // as such and exits 0.
                    let transitive = ergodicity_test(&char_poly(&doc.matrix))
                        .map(|c| c.ergodic)
                        .unwrap_or(false);
                    if json {
                        #[derive(serde::Serialize)]
                        struct NoSplit {
                            verdict: &'static str,
                            reason: String,
                        }
                        let verdict = if transitive { "transitive" } else { "not_decomposable" };
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&NoSplit { verdict, reason })
                                .expect("verdict serialization")
                        );
                    } else if transitive {
                        println!("transitive: no decomposition");
                    } else {
                        println!("not decomposable: {reason}");
                    }
                    Ok(())
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Generate { quadratic } => {
            let (p, q) = (quadratic[0], quadratic[1]);
            let a = p;
            let b = q + 2;
            let lift = IntPolynomial::from_i64(&[1, a, b, a, 1]);
            let seed = IntPolynomial::from_i64(&[q, p, 1]);
            let m = IntMatrix::from_i64(4, &[0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, -1, -a, -b, -a]);
            let j = toralclass_core::companion_form(&BigInt::from(a));
            println!("# companion matrix of the reciprocal lift of {seed}");
            println!("# characteristic polynomial: {lift}");
            for row in m.to_rows() {
                let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                println!("{}", cells.join(" "));
            }
            println!("# invariant symplectic form J, rows:");
            for row in j.matrix().to_rows() {
                let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                println!("# {}", cells.join(" "));
            }
            Ok(())
        }
        Command::Simulate { file, samples, mode_box, floor, ceiling } => {
            let doc = read_matrix(&file)?;
            let prov = provenance(None, None, samples)?;
            let ed = toralclass_core::eigen_data(&doc.matrix, prov.precision)?;
            let cfg = SimConfig {
                samples: prov.sim_n,
                mode_box: mode_box.unwrap_or(3),
                delta: None,
                resonant_floor: floor.unwrap_or(DEFAULT_FLOOR),
                nonresonant_ceiling: ceiling.unwrap_or(DEFAULT_CEILING),
            };
            let reports = leaf_equidistribution(&ed, &cfg)?;
            println!("m1,m2,m3,m4,N,S_N,resonant_predicted");
            for r in &reports {
                println!(
                    "{},{},{},{},{},{},{}",
                    r.mode[0], r.mode[1], r.mode[2], r.mode[3], r.samples, r.magnitude,
                    r.resonant_predicted
                );
            }
            Ok(())
        }
        Command::DualOrbit { file, mode, maxiter } => {
            let doc = read_matrix(&file)?;
            let parts: Result<Vec<BigInt>, _> =
                mode.split(',').map(|t| BigInt::from_str(t.trim())).collect();
            let m = parts.map_err(|_| {
                CliError::Usage(format!("--mode: expected four comma-separated integers, got {mode:?}"))
            })?;
            if m.len() != 4 {
                return Err(CliError::Usage(format!(
                    "--mode: expected four comma-separated integers, got {}",
                    m.len()
                )));
            }
            let cap = maxiter.unwrap_or(10_000);
            let r = dual_orbit_test(&doc.matrix, &m, cap)?;
            match r.status {
                OrbitStatus::Periodic(p) => println!("periodic: least period {p}"),
                OrbitStatus::NoCycleWithin(n) => println!("no cycle within {n} iterations"),
            }
            Ok(())
        }
    }
}
