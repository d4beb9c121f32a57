//! `gdn` — analysis of continuous conventional powers of generalized
//! doubly nonnegative matrices: validation, critical exponents, entry
//! trajectories, primitivity analytics, bound tables, example
//! constructions, extremal search, and the built-in claims suite.
//!
//! Results go to stdout; diagnostics go to stderr as JSON. Exit codes:
//! 0 success/affirmative, 2 negative verdict, 64 usage or parse error,
//! 70 internal numerical failure.

use clap::{Args, Parser, Subcommand};
use gdn_core::bounds::{component_budget, theorem_upper_bound};
use gdn_core::ce::{check_column_escape, estimate_ce, CeError};
use gdn_core::constructions::{
    build_prop44, hadamard_no_ce_demo, paper_matrix, prop44_default_params, PaperMatrix,
    Prop44Params,
};
use gdn_core::powers::{power, trajectory, trajectory_csv, EntryPolyMatrix};
use gdn_core::primitivity::{
    diagonal_support_bound, gdn_trace_necessities, index_of_primitivity, reducibility_blocks,
    wielandt_bound, BlockStructure, BoolPattern,
};
use gdn_core::search::{search, SearchConfig, SearchError};
use gdn_core::spectral::{gdn_spectral, validate_gdn};
use gdn_core::ToleranceConfig;
use gdn_cli::io::{load_matrix, print_json, CliError, EXIT_NEGATIVE, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE};
use gdn_cli::verify;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gdn",
    version,
    about = "Continuous powers of generalized doubly nonnegative matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct TolArgs {
    /// Entry nonnegativity tolerance (relative to max entry magnitude).
    #[arg(long, global = true)]
    entry_tol: Option<f64>,
    /// Eigenvalue nonnegativity tolerance (relative to the spectral radius).
    #[arg(long, global = true)]
    eig_tol: Option<f64>,
    /// Eigenvalue merge tolerance (relative).
    #[arg(long, global = true)]
    merge_tol: Option<f64>,
    /// Imaginary-part tolerance (relative to the spectral radius).
    #[arg(long, global = true)]
    imag_tol: Option<f64>,
    /// Root bracket width.
    #[arg(long, global = true)]
    isolation_tol: Option<f64>,
    /// Touching-root detection band (relative).
    #[arg(long, global = true)]
    touch_tol: Option<f64>,
}

impl TolArgs {
    fn build(&self) -> Result<ToleranceConfig, CliError> {
        let mut t = ToleranceConfig::default();
        if let Some(v) = self.entry_tol {
            t.entry_tol = v;
        }
        if let Some(v) = self.eig_tol {
            t.eig_tol = v;
        }
        if let Some(v) = self.merge_tol {
            t.merge_tol = v;
        }
        if let Some(v) = self.imag_tol {
            t.imag_tol = v;
        }
        if let Some(v) = self.isolation_tol {
            t.isolation_tol = v;
        }
        if let Some(v) = self.touch_tol {
            t.touch_tol = v;
        }
        if !t.is_valid() {
            return Err(CliError::usage("tolerances must be positive and finite"));
        }
        Ok(t)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a matrix is GDN; exit 0 if so, 2 if not.
    Validate {
        matrix_file: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Critical exponent: full negativity profile with a certified bracket.
    Ce {
        matrix_file: PathBuf,
        /// Bracket width (overrides --isolation-tol).
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        tols: TolArgs,
    },
    /// The matrix power A^alpha.
    Power {
        matrix_file: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// CSV trajectories of selected entries of A^alpha.
    Trajectory {
        matrix_file: PathBuf,
        /// 1-based entries, e.g. "4,1;4,4".
        #[arg(long)]
        entries: String,
        /// Alpha window as lo:hi.
        #[arg(long, default_value = "0.01:5")]
        window: String,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Index of primitivity, irreducibility, and pattern bounds.
    Primitivity {
        matrix_file: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Closed-form critical-exponent bounds for a given dimension.
    Bounds {
        #[arg(long)]
        n: usize,
        /// Emit the full JSON table instead of the single bound.
        #[arg(long)]
        all: bool,
    },
    /// Emit a named example matrix or a family construction.
    Construct {
        /// prop44, ce4, ce5, ce6, mip4, mip5, mip6, or hadamard3.
        #[arg(long)]
        family: String,
        /// Dimension for prop44 (odd, ≥ 3).
        #[arg(long)]
        n: Option<usize>,
        /// Seed for the prop44 parameter draw.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Explicit prop44 diagonal values (comma separated, decreasing).
        #[arg(long)]
        diagonal: Option<String>,
        /// Explicit prop44 coupling entry.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Hill-climbing search driven by a JSON config file.
    Search { config_file: PathBuf },
    /// Hadamard-power counterexample demo over (1, alpha-max].
    Hadamard {
        #[arg(long, default_value_t = 50.0)]
        alpha_max: f64,
    },
    /// Run the built-in claims suite and print a pass/fail table.
    VerifyPaper,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors
            if e.kind() == clap::error::ErrorKind::DisplayHelp
                || e.kind() == clap::error::ErrorKind::DisplayVersion
            {
                print!("{e}");
                return ExitCode::from(EXIT_OK as u8);
            }
            eprintln!(
                "{}",
                CliError::usage(e.to_string().trim().to_string()).to_json()
            );
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.code
        }
    };
    ExitCode::from(code as u8)
}

fn run(cmd: Command) -> Result<i32, CliError> {
    match cmd {
        Command::Validate { matrix_file, tol } => {
            let a = load_matrix(&matrix_file)?;
            let report = validate_gdn(&a, &tol.build()?);
            print_json(&report)?;
            Ok(if report.is_gdn { EXIT_OK } else { EXIT_NEGATIVE })
        }

        Command::Ce {
            matrix_file,
            tol,
            tols,
        } => {
            let a = load_matrix(&matrix_file)?;
            let mut cfg = tols.build()?;
            if let Some(t) = tol {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(CliError::usage("--tol must be positive"));
                }
                cfg.isolation_tol = t;
            }
            let profile = estimate_ce(&a, &cfg).map_err(ce_error)?;
            let escape = check_column_escape(&profile, a.n());
            print_json(&serde_json::json!({
                "profile": profile,
                "column_escape": escape,
            }))?;
            Ok(EXIT_OK)
        }

        Command::Power {
            matrix_file,
            alpha,
            tol,
        } => {
            if !(alpha > 0.0 && alpha.is_finite()) {
                return Err(CliError::usage("--alpha must be positive"));
            }
            let a = load_matrix(&matrix_file)?;
            let cfg = tol.build()?;
            let sd = gdn_spectral(&a, &cfg)
                .map_err(|r| CliError::numeric(format!("matrix is not GDN: {:?}", r.failures)))?;
            let pa = power(&sd, alpha).map_err(|e| CliError::numeric(e.to_string()))?;
            print_json(&pa)?;
            Ok(EXIT_OK)
        }

        Command::Trajectory {
            matrix_file,
            entries,
            window,
            step,
            tol,
        } => {
            let a = load_matrix(&matrix_file)?;
            let cfg = tol.build()?;
            let entries = parse_entries(&entries, a.n())?;
            let window = parse_window(&window)?;
            if !(step > 0.0 && step.is_finite()) {
                return Err(CliError::usage("--step must be positive"));
            }
            let sd = gdn_spectral(&a, &cfg)
                .map_err(|r| CliError::numeric(format!("matrix is not GDN: {:?}", r.failures)))?;
            let epm = EntryPolyMatrix::from_spectral(&sd);
            let rows = trajectory(&epm, &entries, window, step);
            print!("{}", trajectory_csv(&rows));
            Ok(EXIT_OK)
        }

        Command::Primitivity { matrix_file, tol } => {
            let a = load_matrix(&matrix_file)?;
            let cfg = tol.build()?;
            let pattern = BoolPattern::from_matrix(&a, 0.0);
            let index = index_of_primitivity(&pattern);
            let blocks = reducibility_blocks(&pattern);
            let diag_bound = diagonal_support_bound(&pattern).ok();
            let trace = gdn_trace_necessities(&a, &cfg).ok();
            print_json(&serde_json::json!({
                "n": a.n(),
                "index_of_primitivity": index,
                "wielandt_bound": wielandt_bound(a.n()),
                "irreducible": matches!(blocks, BlockStructure::Irreducible),
                "blocks": blocks,
                "diagonal_support_bound": diag_bound,
                "trace_necessities": trace,
                "pattern": pattern.render(),
            }))?;
            Ok(EXIT_OK)
        }

        Command::Bounds { n, all } => {
            if n < 1 {
                return Err(CliError::usage("--n must be at least 1"));
            }
            let k = theorem_upper_bound(n);
            if all {
                print_json(&serde_json::json!({
                    "n": n,
                    "ce_upper_bound": k,
                    "component_budget": if n >= 2 { Some(component_budget(n)) } else { None },
                    "wielandt_bound": wielandt_bound(n),
                    "mip_upper_bound": if n >= 2 { Some(2 * n - 3) } else { None },
                }))?;
            } else if k == k.trunc() {
                println!("{}", k as i64);
            } else {
                println!("{k}");
            }
            Ok(EXIT_OK)
        }

        Command::Construct {
            family,
            n,
            seed,
            diagonal,
            eps,
        } => {
            let matrix = if family == "prop44" {
                let n = n.ok_or_else(|| CliError::usage("prop44 needs --n"))?;
                let params = match (diagonal, eps) {
                    (Some(d), Some(e)) => {
                        let d: Result<Vec<f64>, _> =
                            d.split(',').map(|v| v.trim().parse::<f64>()).collect();
                        Prop44Params {
                            n,
                            d: d.map_err(|e| CliError::usage(format!("bad --diagonal: {e}")))?,
                            eps: e,
                        }
                    }
                    (None, None) => prop44_default_params(n, seed),
                    _ => {
                        return Err(CliError::usage(
                            "prop44 needs both --diagonal and --eps, or neither",
                        ))
                    }
                };
                build_prop44(&params).map_err(|e| CliError::numeric(e.to_string()))?
            } else {
                let name = PaperMatrix::parse(&family).ok_or_else(|| {
                    CliError::usage(format!(
                        "unknown family {family}; expected prop44, ce4, ce5, ce6, mip4, mip5, mip6, hadamard3"
                    ))
                })?;
                paper_matrix(name)
            };
            print_json(&matrix)?;
            Ok(EXIT_OK)
        }

        Command::Search { config_file } => {
            let text = std::fs::read_to_string(&config_file).map_err(|e| {
                CliError::usage(format!("cannot read {}: {e}", config_file.display()))
            })?;
            let cfg: SearchConfig = serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("bad search config: {e}")))?;
            match search(&cfg) {
                Ok(record) => {
                    print_json(&record)?;
                    Ok(EXIT_OK)
                }
                Err(SearchError::InvalidConfig) => {
                    Err(CliError::usage("invalid search configuration"))
                }
                Err(e @ SearchError::NoFeasibleCandidate { .. }) => {
                    eprintln!(
                        "{}",
                        serde_json::json!({"error": {"code": "no-feasible-candidate", "message": e.to_string()}})
                    );
                    Ok(EXIT_NEGATIVE)
                }
                Err(SearchError::Falsification(report)) => {
                    // would contradict a proven bound: surface loudly
                    eprintln!(
                        "{}",
                        serde_json::json!({"error": {"code": "falsification", "message": "candidate appears to beat a proven bound", "report": report}})
                    );
                    Ok(EXIT_NUMERIC)
                }
            }
        }

        Command::Hadamard { alpha_max } => {
            let report = hadamard_no_ce_demo(alpha_max)
                .ok_or_else(|| CliError::usage("--alpha-max must exceed 1"))?;
            let holds = report.holds();
            print_json(&report)?;
            Ok(if holds { EXIT_OK } else { EXIT_NEGATIVE })
        }

        Command::VerifyPaper => {
            let results = verify::run_all();
            let mut all_ok = true;
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                println!("[{status}] {}  {} — {}", r.id, r.title, r.details);
                all_ok &= r.passed;
            }
            println!(
                "{}/{} criteria passed",
                results.iter().filter(|r| r.passed).count(),
                results.len()
            );
            Ok(if all_ok { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

fn ce_error(e: CeError) -> CliError {
    match e {
        CeError::NotGdn(report) => {
            CliError::numeric(format!("matrix is not GDN: {:?}", report.failures))
        }
        CeError::IsolationInconclusive { i, j } => CliError::numeric(format!(
            "root isolation inconclusive at entry ({}, {})",
            i + 1,
            j + 1
        )),
    }
}

/// Parses "i,j;i,j" with 1-based indices.
fn parse_entries(text: &str, n: usize) -> Result<Vec<(usize, usize)>, CliError> {
    let mut out = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (i, j) = part
            .split_once(',')
            .ok_or_else(|| CliError::usage(format!("bad entry {part}; expected i,j")))?;
        let i: usize = i
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad row index in {part}")))?;
        let j: usize = j
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad column index in {part}")))?;
        if i < 1 || j < 1 || i > n || j > n {
            return Err(CliError::usage(format!(
                "entry ({i}, {j}) out of range for an {n}x{n} matrix"
            )));
        }
        out.push((i - 1, j - 1));
    }
    if out.is_empty() {
        return Err(CliError::usage("no entries requested"));
    }
    Ok(out)
}

fn parse_window(text: &str) -> Result<(f64, f64), CliError> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| CliError::usage("window must be lo:hi"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|_| CliError::usage("bad window lower bound"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|_| CliError::usage("bad window upper bound"))?;
    if !(lo > 0.0 && hi >= lo) {
        return Err(CliError::usage("window must satisfy 0 < lo <= hi"));
    }
    Ok((lo, hi))
}
