//! Command-line front end.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 bad arguments or potential
//! spec, 3 convergence sweep hit `--n-max` (the trace is still written).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::DescmError;
use crate::mesh::{log_grid, optimal_h, trace_minimized_h, trace_of_k, MeshStrategy};
use crate::potential::{analytic_catalog, parse_spec, EvenPolynomialPotential};
use crate::solver::{converge, solve, ConvergenceOptions, ConvergenceTrace, DescmProblem, DEFAULT_TOLERANCE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

/// Environment variable capping internal parallelism (0 or unset: sequential).
pub const THREADS_ENV: &str = "DESCM_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "descm",
    version,
    about = "Anharmonic-oscillator energy levels by double-exponential Sinc collocation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues at a single truncation N.
    Solve(SolveArgs),
    /// Increase N until successive values of one level agree to --tolerance.
    Converge(ConvergeArgs),
    /// Tabulate Tr(K)(h) on a log-spaced grid of mesh sizes.
    TraceScan(TraceScanArgs),
    /// Check the exactly solvable potentials against their known energies.
    Validate(ValidateArgs),
    /// Reproduce one of the bundled table presets (1-6).
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeshChoice {
    Optimal,
    TraceMin,
    Fixed,
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    /// Mesh-size strategy.
    #[arg(long, value_enum, default_value = "optimal")]
    pub mesh: MeshChoice,
    /// Mesh size for `--mesh fixed`.
    #[arg(long = "h")]
    pub h: Option<f64>,
    /// Search interval `low,high` for `--mesh trace-min`.
    #[arg(long, value_parser = parse_pair)]
    pub bracket: Option<(f64, f64)>,
    /// Relative tolerance on the trace-minimising h.
    #[arg(long)]
    pub mesh_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write results here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// `poly:c1,...,cm[;c0=v]` or `cheb:n[;shift=v]`.
    #[arg(long)]
    pub potential: String,
    #[arg(long = "N", visible_alias = "n")]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub levels: usize,
    #[command(flatten)]
    pub mesh: MeshArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Also write K as text (17 significant digits) to this path.
    #[arg(long)]
    pub dump_matrix: Option<PathBuf>,
    /// Report wall time on standard error.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long)]
    pub potential: String,
    #[arg(long, default_value_t = 0)]
    pub level: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 2)]
    pub n_start: usize,
    #[arg(long, default_value_t = 1)]
    pub n_step: usize,
    #[arg(long = "n-max", visible_alias = "N-max", default_value_t = 200)]
    pub n_max: usize,
    #[command(flatten)]
    pub mesh: MeshArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TraceScanArgs {
    #[arg(long)]
    pub potential: String,
    #[arg(long = "N", visible_alias = "n")]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub h_min: f64,
    #[arg(long, default_value_t = 5.0)]
    pub h_max: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Only run this catalog entry (0-based).
    #[arg(long)]
    pub case: Option<usize>,
    #[arg(long = "N", visible_alias = "n", default_value_t = 45)]
    pub n: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Preset number, 1 to 6.
    #[arg(long)]
    pub id: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected low,high")?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad number {a:?}"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad number {b:?}"))?;
    Ok((a, b))
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<DescmError> for Failure {
    fn from(e: DescmError) -> Self {
        let code = match e {
            DescmError::Parse { .. } | DescmError::InvalidPotential(_) => EXIT_USAGE,
            _ => EXIT_NUMERICAL,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

/// Payload to write plus the exit code to return after writing it.
struct Outcome {
    payload: String,
    destination: Option<PathBuf>,
    code: i32,
    notes: Vec<String>,
}

/// 17 significant digits.
pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

/// Parses arguments and runs the command, writing results and diagnostics to
/// the given streams. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);

    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Converge(a) => cmd_converge(a, threads),
        Command::TraceScan(a) => cmd_trace_scan(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Table(a) => cmd_table(a, threads),
    };
    match result {
        Ok(outcome) => {
            for note in &outcome.notes {
                let _ = writeln!(stderr, "{note}");
            }
            let written = match &outcome.destination {
                Some(path) => std::fs::write(path, &outcome.payload).map_err(|e| e.to_string()),
                None => stdout.write_all(outcome.payload.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: cannot write output: {e}");
                    EXIT_NUMERICAL
                }
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn load_potential(spec: &str) -> Result<EvenPolynomialPotential, Failure> {
    parse_spec(spec).map_err(Failure::from)
}

fn build_strategy(m: &MeshArgs) -> Result<MeshStrategy, Failure> {
    let mut strategy = match (m.mesh, m.h) {
        (MeshChoice::Fixed, Some(h)) => MeshStrategy::fixed(h),
        (MeshChoice::Fixed, None) => return Err(Failure::usage("--mesh fixed requires --h")),
        (_, Some(_)) => return Err(Failure::usage("--h is only valid with --mesh fixed")),
        (MeshChoice::Optimal, None) => MeshStrategy::optimal(),
        (MeshChoice::TraceMin, None) => MeshStrategy::trace_minimized(),
    };
    if let Some((low, high)) = m.bracket {
        strategy.bracket = (low, high);
    }
    if let Some(tol) = m.mesh_tol {
        strategy.tolerance = tol;
    }
    strategy.validate().map_err(|e| Failure::usage(e.to_string()))?;
    Ok(strategy)
}

fn require_n(n: usize) -> Result<(), Failure> {
    if n == 0 {
        Err(Failure::usage("N must be at least 1"))
    } else {
        Ok(())
    }
}

fn json_payload(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn cmd_solve(a: &SolveArgs) -> CmdResult {
    let potential = load_potential(&a.potential)?;
    let strategy = build_strategy(&a.mesh)?;
    require_n(a.n)?;
    if a.levels == 0 || a.levels > 2 * a.n + 1 {
        return Err(Failure::usage(format!(
            "--levels must be between 1 and 2N+1 = {}",
            2 * a.n + 1
        )));
    }
    let problem = DescmProblem::new(potential.clone())
        .with_strategy(strategy)
        .with_levels(a.levels);
    let result = solve(&problem, a.n)?;
    let mut notes = Vec::new();
    if let Some(path) = &a.dump_matrix {
        let k = crate::assembly::assemble_k(&potential, a.n, result.h_used)?;
        std::fs::write(path, k.matrix().to_text())
            .map_err(|e| Failure::usage(format!("cannot write matrix dump: {e}")))?;
    }
    if a.timing {
        notes.push(format!("wall_time_s={:.6}", result.wall_time.as_secs_f64()));
    }

    let payload = match a.out.format {
        Format::Json => json_payload(&json!({
            "potential": potential.to_spec(),
            "N": result.n,
            "h": result.h_used,
            "strategy": result.strategy_kind.label(),
            "eigenvalues": result.eigenvalues(),
        })),
        Format::Csv => {
            let mut s = String::from("level,E\n");
            for (i, e) in result.eigenvalues().iter().enumerate() {
                let _ = writeln!(s, "{i},{}", format_real(*e));
            }
            s
        }
    };
    Ok(Outcome {
        payload,
        destination: a.out.output.clone(),
        code: EXIT_OK,
        notes,
    })
}

fn trace_csv(trace: &ConvergenceTrace) -> String {
    let mut s = String::from("N,h,E_n,eps_n\n");
    for r in &trace.records {
        let eps = r.eps.map(format_real).unwrap_or_default();
        let _ = writeln!(s, "{},{},{},{}", r.n, format_real(r.h), format_real(r.value), eps);
    }
    s
}

fn trace_json(potential: &EvenPolynomialPotential, trace: &ConvergenceTrace) -> Value {
    let last = trace.last();
    json!({
        "potential": potential.to_spec(),
        "level": trace.level,
        "converged": trace.converged,
        "N": last.n,
        "h": last.h,
        "E_n": last.value,
        "eps_n": last.eps,
        "records": trace.records.iter().map(|r| json!({
            "N": r.n, "h": r.h, "E_n": r.value, "eps_n": r.eps,
        })).collect::<Vec<_>>(),
    })
}

fn cmd_converge(a: &ConvergeArgs, threads: usize) -> CmdResult {
    let potential = load_potential(&a.potential)?;
    let strategy = build_strategy(&a.mesh)?;
    if !(a.tolerance > 0.0) {
        return Err(Failure::usage("--tolerance must be positive"));
    }
    if a.n_start == 0 || a.n_step == 0 || a.n_max < a.n_start {
        return Err(Failure::usage("need 1 <= --n-start <= --n-max and --n-step >= 1"));
    }
    if a.level > 2 * a.n_start {
        return Err(Failure::usage(format!(
            "--level {} needs --n-start of at least {}",
            a.level,
            a.level / 2
        )));
    }
    let problem = DescmProblem::new(potential.clone()).with_strategy(strategy);
    let options = ConvergenceOptions {
        tolerance: a.tolerance,
        n_start: a.n_start,
        n_step: a.n_step,
        n_max: a.n_max,
        threads,
    };
    let trace = converge(&problem, a.level, &options)?;
    let payload = match a.format {
        Format::Csv => trace_csv(&trace),
        Format::Json => json_payload(&trace_json(&potential, &trace)),
    };
    let (code, notes) = if trace.converged {
        (EXIT_OK, vec![])
    } else {
        (
            EXIT_NOT_CONVERGED,
            vec![format!(
                "warning: level {} not converged to {:e} by N = {}",
                a.level,
                a.tolerance,
                trace.last().n
            )],
        )
    };
    Ok(Outcome {
        payload,
        destination: a.output.clone(),
        code,
        notes,
    })
}

fn cmd_trace_scan(a: &TraceScanArgs) -> CmdResult {
    let potential = load_potential(&a.potential)?;
    require_n(a.n)?;
    if a.points < 3 {
        return Err(Failure::usage("--points must be at least 3"));
    }
    let strategy = MeshStrategy::trace_minimized().with_bracket(a.h_min, a.h_max);
    strategy.validate().map_err(|e| Failure::usage(e.to_string()))?;

    let grid = log_grid(a.h_min, a.h_max, a.points);
    let rows = grid
        .iter()
        .map(|&h| trace_of_k(&potential, a.n, h).map(|t| (h, t)))
        .collect::<Result<Vec<_>, _>>()?;
    let h_hat = trace_minimized_h(&potential, a.n, &strategy)?;
    let h_opt = optimal_h(&potential, a.n)?;

    let payload = match a.format {
        Format::Csv => {
            let mut s = String::from("h,trace\n");
            for (h, t) in &rows {
                let _ = writeln!(s, "{},{}", format_real(*h), format_real(*t));
            }
            let _ = writeln!(s, "# h_hat={}", format_real(h_hat));
            let _ = writeln!(s, "# h_opt={}", format_real(h_opt));
            s
        }
        Format::Json => json_payload(&json!({
            "potential": potential.to_spec(),
            "N": a.n,
            "h": rows.iter().map(|r| r.0).collect::<Vec<_>>(),
            "trace": rows.iter().map(|r| finite_or_null(r.1)).collect::<Vec<_>>(),
            "h_hat": h_hat,
            "h_opt": h_opt,
        })),
    };
    Ok(Outcome {
        payload,
        destination: a.output.clone(),
        code: EXIT_OK,
        notes: vec![],
    })
}

fn finite_or_null(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

/// Absolute-error tolerance for a catalog case under a mesh strategy; the
/// three-well V2 gets a looser bound with the closed-form mesh.
pub fn validation_tolerance(case_index: usize, strategy: &MeshStrategy) -> f64 {
    match (case_index, strategy.kind) {
        (1, crate::mesh::MeshKind::OptimalLambertW) => 1e-8,
        _ => 1e-9,
    }
}

fn cmd_validate(a: &ValidateArgs) -> CmdResult {
    require_n(a.n)?;
    let catalog = analytic_catalog();
    let selected: Vec<usize> = match a.case {
        Some(i) if i < catalog.len() => vec![i],
        Some(i) => {
            return Err(Failure::usage(format!(
                "--case must be below {}, got {i}",
                catalog.len()
            )))
        }
        None => (0..catalog.len()).collect(),
    };

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &i in &selected {
        let case = &catalog[i];
        for strategy in [MeshStrategy::optimal(), MeshStrategy::trace_minimized()] {
            let problem = DescmProblem::new(case.potential.clone())
                .with_strategy(strategy)
                .with_levels(case.level + 1);
            let result = solve(&problem, a.n)?;
            let value = result.spectrum[case.level];
            let error = (value - case.exact_energy).abs();
            let tol = validation_tolerance(i, &strategy);
            let pass = error <= tol;
            if !pass {
                failures.push(format!("{} ({})", case.name, strategy.kind.label()));
            }
            rows.push((i, case, strategy, result.h_used, value, error, tol, pass));
        }
    }

    let payload = match a.out.format {
        Format::Csv => {
            let mut s = String::from("case,name,level,exact,strategy,h,value,error,tolerance,pass\n");
            for (i, case, strategy, h, value, error, tol, pass) in &rows {
                let _ = writeln!(
                    s,
                    "{i},{},{},{},{},{},{},{},{:e},{}",
                    case.name,
                    case.level,
                    format_real(case.exact_energy),
                    strategy.kind.label(),
                    format_real(*h),
                    format_real(*value),
                    format_real(*error),
                    tol,
                    if *pass { "pass" } else { "FAIL" }
                );
            }
            s
        }
        Format::Json => json_payload(&json!({
            "N": a.n,
            "all_pass": failures.is_empty(),
            "cases": rows.iter().map(|(i, case, strategy, h, value, error, tol, pass)| json!({
                "case": i,
                "name": case.name,
                "level": case.level,
                "exact": case.exact_energy,
                "strategy": strategy.kind.label(),
                "h": h,
                "value": value,
                "error": error,
                "tolerance": tol,
                "pass": pass,
            })).collect::<Vec<_>>(),
        })),
    };
    let (code, notes) = if failures.is_empty() {
        (EXIT_OK, vec![])
    } else {
        (
            EXIT_NUMERICAL,
            vec![format!("validation failed: {}", failures.join(", "))],
        )
    };
    Ok(Outcome {
        payload,
        destination: a.out.output.clone(),
        code,
        notes,
    })
}

fn cmd_table(a: &TableArgs, threads: usize) -> CmdResult {
    let preset = crate::presets::table(a.id).ok_or_else(|| Failure::usage(format!("no table preset {}", a.id)))?;
    let payload = match preset {
        crate::presets::Table::Spectrum {
            potential,
            truncations,
            reference,
        } => {
            let potential = EvenPolynomialPotential::new(potential)?;
            let problem = DescmProblem::new(potential.clone()).with_levels(3);
            let mut rows = Vec::new();
            for (&n, r) in truncations.iter().zip(&reference) {
                let result = solve(&problem, n)?;
                rows.push((n, result.h_used, result.eigenvalues().to_vec(), *r));
            }
            match a.format {
                Format::Csv => {
                    let mut s = String::from("N,h,E0,E1,E2,ref_E0,ref_E1,ref_E2\n");
                    for (n, h, e, r) in &rows {
                        let _ = writeln!(
                            s,
                            "{n},{},{},{},{},{},{},{}",
                            format_real(*h),
                            format_real(e[0]),
                            format_real(e[1]),
                            format_real(e[2]),
                            format_real(r[0]),
                            format_real(r[1]),
                            format_real(r[2])
                        );
                    }
                    s
                }
                Format::Json => json_payload(&json!({
                    "table": a.id,
                    "potential": potential.to_spec(),
                    "rows": rows.iter().map(|(n, h, e, r)| json!({
                        "N": n, "h": h, "E": e, "reference": r,
                    })).collect::<Vec<_>>(),
                })),
            }
        }
        crate::presets::Table::GroundState { rows } => {
            let options = ConvergenceOptions {
                threads,
                ..Default::default()
            };
            let mut out = Vec::new();
            for row in &rows {
                let potential = EvenPolynomialPotential::new(row.coefficients.clone())?;
                let trace = converge(&DescmProblem::new(potential.clone()), 0, &options)?;
                out.push((potential, row, trace));
            }
            match a.format {
                Format::Csv => {
                    let mut s = String::from("potential,N,E0,eps0,converged,ref_N,ref_E0\n");
                    for (p, row, t) in &out {
                        let last = t.last();
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{},{},{}",
                            p.to_spec().replace(',', " "),
                            last.n,
                            format_real(last.value),
                            last.eps.map(format_real).unwrap_or_default(),
                            t.converged,
                            row.reference_n,
                            format_real(row.reference_energy)
                        );
                    }
                    s
                }
                Format::Json => json_payload(&json!({
                    "table": a.id,
                    "rows": out.iter().map(|(p, row, t)| json!({
                        "potential": p.to_spec(),
                        "N": t.last().n,
                        "E0": t.last().value,
                        "eps0": t.last().eps,
                        "converged": t.converged,
                        "reference_N": row.reference_n,
                        "reference_E0": row.reference_energy,
                    })).collect::<Vec<_>>(),
                })),
            }
        }
    };
    Ok(Outcome {
        payload,
        destination: a.output.clone(),
        code: EXIT_OK,
        notes: vec![],
    })
}
