//! High-level driver: spectra at a given truncation, convergence sweeps over
//! `N`, and reconstruction of wavefunctions from eigenvectors.

use std::time::{Duration, Instant};

use crate::assembly::assemble_k;
use crate::eigensolver::{eigen_symmetric, DenseMatrix};
use crate::error::{DescmError, Result};
use crate::mesh::{MeshKind, MeshStrategy};
use crate::potential::EvenPolynomialPotential;
use crate::sinc::sinc;

/// Stopping tolerance on `eps_n(N) = |E_n(N-1) - E_n(N)|`.
pub const DEFAULT_TOLERANCE: f64 = 5e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DescmProblem {
    pub potential: EvenPolynomialPotential,
    pub strategy: MeshStrategy,
    pub levels_requested: usize,
}

impl DescmProblem {
    pub fn new(potential: EvenPolynomialPotential) -> Self {
        Self {
            potential,
            strategy: MeshStrategy::default(),
            levels_requested: 1,
        }
    }

    pub fn with_strategy(mut self, strategy: MeshStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_levels(mut self, levels: usize) -> Self {
        self.levels_requested = levels;
        self
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(DescmError::InvalidArgument("N must be at least 1".into()));
        }
        if self.levels_requested == 0 {
            return Err(DescmError::InvalidArgument(
                "at least one level must be requested".into(),
            ));
        }
        if self.levels_requested > 2 * n + 1 {
            return Err(DescmError::LevelOutOfRange {
                level: self.levels_requested - 1,
                available: 2 * n + 1,
            });
        }
        self.strategy.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub n: usize,
    pub h_used: f64,
    pub strategy_kind: MeshKind,
    /// All `2N+1` eigenvalues of `K`, ascending.
    pub spectrum: Vec<f64>,
    pub levels_requested: usize,
    /// Columns pair with `spectrum`, present only when requested.
    pub eigenvectors: Option<DenseMatrix>,
    pub wall_time: Duration,
}

impl SpectrumResult {
    /// The lowest `levels_requested` eigenvalues.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum[..self.levels_requested]
    }
}

pub fn solve(problem: &DescmProblem, n: usize) -> Result<SpectrumResult> {
    solve_impl(problem, n, false)
}

/// As [`solve`], also keeping eigenvectors for [`wavefunction`].
pub fn solve_with_vectors(problem: &DescmProblem, n: usize) -> Result<SpectrumResult> {
    solve_impl(problem, n, true)
}

fn solve_impl(problem: &DescmProblem, n: usize, want_vectors: bool) -> Result<SpectrumResult> {
    problem.check(n)?;
    let start = Instant::now();
    let h = problem.strategy.select_h(&problem.potential, n)?;
    let k = assemble_k(&problem.potential, n, h)?;
    let eig = eigen_symmetric(k.matrix(), want_vectors)?;
    Ok(SpectrumResult {
        n,
        h_used: h,
        strategy_kind: problem.strategy.kind,
        spectrum: eig.eigenvalues,
        levels_requested: problem.levels_requested,
        eigenvectors: eig.eigenvectors,
        wall_time: start.elapsed(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceOptions {
    pub tolerance: f64,
    pub n_start: usize,
    pub n_step: usize,
    pub n_max: usize,
    /// Number of `N` values evaluated concurrently; `0` or `1` is sequential.
    pub threads: usize,
}

impl Default for ConvergenceOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            n_start: 2,
            n_step: 1,
            n_max: 200,
            threads: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord {
    pub n: usize,
    pub h: f64,
    pub value: f64,
    /// `|E_n(previous N) - E_n(N)|`; absent for the first record.
    pub eps: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTrace {
    pub level: usize,
    pub records: Vec<ConvergenceRecord>,
    pub converged: bool,
    /// Lowest `levels_requested` eigenvalues at the last recorded `N`.
    pub final_level_values: Vec<f64>,
}

impl ConvergenceTrace {
    pub fn last(&self) -> &ConvergenceRecord {
        self.records.last().expect("a trace has at least one record")
    }
}

/// Sweeps `N = n_start, n_start + n_step, ...` until `eps_level(N) < tolerance`
/// or `N` would exceed `n_max`. Non-convergence is reported through
/// `converged = false`, not an error.
pub fn converge(problem: &DescmProblem, level: usize, options: &ConvergenceOptions) -> Result<ConvergenceTrace> {
    if !(options.tolerance > 0.0) {
        return Err(DescmError::InvalidArgument(format!(
            "tolerance must be positive, got {}",
            options.tolerance
        )));
    }
    if options.n_step == 0 || options.n_start == 0 || options.n_max < options.n_start {
        return Err(DescmError::InvalidArgument(
            "need 1 <= n_start <= n_max and n_step >= 1".into(),
        ));
    }
    let problem = DescmProblem {
        levels_requested: problem.levels_requested.max(level + 1),
        ..problem.clone()
    };
    problem.check(options.n_start)?;

    let ns: Vec<usize> = (options.n_start..=options.n_max).step_by(options.n_step).collect();
    let batch = options.threads.max(1);
    let mut records: Vec<ConvergenceRecord> = Vec::new();
    let mut last_values = Vec::new();

    for chunk in ns.chunks(batch) {
        for result in solve_batch(&problem, chunk) {
            let result = result?;
            let value = result.spectrum[level];
            let eps = records.last().map(|r| (r.value - value).abs());
            records.push(ConvergenceRecord {
                n: result.n,
                h: result.h_used,
                value,
                eps,
            });
            last_values = result.eigenvalues().to_vec();
            if eps.is_some_and(|e| e < options.tolerance) {
                return Ok(ConvergenceTrace {
                    level,
                    records,
                    converged: true,
                    final_level_values: last_values,
                });
            }
        }
    }
    Ok(ConvergenceTrace {
        level,
        records,
        converged: false,
        final_level_values: last_values,
    })
}

fn solve_batch(problem: &DescmProblem, ns: &[usize]) -> Vec<Result<SpectrumResult>> {
    if ns.len() <= 1 {
        return ns.iter().map(|&n| solve(problem, n)).collect();
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = ns.iter().map(|&n| scope.spawn(move || solve(problem, n))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread panicked"))
            .collect()
    })
}

/// Continuous wavefunction `psi(x) = v(asinh x) sqrt(cosh(asinh x))` built
/// from the Sinc expansion of one eigenvector.
///
/// Coefficients are normalised so that `h * sum z_k^2 = 1`, the discrete form
/// of `int psi^2 dx = 1`, and signed so the largest `|v_k|` is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavefunction {
    pub level: usize,
    pub energy: f64,
    h: f64,
    /// `v_k` for `k = -N..=N`.
    coefficients: Vec<f64>,
}

impl Wavefunction {
    pub fn nodal_values(&self) -> &[f64] {
        &self.coefficients
    }

    /// `v(t)` on the transformed axis.
    pub fn transformed(&self, t: f64) -> f64 {
        let n = (self.coefficients.len() / 2) as i64;
        self.coefficients
            .iter()
            .zip(-n..=n)
            .map(|(v, k)| v * sinc((t - k as f64 * self.h) / self.h))
            .sum()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = x.asinh();
        self.transformed(t) * t.cosh().sqrt()
    }
}

pub fn wavefunction(result: &SpectrumResult, level: usize) -> Result<Wavefunction> {
    let vectors = result.eigenvectors.as_ref().ok_or(DescmError::MissingEigenvectors)?;
    if level >= result.spectrum.len() {
        return Err(DescmError::LevelOutOfRange {
            level,
            available: result.spectrum.len(),
        });
    }
    let h = result.h_used;
    let n = result.n as i64;
    let z: Vec<f64> = (0..vectors.dim()).map(|r| vectors[(r, level)]).collect();
    let norm = (h * z.iter().map(|v| v * v).sum::<f64>()).sqrt();
    let mut coefficients: Vec<f64> = z
        .iter()
        .zip(-n..=n)
        .map(|(zk, k)| zk / norm / (k as f64 * h).cosh())
        .collect();
    let peak = coefficients
        .iter()
        .enumerate()
        .fold(0, |b, (i, v)| if v.abs() > coefficients[b].abs() { i } else { b });
    if coefficients[peak] < 0.0 {
        coefficients.iter_mut().for_each(|v| *v = -*v);
    }
    Ok(Wavefunction {
        level,
        energy: result.spectrum[level],
        h,
        coefficients,
    })
}

pub fn reconstruct_wavefunction(result: &SpectrumResult, level: usize, x: f64) -> Result<f64> {
    Ok(wavefunction(result, level)?.eval(x))
}
