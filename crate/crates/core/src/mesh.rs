//! Mesh-size selection.
//!
//! Two strategies are provided besides a fixed step: the closed-form step
//! balancing truncation against discretisation error (through the Lambert W
//! function), and the step minimising `Tr(K)(h)`, which behaves better for
//! potentials with several wells.

use std::f64::consts::PI;

use crate::de_map::{sech_squared, TransformedProblem};
use crate::error::{DescmError, Result};
use crate::potential::EvenPolynomialPotential;

const SCAN_POINTS: usize = 64;
const HALLEY_MAX_ITER: usize = 50;
const POLISH_MAX_STEPS: usize = 200;

/// Principal branch of the Lambert W function on `[0, inf)`.
pub fn lambert_w0(z: f64) -> Result<f64> {
    if z.is_nan() || z < 0.0 {
        return Err(DescmError::InvalidArgument(format!(
            "lambert_w0 needs a nonnegative argument, got {z}"
        )));
    }
    if z == 0.0 || z.is_infinite() {
        return Ok(z);
    }
    let mut w = if z < std::f64::consts::E {
        z.ln_1p()
    } else {
        let l = z.ln();
        l - l.ln()
    };
    for _ in 0..HALLEY_MAX_ITER {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs() {
            break;
        }
    }
    Ok(w)
}

/// Closed-form mesh size `W(2^m pi^2 (m+1) N / sqrt(c_m)) / ((m+1) N)`.
///
/// Only `m` and `c_m` enter; the lower coefficients and `c0` are ignored.
pub fn optimal_h(p: &EvenPolynomialPotential, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(DescmError::InvalidArgument("N must be at least 1".into()));
    }
    let m = p.degree_parameter() as f64;
    let scale = (m + 1.0) * n as f64;
    let arg = 2f64.powf(m) * PI * PI * scale / p.leading_coefficient().sqrt();
    Ok(lambert_w0(arg)? / scale)
}

/// `Tr(K)(h) = (pi^2 / 3h^2) sum sech^2(kh) + sum Ṽ(kh) / cosh^2(kh)`,
/// without assembling `K`. Saturates at `+inf` once `V(sinh(Nh))` overflows.
pub fn trace_of_k(p: &EvenPolynomialPotential, n: usize, h: f64) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(DescmError::InvalidArgument(format!(
            "mesh size must be positive and finite, got {h}"
        )));
    }
    Ok(trace_unchecked(&TransformedProblem::new(p.clone()), n, h))
}

fn trace_unchecked(tp: &TransformedProblem, n: usize, h: f64) -> f64 {
    let kinetic = PI * PI / (3.0 * h * h);
    let n = n as i64;
    (-n..=n)
        .map(|k| {
            let x = k as f64 * h;
            kinetic * sech_squared(x) + tp.scaled_potential(x)
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeshKind {
    OptimalLambertW,
    TraceMinimized,
    Fixed(f64),
}

impl MeshKind {
    pub fn label(&self) -> &'static str {
        match self {
            MeshKind::OptimalLambertW => "optimal",
            MeshKind::TraceMinimized => "trace-min",
            MeshKind::Fixed(_) => "fixed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshStrategy {
    pub kind: MeshKind,
    /// Search interval for [`MeshKind::TraceMinimized`].
    pub bracket: (f64, f64),
    /// Relative tolerance on the minimising `h`.
    pub tolerance: f64,
}

impl Default for MeshStrategy {
    fn default() -> Self {
        Self {
            kind: MeshKind::OptimalLambertW,
            bracket: (1e-3, 5.0),
            tolerance: 1e-10,
        }
    }
}

impl MeshStrategy {
    pub fn optimal() -> Self {
        Self::default()
    }

    pub fn trace_minimized() -> Self {
        Self {
            kind: MeshKind::TraceMinimized,
            ..Self::default()
        }
    }

    pub fn fixed(h: f64) -> Self {
        Self {
            kind: MeshKind::Fixed(h),
            ..Self::default()
        }
    }

    pub fn with_bracket(mut self, low: f64, high: f64) -> Self {
        self.bracket = (low, high);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (low, high) = self.bracket;
        if !(low > 0.0 && low < high && high.is_finite()) {
            return Err(DescmError::InvalidArgument(format!(
                "bracket must satisfy 0 < low < high, got [{low}, {high}]"
            )));
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(DescmError::InvalidArgument(format!(
                "tolerance must lie in (0, 1), got {}",
                self.tolerance
            )));
        }
        if let MeshKind::Fixed(h) = self.kind {
            if !(h > 0.0 && h.is_finite()) {
                return Err(DescmError::InvalidArgument(format!(
                    "fixed mesh size must be positive, got {h}"
                )));
            }
        }
        Ok(())
    }

    /// The mesh size this strategy prescribes for `p` at truncation `n`.
    pub fn select_h(&self, p: &EvenPolynomialPotential, n: usize) -> Result<f64> {
        self.validate()?;
        match self.kind {
            MeshKind::OptimalLambertW => optimal_h(p, n),
            MeshKind::TraceMinimized => trace_minimized_h(p, n, self),
            MeshKind::Fixed(h) => Ok(h),
        }
    }
}

/// `argmin_h Tr(K)(h)` inside `strategy.bracket`.
///
/// A 64-point log-spaced scan picks the best interior triple, golden-section
/// search narrows it to `strategy.tolerance`, and a final walk over
/// `h (1 +- tol)^k` makes sure neither neighbour is lower.
pub fn trace_minimized_h(p: &EvenPolynomialPotential, n: usize, strategy: &MeshStrategy) -> Result<f64> {
    if n == 0 {
        return Err(DescmError::InvalidArgument("N must be at least 1".into()));
    }
    strategy.validate()?;
    let tp = TransformedProblem::new(p.clone());
    let trace = |h: f64| trace_unchecked(&tp, n, h);
    let (low, high) = strategy.bracket;

    let grid = log_grid(low, high, SCAN_POINTS);
    let profile: Vec<(f64, f64)> = grid.iter().map(|&h| (h, trace(h))).collect();
    // first strict minimum, so ties go to the smaller h
    let best = profile
        .iter()
        .enumerate()
        .fold(0, |best, (i, &(_, t))| if t < profile[best].1 { i } else { best });
    if best == 0 || best == SCAN_POINTS - 1 {
        return Err(DescmError::NoInteriorMinimum { low, high, profile });
    }

    let h = golden_section(&trace, profile[best - 1].0, profile[best + 1].0, strategy.tolerance);
    Ok(polish(&trace, h, strategy.tolerance))
}

/// `count` points geometrically spaced from `low` to `high` inclusive.
pub fn log_grid(low: f64, high: f64, count: usize) -> Vec<f64> {
    let (ll, lh) = (low.ln(), high.ln());
    let last = (count - 1).max(1) as f64;
    (0..count)
        .map(|i| match i {
            0 => low,
            i if i == count - 1 => high,
            i => (ll + (lh - ll) * i as f64 / last).exp(),
        })
        .collect()
}

fn golden_section(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a) > tol * (c.abs() + d.abs()) {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        c
    } else {
        d
    }
}

fn polish(f: &impl Fn(f64) -> f64, mut h: f64, tol: f64) -> f64 {
    let mut fh = f(h);
    for _ in 0..POLISH_MAX_STEPS {
        let (lo, hi) = (h * (1.0 - tol), h * (1.0 + tol));
        let (flo, fhi) = (f(lo), f(hi));
        if flo < fh && flo <= fhi {
            h = lo;
            fh = flo;
        } else if fhi < fh {
            h = hi;
            fh = fhi;
        } else {
            break;
        }
    }
    h
}
