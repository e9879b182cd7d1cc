//! The double-exponential map `x = sinh(t)` and the transformed potential of
//! the symmetrised equation `-v'' + Ṽ v = E cosh^2(t) v`.

use std::f64::consts::LN_2;

use crate::error::{DescmError, Result};
use crate::potential::EvenPolynomialPotential;

/// Past this argument the `sech^2` term is below 4e-304 and is flushed to zero.
const SECH_FLUSH: f64 = 350.0;

/// Past this argument `cosh^2(x) V(sinh x)` is summed in log space.
const LOG_SPACE_FROM: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Sinh,
}

pub fn map_value(x: f64) -> f64 {
    x.sinh()
}

pub fn map_derivative(x: f64) -> f64 {
    x.cosh()
}

/// `sech^2(x)`, flushed to zero once it is far below the smallest normal.
pub fn sech_squared(x: f64) -> f64 {
    if x.abs() > SECH_FLUSH {
        0.0
    } else {
        let s = 1.0 / x.cosh();
        s * s
    }
}

/// A potential paired with the sinh map, plus the decay constants of the
/// transformed solution, `|v(x)| <= A exp(-B exp(gamma |x|))`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedProblem {
    potential: EvenPolynomialPotential,
    map_kind: MapKind,
    decay_rate: f64,
    decay_amplitude: f64,
}

impl TransformedProblem {
    pub fn new(potential: EvenPolynomialPotential) -> Self {
        let m = potential.degree_parameter() as f64;
        let decay_rate = m + 1.0;
        let decay_amplitude = potential.leading_coefficient().sqrt() / ((m + 1.0) * 2f64.powf(m + 1.0));
        Self {
            potential,
            map_kind: MapKind::Sinh,
            decay_rate,
            decay_amplitude,
        }
    }

    pub fn potential(&self) -> &EvenPolynomialPotential {
        &self.potential
    }

    pub fn map_kind(&self) -> MapKind {
        self.map_kind
    }

    /// `gamma = m + 1`.
    pub fn decay_rate(&self) -> f64 {
        self.decay_rate
    }

    /// `B = sqrt(c_m) / ((m + 1) 2^(m + 1))`.
    pub fn decay_amplitude(&self) -> f64 {
        self.decay_amplitude
    }

    /// `Ṽ(x) = 1/4 - (3/4) sech^2(x) + cosh^2(x) V(sinh x)`.
    pub fn transformed_potential(&self, x: f64) -> f64 {
        0.25 - 0.75 * sech_squared(x) + self.weighted_potential(x)
    }

    /// `Ṽ(x) / cosh^2(x) = V(sinh x) + sech^2(x) / 4 - 3 sech^4(x) / 4`.
    ///
    /// This is the form the collocation matrix needs; it never multiplies by
    /// `cosh^2`, so it stays finite wherever `V(sinh x)` does.
    pub fn scaled_potential(&self, x: f64) -> f64 {
        let s = x.sinh();
        let sech2 = sech_squared(x);
        self.potential.evaluate_in_square(s * s) + 0.25 * sech2 - 0.75 * sech2 * sech2
    }

    fn weighted_potential(&self, x: f64) -> f64 {
        let ax = x.abs();
        if ax <= LOG_SPACE_FROM {
            let c = x.cosh();
            let s = x.sinh();
            return c * c * self.potential.evaluate_in_square(s * s);
        }
        // cosh(x) and |sinh(x)| both equal e^{|x|}/2 to 1e-17 here, so the
        // i-th term is c_i exp((2i + 2)(|x| - ln 2)). Factor out the largest.
        let base = ax - LN_2;
        let m = self.potential.degree_parameter();
        let top = (2 * m + 2) as f64 * base;
        let mut scaled = self.potential.constant() * (-2.0 * m as f64 * base).exp();
        for (i, &c) in self.potential.coefficients().iter().enumerate() {
            let power = (2 * (i + 1) + 2) as f64;
            scaled += c * ((power - (2 * m + 2) as f64) * base).exp();
        }
        if scaled <= 0.0 {
            // cannot happen for c_m > 0 this far out, kept for completeness
            return scaled * top.exp();
        }
        (top + scaled.ln()).exp()
    }
}

/// Evaluates `-sqrt(phi') d/dx( (1/phi') d/dx sqrt(phi') ) + (phi')^2 V(phi)`
/// for an arbitrary map by nested five-point central differences.
///
/// Reference implementation used to check the closed-form sinh
/// specialisation; `step` is the finite-difference step.
pub fn transformed_potential_general(
    potential: impl Fn(f64) -> f64,
    map: impl Fn(f64) -> f64,
    x: f64,
    step: f64,
) -> Result<f64> {
    if !(step > 1e-8 * x.abs().max(1.0)) || !step.is_finite() {
        return Err(DescmError::InvalidArgument(format!(
            "finite-difference step {step} underflows at x = {x}"
        )));
    }
    let d = |f: &dyn Fn(f64) -> f64, t: f64| {
        (f(t - 2.0 * step) - 8.0 * f(t - step) + 8.0 * f(t + step) - f(t + 2.0 * step)) / (12.0 * step)
    };
    let dphi = |t: f64| d(&map, t);
    let root = |t: f64| dphi(t).sqrt();
    let inner = |t: f64| d(&root, t) / dphi(t);
    let slope = dphi(x);
    if !(slope > 0.0) {
        return Err(DescmError::InvalidArgument(format!(
            "map derivative must be positive, got {slope} at x = {x}"
        )));
    }
    Ok(-slope.sqrt() * d(&inner, x) + slope * slope * potential(map(x)))
}
