//! Even polynomial potentials `V(x) = c0 + c1 x^2 + c2 x^4 + ... + cm x^(2m)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{DescmError, Result};

/// An even, confining polynomial potential.
///
/// `coefficients[i]` multiplies `x^(2(i+1))`; the leading coefficient must be
/// strictly positive so the potential is bounded below and confining.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenPolynomialPotential {
    constant: f64,
    coefficients: Vec<f64>,
}

impl EvenPolynomialPotential {
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        Self::with_constant(0.0, coefficients)
    }

    pub fn with_constant(constant: f64, coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(DescmError::InvalidPotential(
                "at least one coefficient is required".into(),
            ));
        }
        if !constant.is_finite() || coefficients.iter().any(|c| !c.is_finite()) {
            return Err(DescmError::InvalidPotential("coefficients must be finite".into()));
        }
        let leading = *coefficients.last().unwrap();
        if leading <= 0.0 {
            return Err(DescmError::InvalidPotential(format!(
                "leading coefficient must be positive, got {leading}"
            )));
        }
        Ok(Self { constant, coefficients })
    }

    /// `T_n(x) + shift` expanded in monomials.
    ///
    /// The recurrence `T_{k+1} = 2x T_k - T_{k-1}` runs on exact integers and
    /// the result is converted to floating point once.
    pub fn chebyshev_well(degree: u32, shift: f64) -> Result<Self> {
        if degree == 0 || !degree.is_multiple_of(2) {
            return Err(DescmError::InvalidPotential(format!(
                "Chebyshev degree must be even and positive, got {degree}"
            )));
        }
        let coeffs = chebyshev_monomial_coefficients(degree)?;
        let constant = coeffs[0] as f64 + shift;
        let even = coeffs.iter().skip(2).step_by(2).map(|&c| c as f64).collect::<Vec<_>>();
        Self::with_constant(constant, even)
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// Coefficients of `x^2, x^4, ..., x^(2m)`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// The degree parameter `m` (the potential has degree `2m`).
    pub fn degree_parameter(&self) -> usize {
        self.coefficients.len()
    }

    pub fn leading_coefficient(&self) -> f64 {
        *self.coefficients.last().unwrap()
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.evaluate_in_square(x * x)
    }

    /// Evaluates the potential given `x^2` directly.
    ///
    /// Horner starts from the leading coefficient, so once `x2` overflows the
    /// result saturates at `+inf` rather than producing `inf - inf`.
    pub fn evaluate_in_square(&self, x2: f64) -> f64 {
        let mut acc = self.leading_coefficient();
        for &c in self.coefficients.iter().rev().skip(1) {
            acc = acc * x2 + c;
        }
        acc * x2 + self.constant
    }

    /// Canonical `poly:` spec string for this potential.
    pub fn to_spec(&self) -> String {
        let body = self
            .coefficients
            .iter()
            .map(|c| format!("{c}"))
            .collect::<Vec<_>>()
            .join(",");
        if self.constant == 0.0 {
            format!("poly:{body}")
        } else {
            format!("poly:{body};c0={}", self.constant)
        }
    }
}

impl fmt::Display for EvenPolynomialPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_spec())
    }
}

fn chebyshev_monomial_coefficients(degree: u32) -> Result<Vec<i64>> {
    let n = degree as usize;
    let overflow = || DescmError::InvalidPotential(format!("Chebyshev degree {degree} overflows integer coefficients"));
    let mut prev = vec![0i64; n + 1];
    let mut curr = vec![0i64; n + 1];
    prev[0] = 1; // T_0
    curr[1] = 1; // T_1
    for _ in 1..n {
        let mut next = vec![0i64; n + 1];
        for p in 0..n {
            next[p + 1] = curr[p].checked_mul(2).ok_or_else(overflow)?;
        }
        for p in 0..=n {
            next[p] = next[p].checked_sub(prev[p]).ok_or_else(overflow)?;
        }
        prev = curr;
        curr = next;
    }
    Ok(curr)
}

/// A potential with a known exact eigenvalue, used for validation.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticCase {
    pub name: &'static str,
    pub potential: EvenPolynomialPotential,
    pub level: usize,
    pub exact_energy: f64,
}

/// The four supersymmetric potentials with closed-form energy levels.
pub fn analytic_catalog() -> Vec<AnalyticCase> {
    let case = |name, coeffs: Vec<f64>, level, exact_energy| AnalyticCase {
        name,
        potential: EvenPolynomialPotential::new(coeffs).expect("catalog potential is valid"),
        level,
        exact_energy,
    };
    vec![
        case("V1", vec![1.0, -4.0, 1.0], 0, -2.0),
        case("V2", vec![4.0, -6.0, 1.0], 1, -9.0),
        case("V3", vec![105.0 / 64.0, -43.0 / 8.0, 1.0, -1.0, 1.0], 0, 3.0 / 8.0),
        case("V4", vec![169.0 / 64.0, -59.0 / 8.0, 1.0, -1.0, 1.0], 1, 9.0 / 8.0),
    ]
}

/// Parses `poly:<c1>,...,<cm>[;c0=<v>]` or `cheb:<n>[;shift=<v>]`.
pub fn parse_spec(spec: &str) -> Result<EvenPolynomialPotential> {
    let err = |reason: &str| DescmError::Parse {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let trimmed = spec.trim();
    let (kind, rest) = trimmed
        .split_once(':')
        .ok_or_else(|| err("expected `poly:` or `cheb:` prefix"))?;
    let mut parts = rest.split(';');
    let body = parts.next().unwrap_or("").trim();
    if body.is_empty() {
        return Err(err("empty body"));
    }
    let mut options = Vec::new();
    for opt in parts {
        let (key, value) = opt.split_once('=').ok_or_else(|| err("options must be key=value"))?;
        let value = parse_real(value.trim()).ok_or_else(|| err("bad option value"))?;
        options.push((key.trim(), value));
    }
    let option = |name: &str| -> Result<f64> {
        let mut found = None;
        for &(key, value) in &options {
            if key != name {
                return Err(err(&format!("unknown option `{key}`")));
            }
            if found.replace(value).is_some() {
                return Err(err(&format!("option `{key}` given twice")));
            }
        }
        Ok(found.unwrap_or(0.0))
    };

    match kind.trim() {
        "poly" => {
            let coefficients = body
                .split(',')
                .map(|c| parse_real(c.trim()))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| err("bad coefficient"))?;
            let c0 = option("c0")?;
            EvenPolynomialPotential::with_constant(c0, coefficients).map_err(|e| err(&e.to_string()))
        }
        "cheb" => {
            let degree: u32 = body.parse().map_err(|_| err("bad Chebyshev degree"))?;
            let shift = option("shift")?;
            EvenPolynomialPotential::chebyshev_well(degree, shift).map_err(|e| err(&e.to_string()))
        }
        _ => Err(err("expected `poly:` or `cheb:` prefix")),
    }
}

fn parse_real(s: &str) -> Option<f64> {
    // f64::from_str accepts "inf"/"nan"; the grammar only allows decimals.
    let v: f64 = s.parse().ok()?;
    v.is_finite().then_some(v)
}

impl FromStr for EvenPolynomialPotential {
    type Err = DescmError;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}
