//! Assembly of the symmetric collocation matrix
//! `K = D^-1 H D^-1` with
//! `K_jk = -delta2(k-j) / (h^2 cosh(jh) cosh(kh)) + [j = k] Ṽ(kh) / cosh^2(kh)`.

use std::f64::consts::PI;

use crate::de_map::{sech_squared, TransformedProblem};
use crate::eigensolver::DenseMatrix;
use crate::error::{DescmError, Result};
use crate::potential::EvenPolynomialPotential;
use crate::sinc::{SincWeights, WeightOrder};

/// The `(2N+1) x (2N+1)` matrix `K`. Collocation index `k` in `-N..=N` is
/// stored at row/column `k + N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationMatrix {
    half_width: usize,
    h: f64,
    matrix: DenseMatrix,
}

impl CollocationMatrix {
    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn size(&self) -> usize {
        2 * self.half_width + 1
    }

    pub fn mesh(&self) -> f64 {
        self.h
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.matrix
    }

    /// Entry at collocation indices `j, k` in `-N..=N`.
    pub fn entry(&self, j: i64, k: i64) -> f64 {
        let n = self.half_width as i64;
        assert!(j.abs() <= n && k.abs() <= n, "index outside -N..=N");
        self.matrix[((j + n) as usize, (k + n) as usize)]
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }
}

fn check_args(n: usize, h: f64) -> Result<()> {
    if n == 0 {
        return Err(DescmError::InvalidArgument("N must be at least 1".into()));
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(DescmError::InvalidArgument(format!(
            "mesh size must be positive and finite, got {h}"
        )));
    }
    Ok(())
}

/// `cosh(kh)` for every collocation point, failing on overflow.
fn collocation_cosh(n: usize, h: f64) -> Result<Vec<f64>> {
    let n = n as i64;
    (-n..=n)
        .map(|k| {
            let x = k as f64 * h;
            let c = x.cosh();
            if c.is_finite() {
                Ok(c)
            } else {
                Err(DescmError::Overflow { index: k, point: x })
            }
        })
        .collect()
}

pub fn assemble_k(p: &EvenPolynomialPotential, n: usize, h: f64) -> Result<CollocationMatrix> {
    check_args(n, h)?;
    let tp = TransformedProblem::new(p.clone());
    let cosh = collocation_cosh(n, h)?;
    let weights = SincWeights::new(WeightOrder::Two, n);
    let size = 2 * n + 1;
    let ni = n as i64;
    let inv_h2 = 1.0 / (h * h);
    let kinetic = PI * PI / 3.0 * inv_h2;

    let mut matrix = DenseMatrix::zeros(size);
    for a in 0..size {
        let k = a as i64 - ni;
        let x = k as f64 * h;
        let diag = kinetic * sech_squared(x) + tp.scaled_potential(x);
        if !diag.is_finite() {
            return Err(DescmError::Overflow { index: k, point: x });
        }
        matrix[(a, a)] = diag;
        for b in (a + 1)..size {
            let offset = (b - a) as i64;
            let value = -weights.at(offset) * inv_h2 / (cosh[a] * cosh[b]);
            matrix[(a, b)] = value;
            matrix[(b, a)] = value;
        }
    }
    Ok(CollocationMatrix {
        half_width: n,
        h,
        matrix,
    })
}

/// The unreduced pair `(H, D^2)` of `H v = E D^2 v`; `D^2` is returned as its
/// diagonal `cosh^2(kh)`.
pub fn assemble_h_d2(p: &EvenPolynomialPotential, n: usize, h: f64) -> Result<(DenseMatrix, Vec<f64>)> {
    check_args(n, h)?;
    let tp = TransformedProblem::new(p.clone());
    let cosh = collocation_cosh(n, h)?;
    let weights = SincWeights::new(WeightOrder::Two, n);
    let size = 2 * n + 1;
    let ni = n as i64;

    let mut hmat = DenseMatrix::zeros(size);
    for a in 0..size {
        let k = a as i64 - ni;
        let x = k as f64 * h;
        for b in 0..size {
            hmat[(a, b)] = -weights.at(b as i64 - a as i64) / (h * h);
        }
        let v = tp.transformed_potential(x);
        if !v.is_finite() {
            return Err(DescmError::Overflow { index: k, point: x });
        }
        hmat[(a, a)] += v;
    }
    let d2 = cosh.iter().map(|c| c * c).collect();
    Ok((hmat, d2))
}
