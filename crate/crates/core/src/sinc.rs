//! Sinc function, shifted Sinc basis and collocation weights.

use std::f64::consts::PI;

use crate::error::{DescmError, Result};

/// `sin(pi z) / (pi z)`, with the removable singularity filled.
pub fn sinc(z: f64) -> f64 {
    let pz = PI * z;
    if z.abs() < 1e-4 {
        let p2 = pz * pz;
        1.0 - p2 / 6.0 + p2 * p2 / 120.0
    } else {
        pz.sin() / pz
    }
}

/// The shifted basis function `S(j, h)(x) = sinc((x - jh) / h)`.
pub fn sinc_basis_eval(j: i64, h: f64, x: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(DescmError::InvalidArgument(format!(
            "mesh size must be positive, got {h}"
        )));
    }
    Ok(sinc((x - j as f64 * h) / h))
}

/// `h^2 S''(j,h)(kh)` as a function of the offset `r = k - j`.
pub fn second_derivative_weight(r: i64) -> f64 {
    if r == 0 {
        -PI * PI / 3.0
    } else {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        let rf = r as f64;
        -2.0 * sign / (rf * rf)
    }
}

/// Which collocation weight array: `0` is the Kronecker delta, `2` the
/// scaled second derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightOrder {
    Zero,
    Two,
}

/// Collocation weights for offsets `-2N..=2N`, indexed by offset.
#[derive(Debug, Clone, PartialEq)]
pub struct SincWeights {
    order: WeightOrder,
    half_width: usize,
    values: Vec<f64>,
}

impl SincWeights {
    pub fn new(order: WeightOrder, half_width: usize) -> Self {
        let span = 2 * half_width as i64;
        let values = (-span..=span)
            .map(|r| match order {
                WeightOrder::Zero => {
                    if r == 0 {
                        1.0
                    } else {
                        0.0
                    }
                }
                WeightOrder::Two => second_derivative_weight(r),
            })
            .collect();
        Self {
            order,
            half_width,
            values,
        }
    }

    pub fn order(&self) -> WeightOrder {
        self.order
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// Weight at offset `k - j`. Panics when `|offset| > 2N`.
    pub fn at(&self, offset: i64) -> f64 {
        let idx = offset + 2 * self.half_width as i64;
        self.values[usize::try_from(idx).expect("offset below -2N")]
    }
}
