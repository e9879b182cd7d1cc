//! Energy levels of 1-D anharmonic oscillators `-psi'' + V(x) psi = E psi`
//! with even polynomial `V`, by double-exponential Sinc collocation.
//!
//! The map `x = sinh(t)` turns the single-exponential decay of bound states
//! into double-exponential decay; collocating a Sinc expansion at `t = kh`,
//! `k = -N..=N`, gives a dense symmetric `(2N+1) x (2N+1)` matrix whose
//! eigenvalues approximate the energies.
//!
//! ```
//! use descm::{DescmProblem, EvenPolynomialPotential, solve};
//!
//! let p = EvenPolynomialPotential::new(vec![1.0, 1.0]).unwrap(); // x^2 + x^4
//! let r = solve(&DescmProblem::new(p), 17).unwrap();
//! assert!((r.eigenvalues()[0] - 1.392_351_641_530_29).abs() < 1e-10);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assembly;
pub mod cli;
pub mod de_map;
pub mod eigensolver;
pub mod error;
pub mod mesh;
pub mod potential;
pub mod presets;
pub mod sinc;
pub mod solver;

pub use assembly::{assemble_h_d2, assemble_k, CollocationMatrix};
pub use de_map::TransformedProblem;
pub use eigensolver::{eigen_symmetric, DenseMatrix, EigenDecomposition};
pub use error::{DescmError, Result};
pub use mesh::{lambert_w0, optimal_h, trace_minimized_h, trace_of_k, MeshKind, MeshStrategy};
pub use potential::{analytic_catalog, parse_spec, AnalyticCase, EvenPolynomialPotential};
pub use solver::{
    converge, reconstruct_wavefunction, solve, solve_with_vectors, wavefunction, ConvergenceOptions, ConvergenceRecord,
    ConvergenceTrace, DescmProblem, SpectrumResult, Wavefunction,
};
