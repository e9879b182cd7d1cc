use thiserror::Error;

pub type Result<T> = std::result::Result<T, DescmError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DescmError {
    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse potential spec {spec:?}: {reason}")]
    Parse { spec: String, reason: String },

    #[error("overflow evaluating the collocation point k = {index} (x = {point})")]
    Overflow { index: i64, point: f64 },

    /// The coarse scan found its smallest trace at a bracket endpoint.
    /// `profile` holds the scanned `(h, trace)` pairs.
    #[error("no interior minimum of Tr(K)(h) in [{low}, {high}]")]
    NoInteriorMinimum {
        low: f64,
        high: f64,
        profile: Vec<(f64, f64)>,
    },

    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {diff:e}")]
    Asymmetric { row: usize, col: usize, diff: f64 },

    #[error("eigenvalue iteration did not converge for index {index}")]
    NoConvergence { index: usize },

    #[error("eigenvectors were not computed for this result")]
    MissingEigenvectors,

    #[error("level {level} out of range: only {available} eigenvalues available")]
    LevelOutOfRange { level: usize, available: usize },
}
