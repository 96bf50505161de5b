use thiserror::Error;

/// Errors raised by the approximation library.
///
/// Indices stored in variants are zero-based; the rendered messages are
/// one-based so they line up with row numbers in input files.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix data of length {len} is not square")]
    NotSquare { len: usize },

    #[error("matrix entry ({}, {}) is not finite", .row + 1, .col + 1)]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is not Hermitian: entry ({}, {}) deviates from its mirror by {deviation:e}", .row + 1, .col + 1)]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("infeasible bounds at index {}: max(x_i, l) > min(y_i, u)", .0 + 1)]
    InfeasibleBounds(usize),

    #[error("bounds at index {} leave no value outside the zero-pivot window (-epsilon, epsilon)", .0 + 1)]
    EpsilonWindowViolation(usize),

    #[error("epsilon must be positive")]
    NonPositiveEpsilon,

    #[error("pivot lower bound must be nonnegative for minimal-change pivoting, got {0}")]
    NegativePivotLowerBound(f64),

    #[error("not a permutation")]
    NotAPermutation,

    #[error("leading cubic coefficient is zero")]
    DegenerateCubic,

    #[error("pivot window is empty: max(l, epsilon, x) > min(u, y)")]
    InfeasiblePivot,

    #[error("numerical breakdown: factor entry ({}, {}) is not finite", .row + 1, .col + 1)]
    NumericalBreakdown { row: usize, col: usize },

    #[error("decomposition is singular: pivot {} is zero", .0 + 1)]
    SingularDecomposition(usize),

    #[error("error formulas need every zero pivot to be followed by zero scalings, violated at pivot {}", .0 + 1)]
    PreconditionViolated(usize),

    #[error("condition bounds need a positive pivot lower bound, got {0}")]
    NonPositiveLowerBound(f64),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid eigenvalue range [{0}, {1}]: needs lambda_min < 0 < lambda_max")]
    InvalidRange(f64, f64),
}

impl Error {
    /// True for failures of floating point computation rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NumericalBreakdown { .. }
                | Error::SingularDecomposition(_)
                | Error::NoConvergence(_)
                | Error::DegenerateCubic
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
