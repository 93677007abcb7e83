use thiserror::Error;

/// Errors raised by mesh construction, projection and time stepping.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum EldgError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A traced space-time element collapsed or flipped orientation.
    #[error("inverted element at cell {cell}: traced interval [{lo}, {hi}] has non-positive width")]
    InvertedElement { cell: usize, lo: f64, hi: f64 },

    #[error("point {x} outside element interval [{lo}, {hi}] at t = {t}")]
    OutOfRange { x: f64, t: f64, lo: f64, hi: f64 },

    #[error("singular characteristic decomposition at x = {x}")]
    SingularDecomposition { x: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl EldgError {
    /// True for failures that come from the solver itself rather than from a bad configuration.
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            EldgError::InvertedElement { .. } | EldgError::SingularDecomposition { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, EldgError>;
