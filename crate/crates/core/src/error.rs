use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("grid of {grid} points too small for bandwidth {band}")]
    Bandwidth { grid: usize, band: usize },
    #[error("degenerate symbol: |u| = {min_abs:.3e} on the grid")]
    DegenerateSymbol { min_abs: f64 },
    #[error("function is not nonnegative (min {min:.3e})")]
    NotNonnegative { min: f64 },
    #[error("zero input")]
    ZeroInput,
    #[error("truncation residual {tail:.3e} exceeds budget {budget:.1e}")]
    Truncation { tail: f64, budget: f64 },
    #[error("truncation did not stabilize: {0}")]
    TruncationInstability(String),
    #[error("not inner (defect {0:.3e})")]
    NotInner(f64),
    #[error("not unitary-valued (defect {0:.3e})")]
    NotUnitary(f64),
    #[error("balanced completion failed: {0}")]
    CompletionFailure(String),
    #[error("ambiguous multiplicity of the top singular value: {0}")]
    AmbiguousMultiplicity(String),
    #[error("symbol is already analytic")]
    AlreadyAnalytic,
    #[error("maximizing vector nearly vanishes on the circle (ratio {0:.3e})")]
    DegenerateMaximizer(f64),
    #[error("internal consistency check '{name}' failed: defect {defect:.3e}")]
    InternalConsistency { name: String, defect: f64 },
}

impl Error {
    /// True for failures caused by floating-point limits rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Truncation { .. }
                | Error::TruncationInstability(_)
                | Error::AmbiguousMultiplicity(_)
                | Error::DegenerateMaximizer(_)
                | Error::DegenerateSymbol { .. }
                | Error::InternalConsistency { .. }
                | Error::CompletionFailure(_)
                | Error::NotInner(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
