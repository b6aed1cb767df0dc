use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("presentation error: {0}")]
    Presentation(String),

    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch {
        left: &'static str,
        right: &'static str,
    },

    #[error("q-ideal identity violated: residual {0}")]
    QIdentityViolated(String),

    #[error("spanning-form failure: q-degree {degree} exceeds bound {bound}")]
    SpanningForm { degree: usize, bound: usize },

    #[error("window underflow: polynomial degree {degree} needs a larger window than {window}")]
    WindowUnderflow { degree: usize, window: String },

    #[error(
        "window too small: tail estimate {tail:e} exceeds tolerance {tolerance:e}; try {suggested}"
    )]
    WindowTooSmall {
        tail: f64,
        tolerance: f64,
        suggested: String,
    },

    #[error("non-convergent: successive differences {prev:e} -> {last:e} do not halve")]
    NonConvergent { prev: f64, last: f64 },

    #[error(
        "no spectral gap: largest kernel singular value {below:e}, smallest retained {above:e}"
    )]
    NoSpectralGap { below: f64, above: f64 },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} lies outside the truncation window {window}")]
    OutsideWindow { index: String, window: String },
}

pub type Result<T> = std::result::Result<T, Error>;
