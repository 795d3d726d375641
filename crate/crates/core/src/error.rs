use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// A grid evaluation returned NaN or an infinity.
    #[error("non-finite function value {value} at x = {x}")]
    Domain { x: f64, value: f64 },

    /// The amplitude denominator vanished: `k` sits on a bound state or resonance pole.
    #[error("amplitude pole hit at k = {k} (|denominator| = {magnitude:e})")]
    PoleHit { k: Complex64, magnitude: f64 },

    #[error("search incomplete: found {found} of {requested} roots")]
    SearchIncomplete { found: usize, requested: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}
