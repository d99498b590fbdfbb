use crate::intpoly::RatPoly;

/// Library-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A zero-divisor was hit while computing in a dynamic quotient ring.
    /// The modulus splits into the two coprime factors carried here; the
    /// caller retries the computation in each branch.
    #[error("zero divisor: modulus splits into factors of degree {} and {}", left.degree().unwrap_or(0), right.degree().unwrap_or(0))]
    DynamicSplit { left: RatPoly, right: RatPoly },

    /// A decision could not be certified at the current truncation order.
    /// Internal retry signal; surfaces as `PrecisionExhausted` once the
    /// retry budget is spent.
    #[error("undecidable at truncation order: {0}")]
    Truncated(String),

    /// Raising the truncation order did not resolve an ambiguity within
    /// the retry budget (or the `TROPSEV_MAX_TRUNC` cap was hit).
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// The weight vector violates a genericity precondition of a witness
    /// construction (tied minimizers, boundary point, ...).
    #[error("non-generic weight: {0}")]
    NonGenericWeight(String),

    /// The requested cell is a pure translation of an exceptional
    /// configuration, which never admits a witness.
    #[error("cell {cell:?} is a translation of the exceptional configuration {base:?}")]
    ExceptionalTranslation { base: [usize; 4], cell: [usize; 4] },

    /// Malformed input or a violated precondition.
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
