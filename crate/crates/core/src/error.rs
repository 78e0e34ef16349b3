use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument that must be a positive integer was zero.
    #[error("{0} must be a positive integer")]
    NotPositive(&'static str),

    /// An argument outside the documented domain of an operation.
    #[error("invalid {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    /// A brute-force scan or literal summation was asked to exceed its guard.
    #[error("{what} = {value} exceeds the guard {limit}")]
    Guard {
        what: &'static str,
        value: String,
        limit: u64,
    },

    /// An intermediate value does not fit the machine integer it is stored in.
    #[error("overflow computing {0}")]
    Overflow(String),

    /// An exact computation produced something that must not happen
    /// (a non-integer where an integer is required, a bound violated, ...).
    #[error("internal consistency violation: {0}")]
    Inconsistent(String),

    /// The floating-point exponential sum was not within tolerance of an integer.
    #[error("exponential oracle out of tolerance: {0}")]
    Tolerance(String),

    /// `max_N |sum_{j <= N^s} c_1^(s)(j)|` grows without bound.
    #[error("maximum partial sum is unbounded for k = 1")]
    Unbounded,
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }
}
