use alloc::string::String;
use core::fmt;

/// Errors raised by statistics, policies, environments, and the runner.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A weight sequence of length zero was requested; callers always need
    /// at least one weight.
    EmptyWeightRequest,
    /// A reward was NaN or infinite and cannot enter the statistics.
    NonFiniteReward { value: f64 },
    /// A statistic or arm index was requested for an arm with no pulls.
    NoSamples,
    /// A scalar parameter fell outside its required domain. `condition`
    /// names the violated requirement.
    Domain { condition: &'static str, value: f64 },
    /// Structural configuration problem (bad horizon, unknown preset,
    /// invalid distribution parameters, ...).
    Config(String),
    /// Aggregation inputs disagree on horizon length.
    HorizonMismatch { expected: usize, found: usize },
    /// Aggregation needs at least two records to define a standard error.
    NotEnoughRuns { found: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyWeightRequest => write!(f, "requested an empty weight sequence"),
            Self::NonFiniteReward { value } => write!(f, "reward {value} is not finite"),
            Self::NoSamples => write!(f, "arm has no samples; statistic undefined"),
            Self::Domain { condition, value } => {
                write!(f, "parameter violates {condition} (got {value})")
            }
            Self::Config(msg) => write!(f, "invalid configuration: {msg}"),
            Self::HorizonMismatch { expected, found } => {
                write!(
                    f,
                    "horizon mismatch: expected {expected} rounds, found {found}"
                )
            }
            Self::NotEnoughRuns { found } => {
                write!(f, "need at least 2 runs to aggregate, found {found}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
