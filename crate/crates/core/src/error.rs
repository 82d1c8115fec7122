use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid probability {name} = {value}: {reason}")]
    InvalidProbability {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("integer overflow while counting subsequences of length {x_len} in {y_len}")]
    WeightOverflow { x_len: usize, y_len: usize },

    #[error(
        "inconsistent triple: output is not a subsequence of the input under {deletions} deletions"
    )]
    Inconsistent { deletions: usize },

    #[error("cannot parse binary sequence from {0:?}")]
    Parse(String),
}

pub(crate) fn check_prob(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(Error::InvalidProbability {
            name,
            value,
            reason: "must lie in [0, 1]",
        });
    }
    Ok(value)
}

pub(crate) fn check_open_prob(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() || value <= 0.0 || value >= 1.0 {
        return Err(Error::InvalidProbability {
            name,
            value,
            reason: "must lie in (0, 1)",
        });
    }
    Ok(value)
}

pub(crate) fn check_half_open_prob(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() || !(0.0..1.0).contains(&value) {
        return Err(Error::InvalidProbability {
            name,
            value,
            reason: "must lie in [0, 1)",
        });
    }
    Ok(value)
}
