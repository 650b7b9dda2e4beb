use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (pole, `k > n`, `ln` of a non-positive number).
    #[error("domain error: {0}")]
    Domain(String),

    /// An identity that must hold exactly was found to fail.
    #[error("identity violated: {identity} at n = {n}")]
    IdentityViolation { identity: &'static str, n: u64 },

    /// The current working precision cannot certify the requested result.
    #[error("precision insufficient: about {extra_bits} more bits required")]
    PrecisionInsufficient { extra_bits: u64 },

    /// Automatic escalation reached the configured ceiling.
    #[error("precision exhausted: escalation reached the {max_bits}-bit ceiling")]
    PrecisionExhausted { max_bits: u32 },

    /// The requested accuracy needs more work than the configured budget allows.
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
