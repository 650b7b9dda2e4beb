use gammalab_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const VERIFICATION_FAILURE: u8 = 1;
    pub const PRECISION_EXHAUSTED: u8 = 2;
    pub const IO_OR_CONFIG: u8 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => core_exit_code(e),
            _ => exit::IO_OR_CONFIG,
        }
    }
}

pub fn core_exit_code(e: &CoreError) -> u8 {
    match e {
        CoreError::PrecisionExhausted { .. } | CoreError::PrecisionInsufficient { .. } => exit::PRECISION_EXHAUSTED,
        CoreError::IdentityViolation { .. } => exit::VERIFICATION_FAILURE,
        CoreError::Domain(_) | CoreError::Budget(_) => exit::IO_OR_CONFIG,
    }
}

/// The more severe of two exit codes: configuration problems outrank exhausted
/// precision, which outranks a failed check.
pub fn worse_of(a: u8, b: u8) -> u8 {
    let rank = |c: u8| match c {
        exit::SUCCESS => 0,
        exit::VERIFICATION_FAILURE => 1,
        exit::PRECISION_EXHAUSTED => 2,
        _ => 3,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}
