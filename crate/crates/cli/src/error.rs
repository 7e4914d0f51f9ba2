use powseq::algebraic::AlgebraicError;
use powseq::boyd::BoydError;
use powseq::distribution::DistributionError;
use powseq::recurrence::RecurrenceError;
use powseq::synthesis::SynthesisError;
use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unparsable values.
    Usage(String),
    /// Violated preconditions and named error cases.
    Domain(String),
    /// Precision exhausted or a decision left undecided.
    Precision(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Precision(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Precision(m) => f.write_str(m),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl From<SynthesisError> for CliError {
    fn from(e: SynthesisError) -> Self {
        match e {
            SynthesisError::Invalid(_) => CliError::Domain(e.to_string()),
            _ => CliError::Precision(e.to_string()),
        }
    }
}

impl From<AlgebraicError> for CliError {
    fn from(e: AlgebraicError) -> Self {
        match e {
            AlgebraicError::PrecisionExhausted { .. } => CliError::Precision(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<BoydError> for CliError {
    fn from(e: BoydError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<DistributionError> for CliError {
    fn from(e: DistributionError) -> Self {
        match e {
            DistributionError::BoundaryUndecidable { .. } => CliError::Precision(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<RecurrenceError> for CliError {
    fn from(e: RecurrenceError) -> Self {
        match e {
            RecurrenceError::Undecidable { .. } => CliError::Precision(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}
