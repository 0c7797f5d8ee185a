use std::fmt;

use thiserror::Error;

/// Validation failure codes for graph documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValidationCode {
    SelfLoop,
    DuplicateLink,
    MonitorLink,
    Disconnected,
    MonitorMissing,
}

impl ValidationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ValidationCode::SelfLoop => "SELF_LOOP",
            ValidationCode::DuplicateLink => "DUPLICATE_LINK",
            ValidationCode::MonitorLink => "MONITOR_LINK",
            ValidationCode::Disconnected => "DISCONNECTED",
            ValidationCode::MonitorMissing => "MONITOR_MISSING",
        }
    }
}

impl fmt::Display for ValidationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("validation error {code}: {message}")]
    Validation {
        code: ValidationCode,
        message: String,
    },

    #[error("network has no interior node")]
    EmptyInterior,

    #[error("graph has {0} nodes, at least 4 are required")]
    TooSmall(usize),

    #[error("path enumeration exceeded the cap of {cap} (found {partial} before stopping)")]
    CapExceeded { cap: usize, partial: usize },

    #[error("no interior path joins {first_hop} and {last_hop}")]
    InteriorDisconnected { first_hop: String, last_hop: String },

    #[error("unknown column {0}")]
    UnknownColumn(String),

    #[error("unknown link {0}")]
    UnknownLink(String),

    #[error("measurements are inconsistent with the path model: {0}")]
    InconsistentMeasurements(String),

    #[error("missing weight for link {0}")]
    MissingWeight(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("search exhausted without a certificate for link {0}")]
    SearchExhausted(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("face refinement stalled on link {0}")]
    RefinementStalled(String),

    #[error("search space exceeds the ceiling of {ceiling} ({what})")]
    SearchSpaceTooLarge { ceiling: usize, what: String },

    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn validation(code: ValidationCode, message: impl Into<String>) -> Self {
        Error::Validation {
            code,
            message: message.into(),
        }
    }

    pub fn validation_code(&self) -> Option<ValidationCode> {
        match self {
            Error::Validation { code, .. } => Some(*code),
            _ => None,
        }
    }

    /// A lemma or proposition has been falsified on a valid input.
    pub fn is_counterexample(&self) -> bool {
        matches!(
            self,
            Error::SearchExhausted(_) | Error::NotFound(_) | Error::RefinementStalled(_)
        )
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::SearchSpaceTooLarge { .. }
        )
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        if self.is_counterexample() {
            2
        } else if self.is_resource_limit() {
            3
        } else {
            1
        }
    }

    /// Stable machine-readable kind, used in error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedInput(_) => "MalformedInput",
            Error::Validation { code, .. } => code.as_str(),
            Error::EmptyInterior => "EmptyInterior",
            Error::TooSmall(_) => "TooSmall",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::InteriorDisconnected { .. } => "InteriorDisconnected",
            Error::UnknownColumn(_) => "UnknownColumn",
            Error::UnknownLink(_) => "UnknownLink",
            Error::InconsistentMeasurements(_) => "InconsistentMeasurements",
            Error::MissingWeight(_) => "MissingWeight",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::MalformedCertificate(_) => "MalformedCertificate",
            Error::SearchExhausted(_) => "SearchExhausted",
            Error::NotFound(_) => "NotFound",
            Error::RefinementStalled(_) => "RefinementStalled",
            Error::SearchSpaceTooLarge { .. } => "SearchSpaceTooLarge",
            Error::Infeasible(_) => "Infeasible",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
