//! Verdicts and the machine-readable diagnostic codes attached to them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::formula::Path;

/// Stable diagnostic codes shared by the library, the CLI and the protocol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiagnosticCode {
    WrongRefCount,
    /// A reference or the conclusion lacks the connective the rule needs.
    WrongShape,
    NoMatchingPattern,
    FreshnessViolation,
    ArbitraryConstantViolation,
    /// A quantifier rule was cited where no quantifier is involved.
    NotPropositionalContext,
    CaptureError,
    OutOfScopeReference,
    ForwardReference,
    /// A cited line is itself not valid.
    ReferenceNotValid,
    MalformedStructure,
    UnclosedSubproof,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::WrongRefCount => "WrongRefCount",
            DiagnosticCode::WrongShape => "WrongShape",
            DiagnosticCode::NoMatchingPattern => "NoMatchingPattern",
            DiagnosticCode::FreshnessViolation => "FreshnessViolation",
            DiagnosticCode::ArbitraryConstantViolation => "ArbitraryConstantViolation",
            DiagnosticCode::NotPropositionalContext => "NotPropositionalContext",
            DiagnosticCode::CaptureError => "CaptureError",
            DiagnosticCode::OutOfScopeReference => "OutOfScopeReference",
            DiagnosticCode::ForwardReference => "ForwardReference",
            DiagnosticCode::ReferenceNotValid => "ReferenceNotValid",
            DiagnosticCode::MalformedStructure => "MalformedStructure",
            DiagnosticCode::UnclosedSubproof => "UnclosedSubproof",
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Valid,
    Invalid,
    Unchecked,
}

/// Result of checking one line. Invalid verdicts always carry a code and a
/// nonempty message.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub code: Option<DiagnosticCode>,
    pub message: String,
    /// Subformula of the checked statement the message points at.
    pub position: Option<Path>,
}

impl Verdict {
    pub fn valid(message: impl Into<String>) -> Self {
        Verdict {
            status: Status::Valid,
            code: None,
            message: message.into(),
            position: None,
        }
    }

    pub fn invalid(code: DiagnosticCode, message: impl Into<String>) -> Self {
        let message = message.into();
        debug_assert!(!message.is_empty());
        Verdict {
            status: Status::Invalid,
            code: Some(code),
            message,
            position: None,
        }
    }

    pub fn unchecked(message: impl Into<String>) -> Self {
        Verdict {
            status: Status::Unchecked,
            code: None,
            message: message.into(),
            position: None,
        }
    }

    pub fn at(mut self, position: Path) -> Self {
        self.position = Some(position);
        self
    }

    pub fn is_valid(&self) -> bool {
        self.status == Status::Valid
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.status, self.code) {
            (Status::Valid, _) => write!(f, "VALID"),
            (Status::Unchecked, _) => write!(f, "UNCHECKED: {}", self.message),
            (Status::Invalid, Some(code)) => write!(f, "INVALID ({code}): {}", self.message),
            (Status::Invalid, None) => write!(f, "INVALID: {}", self.message),
        }
    }
}
