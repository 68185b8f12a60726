use std::fmt;

use suspla::bialgebra::BialgebraError;
use suspla::dyer_lashof::DlError;
use suspla::enveloping::EnvelopeError;
use suspla::linalg::LinalgError;
use suspla::milnor_moore::MilnorMooreError;
use suspla::monoid::MonoidError;
use suspla::suspensive::SuspensiveError;

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Indeterminate = 2,
    Schema = 3,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Indeterminate => "indeterminate",
            Status::Schema => "schema error",
        }
    }
}

/// A run that stopped before producing a report.
#[derive(Debug)]
pub struct CliError {
    pub status: Status,
    pub message: String,
    pub witness: Option<String>,
}

impl CliError {
    pub fn schema(message: impl Into<String>) -> Self {
        CliError {
            status: Status::Schema,
            message: message.into(),
            witness: None,
        }
    }

    fn new(status: Status, e: &impl fmt::Display) -> Self {
        CliError {
            status,
            message: e.to_string(),
            witness: None,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.status.label(), self.message)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new(Status::Schema, &e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::new(Status::Schema, &e)
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::new(Status::Schema, &e)
    }
}

impl From<MonoidError> for CliError {
    fn from(e: MonoidError) -> Self {
        CliError::new(Status::Schema, &e)
    }
}

impl From<SuspensiveError> for CliError {
    fn from(e: SuspensiveError) -> Self {
        let status = match e {
            SuspensiveError::Overflow { .. } | SuspensiveError::WindowTooSmall(_) => Status::Indeterminate,
            SuspensiveError::Schema(_) | SuspensiveError::Linalg(_) | SuspensiveError::Monoid(_) => Status::Schema,
        };
        CliError::new(status, &e)
    }
}

impl From<BialgebraError> for CliError {
    fn from(e: BialgebraError) -> Self {
        match e {
            BialgebraError::Suspensive(inner) => inner.into(),
            BialgebraError::Overflow(_) | BialgebraError::WindowTooSmall(_) => CliError::new(Status::Indeterminate, &e),
            BialgebraError::NotClosedUnderBracket(_) => CliError::new(Status::Fail, &e),
            BialgebraError::Schema(_) | BialgebraError::NotRigid | BialgebraError::Linalg(_) | BialgebraError::Monoid(_) => {
                CliError::new(Status::Schema, &e)
            }
        }
    }
}

impl From<EnvelopeError> for CliError {
    fn from(e: EnvelopeError) -> Self {
        match e {
            EnvelopeError::Suspensive(inner) => inner.into(),
            EnvelopeError::Bialgebra(inner) => inner.into(),
            EnvelopeError::Inconsistent(_) => CliError::new(Status::Fail, &e),
            EnvelopeError::WindowTooSmall(_) | EnvelopeError::Overflow(_) => CliError::new(Status::Indeterminate, &e),
            EnvelopeError::CapRequired | EnvelopeError::CapTooSmall(_) => CliError::new(Status::Indeterminate, &e),
            EnvelopeError::Linalg(_) => CliError::new(Status::Schema, &e),
        }
    }
}

impl From<MilnorMooreError> for CliError {
    fn from(e: MilnorMooreError) -> Self {
        match e {
            MilnorMooreError::Envelope(inner) => inner.into(),
            MilnorMooreError::Bialgebra(inner) => inner.into(),
            MilnorMooreError::Suspensive(inner) => inner.into(),
            MilnorMooreError::Linalg(inner) => inner.into(),
            MilnorMooreError::Undecided(_) => CliError::new(Status::Indeterminate, &e),
            MilnorMooreError::NotTorsionFree { ref witness } | MilnorMooreError::NonTorsionInput { ref witness } => CliError {
                witness: Some(witness.clone()),
                ..CliError::new(Status::Fail, &e)
            },
            MilnorMooreError::NonCharZero
            | MilnorMooreError::NonLinearMonoid
            | MilnorMooreError::NotGpg
            | MilnorMooreError::Mismatch(_) => CliError::new(Status::Fail, &e),
        }
    }
}

impl From<DlError> for CliError {
    fn from(e: DlError) -> Self {
        let status = match e {
            DlError::StepCeiling(_) | DlError::CapExceeded { .. } => Status::Indeterminate,
            _ => Status::Schema,
        };
        CliError::new(status, &e)
    }
}
