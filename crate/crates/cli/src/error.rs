use std::fmt;
use std::process::ExitCode;

use lemotif_core::classify::ClassifyError;
use lemotif_core::motifs::MotifError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    BadInput,
    Remote,
    ShapesMissing,
    PortBusy,
    Internal,
}

impl Kind {
    pub fn code(self) -> &'static str {
        match self {
            Kind::BadInput => "bad_input",
            Kind::Remote => "remote",
            Kind::ShapesMissing => "shapes_missing",
            Kind::PortBusy => "port_busy",
            Kind::Internal => "internal",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Kind::Internal => 1,
            Kind::BadInput => 2,
            Kind::Remote => 3,
            Kind::ShapesMissing => 4,
            Kind::PortBusy => 5,
        }
    }
}

/// A failure reported as one `error[<code>]: <message>` line.
#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: Kind, message: impl Into<String>) -> Self {
        // keep the diagnostic on one line
        let message = message.into().replace('\n', " ");
        CliError { kind, message }
    }

    pub fn bad_input(message: impl Into<String>) -> Self {
        CliError::new(Kind::BadInput, message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError::new(Kind::Internal, message)
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.kind.exit_code())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.kind.code(), self.message)
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        CliError::new(Kind::Remote, format!("classifier failed: {e}"))
    }
}

impl From<MotifError> for CliError {
    fn from(e: MotifError) -> Self {
        match e {
            MotifError::ShapeMissing(_) => CliError::new(Kind::ShapesMissing, e.to_string()),
            MotifError::DegenerateOutline => CliError::internal(e.to_string()),
            _ => CliError::bad_input(e.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
