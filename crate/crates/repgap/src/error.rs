use std::io;
use std::path::Path;

use repgap_core::asymptotics::AsymptoticsError;
use repgap_core::combinat::CombinatError;
use repgap_core::green::GreenError;
use repgap_core::monoids::MonoidError;
use repgap_core::repr::ReprError;

/// Every way a run can fail, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// Parameters are valid but the computation is out of reach or empty.
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Oracle(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    /// A malformed input file.
    #[error("{0}")]
    Format(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Infeasible(_) => 2,
            CliError::Oracle(_) => 3,
            CliError::Io { .. } | CliError::Format(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Infeasible(_) => "infeasible",
            CliError::Oracle(_) => "oracle",
            CliError::Io { .. } => "io",
            CliError::Format(_) => "format",
        }
    }

    /// The single stderr line printed before exiting.
    pub fn line(&self) -> String {
        let msg = self.to_string().replace(['\n', '\r'], " ");
        format!("repgap: error[{}]: {}", self.kind(), msg.trim())
    }

    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

impl From<MonoidError> for CliError {
    fn from(e: MonoidError) -> Self {
        match e {
            MonoidError::BudgetExceeded { .. } => CliError::Infeasible(e.to_string()),
            MonoidError::ZeroSize => CliError::Usage(e.to_string()),
            _ => CliError::Format(e.to_string()),
        }
    }
}

impl From<GreenError> for CliError {
    fn from(e: GreenError) -> Self {
        match e {
            GreenError::TooLarge { .. } => CliError::Infeasible(e.to_string()),
            GreenError::RowCount { .. } => CliError::Oracle(e.to_string()),
        }
    }
}

impl From<CombinatError> for CliError {
    fn from(e: CombinatError) -> Self {
        match e {
            CombinatError::FormMismatch { .. } | CombinatError::FormulaBruteMismatch { .. } => {
                CliError::Oracle(e.to_string())
            }
            CombinatError::Monoid(m) => m.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ReprError> for CliError {
    fn from(e: ReprError) -> Self {
        match e {
            ReprError::EmptyWindow { .. } | ReprError::NoApex { .. } => CliError::Infeasible(e.to_string()),
            ReprError::NotIdempotent(_) => CliError::Oracle(e.to_string()),
            ReprError::Combinat(c) => c.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<AsymptoticsError> for CliError {
    fn from(e: AsymptoticsError) -> Self {
        match e {
            AsymptoticsError::Repr(r) => r.into(),
            AsymptoticsError::UnknownPrefactor => CliError::Infeasible(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io {
            path: "csv output".into(),
            source: e.into(),
        }
    }
}
