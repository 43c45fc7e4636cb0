use std::process::ExitCode;

use raag_genus::json::InputError;
use raag_genus::{DiagramError, GraphError, HomologyError, SolverError, StarCoverError};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    InvalidInput,
    Budget,
    Internal,
}

/// The error object written on failure.
#[derive(Debug, Serialize)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
    pub location: Option<String>,
    #[serde(skip)]
    pub severity: Severity,
}

impl CliError {
    pub fn invalid(code: &'static str, message: impl Into<String>, location: Option<String>) -> Self {
        CliError { code, message: message.into(), location, severity: Severity::InvalidInput }
    }

    pub fn at(mut self, location: &str) -> Self {
        self.location.get_or_insert_with(|| location.to_string());
        self
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self.severity {
            Severity::InvalidInput => 1,
            Severity::Budget => 2,
            Severity::Internal => 3,
        })
    }

    fn budget(message: String) -> Self {
        CliError { code: "budget-exceeded", message, location: None, severity: Severity::Budget }
    }

    fn internal(message: String) -> Self {
        CliError { code: "internal", message, location: None, severity: Severity::Internal }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::SizeLimitExceeded { .. } => CliError::budget(e.to_string()),
            GraphError::UnknownEdge(..) | GraphError::DuplicateOrientation(..) | GraphError::MissingOrientation(..) => {
                CliError::invalid("invalid-orientation", e.to_string(), None)
            }
            _ => CliError::invalid("invalid-graph", e.to_string(), None),
        }
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Graph(g) => g.into(),
            _ => CliError::invalid("invalid-class", e.to_string(), None),
        }
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::OddEulerCharacteristic { .. } => CliError::internal(e.to_string()),
            _ => CliError::invalid("invalid-diagram", e.to_string(), None),
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Graph(g) => g.into(),
            InputError::Homology(h) => h.into(),
            InputError::Diagram(d) => d.into(),
        }
    }
}

impl From<StarCoverError> for CliError {
    fn from(e: StarCoverError) -> Self {
        match e {
            StarCoverError::SizeLimitExceeded { .. } => CliError::budget(e.to_string()),
            StarCoverError::ZeroClass => CliError::invalid("zero-class", e.to_string(), None),
            StarCoverError::InvalidStar(_) => CliError::internal(e.to_string()),
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        let code = match e {
            SolverError::SizeLimitExceeded { .. } => return CliError::budget(e.to_string()),
            SolverError::Internal(_) | SolverError::DependenceFailure | SolverError::SupportNotMultipartite => {
                return CliError::internal(e.to_string())
            }
            SolverError::NotComplete => "not-complete",
            SolverError::NotBipartiteCoverable => "not-bipartite-coverable",
            SolverError::RankNotTwo(_) => "rank-not-two",
            SolverError::ZeroClass => "zero-class",
        };
        CliError::invalid(code, e.to_string(), None)
    }
}
