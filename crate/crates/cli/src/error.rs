use std::fmt;
use std::io;
use std::path::Path;

use qutrit_lindblad::evolution::EvolutionError;
use qutrit_lindblad::lindblad::GeneratorError;
use qutrit_lindblad::states::StateError;

/// Failure classes with fixed process exit codes. A failing validation
/// suite is not an error; it exits with 1 after printing its report.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input: flags, model or state specs, config files.
    Parse(String),
    /// A physical constraint was violated.
    Physics(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Parse(_) => 2,
            Self::Physics(_) => 3,
            Self::Io(_) => 4,
        }
    }

    pub fn io(path: &Path, err: io::Error) -> Self {
        Self::Io(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Parse(m) => write!(f, "parse error: {m}"),
            Self::Physics(m) => write!(f, "physics error: {m}"),
            Self::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<StateError> for CliError {
    fn from(e: StateError) -> Self {
        match e {
            StateError::Parse(_)
            | StateError::InvalidParameter(_)
            | StateError::Dimension { .. } => Self::Parse(e.to_string()),
            StateError::Io { .. } => Self::Io(e.to_string()),
            _ => Self::Physics(e.to_string()),
        }
    }
}

impl From<GeneratorError> for CliError {
    fn from(e: GeneratorError) -> Self {
        match e {
            GeneratorError::Linalg(_) | GeneratorError::Dimension { .. } => {
                Self::Physics(e.to_string())
            }
            _ => Self::Parse(e.to_string()),
        }
    }
}

impl From<EvolutionError> for CliError {
    fn from(e: EvolutionError) -> Self {
        match e {
            EvolutionError::Settings(_) | EvolutionError::InvalidParameter(_) => {
                Self::Parse(e.to_string())
            }
            EvolutionError::State(s) => s.into(),
            EvolutionError::Generator(g) => g.into(),
            _ => Self::Physics(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Io(e.to_string())
    }
}
