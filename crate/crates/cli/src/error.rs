use serde_json::json;

/// Failure of a CLI run, classified by exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Config(String),
    Numeric(String),
    Regime(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Regime(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Numeric(_) => "numeric",
            CliError::Regime(_) => "regime",
            CliError::Io(_) => "io",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numeric(m) | CliError::Regime(m) | CliError::Io(m) => m,
        }
    }

    /// Machine-readable form written to stderr.
    pub fn to_json(&self) -> String {
        json!({ "error": self.kind(), "exit_code": self.exit_code(), "message": self.message() }).to_string()
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} error: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

impl From<resdyn_core::Error> for CliError {
    fn from(e: resdyn_core::Error) -> Self {
        use resdyn_core::Error as E;
        match e {
            E::InvalidParams(_) | E::UnknownRepresentation(_) => CliError::Config(e.to_string()),
            _ if e.is_regime() => CliError::Regime(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
