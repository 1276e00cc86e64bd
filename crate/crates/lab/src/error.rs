use nonarch_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// A checked bound failed.
    pub const ASSERTION: i32 = 1;
    /// Bad flags, unreadable or malformed input.
    pub const CONFIG: i32 = 2;
    /// An enumeration cap, budget or precision limit was hit.
    pub const RESOURCE: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    Config(String),
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("assertion failed: {0}")]
    Assertion(String),
}

impl LabError {
    pub fn config(msg: impl Into<String>) -> Self {
        LabError::Config(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Assertion(_) | LabError::Core(CoreError::NotCovered(_)) => exit::ASSERTION,
            LabError::Core(e) if e.is_resource() => exit::RESOURCE,
            _ => exit::CONFIG,
        }
    }
}

pub type LabResult<T> = Result<T, LabError>;
