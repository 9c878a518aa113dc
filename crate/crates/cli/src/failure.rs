use std::fmt;

/// Failure classes and their exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Exit 2: the configuration or a flag is invalid.
    Config { key: String, msg: String },
    /// Exit 1: a checked property failed.
    Assertion(String),
    /// Exit 1: a numerical routine or the file system failed.
    Runtime(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Config { .. } => 2,
            Failure::Assertion(_) | Failure::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config { key, msg } => write!(f, "configuration error at `{key}`: {msg}"),
            Failure::Assertion(m) => write!(f, "check failed: {m}"),
            Failure::Runtime(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<nlfront_core::Error> for Failure {
    fn from(e: nlfront_core::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}
