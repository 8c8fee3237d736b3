use std::fmt;

/// A failure classified by the exit status it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or arguments.
    Usage(String),
    /// Unreadable or ill-formed input data, or a failed query.
    Data(String),
    /// A container that cannot be parsed.
    Format(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Format(_) => 3,
        }
    }

    /// Prefixes the message with a file or record location.
    pub fn context(self, what: impl fmt::Display) -> Self {
        match self {
            CliError::Usage(m) => CliError::Usage(format!("{what}: {m}")),
            CliError::Data(m) => CliError::Data(format!("{what}: {m}")),
            CliError::Format(m) => CliError::Format(format!("{what}: {m}")),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Format(m) => f.write_str(m),
        }
    }
}

impl From<trajzip::Error> for CliError {
    fn from(e: trajzip::Error) -> Self {
        if e.is_format_error() {
            CliError::Format(e.to_string())
        } else if matches!(e, trajzip::Error::InvalidArgument(_)) {
            CliError::Usage(e.to_string())
        } else {
            CliError::Data(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
