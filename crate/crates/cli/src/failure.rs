use std::fmt;
use std::process::ExitCode;

/// An error tagged with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;

pub type CliResult<T> = Result<T, Failure>;

impl Failure {
    pub fn config(msg: impl fmt::Display) -> Self {
        Failure { code: EXIT_CONFIG, error: anyhow::anyhow!("{msg}") }
    }

    pub fn io(msg: impl fmt::Display) -> Self {
        Failure { code: EXIT_IO, error: anyhow::anyhow!("{msg}") }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

impl From<quickprune::Error> for Failure {
    fn from(e: quickprune::Error) -> Self {
        use quickprune::Error::*;
        let code = match e {
            Input(_) => EXIT_CONFIG,
            Parse { .. } | Io(_) | Serialize(_) => EXIT_IO,
            Invariant(_) => EXIT_INVARIANT,
        };
        Failure { code, error: e.into() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_IO, error: e.into() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure { code: EXIT_IO, error: e.into() }
    }
}

/// Attaches a path or step description to an error without changing its code.
pub trait Context<T> {
    fn context(self, what: impl fmt::Display) -> CliResult<T>;
}

impl<T, E: Into<Failure>> Context<T> for Result<T, E> {
    fn context(self, what: impl fmt::Display) -> CliResult<T> {
        self.map_err(|e| {
            let f: Failure = e.into();
            Failure { code: f.code, error: f.error.context(what.to_string()) }
        })
    }
}
