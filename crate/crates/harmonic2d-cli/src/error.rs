use std::fmt;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_CONSISTENCY: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    pub fn consistency(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONSISTENCY,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<harmonic2d::Error> for CliError {
    fn from(e: harmonic2d::Error) -> Self {
        use harmonic2d::Error::*;
        let code = match e {
            Symmetry { .. } | NotHarmonic { .. } | UnresolvedClass { .. } => EXIT_VALIDATION,
            InvalidArity(_) | InvalidArgument(_) | NonFinite(_) => EXIT_PARSE,
            Consistency(_) => EXIT_CONSISTENCY,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::parse(e.to_string())
    }
}
