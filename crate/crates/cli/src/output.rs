use std::fmt;
use std::io::Write;

use asuper_core::emit::{csv_string, json_string, write_text};
use asuper_core::Error;
use serde_json::Value;

use crate::args::{Cli, FormatArg};

/// Failure modes mapped to exit codes: verification failures exit 1,
/// everything attributable to the invocation exits 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) => CliError::Failed(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// One report in all three renderings.
pub struct Artifact {
    pub json: Value,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
    pub human: String,
    /// False when a verification did not pass.
    pub passed: bool,
}

pub enum Outcome {
    Passed,
    Failed,
}

impl Outcome {
    pub fn code(&self) -> u8 {
        match self {
            Outcome::Passed => 0,
            Outcome::Failed => 1,
        }
    }
}

pub fn emit(cli: &Cli, a: &Artifact) -> Result<Outcome, CliError> {
    let text = match cli.format {
        FormatArg::Json => json_string(&a.json),
        FormatArg::Csv => csv_string(&a.csv_header, &a.csv_rows)?,
        FormatArg::Human => a.human.clone(),
    };
    match &cli.output {
        Some(path) => write_text(path, &text)
            .map_err(|e| usage(format!("--output {}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| usage(format!("stdout: {e}")))?;
        }
    }
    Ok(if a.passed {
        Outcome::Passed
    } else {
        Outcome::Failed
    })
}
