//! Deterministic exports of a reduced instance.

use std::str::FromStr;

use crate::error::Error;
use crate::reduction::ReducedInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    /// The graph document (`{version, vertices, edges}`).
    Json,
    Dot,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ExportFormat::Json),
            "dot" => Ok(ExportFormat::Dot),
            other => Err(Error::Parse(format!("unknown export format {other:?} (json or dot)"))),
        }
    }
}

pub fn export(reduced: &ReducedInstance, format: ExportFormat) -> String {
    match format {
        ExportFormat::Json => reduced.to_document().to_json(),
        ExportFormat::Dot => reduced.to_dot(),
    }
}
