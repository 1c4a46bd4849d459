// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warn,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Info => "info",
            Severity::Warn => "warn",
            Severity::Error => "error",
        })
    }
}

/// Where a diagnostic points. All fields are optional.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Location {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub glyph: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub glyph_id: Option<String>,
}

impl Location {
    pub fn glyph_id(id: impl Into<String>) -> Location {
        Location { glyph_id: Some(id.into()), ..Location::default() }
    }

    pub fn glyph(index: usize) -> Location {
        Location { glyph: Some(index), ..Location::default() }
    }
}

/// A stable-coded finding. Codes are listed in `docs/diagnostics.md`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: String,
    pub message: String,
    #[serde(default)]
    pub location: Location,
}

impl Diagnostic {
    pub fn new(severity: Severity, code: &str, message: impl Into<String>, location: Location) -> Diagnostic {
        Diagnostic { severity, code: code.to_string(), message: message.into(), location }
    }

    pub fn error(code: &str, message: impl Into<String>, location: Location) -> Diagnostic {
        Diagnostic::new(Severity::Error, code, message, location)
    }

    pub fn warn(code: &str, message: impl Into<String>, location: Location) -> Diagnostic {
        Diagnostic::new(Severity::Warn, code, message, location)
    }

    pub fn info(code: &str, message: impl Into<String>, location: Location) -> Diagnostic {
        Diagnostic::new(Severity::Info, code, message, location)
    }

    /// Shifts word-relative locations into a paragraph.
    pub fn at_word(mut self, line: Option<usize>, word: usize) -> Diagnostic {
        self.location.line = line;
        self.location.word = Some(word);
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]: {}", self.severity, self.code, self.message)?;
        let loc = &self.location;
        let parts: Vec<String> = [
            loc.line.map(|v| format!("line {v}")),
            loc.word.map(|v| format!("word {v}")),
            loc.glyph.map(|v| format!("glyph {v}")),
            loc.glyph_id.as_ref().map(|v| format!("glyph {v:?}")),
        ]
        .into_iter()
        .flatten()
        .collect();
        if !parts.is_empty() {
            write!(f, " ({})", parts.join(", "))?;
        }
        Ok(())
    }
}
