use std::fmt;

use serde::Serialize;

use crate::error::Error;

/// Stable diagnostic codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Code {
    /// Unreadable token.
    E001,
    /// Malformed statement.
    E002,
    /// Unresolved name.
    E003,
    /// Degree outside `[0, 1]` or with more than three fractional digits.
    E004,
    /// Normalization violated (weights, conclusion sets, beliefs).
    E005,
    /// Cyclic dependency between attributes.
    E006,
    /// Name declared twice.
    E007,
    /// Reserved word or element used as a name.
    E008,
    /// Fact with height below 1.
    E009,
    /// Fact given for an attribute concluded by rules.
    E010,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::E001 => "E001",
            Code::E002 => "E002",
            Code::E003 => "E003",
            Code::E004 => "E004",
            Code::E005 => "E005",
            Code::E006 => "E006",
            Code::E007 => "E007",
            Code::E008 => "E008",
            Code::E009 => "E009",
            Code::E010 => "E010",
        }
    }

    pub(crate) fn of(e: &Error) -> Code {
        match e {
            Error::UnknownAttribute(_)
            | Error::UnknownDomain(_)
            | Error::UnknownTerm { .. }
            | Error::UnknownElement { .. }
            | Error::UnknownInput(_) => Code::E003,
            Error::DegreeOutOfRange(_) => Code::E004,
            Error::NotNormalized(_) | Error::WeightsNotNormalized(_) => Code::E005,
            Error::Cycle(_) => Code::E006,
            Error::Duplicate(_) | Error::DuplicateElement { .. } => Code::E007,
            Error::Reserved(_) => Code::E008,
            Error::SubnormalFact { .. } => Code::E009,
            Error::DerivedFact(_) => Code::E010,
            _ => Code::E002,
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A positioned problem in a knowledge-base or facts text. Lines and
/// columns are 1-based; columns count characters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub code: Code,
    pub message: String,
}

impl Diagnostic {
    pub fn new(line: usize, col: usize, code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            line,
            col,
            code,
            message: message.into(),
        }
    }

    /// `file:line:col: CODE message`.
    pub fn render(&self, file: &str) -> String {
        format!("{}:{}:{}: {} {}", file, self.line, self.col, self.code, self.message)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {} {}", self.line, self.col, self.code, self.message)
    }
}
