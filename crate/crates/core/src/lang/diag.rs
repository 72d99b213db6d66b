use std::fmt;

use serde::Serialize;

/// A 1-based line/column position inside one source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Pos {
    pub line: u32,
    pub column: u32,
}

impl Pos {
    pub const START: Pos = Pos { line: 1, column: 1 };

    pub fn new(line: u32, column: u32) -> Self {
        Pos { line, column }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Location {
    pub file: String,
    pub line: u32,
    pub column: u32,
}

impl Location {
    pub fn new(file: impl Into<String>, pos: Pos) -> Self {
        Location {
            file: file.into(),
            line: pos.line,
            column: pos.column,
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DiagCode {
    SyntaxError,
    DuplicateClass,
    DuplicateTrait,
    DuplicateMethod,
    DuplicateVariable,
    DuplicateParam,
    DuplicateUse,
    UnresolvedSuperclass,
    UnresolvedTrait,
    InheritanceCycle,
    TraitCycle,
    TraitConflict,
    UnresolvedName,
    UnresolvedSend,
    IvarFromClassMethod,
    RedundantAdd,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        use DiagCode::*;
        match self {
            SyntaxError => "SyntaxError",
            DuplicateClass => "DuplicateClass",
            DuplicateTrait => "DuplicateTrait",
            DuplicateMethod => "DuplicateMethod",
            DuplicateVariable => "DuplicateVariable",
            DuplicateParam => "DuplicateParam",
            DuplicateUse => "DuplicateUse",
            UnresolvedSuperclass => "UnresolvedSuperclass",
            UnresolvedTrait => "UnresolvedTrait",
            InheritanceCycle => "InheritanceCycle",
            TraitCycle => "TraitCycle",
            TraitConflict => "TraitConflict",
            UnresolvedName => "UnresolvedName",
            UnresolvedSend => "UnresolvedSend",
            IvarFromClassMethod => "IvarFromClassMethod",
            RedundantAdd => "RedundantAdd",
        }
    }
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: DiagCode,
    pub message: String,
    pub location: Location,
}

impl Diagnostic {
    pub fn error(code: DiagCode, message: impl Into<String>, location: Location) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            message: message.into(),
            location,
        }
    }

    pub fn warning(code: DiagCode, message: impl Into<String>, location: Location) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            code,
            message: message.into(),
            location,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "{}: {}[{}]: {}",
            self.location, sev, self.code, self.message
        )
    }
}
