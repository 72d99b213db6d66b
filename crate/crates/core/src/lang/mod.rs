//! MiniTalk, the subject language: lexing, parsing, validation and the
//! codebase model.

pub mod ast;
mod diag;
mod lexer;
mod model;
mod parser;
mod serialize;
mod validate;

pub use diag::{DiagCode, Diagnostic, Location, Pos, Severity};
pub use lexer::{tokenize, Keyword, LexError, Token, TokenKind};
pub use model::{ClassDef, Codebase, MethodDef, MethodKey, OwnerKind, Side, TraitDef};
pub use parser::{merge_sources, parse, parse_method, ParseError, SourceFile};
pub use serialize::{canonical_json, canonical_value};
pub use validate::validate;

#[cfg(test)]
mod tests;
