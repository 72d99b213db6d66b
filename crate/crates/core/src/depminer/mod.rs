//! Static dependency mining: inheritance, trait usage, variable access and
//! message sends, with refined lookup for self- and super-sends.

mod entity;
mod mine;
mod resolve;

use thiserror::Error;

use crate::lang::Diagnostic;

pub use entity::{DepKind, Dependency, DependencySet, EntityRef, MethodRef, VarKind, VarRef};
pub use mine::{mine, mine_with, Mined};
pub use resolve::{descendants, effective_table, implementors, lookup, EffectiveTable, Hierarchy};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DepError {
    #[error("codebase `{label}` has {} validation error(s); first: {}", .errors.len(), .errors[0])]
    InvalidCodebase {
        label: String,
        errors: Vec<Diagnostic>,
    },
    #[error("unknown entity `{0}`")]
    UnknownEntity(String),
}

#[cfg(test)]
mod tests;
