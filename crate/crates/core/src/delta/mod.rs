//! Entity-level deltas: derive one from two snapshots, replay it onto a
//! third.

mod apply;
mod diff;
mod ops;

use thiserror::Error;

use crate::lang::ParseError;

pub use apply::{apply, invert, Applied, ApplyConflict, ConflictReason};
pub use diff::diff;
pub use ops::{Delta, EntityOp, OpTarget, DELTA_ORIGIN};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DeltaError {
    #[error("two ops target the same entity or member: {0}")]
    DuplicateTarget(String),
    #[error("invalid op {0}")]
    InvalidOp(String),
    #[error("op {0} has a malformed body: {1}")]
    MalformedBody(String, ParseError),
    #[error("malformed delta document: {0}")]
    Json(String),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("cannot invert: {0}")]
pub struct InvertUndefined(pub String);
