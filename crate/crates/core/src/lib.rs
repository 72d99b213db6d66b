//! Delta-impact analysis for MiniTalk codebases.
//!
//! A change Δ is authored on an origin branch and merged into a
//! destination branch. Its impact on a codebase C is the signed set of
//! dependencies that appear or disappear when Δ is applied to C. If the
//! impact on the destination differs from the impact on the origin, the
//! merge may be textually clean but semantically broken.
//!
//! ```
//! use dif::{delta::diff, impact::delta_impact, lang::parse};
//!
//! let a = parse("class Log { method log(m) { } method logAll(ms) { self.log(ms); } }", "A").unwrap();
//! let b = parse("class Log { method log(m) { } method logAll(ms) { } }", "B").unwrap();
//! let head = parse(
//!     "class Log { method log(m) { } method logAll(ms) { self.log(ms); } }
//!      class Quiet extends Log { method log(m) { } }",
//!     "A'",
//! )
//! .unwrap();
//!
//! let report = delta_impact(&diff(&a, &head), &a, &b).unwrap();
//! assert!(!report.is_clean());
//! ```
//!
//! Modules, bottom up: [`lang`] parses source into a [`lang::Codebase`],
//! [`depminer`] extracts its dependencies, [`delta`] diffs and applies
//! entity-level changes, [`impact`] computes impacts and delta-impacts.
//! [`render`] and [`cli`] are the `dif` command's output and frontend;
//! [`synth`] generates random programs.

pub mod cli;
pub mod delta;
pub mod depminer;
pub mod impact;
pub mod lang;
pub mod render;
pub mod synth;
