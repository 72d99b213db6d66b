use std::fmt;

use indexmap::IndexMap;
use serde::Serialize;

use crate::lang::{
    parse_method, ClassDef, Codebase, DiagCode, Diagnostic, Location, MethodDef, MethodKey,
    OwnerKind, Pos, TraitDef,
};

use super::diff::diff;
use super::ops::{Delta, EntityOp, DELTA_ORIGIN};
use super::InvertUndefined;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ConflictReason {
    /// Remove, modify or header change of something that is not there.
    TargetMissing,
    /// Adding a class or trait whose name is taken.
    TargetAlreadyExists,
    /// Adding a method that exists with a different definition.
    BodyMismatch,
    /// Every op applied but the result fails validation (e.g. a cycle).
    InvalidResult,
}

impl fmt::Display for ConflictReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A syntactic conflict: `op` cannot be replayed on the target codebase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApplyConflict {
    pub op: EntityOp,
    pub reason: ConflictReason,
    pub detail: String,
}

impl fmt::Display for ApplyConflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.reason, self.op, self.detail)
    }
}

/// Result of a successful apply.
#[derive(Clone, Debug)]
pub struct Applied {
    pub codebase: Codebase,
    /// Ops that were no-ops, e.g. adding a method that already exists
    /// with the same definition.
    pub warnings: Vec<Diagnostic>,
}

/// Replay `delta` onto `codebase`, all or nothing. The input is never
/// modified.
pub fn apply(delta: &Delta, codebase: &Codebase) -> Result<Applied, Vec<ApplyConflict>> {
    let label = format!("{}+delta", codebase.label());
    let (mut classes, mut traits) = codebase.clone().into_parts();
    let mut conflicts = Vec::new();
    let mut warnings = Vec::new();

    for op in delta.ops() {
        let conflict = |reason, detail: String| ApplyConflict {
            op: op.clone(),
            reason,
            detail,
        };
        let result = step(op, &mut classes, &mut traits, &mut warnings);
        if let Err((reason, detail)) = result {
            conflicts.push(conflict(reason, detail));
        }
    }
    if !conflicts.is_empty() {
        return Err(conflicts);
    }

    let result = Codebase::from_parts(label, classes, traits);
    let invalid: Vec<ApplyConflict> = result
        .errors()
        .filter(|d| {
            !codebase
                .errors()
                .any(|e| e.code == d.code && e.message == d.message)
        })
        .map(|d| ApplyConflict {
            op: blame(delta, d).clone(),
            reason: ConflictReason::InvalidResult,
            detail: d.to_string(),
        })
        .collect();
    if !invalid.is_empty() {
        return Err(invalid);
    }
    Ok(Applied {
        codebase: result,
        warnings,
    })
}

/// The op most plausibly responsible for a validation error: the first
/// one touching an entity the message names.
fn blame<'d>(delta: &'d Delta, diag: &Diagnostic) -> &'d EntityOp {
    let names: Vec<&str> = diag
        .message
        .split(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .filter(|w| !w.is_empty())
        .collect();
    delta
        .ops()
        .iter()
        .find(|op| names.contains(&op.target().entity.as_str()))
        .unwrap_or(&delta.ops()[0])
}

type Step = Result<(), (ConflictReason, String)>;

fn step(
    op: &EntityOp,
    classes: &mut IndexMap<String, ClassDef>,
    traits: &mut IndexMap<String, TraitDef>,
    warnings: &mut Vec<Diagnostic>,
) -> Step {
    use ConflictReason::*;
    use EntityOp::*;
    let taken =
        |name: &str, classes: &IndexMap<String, ClassDef>, traits: &IndexMap<String, TraitDef>| {
            if classes.contains_key(name) || traits.contains_key(name) {
                Err((TargetAlreadyExists, format!("`{name}` already exists")))
            } else {
                Ok(())
            }
        };
    match op {
        AddClass {
            name,
            super_name,
            uses,
            ivars,
            cvars,
        } => {
            taken(name, classes, traits)?;
            classes.insert(
                name.clone(),
                ClassDef {
                    name: name.clone(),
                    super_name: super_name.clone(),
                    uses: uses.clone(),
                    ivars: ivars.clone(),
                    cvars: cvars.clone(),
                    methods: IndexMap::new(),
                    origin: DELTA_ORIGIN.to_string(),
                    pos: Pos::START,
                },
            );
        }
        AddTrait { name, uses } => {
            taken(name, classes, traits)?;
            traits.insert(
                name.clone(),
                TraitDef {
                    name: name.clone(),
                    uses: uses.clone(),
                    methods: IndexMap::new(),
                    origin: DELTA_ORIGIN.to_string(),
                    pos: Pos::START,
                },
            );
        }
        RemoveClass { name } => {
            classes.shift_remove(name).ok_or_else(|| missing(name))?;
        }
        RemoveTrait { name } => {
            traits.shift_remove(name).ok_or_else(|| missing(name))?;
        }
        ChangeClassHeader {
            name,
            super_name,
            uses,
            ivars,
            cvars,
        } => {
            let c = classes.get_mut(name).ok_or_else(|| missing(name))?;
            c.super_name = super_name.clone();
            c.uses = uses.clone();
            c.ivars = ivars.clone();
            c.cvars = cvars.clone();
        }
        ChangeTraitHeader { name, uses } => {
            let t = traits.get_mut(name).ok_or_else(|| missing(name))?;
            t.uses = uses.clone();
        }
        AddMethod {
            owner,
            owner_kind,
            side,
            name,
            params,
            body,
            ..
        } => {
            let methods = methods_of(classes, traits, owner, *owner_kind)?;
            let def = build(owner, *owner_kind, op, params, body)?;
            let key = MethodKey::new(*side, name.clone(), params.len());
            match methods.get(&key) {
                Some(existing) if existing.same_definition(&def) => {
                    warnings.push(Diagnostic::warning(
                        DiagCode::RedundantAdd,
                        format!("{op}: an identical method is already present"),
                        Location::new(&existing.origin, existing.pos),
                    ));
                }
                Some(_) => {
                    return Err((
                        BodyMismatch,
                        format!("`{owner}>>{key}` exists with a different definition"),
                    ));
                }
                None => {
                    methods.insert(key, def);
                }
            }
        }
        RemoveMethod {
            owner,
            owner_kind,
            side,
            name,
            arity,
        } => {
            let methods = methods_of(classes, traits, owner, *owner_kind)?;
            let key = MethodKey::new(*side, name.clone(), *arity);
            methods
                .shift_remove(&key)
                .ok_or_else(|| missing(&format!("{owner}>>{key}")))?;
        }
        ModifyMethod {
            owner,
            owner_kind,
            side,
            name,
            params,
            body,
            ..
        } => {
            let methods = methods_of(classes, traits, owner, *owner_kind)?;
            let key = MethodKey::new(*side, name.clone(), params.len());
            let def = build(owner, *owner_kind, op, params, body)?;
            let slot = methods
                .get_mut(&key)
                .ok_or_else(|| missing(&format!("{owner}>>{key}")))?;
            *slot = def;
        }
    }
    Ok(())
}

fn missing(what: &str) -> (ConflictReason, String) {
    (
        ConflictReason::TargetMissing,
        format!("`{what}` does not exist"),
    )
}

fn methods_of<'m>(
    classes: &'m mut IndexMap<String, ClassDef>,
    traits: &'m mut IndexMap<String, TraitDef>,
    owner: &str,
    kind: OwnerKind,
) -> Result<&'m mut IndexMap<MethodKey, MethodDef>, (ConflictReason, String)> {
    match kind {
        OwnerKind::Class => classes.get_mut(owner).map(|c| &mut c.methods),
        OwnerKind::Trait => traits.get_mut(owner).map(|t| &mut t.methods),
    }
    .ok_or_else(|| missing(owner))
}

fn build(
    owner: &str,
    kind: OwnerKind,
    op: &EntityOp,
    params: &[String],
    body: &str,
) -> Result<MethodDef, (ConflictReason, String)> {
    let key = op.target().member.expect("method op");
    parse_method(owner, kind, key.side, &key.name, params, body, DELTA_ORIGIN)
        .map_err(|e| (ConflictReason::InvalidResult, e.to_string()))
}

/// The delta undoing `delta`, which must be exactly `diff(base, head)` for
/// some head reachable by applying it to `base`.
pub fn invert(delta: &Delta, base: &Codebase) -> Result<Delta, InvertUndefined> {
    if delta.is_empty() {
        return Ok(Delta::empty());
    }
    let head = apply(delta, base)
        .map_err(|c| InvertUndefined(format!("delta does not apply to base: {}", c[0])))?;
    if diff(base, &head.codebase) != *delta {
        return Err(InvertUndefined(
            "delta was not produced by diffing against this base".to_string(),
        ));
    }
    Ok(diff(&head.codebase, base))
}
