use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::depminer::MethodRef;
use crate::lang::{parse_method, MethodKey, OwnerKind, Side};

use super::DeltaError;

/// Label used as the origin of entities created from a delta.
pub const DELTA_ORIGIN: &str = "<delta>";

/// One entity-level edit. Methods are identified by
/// `(owner, ownerKind, side, name, arity)`; entity additions carry no
/// methods.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum EntityOp {
    AddClass {
        name: String,
        #[serde(rename = "super", default)]
        super_name: Option<String>,
        uses: Vec<String>,
        ivars: Vec<String>,
        cvars: Vec<String>,
    },
    RemoveClass {
        name: String,
    },
    ChangeClassHeader {
        name: String,
        #[serde(rename = "super", default)]
        super_name: Option<String>,
        uses: Vec<String>,
        ivars: Vec<String>,
        cvars: Vec<String>,
    },
    AddTrait {
        name: String,
        uses: Vec<String>,
    },
    RemoveTrait {
        name: String,
    },
    ChangeTraitHeader {
        name: String,
        uses: Vec<String>,
    },
    AddMethod {
        owner: String,
        owner_kind: OwnerKind,
        side: Side,
        name: String,
        arity: usize,
        params: Vec<String>,
        body: String,
    },
    RemoveMethod {
        owner: String,
        owner_kind: OwnerKind,
        side: Side,
        name: String,
        arity: usize,
    },
    ModifyMethod {
        owner: String,
        owner_kind: OwnerKind,
        side: Side,
        name: String,
        arity: usize,
        params: Vec<String>,
        body: String,
    },
}

/// What an op touches: an entity, or one member of it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpTarget {
    pub entity: String,
    pub kind: OwnerKind,
    pub member: Option<MethodKey>,
}

impl EntityOp {
    pub fn target(&self) -> OpTarget {
        use EntityOp::*;
        let entity = |name: &str, kind| OpTarget {
            entity: name.to_string(),
            kind,
            member: None,
        };
        match self {
            AddClass { name, .. } | RemoveClass { name } | ChangeClassHeader { name, .. } => {
                entity(name, OwnerKind::Class)
            }
            AddTrait { name, .. } | RemoveTrait { name } | ChangeTraitHeader { name, .. } => {
                entity(name, OwnerKind::Trait)
            }
            AddMethod {
                owner,
                owner_kind,
                side,
                name,
                arity,
                ..
            }
            | RemoveMethod {
                owner,
                owner_kind,
                side,
                name,
                arity,
            }
            | ModifyMethod {
                owner,
                owner_kind,
                side,
                name,
                arity,
                ..
            } => OpTarget {
                entity: owner.clone(),
                kind: *owner_kind,
                member: Some(MethodKey::new(*side, name.clone(), *arity)),
            },
        }
    }

    /// Canonical position: method removals, entity removals, header and
    /// body changes, entity additions, method additions.
    fn group(&self) -> u8 {
        use EntityOp::*;
        match self {
            RemoveMethod { .. } => 0,
            RemoveClass { .. } | RemoveTrait { .. } => 1,
            ChangeClassHeader { .. } | ChangeTraitHeader { .. } | ModifyMethod { .. } => 2,
            AddClass { .. } | AddTrait { .. } => 3,
            AddMethod { .. } => 4,
        }
    }

    pub(crate) fn sort_key(&self) -> (u8, OpTarget) {
        (self.group(), self.target())
    }

    pub fn method_ref(&self) -> Option<MethodRef> {
        let t = self.target();
        let m = t.member?;
        Some(MethodRef::new(&t.entity, t.kind, m.side, &m.name, m.arity))
    }

    fn check(&self) -> Result<(), DeltaError> {
        use EntityOp::*;
        match self {
            AddMethod {
                owner,
                owner_kind,
                side,
                name,
                arity,
                params,
                body,
            }
            | ModifyMethod {
                owner,
                owner_kind,
                side,
                name,
                arity,
                params,
                body,
            } => {
                if params.len() != *arity {
                    return Err(DeltaError::InvalidOp(format!(
                        "{self}: arity {arity} but {} parameter(s)",
                        params.len()
                    )));
                }
                parse_method(owner, *owner_kind, *side, name, params, body, DELTA_ORIGIN)
                    .map_err(|e| DeltaError::MalformedBody(self.to_string(), e))?;
            }
            _ => {}
        }
        if let Some(m) = self.target().member {
            if self.target().kind == OwnerKind::Trait && m.side == Side::Class {
                return Err(DeltaError::InvalidOp(format!(
                    "{self}: traits have no class side"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for EntityOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use EntityOp::*;
        match self {
            AddClass {
                name, super_name, ..
            } => match super_name {
                Some(s) => write!(f, "+ class {name} extends {s}"),
                None => write!(f, "+ class {name}"),
            },
            RemoveClass { name } => write!(f, "- class {name}"),
            ChangeClassHeader { name, .. } => write!(f, "~ class {name} (header)"),
            AddTrait { name, .. } => write!(f, "+ trait {name}"),
            RemoveTrait { name } => write!(f, "- trait {name}"),
            ChangeTraitHeader { name, .. } => write!(f, "~ trait {name} (uses)"),
            AddMethod { .. } => write!(f, "+ method {}", self.method_ref().unwrap()),
            RemoveMethod { .. } => write!(f, "- method {}", self.method_ref().unwrap()),
            ModifyMethod { .. } => write!(f, "~ method {}", self.method_ref().unwrap()),
        }
    }
}

/// An ordered, canonical list of entity ops.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDelta")]
pub struct Delta {
    ops: Vec<EntityOp>,
}

#[derive(Deserialize)]
struct RawDelta {
    ops: Vec<EntityOp>,
}

impl TryFrom<RawDelta> for Delta {
    type Error = DeltaError;

    fn try_from(raw: RawDelta) -> Result<Self, Self::Error> {
        Delta::from_ops(raw.ops)
    }
}

impl Delta {
    pub fn empty() -> Self {
        Delta::default()
    }

    /// Validate and canonically order a list of ops.
    pub fn from_ops(ops: Vec<EntityOp>) -> Result<Delta, DeltaError> {
        for op in &ops {
            op.check()?;
        }
        Self::canonical(ops)
    }

    /// Ordering and uniqueness only; bodies are trusted.
    pub(crate) fn canonical(mut ops: Vec<EntityOp>) -> Result<Delta, DeltaError> {
        ops.sort_by_cached_key(EntityOp::sort_key);
        let mut seen = HashSet::new();
        for op in &ops {
            if !seen.insert(op.target()) {
                return Err(DeltaError::DuplicateTarget(op.to_string()));
            }
        }
        Ok(Delta { ops })
    }

    pub fn ops(&self) -> &[EntityOp] {
        &self.ops
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    /// `{"ops": [...]}` with sorted keys and two-space indentation.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("delta serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("json value");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Delta, DeltaError> {
        serde_json::from_str(text).map_err(|e| DeltaError::Json(e.to_string()))
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}
