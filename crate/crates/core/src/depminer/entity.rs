use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::lang::{MethodDef, OwnerKind, Side};

/// A method entity, identified across snapshots by owner and selector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MethodRef {
    pub owner: String,
    pub owner_kind: OwnerKind,
    pub side: Side,
    pub name: String,
    pub arity: usize,
}

impl MethodRef {
    pub fn new(owner: &str, owner_kind: OwnerKind, side: Side, name: &str, arity: usize) -> Self {
        MethodRef {
            owner: owner.to_string(),
            owner_kind,
            side,
            name: name.to_string(),
            arity,
        }
    }

    pub fn instance(class: &str, name: &str, arity: usize) -> Self {
        MethodRef::new(class, OwnerKind::Class, Side::Instance, name, arity)
    }

    pub fn of(def: &MethodDef) -> Self {
        MethodRef::new(&def.owner, def.owner_kind, def.side, &def.name, def.arity())
    }
}

impl fmt::Display for MethodRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Instance => write!(f, "{}>>{}/{}", self.owner, self.name, self.arity),
            Side::Class => write!(f, "{} class>>{}/{}", self.owner, self.name, self.arity),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    Ivar,
    Cvar,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarRef {
    pub owner: String,
    pub name: String,
    pub kind: VarKind,
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Ivar => write!(f, "{}.{}", self.owner, self.name),
            VarKind::Cvar => write!(f, "{}.{}(class)", self.owner, self.name),
        }
    }
}

/// Any code entity a dependency can point at. Ordered by variant, then by
/// fields.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityRef {
    Class(String),
    Trait(String),
    Method(MethodRef),
    Var(VarRef),
}

impl EntityRef {
    pub fn owner(&self) -> &str {
        match self {
            EntityRef::Class(n) | EntityRef::Trait(n) => n,
            EntityRef::Method(m) => &m.owner,
            EntityRef::Var(v) => &v.owner,
        }
    }
}

impl fmt::Display for EntityRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntityRef::Class(n) | EntityRef::Trait(n) => f.write_str(n),
            EntityRef::Method(m) => m.fmt(f),
            EntityRef::Var(v) => v.fmt(f),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DepKind {
    Inheritance,
    TraitUsage,
    VariableAccess,
    MessageSend,
}

impl DepKind {
    pub const ALL: [DepKind; 4] = [
        DepKind::Inheritance,
        DepKind::TraitUsage,
        DepKind::VariableAccess,
        DepKind::MessageSend,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DepKind::Inheritance => "inheritance",
            DepKind::TraitUsage => "trait-usage",
            DepKind::VariableAccess => "var-access",
            DepKind::MessageSend => "message-send",
        }
    }

    pub fn from_str_opt(s: &str) -> Option<DepKind> {
        DepKind::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

impl fmt::Display for DepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `source -[kind]-> target`. The constructors are the only way to build
/// one, so each kind always connects the right variants. Endpoints are
/// shared, since the miner emits many edges per entity.
#[derive(Clone, Debug, Eq)]
pub struct Dependency {
    source: Arc<EntityRef>,
    kind: DepKind,
    target: Arc<EntityRef>,
}

fn cmp_shared(a: &Arc<EntityRef>, b: &Arc<EntityRef>) -> Ordering {
    if Arc::ptr_eq(a, b) {
        Ordering::Equal
    } else {
        a.cmp(b)
    }
}

impl Ord for Dependency {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_shared(&self.source, &other.source)
            .then(self.kind.cmp(&other.kind))
            .then_with(|| cmp_shared(&self.target, &other.target))
    }
}

impl PartialOrd for Dependency {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Dependency {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.source.hash(state);
        self.kind.hash(state);
        self.target.hash(state);
    }
}

impl PartialEq for Dependency {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Dependency {
    pub fn inheritance(class: &str, superclass: &str) -> Self {
        Dependency {
            source: Arc::new(EntityRef::Class(class.to_string())),
            kind: DepKind::Inheritance,
            target: Arc::new(EntityRef::Class(superclass.to_string())),
        }
    }

    pub fn trait_usage(user: &str, user_kind: OwnerKind, used: &str) -> Self {
        let source = match user_kind {
            OwnerKind::Class => EntityRef::Class(user.to_string()),
            OwnerKind::Trait => EntityRef::Trait(user.to_string()),
        };
        Dependency {
            source: Arc::new(source),
            kind: DepKind::TraitUsage,
            target: Arc::new(EntityRef::Trait(used.to_string())),
        }
    }

    pub fn var_access(method: MethodRef, var: VarRef) -> Self {
        Dependency::shared_var_access(Arc::new(EntityRef::Method(method)), var)
    }

    pub fn message_send(from: MethodRef, to: MethodRef) -> Self {
        Dependency::shared_message_send(
            Arc::new(EntityRef::Method(from)),
            Arc::new(EntityRef::Method(to)),
        )
    }

    /// `method` must be an `EntityRef::Method`.
    pub(crate) fn shared_var_access(method: Arc<EntityRef>, var: VarRef) -> Self {
        debug_assert!(matches!(*method, EntityRef::Method(_)));
        Dependency {
            source: method,
            kind: DepKind::VariableAccess,
            target: Arc::new(EntityRef::Var(var)),
        }
    }

    /// Both ends must be `EntityRef::Method`.
    pub(crate) fn shared_message_send(from: Arc<EntityRef>, to: Arc<EntityRef>) -> Self {
        debug_assert!(matches!(*from, EntityRef::Method(_)) && matches!(*to, EntityRef::Method(_)));
        Dependency {
            source: from,
            kind: DepKind::MessageSend,
            target: to,
        }
    }

    pub fn source(&self) -> &EntityRef {
        &self.source
    }

    pub fn kind(&self) -> DepKind {
        self.kind
    }

    pub fn target(&self) -> &EntityRef {
        &self.target
    }
}

impl fmt::Display for Dependency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -[{}]-> {}", self.source, self.kind, self.target)
    }
}

/// D(C): deduplicated dependencies in canonical `(source, kind, target)`
/// order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DependencySet(BTreeSet<Dependency>);

impl DependencySet {
    pub fn new() -> Self {
        DependencySet::default()
    }

    pub fn insert(&mut self, dep: Dependency) -> bool {
        self.0.insert(dep)
    }

    pub fn contains(&self, dep: &Dependency) -> bool {
        self.0.contains(dep)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Dependency> {
        self.0.iter()
    }

    /// Elements of `self` that are not in `other`, in canonical order.
    pub fn difference<'a>(
        &'a self,
        other: &'a DependencySet,
    ) -> impl Iterator<Item = &'a Dependency> {
        self.0.difference(&other.0)
    }

    pub fn as_set(&self) -> &BTreeSet<Dependency> {
        &self.0
    }
}

impl FromIterator<Dependency> for DependencySet {
    fn from_iter<I: IntoIterator<Item = Dependency>>(iter: I) -> Self {
        DependencySet(iter.into_iter().collect())
    }
}

impl IntoIterator for DependencySet {
    type Item = Dependency;
    type IntoIter = std::collections::btree_set::IntoIter<Dependency>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a DependencySet {
    type Item = &'a Dependency;
    type IntoIter = std::collections::btree_set::Iter<'a, Dependency>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
