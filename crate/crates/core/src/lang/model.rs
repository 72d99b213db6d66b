//! The immutable codebase model produced by the parser.

use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::ast::Stmt;
use super::diag::{Diagnostic, Pos};
use super::validate::validate_parts;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OwnerKind {
    Class,
    Trait,
}

/// Which side of a class a method lives on. `Class` models the metaclass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Instance,
    Class,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Instance => "instance",
            Side::Class => "class",
        })
    }
}

/// Method identity within one owner: `(side, name, arity)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MethodKey {
    pub side: Side,
    pub name: String,
    pub arity: usize,
}

impl MethodKey {
    pub fn new(side: Side, name: impl Into<String>, arity: usize) -> Self {
        MethodKey {
            side,
            name: name.into(),
            arity,
        }
    }
}

impl fmt::Display for MethodKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Instance => write!(f, "{}/{}", self.name, self.arity),
            Side::Class => write!(f, "class {}/{}", self.name, self.arity),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MethodDef {
    pub owner: String,
    pub owner_kind: OwnerKind,
    pub side: Side,
    pub name: String,
    pub params: Vec<String>,
    pub body: Vec<Stmt>,
    /// Normalized body token sequence; whitespace and comments removed.
    pub body_tokens: Vec<String>,
    /// The body text between the braces, verbatim.
    pub body_source: String,
    /// The whole declaration, verbatim.
    pub source_text: String,
    pub origin: String,
    pub pos: Pos,
}

impl MethodDef {
    pub fn arity(&self) -> usize {
        self.params.len()
    }

    pub fn key(&self) -> MethodKey {
        MethodKey::new(self.side, self.name.clone(), self.arity())
    }

    /// Same params and same normalized body.
    pub fn same_definition(&self, other: &MethodDef) -> bool {
        self.params == other.params && self.body_tokens == other.body_tokens
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDef {
    pub name: String,
    pub super_name: Option<String>,
    pub uses: Vec<String>,
    pub ivars: Vec<String>,
    pub cvars: Vec<String>,
    pub methods: IndexMap<MethodKey, MethodDef>,
    pub origin: String,
    pub pos: Pos,
}

impl ClassDef {
    pub fn method(&self, key: &MethodKey) -> Option<&MethodDef> {
        self.methods.get(key)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraitDef {
    pub name: String,
    pub uses: Vec<String>,
    pub methods: IndexMap<MethodKey, MethodDef>,
    pub origin: String,
    pub pos: Pos,
}

/// A parsed snapshot of MiniTalk source. Immutable once built; every
/// construction path runs validation and records its findings.
#[derive(Clone, Debug)]
pub struct Codebase {
    label: String,
    classes: IndexMap<String, ClassDef>,
    traits: IndexMap<String, TraitDef>,
    diagnostics: Vec<Diagnostic>,
}

impl Codebase {
    pub fn empty(label: impl Into<String>) -> Self {
        Codebase::from_parts(label, IndexMap::new(), IndexMap::new())
    }

    pub(crate) fn from_parts(
        label: impl Into<String>,
        classes: IndexMap<String, ClassDef>,
        traits: IndexMap<String, TraitDef>,
    ) -> Self {
        let diagnostics = validate_parts(&classes, &traits);
        Codebase {
            label: label.into(),
            classes,
            traits,
            diagnostics,
        }
    }

    pub(crate) fn into_parts(self) -> (IndexMap<String, ClassDef>, IndexMap<String, TraitDef>) {
        (self.classes, self.traits)
    }

    pub(crate) fn class_map(&self) -> &IndexMap<String, ClassDef> {
        &self.classes
    }

    pub(crate) fn trait_map(&self) -> &IndexMap<String, TraitDef> {
        &self.traits
    }

    /// The origin label this snapshot was parsed from (file name, or a
    /// `+`-joined list for merged sources).
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn classes(&self) -> impl Iterator<Item = &ClassDef> {
        self.classes.values()
    }

    pub fn traits(&self) -> impl Iterator<Item = &TraitDef> {
        self.traits.values()
    }

    pub fn class(&self, name: &str) -> Option<&ClassDef> {
        self.classes.get(name)
    }

    pub fn trait_def(&self, name: &str) -> Option<&TraitDef> {
        self.traits.get(name)
    }

    pub fn contains_name(&self, name: &str) -> bool {
        self.classes.contains_key(name) || self.traits.contains_key(name)
    }

    /// Resolved superclass of `name`, if it names a class in this codebase.
    pub fn superclass(&self, name: &str) -> Option<&ClassDef> {
        let sup = self.classes.get(name)?.super_name.as_deref()?;
        self.classes.get(sup)
    }

    /// All methods of the codebase, classes first, in declaration order.
    pub fn methods(&self) -> impl Iterator<Item = &MethodDef> {
        self.classes
            .values()
            .flat_map(|c| c.methods.values())
            .chain(self.traits.values().flat_map(|t| t.methods.values()))
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.diagnostics
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_error())
    }

    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }

    /// Model equality: equal canonical serializations.
    pub fn model_eq(&self, other: &Codebase) -> bool {
        super::canonical_json(self) == super::canonical_json(other)
    }
}
