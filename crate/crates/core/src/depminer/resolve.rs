//! Method lookup: trait flattening into effective tables, superclass walks,
//! implementor search and subclass enumeration.

use std::collections::{BTreeMap, BTreeSet};

use rustc_hash::FxHashMap as HashMap;

use crate::lang::{ClassDef, Codebase, DiagCode, Diagnostic, Location, MethodKey};

use super::entity::{EntityRef, MethodRef};
use super::DepError;

/// The methods an entity answers to directly (locally or through its trait
/// composition), keyed by selector, mapped to the providing method.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectiveTable {
    entity: EntityRef,
    entries: BTreeMap<MethodKey, MethodRef>,
}

impl EffectiveTable {
    pub fn entity(&self) -> &EntityRef {
        &self.entity
    }

    pub fn get(&self, key: &MethodKey) -> Option<&MethodRef> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MethodKey, &MethodRef)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Precomputed lookup structures for one validated codebase.
pub struct Hierarchy<'a> {
    codebase: &'a Codebase,
    class_tables: HashMap<&'a str, EffectiveTable>,
    trait_tables: HashMap<&'a str, EffectiveTable>,
    descendants: HashMap<&'a str, Vec<&'a str>>,
    trait_users: HashMap<&'a str, Vec<&'a ClassDef>>,
    implementors: HashMap<&'a str, HashMap<usize, BTreeSet<MethodRef>>>,
    conflicts: Vec<Diagnostic>,
}

impl<'a> Hierarchy<'a> {
    pub fn new(codebase: &'a Codebase) -> Result<Self, DepError> {
        if codebase.has_errors() {
            return Err(DepError::InvalidCodebase {
                label: codebase.label().to_string(),
                errors: codebase.errors().cloned().collect(),
            });
        }
        let mut h = Hierarchy {
            codebase,
            class_tables: HashMap::default(),
            trait_tables: HashMap::default(),
            descendants: HashMap::default(),
            trait_users: HashMap::default(),
            implementors: HashMap::default(),
            conflicts: Vec::new(),
        };
        for t in codebase.traits() {
            h.trait_table(&t.name);
        }
        for c in codebase.classes() {
            let table = h.flatten(
                EntityRef::Class(c.name.clone()),
                c.methods.values().map(MethodRef::of),
                &c.uses,
                Location::new(&c.origin, c.pos),
            );
            h.class_tables.insert(&c.name, table);
        }

        let mut children: HashMap<&str, Vec<&str>> = HashMap::default();
        for c in codebase.classes() {
            if let Some(sup) = codebase.superclass(&c.name) {
                children.entry(sup.name.as_str()).or_default().push(&c.name);
            }
        }
        for c in codebase.classes() {
            let mut out = Vec::new();
            let mut stack = vec![c.name.as_str()];
            while let Some(cur) = stack.pop() {
                for &child in children.get(cur).into_iter().flatten() {
                    out.push(child);
                    stack.push(child);
                }
            }
            out.sort_unstable();
            h.descendants.insert(&c.name, out);
        }

        for c in codebase.classes() {
            for t in h.trait_closure(&c.uses) {
                h.trait_users.entry(t).or_default().push(c);
            }
        }

        for m in codebase.methods() {
            h.implementors
                .entry(m.name.as_str())
                .or_default()
                .entry(m.arity())
                .or_default()
                .insert(MethodRef::of(m));
        }
        Ok(h)
    }

    pub fn codebase(&self) -> &'a Codebase {
        self.codebase
    }

    /// TraitConflict findings from flattening.
    pub fn conflicts(&self) -> &[Diagnostic] {
        &self.conflicts
    }

    fn trait_table(&mut self, name: &'a str) -> Option<&EffectiveTable> {
        if !self.trait_tables.contains_key(name) {
            let t = self.codebase.trait_def(name)?;
            let table = self.flatten(
                EntityRef::Trait(t.name.clone()),
                t.methods.values().map(MethodRef::of),
                &t.uses,
                Location::new(&t.origin, t.pos),
            );
            self.trait_tables.insert(&t.name, table);
        }
        self.trait_tables.get(name)
    }

    fn flatten(
        &mut self,
        entity: EntityRef,
        local: impl Iterator<Item = MethodRef>,
        uses: &'a [String],
        loc: Location,
    ) -> EffectiveTable {
        let mut entries: BTreeMap<MethodKey, MethodRef> = local
            .map(|r| (MethodKey::new(r.side, r.name.clone(), r.arity), r))
            .collect();
        let mut provided: BTreeMap<MethodKey, BTreeSet<MethodRef>> = BTreeMap::new();
        for used in uses {
            let Some(table) = self.trait_table(used) else {
                continue;
            };
            for (k, r) in table.iter() {
                provided.entry(k.clone()).or_default().insert(r.clone());
            }
        }
        for (key, providers) in provided {
            if entries.contains_key(&key) {
                continue;
            }
            if providers.len() == 1 {
                entries.insert(key, providers.into_iter().next().unwrap());
            } else {
                let names: Vec<String> = providers.iter().map(ToString::to_string).collect();
                self.conflicts.push(Diagnostic::warning(
                    DiagCode::TraitConflict,
                    format!(
                        "`{entity}` gets `{key}` from several traits ({}) and does not override it",
                        names.join(", ")
                    ),
                    loc.clone(),
                ));
            }
        }
        EffectiveTable { entity, entries }
    }

    /// Traits reachable through `uses`, transitively.
    fn trait_closure(&self, uses: &'a [String]) -> BTreeSet<&'a str> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<&'a str> = uses.iter().map(String::as_str).collect();
        while let Some(t) = stack.pop() {
            let Some(def) = self.codebase.trait_def(t) else {
                continue;
            };
            if seen.insert(def.name.as_str()) {
                stack.extend(def.uses.iter().map(String::as_str));
            }
        }
        seen
    }

    pub fn table(&self, entity: &EntityRef) -> Option<&EffectiveTable> {
        match entity {
            EntityRef::Class(n) => self.class_tables.get(n.as_str()),
            EntityRef::Trait(n) => self.trait_tables.get(n.as_str()),
            _ => None,
        }
    }

    pub fn class_table(&self, class: &str) -> Option<&EffectiveTable> {
        self.class_tables.get(class)
    }

    /// First hit walking `start` and then its superclasses.
    pub fn lookup(&self, start: &str, key: &MethodKey) -> Option<&MethodRef> {
        let mut cur = self.codebase.class(start)?;
        for _ in 0..=self.class_tables.len() {
            if let Some(hit) = self
                .class_tables
                .get(cur.name.as_str())
                .and_then(|t| t.get(key))
            {
                return Some(hit);
            }
            cur = self.codebase.superclass(&cur.name)?;
        }
        None
    }

    /// Transitive subclasses of `class`, sorted, excluding `class`.
    pub fn descendants(&self, class: &str) -> &[&'a str] {
        self.descendants
            .get(class)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Classes whose trait composition includes `trait_name`.
    pub fn trait_users(&self, trait_name: &str) -> &[&'a ClassDef] {
        self.trait_users
            .get(trait_name)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn implementors(&self, name: &str, arity: usize) -> Option<&BTreeSet<MethodRef>> {
        self.implementors.get(name)?.get(&arity)
    }

    /// Targets of a self-send of `key` from code running in `class`: the
    /// nearest implementor up the chain plus every override below.
    pub fn self_send_targets(&self, class: &str, key: &MethodKey) -> BTreeSet<&MethodRef> {
        let mut out = BTreeSet::new();
        if let Some(hit) = self.lookup(class, key) {
            out.insert(hit);
        }
        for d in self.descendants(class) {
            if let Some(hit) = self.class_tables.get(d).and_then(|t| t.get(key)) {
                out.insert(hit);
            }
        }
        out
    }

    /// Target of a super-send of `key` from code defined in `class`.
    pub fn super_send_target(&self, class: &str, key: &MethodKey) -> Option<&MethodRef> {
        let sup = self.codebase.superclass(class)?;
        self.lookup(&sup.name, key)
    }
}

/// Effective method table of one class or trait, with any TraitConflict
/// findings that belong to it.
pub fn effective_table(
    codebase: &Codebase,
    entity: &EntityRef,
) -> Result<(EffectiveTable, Vec<Diagnostic>), DepError> {
    let h = Hierarchy::new(codebase)?;
    let table = h
        .table(entity)
        .cloned()
        .ok_or_else(|| DepError::UnknownEntity(entity.to_string()))?;
    let label = entity.to_string();
    let diags = h
        .conflicts
        .iter()
        .filter(|d| d.message.starts_with(&format!("`{label}`")))
        .cloned()
        .collect();
    Ok((table, diags))
}

pub fn lookup(
    codebase: &Codebase,
    start: &str,
    key: &MethodKey,
) -> Result<Option<MethodRef>, DepError> {
    if codebase.class(start).is_none() {
        return Err(DepError::UnknownEntity(start.to_string()));
    }
    let h = Hierarchy::new(codebase)?;
    Ok(h.lookup(start, key).cloned())
}

/// Every method, on either side, in classes or traits, matching the
/// selector.
pub fn implementors(codebase: &Codebase, name: &str, arity: usize) -> BTreeSet<MethodRef> {
    codebase
        .methods()
        .filter(|m| m.name == name && m.arity() == arity)
        .map(MethodRef::of)
        .collect()
}

pub fn descendants(codebase: &Codebase, class: &str) -> Result<BTreeSet<String>, DepError> {
    if codebase.class(class).is_none() {
        return Err(DepError::UnknownEntity(class.to_string()));
    }
    let h = Hierarchy::new(codebase)?;
    Ok(h.descendants(class).iter().map(|s| s.to_string()).collect())
}
