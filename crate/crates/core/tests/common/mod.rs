//! Brute-force oracles shared by the integration suites. They work on
//! plain strings and re-derive lookup from the parsed model, without
//! touching the resolver.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use dif::lang::ast::{Expr, ExprKind, Stmt};
use dif::lang::{ClassDef, Codebase, MethodDef, MethodKey, OwnerKind, Side, TraitDef};

pub const A: &str = include_str!("../../fixtures/A.mt");
pub const AF: &str = include_str!("../../fixtures/AF.mt");
pub const B: &str = include_str!("../../fixtures/B.mt");
pub const B_CLASH: &str = include_str!("../../fixtures/B_clash.mt");
pub const FILTERED_LOG: &str = include_str!("../../fixtures/filteredlog.mt");

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn method_name(owner: &str, side: Side, name: &str, arity: usize) -> String {
    match side {
        Side::Instance => format!("{owner}>>{name}/{arity}"),
        Side::Class => format!("{owner} class>>{name}/{arity}"),
    }
}

fn def_name(m: &MethodDef) -> String {
    method_name(&m.owner, m.side, &m.name, m.params.len())
}

fn trait_provides(cb: &Codebase, t: &TraitDef, key: &MethodKey, depth: usize) -> Option<String> {
    if let Some(m) = t.methods.get(key) {
        return Some(def_name(m));
    }
    if depth > 64 {
        return None;
    }
    unique(
        t.uses
            .iter()
            .filter_map(|u| cb.trait_def(u))
            .filter_map(|u| trait_provides(cb, u, key, depth + 1)),
    )
}

fn unique(it: impl Iterator<Item = String>) -> Option<String> {
    let all: BTreeSet<String> = it.collect();
    if all.len() == 1 {
        all.into_iter().next()
    } else {
        None
    }
}

/// What `class` itself answers for `key`: its own method, else the single
/// trait provider.
pub fn class_provides(cb: &Codebase, c: &ClassDef, key: &MethodKey) -> Option<String> {
    if let Some(m) = c.methods.get(key) {
        return Some(def_name(m));
    }
    if key.side == Side::Class {
        return None;
    }
    unique(
        c.uses
            .iter()
            .filter_map(|u| cb.trait_def(u))
            .filter_map(|t| trait_provides(cb, t, key, 0)),
    )
}

/// Superclass chain of `class`, starting with `class`.
pub fn chain<'a>(cb: &'a Codebase, class: &str) -> Vec<&'a ClassDef> {
    let mut out: Vec<&ClassDef> = vec![];
    let mut cur = cb.class(class);
    while let Some(c) = cur {
        if out.iter().any(|seen| seen.name == c.name) {
            break;
        }
        out.push(c);
        cur = c.super_name.as_deref().and_then(|s| cb.class(s));
    }
    out
}

pub fn naive_lookup(cb: &Codebase, class: &str, key: &MethodKey) -> Option<String> {
    chain(cb, class)
        .into_iter()
        .find_map(|c| class_provides(cb, c, key))
}

/// Exhaustive (class, selector) lookup table over every selector that
/// appears anywhere in the codebase.
pub struct Oracle<'a> {
    cb: &'a Codebase,
    table: BTreeMap<(String, MethodKey), Option<String>>,
}

fn sends(body: &[Stmt]) -> Vec<&Expr> {
    let mut out = vec![];
    for stmt in body {
        let root = match stmt {
            Stmt::Assign { value, .. } => value,
            Stmt::Expr(e) => e,
        };
        root.walk(&mut |e| {
            if matches!(e.kind, ExprKind::Send { .. }) {
                out.push(e);
            }
        });
    }
    out
}

impl<'a> Oracle<'a> {
    pub fn new(cb: &'a Codebase) -> Self {
        let mut keys = BTreeSet::new();
        for m in cb.methods() {
            keys.insert(m.key());
            for e in sends(&m.body) {
                if let ExprKind::Send { selector, args, .. } = &e.kind {
                    keys.insert(MethodKey::new(Side::Instance, selector.clone(), args.len()));
                    keys.insert(MethodKey::new(Side::Class, selector.clone(), args.len()));
                }
            }
        }
        let mut table = BTreeMap::new();
        for c in cb.classes() {
            for k in &keys {
                table.insert((c.name.clone(), k.clone()), naive_lookup(cb, &c.name, k));
            }
        }
        Oracle { cb, table }
    }

    fn subtree(&self, class: &str) -> Vec<String> {
        self.cb
            .classes()
            .filter(|d| chain(self.cb, &d.name).iter().any(|c| c.name == class))
            .map(|d| d.name.clone())
            .collect()
    }

    /// Nearest implementor from `class` plus overrides anywhere below it,
    /// as the union of the lookups from every class in the subtree.
    pub fn self_send(&self, class: &str, key: &MethodKey) -> BTreeSet<String> {
        self.subtree(class)
            .into_iter()
            .filter_map(|d| self.table.get(&(d, key.clone())).cloned().flatten())
            .collect()
    }

    pub fn super_send(&self, class: &str, key: &MethodKey) -> BTreeSet<String> {
        let sup = self
            .cb
            .class(class)
            .and_then(|c| c.super_name.as_deref())
            .and_then(|s| self.cb.class(s));
        sup.and_then(|s| {
            self.table
                .get(&(s.name.clone(), key.clone()))
                .cloned()
                .flatten()
        })
        .into_iter()
        .collect()
    }

    pub fn general_send(&self, name: &str, arity: usize) -> BTreeSet<String> {
        self.cb
            .methods()
            .filter(|m| m.name == name && m.params.len() == arity)
            .map(def_name)
            .collect()
    }

    fn trait_users(&self, trait_name: &str) -> Vec<String> {
        self.cb
            .classes()
            .filter(|c| {
                let mut stack: Vec<&str> = c.uses.iter().map(String::as_str).collect();
                let mut seen = BTreeSet::new();
                while let Some(t) = stack.pop() {
                    if t == trait_name {
                        return true;
                    }
                    if seen.insert(t) {
                        if let Some(def) = self.cb.trait_def(t) {
                            stack.extend(def.uses.iter().map(String::as_str));
                        }
                    }
                }
                false
            })
            .map(|c| c.name.clone())
            .collect()
    }

    /// Every message-send target of `m`, by sends in its body.
    pub fn send_targets(&self, m: &MethodDef) -> BTreeSet<String> {
        let contexts: Vec<String> = match m.owner_kind {
            OwnerKind::Class => vec![m.owner.clone()],
            OwnerKind::Trait => self.trait_users(&m.owner),
        };
        let mut out = BTreeSet::new();
        for e in sends(&m.body) {
            let ExprKind::Send {
                receiver,
                selector,
                args,
            } = &e.kind
            else {
                continue;
            };
            let key = MethodKey::new(m.side, selector.clone(), args.len());
            match receiver.kind {
                ExprKind::SelfRef => {
                    for c in &contexts {
                        out.extend(self.self_send(c, &key));
                    }
                }
                ExprKind::SuperRef => {
                    for c in &contexts {
                        out.extend(self.super_send(c, &key));
                    }
                }
                _ => out.extend(self.general_send(selector, args.len())),
            }
        }
        out
    }

    /// Self-send targets only, for sources that have no other sends.
    pub fn self_send_targets(&self, m: &MethodDef) -> BTreeSet<String> {
        let contexts: Vec<String> = match m.owner_kind {
            OwnerKind::Class => vec![m.owner.clone()],
            OwnerKind::Trait => self.trait_users(&m.owner),
        };
        let mut out = BTreeSet::new();
        for e in sends(&m.body) {
            if let ExprKind::Send {
                receiver,
                selector,
                args,
            } = &e.kind
            {
                if matches!(receiver.kind, ExprKind::SelfRef) {
                    for c in &contexts {
                        out.extend(
                            self.self_send(
                                c,
                                &MethodKey::new(m.side, selector.clone(), args.len()),
                            ),
                        );
                    }
                }
            }
        }
        out
    }
}

/// Message-send targets mined for `source`, as strings.
pub fn mined_targets(deps: &dif::depminer::DependencySet, source: &str) -> BTreeSet<String> {
    deps.iter()
        .filter(|d| {
            d.kind() == dif::depminer::DepKind::MessageSend && d.source().to_string() == source
        })
        .map(|d| d.target().to_string())
        .collect()
}

/// Sorted-Vec set arithmetic, standing in for the library's set types.
pub fn naive_minus(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.iter().filter(|x| !b.contains(x)).cloned().collect();
    out.sort();
    out.dedup();
    out
}

pub fn dep_lines(deps: &dif::depminer::DependencySet) -> Vec<String> {
    deps.iter().map(ToString::to_string).collect()
}

pub fn method_def_name(m: &MethodDef) -> String {
    def_name(m)
}
