//! The dependency miner: walks every entity and method body of a codebase
//! and collects D(C).

use rustc_hash::FxHashMap as HashMap;
use std::sync::Arc;

use crate::lang::ast::{Expr, ExprKind, Stmt};
use crate::lang::{
    ClassDef, Codebase, DiagCode, Diagnostic, Location, MethodDef, MethodKey, OwnerKind, Pos, Side,
};

use super::entity::{Dependency, DependencySet, EntityRef, MethodRef, VarKind, VarRef};
use super::resolve::Hierarchy;
use super::DepError;

/// Result of mining one codebase.
#[derive(Clone, Debug, Default)]
pub struct Mined {
    pub dependencies: DependencySet,
    /// Warnings: trait conflicts, unresolved names and sends.
    pub diagnostics: Vec<Diagnostic>,
}

pub fn mine(codebase: &Codebase) -> Result<Mined, DepError> {
    Ok(mine_with(&Hierarchy::new(codebase)?))
}

pub fn mine_with(h: &Hierarchy<'_>) -> Mined {
    let cb = h.codebase();
    let mut out = Sink {
        edges: Vec::new(),
        diagnostics: h.conflicts().to_vec(),
        shared: HashMap::default(),
    };

    // Edges are produced in canonical order, so collecting them into the
    // set below is a single pass.
    let mut classes: Vec<&ClassDef> = cb.classes().collect();
    classes.sort_by(|a, b| a.name.cmp(&b.name));
    for c in classes {
        if let Some(sup) = cb.superclass(&c.name) {
            out.edges.push(Dependency::inheritance(&c.name, &sup.name));
        }
        let mut uses: Vec<&String> = c
            .uses
            .iter()
            .filter(|u| cb.trait_def(u).is_some())
            .collect();
        uses.sort();
        uses.dedup();
        for u in uses {
            out.edges
                .push(Dependency::trait_usage(&c.name, OwnerKind::Class, u));
        }
    }
    let mut traits: Vec<_> = cb.traits().collect();
    traits.sort_by(|a, b| a.name.cmp(&b.name));
    for t in traits {
        let mut uses: Vec<&String> = t
            .uses
            .iter()
            .filter(|u| cb.trait_def(u).is_some())
            .collect();
        uses.sort();
        uses.dedup();
        for u in uses {
            out.edges
                .push(Dependency::trait_usage(&t.name, OwnerKind::Trait, u));
        }
    }

    let mut bodies: Vec<(MethodRef, Vec<VarRef>, Vec<&MethodRef>)> = Vec::new();
    for m in cb.methods() {
        let scope = match m.owner_kind {
            OwnerKind::Class => Scope::Class(cb.class(&m.owner).expect("method owner")),
            OwnerKind::Trait => Scope::Trait(h.trait_users(&m.owner)),
        };
        let mut walker = BodyWalker {
            h,
            method: m,
            source: MethodRef::of(m),
            scope,
            vars: Vec::new(),
            sent: Vec::new(),
            resolved: HashMap::default(),
            diagnostics: Vec::new(),
        };
        for stmt in &m.body {
            walker.stmt(stmt);
        }
        let BodyWalker {
            source,
            vars,
            sent,
            diagnostics,
            ..
        } = walker;
        out.diagnostics.extend(diagnostics);
        bodies.push((source, vars, sent));
    }
    bodies.sort_by(|a, b| a.0.cmp(&b.0));
    for (source, mut vars, mut sent) in bodies {
        let source = Arc::new(EntityRef::Method(source));
        vars.sort();
        vars.dedup();
        for v in vars {
            out.edges
                .push(Dependency::shared_var_access(source.clone(), v));
        }
        sent.sort();
        sent.dedup();
        for t in sent {
            let target = out
                .shared
                .entry(t)
                .or_insert_with(|| Arc::new(EntityRef::Method(t.clone())))
                .clone();
            out.edges
                .push(Dependency::shared_message_send(source.clone(), target));
        }
    }
    Mined {
        dependencies: out.edges.into_iter().collect(),
        diagnostics: out.diagnostics,
    }
}

struct Sink<'h> {
    edges: Vec<Dependency>,
    diagnostics: Vec<Diagnostic>,
    shared: HashMap<&'h MethodRef, Arc<EntityRef>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum SendForm {
    SelfSend,
    SuperSend,
    General,
}

enum Scope<'a> {
    Class(&'a ClassDef),
    /// Classes that compose the trait; self and super resolve per class.
    Trait(&'a [&'a ClassDef]),
}

struct BodyWalker<'h, 'a> {
    h: &'h Hierarchy<'a>,
    method: &'a MethodDef,
    source: MethodRef,
    scope: Scope<'a>,
    vars: Vec<VarRef>,
    sent: Vec<&'h MethodRef>,
    /// Sends already resolved in this body, and whether they found a target.
    resolved: HashMap<(SendForm, MethodKey), bool>,
    diagnostics: Vec<Diagnostic>,
}

impl<'h, 'a> BodyWalker<'h, 'a> {
    fn warn(&mut self, code: DiagCode, pos: Pos, message: String) {
        self.diagnostics.push(Diagnostic::warning(
            code,
            message,
            Location::new(&self.method.origin, pos),
        ));
    }

    fn stmt(&mut self, stmt: &Stmt) {
        match stmt {
            Stmt::Assign { target, value, pos } => {
                self.name(target, *pos);
                self.expr(value);
            }
            Stmt::Expr(e) => self.expr(e),
        }
    }

    fn expr(&mut self, e: &Expr) {
        match &e.kind {
            ExprKind::Name(n) => self.name(n, e.pos),
            ExprKind::Paren(inner) => self.expr(inner),
            ExprKind::Send {
                receiver,
                selector,
                args,
            } => {
                self.send(receiver, selector, args.len(), e.pos);
                for a in args {
                    self.expr(a);
                }
            }
            ExprKind::SelfRef | ExprKind::SuperRef | ExprKind::Number(_) | ExprKind::Str(_) => {}
        }
    }

    fn send(&mut self, receiver: &Expr, selector: &str, arity: usize, pos: Pos) {
        let key = MethodKey::new(self.method.side, selector, arity);
        let h = self.h;
        let (form, what) = match &receiver.kind {
            ExprKind::SelfRef => (SendForm::SelfSend, "self-send"),
            ExprKind::SuperRef => (SendForm::SuperSend, "super-send"),
            _ => {
                self.expr(receiver);
                (SendForm::General, "send")
            }
        };
        let before = self.sent.len();
        let resolved = match self.resolved.get(&(form, key.clone())) {
            Some(&found) => found,
            None => {
                match (form, &self.scope) {
                    (SendForm::SelfSend, Scope::Class(c)) => {
                        self.sent.extend(h.self_send_targets(&c.name, &key))
                    }
                    (SendForm::SelfSend, Scope::Trait(users)) => {
                        for c in users.iter() {
                            self.sent.extend(h.self_send_targets(&c.name, &key));
                        }
                    }
                    (SendForm::SuperSend, Scope::Class(c)) => {
                        self.sent.extend(h.super_send_target(&c.name, &key))
                    }
                    (SendForm::SuperSend, Scope::Trait(users)) => self.sent.extend(
                        users
                            .iter()
                            .filter_map(|c| h.super_send_target(&c.name, &key)),
                    ),
                    (SendForm::General, _) => self
                        .sent
                        .extend(h.implementors(selector, arity).into_iter().flatten()),
                }
                let found = self.sent.len() > before;
                self.resolved.insert((form, key), found);
                found
            }
        };
        if !resolved {
            self.warn(
                DiagCode::UnresolvedSend,
                pos,
                format!(
                    "{what} of `{selector}/{arity}` in `{}` has no implementor",
                    self.source
                ),
            );
        }
    }

    /// Resolve a bare name: parameter, then instance variable, then class
    /// variable, up the superclass chain.
    fn name(&mut self, name: &str, pos: Pos) {
        if self.method.params.iter().any(|p| p == name) {
            return;
        }
        let cb = self.h.codebase();
        if let Scope::Class(owner) = self.scope {
            if let Some(def) = self.find_in_chain(owner, |c| c.ivars.iter().any(|v| v == name)) {
                if self.method.side == Side::Instance {
                    let var = VarRef {
                        owner: def.name.clone(),
                        name: name.to_string(),
                        kind: VarKind::Ivar,
                    };
                    self.vars.push(var);
                } else {
                    self.warn(
                        DiagCode::IvarFromClassMethod,
                        pos,
                        format!(
                            "class-side method `{}` refers to instance variable `{}.{name}`",
                            self.source, def.name
                        ),
                    );
                }
                return;
            }
            if let Some(def) = self.find_in_chain(owner, |c| c.cvars.iter().any(|v| v == name)) {
                let var = VarRef {
                    owner: def.name.clone(),
                    name: name.to_string(),
                    kind: VarKind::Cvar,
                };
                self.vars.push(var);
                return;
            }
        }
        if cb.contains_name(name) {
            return;
        }
        self.warn(
            DiagCode::UnresolvedName,
            pos,
            format!(
                "`{name}` in `{}` is not a parameter, variable, class or trait",
                self.source
            ),
        );
    }

    fn find_in_chain(
        &self,
        start: &'a ClassDef,
        pred: impl Fn(&ClassDef) -> bool,
    ) -> Option<&'a ClassDef> {
        let cb = self.h.codebase();
        let mut cur = start;
        let mut steps = 0;
        loop {
            if pred(cur) {
                return Some(cur);
            }
            steps += 1;
            if steps > cb.class_map().len() {
                return None;
            }
            cur = cb.superclass(&cur.name)?;
        }
    }
}
