use indexmap::IndexMap;

use crate::lang::{ClassDef, Codebase, MethodDef, MethodKey, TraitDef};

use super::ops::{Delta, EntityOp};

/// Entity-level difference turning `base` into `head`. Bodies that differ
/// only in whitespace or comments produce no op.
pub fn diff(base: &Codebase, head: &Codebase) -> Delta {
    let mut ops = Vec::new();

    for c in base.classes() {
        match head.class(&c.name) {
            None => {
                ops.extend(c.methods.values().map(remove_method));
                ops.push(EntityOp::RemoveClass {
                    name: c.name.clone(),
                });
            }
            Some(h) => {
                if !same_class_header(c, h) {
                    ops.push(EntityOp::ChangeClassHeader {
                        name: h.name.clone(),
                        super_name: h.super_name.clone(),
                        uses: h.uses.clone(),
                        ivars: h.ivars.clone(),
                        cvars: h.cvars.clone(),
                    });
                }
                diff_methods(&c.methods, &h.methods, &mut ops);
            }
        }
    }
    for t in base.traits() {
        match head.trait_def(&t.name) {
            None => {
                ops.extend(t.methods.values().map(remove_method));
                ops.push(EntityOp::RemoveTrait {
                    name: t.name.clone(),
                });
            }
            Some(h) => {
                if !same_list(&t.uses, &h.uses) {
                    ops.push(EntityOp::ChangeTraitHeader {
                        name: h.name.clone(),
                        uses: h.uses.clone(),
                    });
                }
                diff_methods(&t.methods, &h.methods, &mut ops);
            }
        }
    }
    for c in head.classes().filter(|c| base.class(&c.name).is_none()) {
        ops.push(add_class(c));
        ops.extend(c.methods.values().map(add_method));
    }
    for t in head.traits().filter(|t| base.trait_def(&t.name).is_none()) {
        ops.push(add_trait(t));
        ops.extend(t.methods.values().map(add_method));
    }

    Delta::canonical(ops).expect("diff targets are unique")
}

fn diff_methods(
    base: &IndexMap<MethodKey, MethodDef>,
    head: &IndexMap<MethodKey, MethodDef>,
    ops: &mut Vec<EntityOp>,
) {
    for (k, m) in base {
        match head.get(k) {
            None => ops.push(remove_method(m)),
            Some(h) if !m.same_definition(h) => ops.push(EntityOp::ModifyMethod {
                owner: h.owner.clone(),
                owner_kind: h.owner_kind,
                side: h.side,
                name: h.name.clone(),
                arity: h.arity(),
                params: h.params.clone(),
                body: h.body_source.clone(),
            }),
            Some(_) => {}
        }
    }
    for (k, m) in head {
        if !base.contains_key(k) {
            ops.push(add_method(m));
        }
    }
}

fn same_list(a: &[String], b: &[String]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

fn same_class_header(a: &ClassDef, b: &ClassDef) -> bool {
    a.super_name == b.super_name
        && same_list(&a.uses, &b.uses)
        && same_list(&a.ivars, &b.ivars)
        && same_list(&a.cvars, &b.cvars)
}

fn add_class(c: &ClassDef) -> EntityOp {
    EntityOp::AddClass {
        name: c.name.clone(),
        super_name: c.super_name.clone(),
        uses: c.uses.clone(),
        ivars: c.ivars.clone(),
        cvars: c.cvars.clone(),
    }
}

fn add_trait(t: &TraitDef) -> EntityOp {
    EntityOp::AddTrait {
        name: t.name.clone(),
        uses: t.uses.clone(),
    }
}

fn add_method(m: &MethodDef) -> EntityOp {
    EntityOp::AddMethod {
        owner: m.owner.clone(),
        owner_kind: m.owner_kind,
        side: m.side,
        name: m.name.clone(),
        arity: m.arity(),
        params: m.params.clone(),
        body: m.body_source.clone(),
    }
}

fn remove_method(m: &MethodDef) -> EntityOp {
    EntityOp::RemoveMethod {
        owner: m.owner.clone(),
        owner_kind: m.owner_kind,
        side: m.side,
        name: m.name.clone(),
        arity: m.arity(),
    }
}
