//! Canonical JSON rendering of a codebase model.
//!
//! Entities sort by name, methods by `(side, name, arity)`; declaration
//! lists (`uses`, `ivars`, `cvars`) sort too, so member ordering and
//! formatting never change the output. Method bodies appear as their
//! normalized token sequence.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::model::{Codebase, MethodDef, MethodKey};

pub fn canonical_value(codebase: &Codebase) -> Value {
    let classes: BTreeMap<&str, Value> = codebase
        .classes()
        .map(|c| {
            (
                c.name.as_str(),
                entity(
                    &c.name,
                    c.super_name.as_deref(),
                    &c.uses,
                    &c.ivars,
                    &c.cvars,
                    c.methods.iter(),
                ),
            )
        })
        .collect();
    let traits: BTreeMap<&str, Value> = codebase
        .traits()
        .map(|t| {
            (
                t.name.as_str(),
                entity(&t.name, None, &t.uses, &[], &[], t.methods.iter()),
            )
        })
        .collect();
    json!({
        "classes": classes.into_values().collect::<Vec<_>>(),
        "traits": traits.into_values().collect::<Vec<_>>(),
    })
}

/// Deterministic, byte-comparable serialization: sorted keys, two-space
/// indentation, trailing newline.
pub fn canonical_json(codebase: &Codebase) -> String {
    let mut s = serde_json::to_string_pretty(&canonical_value(codebase)).expect("json value");
    s.push('\n');
    s
}

fn sorted(list: &[String]) -> Vec<&str> {
    let mut v: Vec<&str> = list.iter().map(String::as_str).collect();
    v.sort_unstable();
    v
}

fn entity<'a>(
    name: &str,
    super_name: Option<&str>,
    uses: &[String],
    ivars: &[String],
    cvars: &[String],
    methods: impl Iterator<Item = (&'a MethodKey, &'a MethodDef)>,
) -> Value {
    let methods: BTreeMap<&MethodKey, Value> = methods
        .map(|(k, m)| {
            (
                k,
                json!({
                    "side": m.side,
                    "name": m.name,
                    "arity": m.arity(),
                    "params": m.params,
                    "bodyTokens": m.body_tokens,
                }),
            )
        })
        .collect();
    json!({
        "name": name,
        "super": super_name,
        "uses": sorted(uses),
        "ivars": sorted(ivars),
        "cvars": sorted(cvars),
        "methods": methods.into_values().collect::<Vec<_>>(),
    })
}
