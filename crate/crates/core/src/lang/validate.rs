//! Whole-codebase structural checks: name resolution and cycles.

use std::collections::{BTreeSet, HashMap};

use indexmap::IndexMap;

use super::diag::{DiagCode, Diagnostic, Location};
use super::model::{ClassDef, Codebase, TraitDef};

/// Re-run validation on a codebase. Unresolved names are warnings (the
/// entity is treated as an external root); cycles are errors.
pub fn validate(codebase: &Codebase) -> Vec<Diagnostic> {
    validate_parts(codebase.class_map(), codebase.trait_map())
}

pub(crate) fn validate_parts(
    classes: &IndexMap<String, ClassDef>,
    traits: &IndexMap<String, TraitDef>,
) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for c in classes.values() {
        if let Some(sup) = &c.super_name {
            if !classes.contains_key(sup) {
                let what = if traits.contains_key(sup) {
                    "is a trait, not a class"
                } else {
                    "is not defined"
                };
                out.push(Diagnostic::warning(
                    DiagCode::UnresolvedSuperclass,
                    format!(
                        "superclass `{sup}` of `{}` {what}; treating `{}` as a root",
                        c.name, c.name
                    ),
                    Location::new(&c.origin, c.pos),
                ));
            }
        }
        unresolved_uses(
            &c.name,
            &c.uses,
            Location::new(&c.origin, c.pos),
            traits,
            &mut out,
        );
    }
    for t in traits.values() {
        unresolved_uses(
            &t.name,
            &t.uses,
            Location::new(&t.origin, t.pos),
            traits,
            &mut out,
        );
    }
    inheritance_cycles(classes, &mut out);
    trait_cycles(traits, &mut out);
    out
}

fn unresolved_uses(
    user: &str,
    uses: &[String],
    loc: Location,
    traits: &IndexMap<String, TraitDef>,
    out: &mut Vec<Diagnostic>,
) {
    for u in uses {
        if !traits.contains_key(u) {
            out.push(Diagnostic::warning(
                DiagCode::UnresolvedTrait,
                format!("`{user}` uses `{u}`, which is not a trait in this codebase"),
                loc.clone(),
            ));
        }
    }
}

fn inheritance_cycles(classes: &IndexMap<String, ClassDef>, out: &mut Vec<Diagnostic>) {
    #[derive(Clone, Copy, PartialEq)]
    enum State {
        OnPath,
        Done,
    }
    let mut state: HashMap<&str, State> = HashMap::new();
    for start in classes.values() {
        if state.contains_key(start.name.as_str()) {
            continue;
        }
        let mut path: Vec<&ClassDef> = Vec::new();
        let mut cur = Some(start);
        while let Some(c) = cur {
            match state.get(c.name.as_str()) {
                Some(State::OnPath) => {
                    let at = path.iter().position(|p| p.name == c.name).unwrap_or(0);
                    let members: Vec<&str> = path[at..].iter().map(|p| p.name.as_str()).collect();
                    let head = path[at];
                    out.push(Diagnostic::error(
                        DiagCode::InheritanceCycle,
                        format!(
                            "inheritance cycle: {} -> {}",
                            members.join(" -> "),
                            members[0]
                        ),
                        Location::new(&head.origin, head.pos),
                    ));
                    break;
                }
                Some(State::Done) => break,
                None => {
                    state.insert(&c.name, State::OnPath);
                    path.push(c);
                    cur = c.super_name.as_deref().and_then(|s| classes.get(s));
                }
            }
        }
        for p in path {
            state.insert(&p.name, State::Done);
        }
    }
}

fn trait_cycles(traits: &IndexMap<String, TraitDef>, out: &mut Vec<Diagnostic>) {
    fn visit<'a>(
        t: &'a TraitDef,
        traits: &'a IndexMap<String, TraitDef>,
        color: &mut HashMap<&'a str, bool>,
        stack: &mut Vec<&'a TraitDef>,
        found: &mut Vec<Vec<&'a TraitDef>>,
    ) {
        color.insert(&t.name, false);
        stack.push(t);
        for u in &t.uses {
            let Some(next) = traits.get(u) else { continue };
            match color.get(next.name.as_str()) {
                None => visit(next, traits, color, stack, found),
                Some(false) => {
                    let at = stack.iter().position(|s| s.name == next.name).unwrap_or(0);
                    found.push(stack[at..].to_vec());
                }
                Some(true) => {}
            }
        }
        stack.pop();
        color.insert(&t.name, true);
    }

    let mut color = HashMap::new();
    let mut found = Vec::new();
    for t in traits.values() {
        if !color.contains_key(t.name.as_str()) {
            visit(t, traits, &mut color, &mut Vec::new(), &mut found);
        }
    }
    let mut reported: BTreeSet<BTreeSet<&str>> = BTreeSet::new();
    for cycle in found {
        let key: BTreeSet<&str> = cycle.iter().map(|t| t.name.as_str()).collect();
        if !reported.insert(key) {
            continue;
        }
        let names: Vec<&str> = cycle.iter().map(|t| t.name.as_str()).collect();
        out.push(Diagnostic::error(
            DiagCode::TraitCycle,
            format!("trait usage cycle: {} -> {}", names.join(" -> "), names[0]),
            Location::new(&cycle[0].origin, cycle[0].pos),
        ));
    }
}

#[cfg(test)]
mod tests {
    use crate::lang::{parse, DiagCode, Severity};

    fn codes(src: &str) -> Vec<(Severity, DiagCode)> {
        parse(src, "t.mt")
            .unwrap()
            .diagnostics()
            .iter()
            .map(|d| (d.severity, d.code))
            .collect()
    }

    #[test]
    fn two_cycle_is_an_error() {
        assert_eq!(
            codes("class A extends B {} class B extends A {}"),
            vec![(Severity::Error, DiagCode::InheritanceCycle)]
        );
    }

    #[test]
    fn self_extension_is_a_cycle() {
        assert_eq!(
            codes("class A extends A {}"),
            vec![(Severity::Error, DiagCode::InheritanceCycle)]
        );
    }

    #[test]
    fn missing_superclass_is_a_warning() {
        let cb = parse("class A extends Missing {}", "t.mt").unwrap();
        assert_eq!(
            codes("class A extends Missing {}"),
            vec![(Severity::Warning, DiagCode::UnresolvedSuperclass)]
        );
        assert!(cb.superclass("A").is_none());
        assert!(!cb.has_errors());
    }

    #[test]
    fn extending_a_trait_does_not_resolve() {
        assert_eq!(
            codes("trait T {} class A extends T {}"),
            vec![(Severity::Warning, DiagCode::UnresolvedSuperclass)]
        );
    }

    #[test]
    fn trait_cycles_reported_once() {
        let c = codes("trait T1 { uses T2; } trait T2 { uses T3; } trait T3 { uses T1; }");
        assert_eq!(c, vec![(Severity::Error, DiagCode::TraitCycle)]);
        assert_eq!(
            codes("trait T { uses T; }"),
            vec![(Severity::Error, DiagCode::TraitCycle)]
        );
    }

    #[test]
    fn unresolved_trait_use() {
        assert_eq!(
            codes("class A { uses Nope; }"),
            vec![(Severity::Warning, DiagCode::UnresolvedTrait)]
        );
    }

    #[test]
    fn diamond_is_not_a_cycle() {
        assert!(codes(
            "trait T0 {} trait T1 { uses T0; } trait T2 { uses T0; } class C { uses T1, T2; }"
        )
        .is_empty());
    }
}
