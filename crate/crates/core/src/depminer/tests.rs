use std::collections::BTreeSet;

use super::*;
use crate::lang::{
    merge_sources, parse, Codebase, DiagCode, MethodKey, OwnerKind, Side, SourceFile,
};

const FIXTURE_A: &str = include_str!("../../fixtures/A.mt");
const FIXTURE_AF: &str = include_str!("../../fixtures/AF.mt");

fn cb(src: &str) -> Codebase {
    let c = parse(src, "t.mt").unwrap();
    assert!(!c.has_errors(), "{:?}", c.diagnostics());
    c
}

fn inst(owner: &str, name: &str, arity: usize) -> MethodRef {
    MethodRef::instance(owner, name, arity)
}

fn key(name: &str, arity: usize) -> MethodKey {
    MethodKey::new(Side::Instance, name, arity)
}

fn lines(m: &Mined) -> Vec<String> {
    m.dependencies.iter().map(ToString::to_string).collect()
}

fn ivar(owner: &str, name: &str) -> VarRef {
    VarRef {
        owner: owner.into(),
        name: name.into(),
        kind: VarKind::Ivar,
    }
}

#[test]
fn table_without_traits_is_local() {
    let c = cb("class C { method a() { } classmethod b() { } }");
    let (t, diags) = effective_table(&c, &EntityRef::Class("C".into())).unwrap();
    assert!(diags.is_empty());
    assert_eq!(t.len(), 2);
    assert_eq!(t.get(&key("a", 0)), Some(&inst("C", "a", 0)));
    assert_eq!(
        t.get(&MethodKey::new(Side::Class, "b", 0)),
        Some(&MethodRef::new("C", OwnerKind::Class, Side::Class, "b", 0))
    );
}

#[test]
fn local_definition_beats_trait() {
    let c = cb("trait T { method m() { } method n() { } } class C { uses T; method m() { } }");
    let (t, _) = effective_table(&c, &EntityRef::Class("C".into())).unwrap();
    assert_eq!(t.get(&key("m", 0)), Some(&inst("C", "m", 0)));
    assert_eq!(
        t.get(&key("n", 0)),
        Some(&MethodRef::new(
            "T",
            OwnerKind::Trait,
            Side::Instance,
            "n",
            0
        ))
    );
}

#[test]
fn conflicting_traits_leave_a_hole() {
    let c = cb("trait T1 { method m() { } } trait T2 { method m() { } } class C { uses T1, T2; }");
    let (t, diags) = effective_table(&c, &EntityRef::Class("C".into())).unwrap();
    assert!(t.get(&key("m", 0)).is_none());
    assert_eq!(diags.len(), 1);
    assert_eq!(diags[0].code, DiagCode::TraitConflict);
    // The same trait reached twice is not a conflict.
    let c = cb("trait T0 { method m() { } } trait T1 { uses T0; } trait T2 { uses T0; } class C { uses T1, T2; }");
    let (t, diags) = effective_table(&c, &EntityRef::Class("C".into())).unwrap();
    assert!(diags.is_empty());
    assert_eq!(t.get(&key("m", 0)).unwrap().owner, "T0");
}

#[test]
fn transitive_trait_flattening() {
    let c =
        cb("trait T0 { method m() { } } trait T1 { uses T0; method n() { } } class C { uses T1; }");
    let (t, _) = effective_table(&c, &EntityRef::Class("C".into())).unwrap();
    assert_eq!(t.get(&key("m", 0)).unwrap().owner, "T0");
    assert_eq!(t.get(&key("n", 0)).unwrap().owner, "T1");
}

#[test]
fn lookup_walks_superclasses() {
    let c = cb(FIXTURE_AF);
    assert_eq!(
        lookup(&c, "FilteredLog", &key("logAll", 1)).unwrap(),
        Some(inst("Log", "logAll", 1))
    );
    assert_eq!(
        lookup(&c, "FilteredLog", &key("log", 1)).unwrap(),
        Some(inst("FilteredLog", "log", 1))
    );
    assert_eq!(lookup(&c, "FilteredLog", &key("nothing", 0)).unwrap(), None);
    // Arity is part of the selector.
    assert_eq!(lookup(&c, "FilteredLog", &key("log", 2)).unwrap(), None);
    // Sides do not mix.
    assert_eq!(
        lookup(&c, "Log", &MethodKey::new(Side::Class, "log", 1)).unwrap(),
        None
    );
    assert!(matches!(
        lookup(&c, "Ghost", &key("log", 1)),
        Err(DepError::UnknownEntity(_))
    ));
}

#[test]
fn class_side_lookup_follows_the_same_chain() {
    let c = cb("class A { classmethod make() { } } class B extends A { } ");
    assert_eq!(
        lookup(&c, "B", &MethodKey::new(Side::Class, "make", 0)).unwrap(),
        Some(MethodRef::new(
            "A",
            OwnerKind::Class,
            Side::Class,
            "make",
            0
        ))
    );
}

#[test]
fn implementors_enumerate_everything() {
    let c = cb(FIXTURE_AF);
    assert_eq!(
        implementors(&c, "log", 1),
        BTreeSet::from([inst("Log", "log", 1), inst("FilteredLog", "log", 1)])
    );
    assert!(implementors(&c, "nonexistent", 0).is_empty());
    let c = cb("trait T { method m() { } } class C { uses T; classmethod m() { } }");
    assert_eq!(
        implementors(&c, "m", 0),
        BTreeSet::from([
            MethodRef::new("C", OwnerKind::Class, Side::Class, "m", 0),
            MethodRef::new("T", OwnerKind::Trait, Side::Instance, "m", 0),
        ])
    );
}

#[test]
fn descendants_of_fixture() {
    let c = cb(FIXTURE_AF);
    assert_eq!(
        descendants(&c, "Log").unwrap(),
        BTreeSet::from(["FilteredLog".to_string()])
    );
    assert_eq!(
        descendants(&c, "Object").unwrap(),
        BTreeSet::from(["FilteredLog".to_string(), "Log".to_string()])
    );
    assert!(descendants(&c, "FilteredLog").unwrap().is_empty());
    let a = cb(FIXTURE_A);
    assert_eq!(
        descendants(&a, "FilteredLog"),
        Err(DepError::UnknownEntity("FilteredLog".into()))
    );
}

#[test]
fn mine_fixture_a() {
    let m = mine(&cb(FIXTURE_A)).unwrap();
    assert_eq!(
        lines(&m),
        vec![
            "Log -[inheritance]-> Object",
            "Log>>log/1 -[var-access]-> Log.messages",
            "Log>>logAll/1 -[message-send]-> Log>>log/1",
        ]
    );
    assert!(m.diagnostics.is_empty());
}

#[test]
fn mine_fixture_with_filtered_log() {
    let m = mine(&cb(FIXTURE_AF)).unwrap();
    let d = &m.dependencies;
    assert!(d.contains(&Dependency::inheritance("FilteredLog", "Log")));
    assert!(d.contains(&Dependency::message_send(
        inst("Log", "logAll", 1),
        inst("FilteredLog", "log", 1)
    )));
    assert!(d.contains(&Dependency::message_send(
        inst("FilteredLog", "log", 1),
        inst("Log", "log", 1)
    )));
    assert!(d.contains(&Dependency::message_send(
        inst("FilteredLog", "log", 1),
        inst("FilteredLog", "accepts", 1)
    )));
    assert!(d.contains(&Dependency::var_access(
        inst("FilteredLog", "accepts", 1),
        ivar("FilteredLog", "filterBlock")
    )));
    assert_eq!(d.len(), 8);
}

#[test]
fn mine_empty() {
    assert!(mine(&Codebase::empty("e")).unwrap().dependencies.is_empty());
}

#[test]
fn mine_rejects_invalid_codebase() {
    let c = parse("class A extends B {} class B extends A {}", "t.mt").unwrap();
    assert!(matches!(mine(&c), Err(DepError::InvalidCodebase { .. })));
}

#[test]
fn variable_resolution_order() {
    let c = cb("
        class Base { vars shared; classvars Count; }
        class Sub extends Base {
            vars own;
            method m(own2) { own2 = own; shared = Count; Base.note(); nope; }
            classmethod k() { Count = 1; shared = 2; }
        }
        class Other { method note() { } }");
    let m = mine(&c).unwrap();
    let got = lines(&m);
    assert!(got.contains(&"Sub>>m/1 -[var-access]-> Sub.own".to_string()));
    assert!(got.contains(&"Sub>>m/1 -[var-access]-> Base.shared".to_string()));
    assert!(got.contains(&"Sub>>m/1 -[var-access]-> Base.Count(class)".to_string()));
    assert!(got.contains(&"Sub class>>k/0 -[var-access]-> Base.Count(class)".to_string()));
    assert!(!got
        .iter()
        .any(|l| l.starts_with("Sub class>>k/0 -[var-access]-> Base.shared")));
    let codes: Vec<_> = m.diagnostics.iter().map(|d| d.code).collect();
    assert_eq!(
        codes,
        vec![DiagCode::UnresolvedName, DiagCode::IvarFromClassMethod]
    );
    // No edge for the parameter, none for the class name used as receiver.
    assert!(!got
        .iter()
        .any(|l| l.starts_with("Sub>>m/1") && (l.contains("own2") || l.ends_with("-> Base"))));
    assert!(got.contains(&"Sub>>m/1 -[message-send]-> Other>>note/0".to_string()));
}

#[test]
fn self_send_reaches_descendant_overrides() {
    let c = cb("
        class A { method run() { self.step(); } method step() { } }
        class B extends A { method step() { } }
        class C extends B { }
        class D extends C { method step() { } }
        class E { method step() { } }");
    let m = mine(&c).unwrap();
    let targets: BTreeSet<String> = m
        .dependencies
        .iter()
        .filter(|d| d.source() == &EntityRef::Method(inst("A", "run", 0)))
        .map(|d| d.target().to_string())
        .collect();
    assert_eq!(
        targets,
        BTreeSet::from(["A>>step/0".into(), "B>>step/0".into(), "D>>step/0".into()])
    );
}

#[test]
fn self_send_includes_trait_provided_overrides() {
    let c = cb("
        trait T { method step() { } }
        class A { method run() { self.step(); } }
        class B extends A { uses T; }");
    let m = mine(&c).unwrap();
    assert!(lines(&m).contains(&"A>>run/0 -[message-send]-> T>>step/0".to_string()));
    assert!(m.diagnostics.is_empty());
}

#[test]
fn self_send_inside_trait_is_resolved_per_user() {
    let c = cb("
        trait T { method run() { self.step(); super.step(); } }
        class Base { method step() { } }
        class A extends Base { uses T; method step() { } }
        class B extends Base { uses T; }
        class Sub extends B { method step() { } }");
    let got: BTreeSet<String> = lines(&mine(&c).unwrap())
        .into_iter()
        .filter(|l| l.starts_with("T>>run/0"))
        .collect();
    assert_eq!(
        got,
        BTreeSet::from([
            "T>>run/0 -[message-send]-> A>>step/0".to_string(),
            "T>>run/0 -[message-send]-> Base>>step/0".to_string(),
            "T>>run/0 -[message-send]-> Sub>>step/0".to_string(),
        ])
    );
}

#[test]
fn unused_trait_self_send_is_unresolved() {
    let m = mine(&cb("trait T { method run() { self.step(); } }")).unwrap();
    assert!(m.dependencies.is_empty());
    assert_eq!(m.diagnostics[0].code, DiagCode::UnresolvedSend);
}

#[test]
fn super_send_skips_own_class() {
    let c = cb("
        class A { method m() { } }
        class B extends A { method m() { super.m(); } }
        class C extends B { method m() { super.m(); } }
        class R { method m() { super.m(); } }");
    let m = mine(&c).unwrap();
    let got = lines(&m);
    assert!(got.contains(&"B>>m/0 -[message-send]-> A>>m/0".to_string()));
    assert!(got.contains(&"C>>m/0 -[message-send]-> B>>m/0".to_string()));
    assert!(!got.iter().any(|l| l.starts_with("R>>")));
    assert_eq!(m.diagnostics.len(), 1);
    assert_eq!(m.diagnostics[0].code, DiagCode::UnresolvedSend);
}

#[test]
fn general_send_targets_all_implementors() {
    let c = cb("
        class A { method go(x) { x.ping(1); nobody.ping(1); } method ping(n) { } }
        class B { classmethod ping(n) { } }
        trait T { method ping(n) { } }
        class Z { method ping() { } }");
    let m = mine(&c).unwrap();
    let got: BTreeSet<String> = lines(&m)
        .into_iter()
        .filter(|l| l.starts_with("A>>go/1"))
        .collect();
    assert_eq!(
        got,
        BTreeSet::from([
            "A>>go/1 -[message-send]-> A>>ping/1".to_string(),
            "A>>go/1 -[message-send]-> B class>>ping/1".to_string(),
            "A>>go/1 -[message-send]-> T>>ping/1".to_string(),
        ])
    );
    // `nobody` is unresolved but the send still resolves by selector.
    assert_eq!(m.diagnostics.len(), 1);
    assert_eq!(m.diagnostics[0].code, DiagCode::UnresolvedName);
}

#[test]
fn nested_receivers_and_arguments_are_mined() {
    let c = cb("
        class A { vars v; method go() { self.a(v).b(self.c()); } method a(x) { } method b(x) { } method c() { } }");
    let got = lines(&mine(&c).unwrap());
    for needle in ["A>>a/1", "A>>b/1", "A>>c/0", "A.v"] {
        assert!(
            got.iter()
                .any(|l| l.starts_with("A>>go/0") && l.ends_with(needle)),
            "{needle}"
        );
    }
}

#[test]
fn trait_usage_edges() {
    let c = cb("trait T0 {} trait T1 { uses T0; } class C { uses T1, Missing; }");
    let got = lines(&mine(&c).unwrap());
    assert_eq!(got, vec!["C -[trait-usage]-> T1", "T1 -[trait-usage]-> T0"]);
}

#[test]
fn unresolved_superclass_has_no_edge() {
    let got = lines(&mine(&cb("class A extends Missing {}")).unwrap());
    assert!(got.is_empty());
}

#[test]
fn mining_ignores_layout() {
    let a = mine(&cb(FIXTURE_AF)).unwrap();
    let merged = merge_sources(&[
        SourceFile::new("A.mt", FIXTURE_A),
        SourceFile::new("p.mt", include_str!("../../fixtures/filteredlog.mt")),
    ])
    .unwrap();
    assert_eq!(a.dependencies, mine(&merged).unwrap().dependencies);
}
