use super::ast::{ExprKind, Stmt};
use super::*;

const FIXTURE_A: &str = include_str!("../../fixtures/A.mt");
const FIXTURE_B: &str = include_str!("../../fixtures/B.mt");
const PACKAGE: &str = include_str!("../../fixtures/filteredlog.mt");

fn syntax_error(src: &str) -> Diagnostic {
    let err = parse(src, "t.mt").unwrap_err();
    assert!(err.diagnostics.iter().all(Diagnostic::is_error));
    err.diagnostics[0].clone()
}

#[test]
fn minimal_class() {
    let cb = parse("class Log extends Object { vars messages; }", "t.mt").unwrap();
    let log = cb.class("Log").unwrap();
    assert_eq!(log.super_name.as_deref(), Some("Object"));
    assert_eq!(log.ivars, vec!["messages"]);
    assert_eq!(cb.classes().count(), 1);
    // Object is not declared, so the superclass does not resolve.
    assert_eq!(cb.diagnostics()[0].code, DiagCode::UnresolvedSuperclass);
}

#[test]
fn fixture_a_shape() {
    let cb = parse(FIXTURE_A, "A.mt").unwrap();
    assert_eq!(cb.classes().count(), 2);
    let log = cb.class("Log").unwrap();
    let instance: Vec<_> = log
        .methods
        .values()
        .filter(|m| m.side == Side::Instance)
        .map(|m| m.key().to_string())
        .collect();
    assert_eq!(instance, vec!["log/1", "logAll/1"]);
    assert!(cb.diagnostics().is_empty());
}

#[test]
fn method_body_ast() {
    let cb = parse(PACKAGE, "p.mt").unwrap();
    let m = cb
        .class("FilteredLog")
        .unwrap()
        .method(&MethodKey::new(Side::Instance, "log", 1))
        .unwrap();
    assert_eq!(m.params, vec!["m"]);
    assert_eq!(m.body.len(), 2);
    let Stmt::Expr(e) = &m.body[1] else { panic!() };
    let ExprKind::Send {
        receiver,
        selector,
        args,
    } = &e.kind
    else {
        panic!()
    };
    assert_eq!(receiver.kind, ExprKind::SuperRef);
    assert_eq!(selector, "log");
    assert_eq!(args.len(), 1);
    assert_eq!(
        m.body_tokens,
        vec!["self", ".", "accepts", "(", "m", ")", ";", "super", ".", "log", "(", "m", ")", ";"]
    );
    assert!(m.source_text.starts_with("method log(m)"));
    assert!(m.source_text.ends_with('}'));
    assert_eq!(m.pos, Pos::new(5, 5));
}

#[test]
fn assignment_and_chains() {
    let cb = parse(
        r#"class C { classvars Count; classmethod make(a, b) { Count = a.plus(b).times(2); x.y(); "s"; (self).z(); } }"#,
        "t.mt",
    )
    .unwrap();
    let m = cb
        .class("C")
        .unwrap()
        .method(&MethodKey::new(Side::Class, "make", 2))
        .unwrap();
    assert!(matches!(&m.body[0], Stmt::Assign { target, .. } if target == "Count"));
    assert_eq!(m.body.len(), 4);
}

#[test]
fn bare_super_rejected() {
    let d = syntax_error("class X { method m() { super; } }");
    assert_eq!(d.code, DiagCode::SyntaxError);
    assert_eq!((d.location.line, d.location.column), (1, 24));
    syntax_error("class X { method m() { (super).m(); } }");
    syntax_error("class X { method m() { x = super; } }");
    syntax_error("class X { method m() { self.m(super); } }");
}

#[test]
fn trait_state_rejected() {
    let d = syntax_error("trait T { vars a; }");
    assert_eq!(d.code, DiagCode::SyntaxError);
    syntax_error("trait T { classvars a; }");
    syntax_error("trait T { classmethod m() { } }");
}

#[test]
fn grammar_violations() {
    for src in [
        "class",
        "class A",
        "class A extends { }",
        "class A { vars ; }",
        "class A { method m( { } }",
        "class A { method m() { self.m() } }",
        "class A { method m() { 1 = 2; } }",
        "klass A { }",
        "class A { } }",
        "class self { }",
    ] {
        syntax_error(src);
    }
}

#[test]
fn keywords_are_reserved() {
    assert!(parse("class A { vars uses; }", "t.mt").is_err());
}

#[test]
fn duplicate_members() {
    assert_eq!(
        syntax_error("class A { method m() { } method m() { } }").code,
        DiagCode::DuplicateMethod
    );
    // Same name, different side or arity, is fine.
    parse(
        "class A { method m() { } classmethod m() { } method m(x) { } }",
        "t.mt",
    )
    .unwrap();
    assert_eq!(
        syntax_error("class A { vars a; classvars a; }").code,
        DiagCode::DuplicateVariable
    );
    assert_eq!(
        syntax_error("class A { vars a, a; }").code,
        DiagCode::DuplicateVariable
    );
    assert_eq!(
        syntax_error("class A { method m(x, x) { } }").code,
        DiagCode::DuplicateParam
    );
    assert_eq!(
        syntax_error("trait T {} class A { uses T, T; }").code,
        DiagCode::DuplicateUse
    );
}

#[test]
fn duplicate_declarations() {
    assert_eq!(
        syntax_error("class A {} class A {}").code,
        DiagCode::DuplicateClass
    );
    assert_eq!(
        syntax_error("class A {} trait A {}").code,
        DiagCode::DuplicateTrait
    );
}

#[test]
fn merge_disjoint_and_colliding() {
    let merged = merge_sources(&[
        SourceFile::new("A.mt", FIXTURE_A),
        SourceFile::new("p.mt", PACKAGE),
    ])
    .unwrap();
    assert_eq!(merged.label(), "A.mt+p.mt");
    let names: Vec<_> = merged.classes().map(|c| c.name.as_str()).collect();
    assert_eq!(names, vec!["Object", "Log", "FilteredLog"]);
    assert!(merged.diagnostics().is_empty());

    let err = merge_sources(&[
        SourceFile::new("a.mt", "class Log {}"),
        SourceFile::new("b.mt", "class Log {}"),
    ])
    .unwrap_err();
    assert_eq!(err.diagnostics[0].code, DiagCode::DuplicateClass);
    assert_eq!(err.diagnostics[0].location.file, "b.mt");
}

#[test]
fn merge_equals_concatenation() {
    let merged = merge_sources(&[
        SourceFile::new("B.mt", FIXTURE_B),
        SourceFile::new("p.mt", PACKAGE),
    ])
    .unwrap();
    let concat = parse(&format!("{FIXTURE_B}\n{PACKAGE}"), "BF.mt").unwrap();
    assert_eq!(canonical_json(&merged), canonical_json(&concat));
}

#[test]
fn merge_single_is_parse() {
    let one = merge_sources(&[SourceFile::new("A.mt", FIXTURE_A)]).unwrap();
    assert!(one.model_eq(&parse(FIXTURE_A, "A.mt").unwrap()));
}

#[test]
fn merge_resolves_across_files() {
    // A lone package file cannot resolve Log; the merged view can.
    let alone = parse(PACKAGE, "p.mt").unwrap();
    assert_eq!(alone.diagnostics()[0].code, DiagCode::UnresolvedSuperclass);
    let merged = merge_sources(&[
        SourceFile::new("A.mt", FIXTURE_A),
        SourceFile::new("p.mt", PACKAGE),
    ])
    .unwrap();
    assert!(validate(&merged).is_empty());
}

#[test]
fn serialization_is_deterministic_and_layout_insensitive() {
    let a = parse(FIXTURE_A, "A.mt").unwrap();
    assert_eq!(
        canonical_json(&a),
        canonical_json(&parse(FIXTURE_A, "A.mt").unwrap())
    );

    let shuffled = "
        class Log extends Object
        {
            method logAll(ms) { self . log( ms ) ;   }  # same tokens
            vars messages;
            method log(m) {messages=m;}
        }
        class Object{}";
    assert_eq!(
        canonical_json(&a),
        canonical_json(&parse(shuffled, "X.mt").unwrap())
    );

    let b = parse(FIXTURE_B, "B.mt").unwrap();
    assert_ne!(canonical_json(&a), canonical_json(&b));
}

#[test]
fn serialization_schema() {
    let a = parse(FIXTURE_A, "A.mt").unwrap();
    let v = canonical_value(&a);
    let log = &v["classes"][0];
    assert_eq!(log["name"], "Log");
    assert_eq!(log["super"], "Object");
    assert_eq!(log["ivars"][0], "messages");
    assert_eq!(log["methods"][0]["name"], "log");
    assert_eq!(log["methods"][0]["side"], "instance");
    assert_eq!(log["methods"][0]["arity"], 1);
    assert_eq!(log["methods"][1]["bodyTokens"][0], "self");
    assert_eq!(v["classes"][1]["super"], serde_json::Value::Null);
    assert!(v["traits"].as_array().unwrap().is_empty());
    let text = canonical_json(&a);
    assert!(text.starts_with("{\n  \"classes\": [\n    {\n      \"cvars\""));
}

#[test]
fn parse_method_from_body_text() {
    let m = parse_method(
        "Log",
        OwnerKind::Class,
        Side::Instance,
        "logAll",
        &["ms".to_string()],
        "\n    messages = ms; # direct\n",
        "<delta>",
    )
    .unwrap();
    assert_eq!(m.body_tokens, vec!["messages", "=", "ms", ";"]);
    assert!(parse_method(
        "L",
        OwnerKind::Class,
        Side::Instance,
        "m",
        &[],
        "self.m(",
        "d"
    )
    .is_err());
    assert!(parse_method(
        "L",
        OwnerKind::Class,
        Side::Instance,
        "m",
        &["a".into(), "a".into()],
        "",
        "d"
    )
    .is_err());
}

#[test]
fn every_node_has_a_location() {
    let cb = parse(include_str!("../../fixtures/AF.mt"), "AF.mt").unwrap();
    for m in cb.methods() {
        assert!(m.pos.line >= 1 && m.pos.column >= 1);
        for s in &m.body {
            assert!(s.pos().line >= m.pos.line);
            let e = match s {
                Stmt::Assign { value, .. } => value,
                Stmt::Expr(e) => e,
            };
            e.walk(&mut |n| assert!(n.pos.line >= 1 && n.pos.column >= 1));
        }
    }
}
