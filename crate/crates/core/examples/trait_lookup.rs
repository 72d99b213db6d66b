//! Method lookup with traits: local definitions win over trait ones,
//! two traits providing the same selector is a conflict, and self-sends
//! reach overrides below the sender.

use dif::depminer::{effective_table, lookup, mine, EntityRef, Hierarchy};
use dif::lang::{parse, MethodKey, Side};

const SRC: &str = r#"
trait TPrint { method print(x) { self.show(x); } method show(x) { } }
trait TShow { method show(x) { } }
class Base { uses TPrint; method show(x) { } }
class Both { uses TPrint, TShow; }
class Leaf extends Base { method show(x) { } }
"#;

fn main() {
    let cb = parse(SRC, "traits.mt").unwrap();
    let show = MethodKey::new(Side::Instance, "show", 1);

    for class in ["Base", "Both", "Leaf"] {
        let (table, diags) = effective_table(&cb, &EntityRef::Class(class.into())).unwrap();
        let entries: Vec<String> = table.iter().map(|(k, r)| format!("{k} -> {r}")).collect();
        println!("{class}: {}", entries.join(", "));
        for d in diags {
            println!("  {d}");
        }
        println!(
            "  lookup show/1: {:?}",
            lookup(&cb, class, &show).unwrap().map(|r| r.to_string())
        );
    }

    let h = Hierarchy::new(&cb).unwrap();
    let targets: Vec<String> = h
        .self_send_targets("Base", &show)
        .iter()
        .map(|r| r.to_string())
        .collect();
    println!("self.show(x) from Base reaches {targets:?}");

    for d in mine(&cb).unwrap().dependencies.iter() {
        println!("{d}");
    }
}
