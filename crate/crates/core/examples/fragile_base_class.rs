//! A subclass written against one version of `Log` silently loses a
//! dependency when it is merged into a branch where `logAll` stopped
//! calling `self.log`.

use dif::delta::diff;
use dif::impact::{delta_impact, impact};
use dif::lang::parse;
use dif::render::report_text;

fn main() {
    let a = parse(include_str!("../fixtures/A.mt"), "A.mt").unwrap();
    let af = parse(include_str!("../fixtures/AF.mt"), "AF.mt").unwrap();
    let b = parse(include_str!("../fixtures/B.mt"), "B.mt").unwrap();

    let delta = diff(&a, &af);
    println!("change:\n{delta}");

    for (name, cb) in [("A", &a), ("B", &b)] {
        println!("impact on {name}:");
        for e in impact(&delta, cb).unwrap().iter() {
            println!("  {e}");
        }
    }

    let report = delta_impact(&delta, &a, &b).unwrap();
    print!("\n{}", report_text(&report, false));
    // verdict: suspect
    // origin: A.mt
    // dest: B.mt
    // MISSING in dest: + Log>>logAll/1 -[message-send]-> FilteredLog>>log/1
}
