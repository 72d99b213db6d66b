use std::collections::BTreeMap;

use dif::depminer::mine;
use dif::lang::parse;
use dif::render::{to_json, DependenciesDoc};

fn main() {
    let cb = parse(include_str!("../fixtures/AF.mt"), "AF.mt").unwrap();
    let mined = mine(&cb).unwrap();

    let mut by_kind: BTreeMap<&str, usize> = BTreeMap::new();
    for d in mined.dependencies.iter() {
        println!("{d}");
        *by_kind.entry(d.kind().as_str()).or_default() += 1;
    }
    println!("{by_kind:?}");

    // Same set as `dif deps AF.mt --format json`.
    print!("{}", to_json(&DependenciesDoc::from(&mined.dependencies)));
}
