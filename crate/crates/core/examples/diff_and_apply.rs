//! Entity-level deltas: export, replay onto another snapshot, undo.

use dif::delta::{apply, diff, invert, Delta};
use dif::lang::{canonical_json, parse};

fn main() {
    let a = parse(include_str!("../fixtures/A.mt"), "A.mt").unwrap();
    let af = parse(include_str!("../fixtures/AF.mt"), "AF.mt").unwrap();
    let b = parse(include_str!("../fixtures/B.mt"), "B.mt").unwrap();

    let delta = diff(&a, &af);
    let json = delta.to_json();
    print!("{json}");
    assert_eq!(Delta::from_json(&json).unwrap(), delta);

    let replayed = apply(&delta, &b).unwrap();
    println!(
        "B + delta has {} classes",
        replayed.codebase.classes().count()
    );

    let undo = invert(&delta, &a).unwrap();
    print!("undo:\n{undo}");
    let back = apply(&undo, &af).unwrap().codebase;
    assert_eq!(canonical_json(&back), canonical_json(&a));

    let clash = parse(include_str!("../fixtures/B_clash.mt"), "B_clash.mt").unwrap();
    for c in apply(&delta, &clash).unwrap_err() {
        println!("conflict: {c}");
    }
}
