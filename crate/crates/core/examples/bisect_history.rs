use dif::delta::diff;
use dif::impact::bisect;
use dif::lang::parse;

fn main() {
    let a = parse(include_str!("../fixtures/A.mt"), "A.mt").unwrap();
    let af = parse(include_str!("../fixtures/AF.mt"), "AF.mt").unwrap();
    let b = parse(include_str!("../fixtures/B.mt"), "B.mt").unwrap();

    // Destination history, oldest first.
    let history = [
        a.clone().with_label("rev0"),
        a.clone().with_label("rev1"),
        b.with_label("rev2"),
    ];
    match bisect(&diff(&a, &af), &a, &history).unwrap() {
        Some((i, report)) => {
            println!("first conflict at {i} ({})", report.dest_label);
            for e in report.entries() {
                println!("  {} {}", e.presence.as_str(), e.entry);
            }
        }
        None => println!("no conflict"),
    }
}
