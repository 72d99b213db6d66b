//! Generate a 200-class, 2000-method program, fork it twice and time
//! the delta-impact of one fork against the other.
//
// $ cargo run --release --example synthetic_scale -- 42

use std::time::Instant;

use dif::delta::diff;
use dif::impact::delta_impact;
use dif::synth::{rng, Config, Program};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let base = Program::generate(seed, &Config::scale(200, 10));
    let origin_head = base.mutate(&mut rng(seed + 1), &Config::small());
    let dest = base.mutate(&mut rng(seed + 2), &Config::small());
    println!(
        "{} classes, {} methods, {} bytes of source",
        base.classes.len(),
        base.method_count(),
        base.source().len()
    );

    let start = Instant::now();
    let origin = base.codebase("base");
    let delta = diff(&origin, &origin_head.codebase("head"));
    match delta_impact(&delta, &origin, &dest.codebase("dest")) {
        Ok(report) => println!(
            "{} ops, {} entries, {:?}",
            delta.len(),
            report.entries().len(),
            report.verdict()
        ),
        Err(e) => println!("{} ops, {e}", delta.len()),
    }
    println!("{:?}", start.elapsed());
}
