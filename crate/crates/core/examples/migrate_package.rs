//! Loading a package onto a newer platform version: which platform
//! dependencies the package relied on are gone?

use dif::delta::diff;
use dif::impact::delta_impact;
use dif::lang::{merge_sources, parse, SourceFile};
use dif::render::report_text;

fn main() {
    let platform_a = include_str!("../fixtures/A.mt");
    let package = include_str!("../fixtures/filteredlog.mt");

    let from = parse(platform_a, "A.mt").unwrap();
    let loaded = merge_sources(&[
        SourceFile::new("A.mt", platform_a),
        SourceFile::new("filteredlog.mt", package),
    ])
    .unwrap();
    let to = parse(include_str!("../fixtures/B.mt"), "B.mt").unwrap();

    let report = delta_impact(&diff(&from, &loaded), &from, &to).unwrap();
    print!("{}", report_text(&report, false));

    // A package that redefines a platform class cannot be loaded at all.
    let clash = merge_sources(&[
        SourceFile::new("A.mt", platform_a),
        SourceFile::new("log_clash.mt", include_str!("../fixtures/log_clash.mt")),
    ])
    .unwrap_err();
    for d in &clash.diagnostics {
        println!("{d}");
    }
}
