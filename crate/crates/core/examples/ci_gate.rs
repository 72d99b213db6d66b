//! The CLI as a merge gate: exit 0 lets the merge continue, 1 asks for a
//! human, 2 means the change did not even apply.

use dif::cli::{run, Exit};

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for dest in ["A.mt", "B.mt", "B_clash.mt"] {
        let args = [
            "dif".to_string(),
            "analyze".into(),
            "--origin-base".into(),
            format!("{dir}/A.mt"),
            "--origin-head".into(),
            format!("{dir}/AF.mt"),
            "--dest".into(),
            format!("{dir}/{dest}"),
            "--format".into(),
            "json".into(),
        ];
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let exit = run(args, &mut out, &mut err, false);
        let action = match exit {
            Exit::Clean => "merge",
            Exit::Suspect => "review",
            Exit::Error => "reject",
        };
        println!("{dest}: exit {} -> {action}", exit.code());
        print!(
            "{}{}",
            String::from_utf8_lossy(&out),
            String::from_utf8_lossy(&err)
        );
    }
}
