// Checks tables of sizes against Θ(q) and their rounded-up starred values.
//
// `cargo run --example verify_tables -- [table.csv]`

use std::path::Path;

use conic_ac::report::{verify, ReferenceTable};

pub fn run(path: Option<&Path>) -> anyhow::Result<bool> {
    let tables = match path {
        Some(p) => vec![ReferenceTable::load(p)?],
        None => vec![ReferenceTable::exact_minima(), ReferenceTable::curated_sample()],
    };
    let mut ok = true;
    for t in &tables {
        let report = verify(t);
        println!("{:?}: {} rows, {} failures", t.source, report.rows.len(), report.failures());
        for v in report.rows.iter().filter(|v| !v.passed()) {
            println!("  q={} t={}: {}", v.q, v.value, v.failures.join("; "));
        }
        ok &= report.passed();
    }
    Ok(ok)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let path = std::env::args().nth(1);
    if !run(path.as_deref().map(Path::new))? {
        std::process::exit(1);
    }
    Ok(())
}
