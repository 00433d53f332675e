// Exact `t(q)` by orbit-reduced exhaustive search, compared with the
// embedded table of known minima.
//
// `cargo run --release --example exact_minimum -- 5 7 8 9 11 13`

use std::time::Instant;

use conic_ac::report::ReferenceTable;
use conic_ac::search::{exhaustive_min_ac, format_witness, ExhaustiveConfig};
use conic_ac::{ConicModel, FieldCtx};

pub fn run(qs: &[u64]) -> anyhow::Result<()> {
    let cfg = ExhaustiveConfig::from_env();
    for &q in qs {
        let model = ConicModel::new(FieldCtx::with_order(q)?)?;
        let start = Instant::now();
        let out = exhaustive_min_ac(&model, &cfg)?;
        let table = ReferenceTable::exact_t(q).map_or("-".into(), |t| t.to_string());
        println!(
            "q={q:>2} t={:>2} table={table:>2} classes={:>4} nodes={:>9} {:>8.2?}  {}",
            out.t,
            out.base_classes,
            out.nodes,
            start.elapsed(),
            format_witness(q, &out.witness)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let mut qs: Vec<u64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    if qs.is_empty() {
        qs = vec![5, 7, 8, 9, 11, 13];
    }
    run(&qs)
}
