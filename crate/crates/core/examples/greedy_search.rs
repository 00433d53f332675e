// Deterministic greedy construction, with its step log next to the
// guaranteed per-step gain.
//
// `cargo run --example greedy_search -- 23`

use conic_ac::search::{format_witness, greedy_search};
use conic_ac::{ConicModel, FieldCtx};

pub fn run(q: u64) -> anyhow::Result<()> {
    let model = ConicModel::new(FieldCtx::with_order(q)?)?;
    let res = greedy_search(&model, &[])?;
    println!("{:>3} {:>6} {:>9} {:>9}", "w", "delta", "uncovered", "guarantee");
    let mut before = model.m_count();
    for s in &res.step_log {
        // Lower bound on the best gain from a state with w points.
        let guarantee = if s.w >= 3 {
            ((s.w - 2) * before).div_ceil(q as usize + 1 - s.w).to_string()
        } else {
            "-".into()
        };
        println!("{:>3} {:>6} {:>9} {:>9}", s.w, s.delta, s.uncovered, guarantee);
        before = s.uncovered;
    }
    println!("{}", format_witness(q, &res.witness));
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let q = std::env::args().nth(1).map_or(Ok(23), |s| s.parse())?;
    run(q)
}
