// Restarted randomized greedy search.
//
// `cargo run --release --example randomized_search -- 49 200`

use conic_ac::search::{format_witness, greedy_search, randomized_greedy, RandomizedConfig};
use conic_ac::{ConicModel, FieldCtx};

pub fn run(q: u64, restarts: u32) -> anyhow::Result<()> {
    let model = ConicModel::new(FieldCtx::with_order(q)?)?;
    let plain = greedy_search(&model, &[])?;
    let cfg = RandomizedConfig { restarts, ..Default::default() };
    let mut best = randomized_greedy(&model, &cfg)?;
    let minimal = best.check_minimal(&model);
    println!("greedy: {}", plain.size);
    println!("randomized ({restarts} restarts, seed {}): {} (minimal: {minimal})", cfg.seed, best.size);
    println!("{}", format_witness(q, &best.witness));
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let q = args.next().map_or(Ok(49), |s| s.parse())?;
    let restarts = args.next().map_or(Ok(200), |s| s.parse())?;
    run(q, restarts)
}
