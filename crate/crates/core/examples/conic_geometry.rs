// The conic, its nucleus, the point set M_q and bisecants.
//
// `cargo run --example conic_geometry -- 8`

use conic_ac::geometry::{ConicModel, PointClass};
use conic_ac::FieldCtx;

pub fn run(q: u64) -> anyhow::Result<()> {
    let model = ConicModel::new(FieldCtx::with_order(q)?)?;
    println!("q = {q}: {} conic points, |M_q| = {}", model.n_params(), model.m_count());
    if let Some(n) = model.nucleus() {
        println!("nucleus {:?}", n.coords);
    }
    let mut counts = [0usize; 5];
    for idx in 0..model.plane_size() {
        let class = model.classify_point(&model.plane_point(idx));
        counts[match class {
            PointClass::OnConic => 0,
            PointClass::Nucleus => 1,
            PointClass::External => 2,
            PointClass::Internal => 3,
            PointClass::MEven => 4,
        }] += 1;
    }
    println!("on conic {}, nucleus {}, external {}, internal {}, other (even q) {}", counts[0], counts[1], counts[2], counts[3], counts[4]);
    let line = model.bisecant_mpoints(0, model.infinity())?;
    println!("bisecant through 0 and inf carries {} points of M_q:", line.len());
    for i in line.iter().take(8) {
        println!("  {:?}", model.m_point(*i as usize).coords);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let q = std::env::args().nth(1).map_or(Ok(8), |s| s.parse())?;
    run(q)
}
