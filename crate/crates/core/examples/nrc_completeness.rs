// Normal rational curves: arc check, brute-force completeness and the
// dimension range guaranteed complete.
//
// `cargo run --release --example nrc_completeness`

use conic_ac::nrc::{completeness_brute, completeness_range, gdrs_generator, is_arc, nrc_points};
use conic_ac::FieldCtx;

pub fn run() -> anyhow::Result<()> {
    for (q, n) in [(4u64, 2usize), (5, 2), (7, 2), (7, 3), (8, 2), (8, 6), (9, 3)] {
        let f = FieldCtx::with_order(q)?;
        let arc = nrc_points(n, &f)?;
        let ext = completeness_brute(&arc)?;
        println!(
            "PG({n},{q}): arc {} complete {} extension points {}",
            is_arc(&arc.points, n, &f)?,
            ext.is_empty(),
            ext.len()
        );
    }
    let f = FieldCtx::with_order(7)?;
    let alphas: Vec<u64> = f.elements().collect();
    let code = gdrs_generator(&f, 3, &alphas, &[1, 2, 3, 4, 5, 6, 1], 3)?;
    println!("GDRS [8,4] over GF(7) with scalings: MDS {}", code.is_mds);
    for q in [9u64, 25, 49, 128, 1024] {
        match completeness_range(q)? {
            Some((lo, hi)) => println!("q={q}: every NRC in PG(N,q) is complete for {lo} <= N <= {hi}"),
            None => println!("q={q}: empty range"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run()
}
