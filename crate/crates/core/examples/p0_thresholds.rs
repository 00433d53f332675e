// Prime thresholds p0(h), as CSV `h,c,p0`.
//
// `cargo run --example p0_thresholds -- 16`

use conic_ac::nrc::{p0_solve, write_p0_csv};

pub fn run(max_h: u32) -> anyhow::Result<()> {
    let entries = (1..=max_h).map(|h| p0_solve(h, None)).collect::<Result<Vec<_>, _>>()?;
    write_p0_csv(std::io::stdout().lock(), &entries)?;
    let at_162 = (1..=5.min(max_h)).map(|h| p0_solve(h, Some(1.62)).map(|e| e.p0)).collect::<Result<Vec<_>, _>>()?;
    println!("with c = 1.62: {at_162:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let h = std::env::args().nth(1).map_or(Ok(16), |s| s.parse())?;
    run(h)
}
