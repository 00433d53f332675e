// Arithmetic in GF(p^m) with integer element codes.
//
// `cargo run --example field_arithmetic -- 8`

use conic_ac::field::FieldCtx;

pub fn run(q: u64) -> anyhow::Result<()> {
    let f = FieldCtx::with_order(q)?;
    println!("GF({q}) = GF({}^{}), modulus (low first) {:?}", f.p(), f.m(), f.modulus());
    let g = f
        .elements()
        .find(|&a| a != 0 && f.order(a).ok() == Some(q - 1))
        .expect("the multiplicative group is cyclic");
    println!("generator {g}");
    let powers: Vec<u64> = (0..q - 1).map(|e| f.pow(g, e)).collect();
    println!("powers of {g}: {powers:?}");
    for a in f.elements().skip(1).take(4) {
        let inv = f.inv(a)?;
        println!("{a} * {inv} = {}", f.mul(a, inv));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let q = std::env::args().nth(1).map_or(Ok(8), |s| s.parse())?;
    run(q)
}
