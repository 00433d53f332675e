// Upper bounds on t(q), normalized by sqrt(q ln q).
//
// `cargo run --release --example bound_curves -- 11 55711 13995829`
// prints a summary per q; `--csv prime-powers` (or `extended`)
// writes the A, B, C curves as CSV.

use conic_ac::bounds::{bound_a5, bound_report, curve_emit, grid_prime_powers, grid_extended, write_curve_csv, BoundName};

pub fn run(qs: &[u64]) -> anyhow::Result<()> {
    for &q in qs {
        let r = bound_report(q)?;
        let a = bound_a5(q)?;
        println!(
            "q={q}: A={} (w_fin {}, {} steps{}) B={} C={:.3} theta={:.3}",
            a.bound,
            a.w_fin,
            a.steps.len() - 1,
            if a.feasible { "" } else { ", past (q+3)/2" },
            r.bound_b.map_or("-".into(), |b| format!("{b:.3}")),
            r.bound_c,
            r.theta
        );
        let stars: Vec<String> = r.t_star.iter().map(|(k, v)| format!("{k}*={v:.4}")).collect();
        println!("    {}", stars.join(" "));
    }
    Ok(())
}

pub fn csv(grid: &str) -> anyhow::Result<()> {
    let qs = match grid {
        "prime-powers" => grid_prime_powers(),
        "extended" => grid_extended(),
        other => anyhow::bail!("unknown grid {other}"),
    };
    let rows = curve_emit(&qs, &[BoundName::A, BoundName::B, BoundName::C]);
    write_curve_csv(std::io::stdout().lock(), &rows)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.first().map(String::as_str) == Some("--csv") {
        return csv(args.get(1).map_or("prime-powers", String::as_str));
    }
    let mut qs: Vec<u64> = args.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    if qs.is_empty() {
        qs = vec![11, 101, 1024, 55711, 12755807, 13995829];
    }
    run(&qs)
}
