// One PASS/FAIL line per acceptance criterion. Runs without the libtest
// harness so the lines come out in order and unbuffered.

use std::process::ExitCode;
use std::time::Instant;

use conic_ac::bounds::{bound_a5, bound_a_trace, bound_c_phi, star};
use conic_ac::field::Elem;
use conic_ac::geometry::{cross, dot, Param};
use conic_ac::nrc::{completeness_brute, determinant, is_arc, nrc_points, p0_solve};
use conic_ac::primes::is_prime_power;
use conic_ac::report::{verify, ReferenceTable, EXACT_MINIMA};
use conic_ac::search::{
    exhaustive_min_ac, greedy_search, is_ac_subset, is_minimal_ac, randomized_greedy, CoverageState,
    ExhaustiveConfig, RandomizedConfig,
};
use conic_ac::{ConicModel, FieldCtx};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

const A_STAR_TOL: f64 = 5e-4;
const RANDOM_SLACK_SMALL: usize = 1;
const RANDOM_SLACK_LARGE: u64 = 3;

fn model(q: u64) -> ConicModel {
    ConicModel::new(FieldCtx::with_order(q).unwrap()).unwrap()
}

fn c1_exact_minima() -> Check {
    let cfg = ExhaustiveConfig { force: true, ..ExhaustiveConfig::default() };
    let mut bad = Vec::new();
    let mut times = Vec::new();
    for &(q, t) in &EXACT_MINIMA {
        let m = model(q);
        let start = Instant::now();
        let out = exhaustive_min_ac(&m, &cfg).map_err(|e| e.to_string())?;
        times.push(format!("{q}:{:.1}s", start.elapsed().as_secs_f64()));
        if out.t as u64 != t || !is_minimal_ac(&m, &out.witness).unwrap_or(false) {
            bad.push(format!("q={q} got {} want {t}", out.t));
        }
    }
    if bad.is_empty() {
        Ok(format!("t(q) exact for all 15 orders ({})", times.join(" ")))
    } else {
        Err(bad.join(", "))
    }
}

fn c2_randomized() -> Check {
    let cfg = RandomizedConfig { seed: 1, restarts: 200, random_step_prob: 0.1 };
    let mut bad = Vec::new();
    let mut got = Vec::new();
    for &(q, t) in &EXACT_MINIMA {
        let m = model(q);
        let r = randomized_greedy(&m, &cfg).map_err(|e| e.to_string())?;
        if !is_ac_subset(&m, &r.witness) || r.size > t as usize + RANDOM_SLACK_SMALL {
            bad.push(format!("q={q} size {} > {t}+{RANDOM_SLACK_SMALL}", r.size));
        }
    }
    for (q, tbar) in [(49u64, 18u64), (64, 22), (81, 25), (121, 33), (169, 41)] {
        let m = model(q);
        let start = Instant::now();
        let r = randomized_greedy(&m, &cfg).map_err(|e| e.to_string())?;
        let secs = start.elapsed().as_secs_f64();
        got.push(format!("{q}:{} ({secs:.0}s)", r.size));
        if !is_ac_subset(&m, &r.witness) || r.size as u64 > tbar + RANDOM_SLACK_LARGE || secs > 300.0 {
            bad.push(format!("q={q} size {} vs {tbar}+{RANDOM_SLACK_LARGE} in {secs:.0}s", r.size));
        }
    }
    if bad.is_empty() {
        Ok(format!("q≤32 within +1, larger orders {}", got.join(" ")))
    } else {
        Err(bad.join(", "))
    }
}

fn c3_bound_a() -> Check {
    let t = bound_a_trace(11, 5, 36).map_err(|e| e.to_string())?;
    let us: Vec<i128> = t.steps.iter().map(|s| s.1).collect();
    if us != [36, 20, 6, 0] || t.bound != 8 {
        return Err(format!("q=11 trace {us:?} bound {}", t.bound));
    }
    let a1 = bound_a5(55_711).unwrap().star();
    let a2 = bound_a5(13_995_829).unwrap().star();
    if (a1 - 1.8341).abs() >= A_STAR_TOL || (a2 - 1.8180).abs() >= A_STAR_TOL {
        return Err(format!("A*(55711) = {a1:.5}, A*(13995829) = {a2:.5}"));
    }
    Ok(format!("trace 36→20→6→0, bound 8; A*(55711)={a1:.5}, A*(13995829)={a2:.5} (tol {A_STAR_TOL})"))
}

fn next_prime_power(mut x: u64) -> u64 {
    while !is_prime_power(x) {
        x += 1;
    }
    x
}

fn c4_closed_forms() -> Check {
    let phi_star = |q: f64| star(q, bound_c_phi(q).unwrap());
    let at = phi_star(12_755_807.0);
    if at >= 1.835 {
        return Err(format!("Φ*(12755807) = {at}"));
    }
    let grid: Vec<f64> = (0..200).map(|i| 10f64.powf(2.0 + 6.0 * i as f64 / 199.0)).collect();
    if let Some(w) = grid.windows(2).find(|w| phi_star(w[1]) >= phi_star(w[0])) {
        return Err(format!("Φ* not decreasing at q = {}", w[1]));
    }
    let mut sample: Vec<u64> = (0..200)
        .map(|i| next_prime_power((7.0 * (1.4e7f64 / 7.0).powf(i as f64 / 199.0)) as u64))
        .filter(|&q| q <= 14_000_000)
        .collect();
    sample.dedup();
    let mut worst = (0.0, 0);
    for &q in &sample {
        let v = bound_a5(q).unwrap().star().min(phi_star(q as f64));
        if v > worst.0 {
            worst = (v, q);
        }
    }
    if worst.0 >= 1.835 {
        return Err(format!("min(A*, Φ*) = {} at q = {}", worst.0, worst.1));
    }
    Ok(format!(
        "Φ*(12755807)={at:.9}; Φ* decreasing on 200 points; max min(A*,Φ*) over {} orders = {:.5} at q={}",
        sample.len(),
        worst.0,
        worst.1
    ))
}

fn c5_p0() -> Check {
    let want = [757u64, 1399, 2129, 2887, 3623, 4621, 5417, 6247, 7079, 7919, 8779, 9629, 10499, 11383, 12253, 13147];
    let want_162 = [877u64, 1543, 2273, 3037, 3821];
    let mut bad = Vec::new();
    for (h, &w) in (1..).zip(&want) {
        let e = p0_solve(h, None).map_err(|e| e.to_string())?;
        if e.p0 != w {
            bad.push(format!("h={h} got {} want {w}", e.p0));
        }
    }
    for (h, &w) in (1..).zip(&want_162) {
        let e = p0_solve(h, Some(1.62)).map_err(|e| e.to_string())?;
        if e.p0 != w {
            bad.push(format!("c=1.62 h={h} got {} want {w}", e.p0));
        }
    }
    if bad.is_empty() {
        Ok("16 default and 5 overridden thresholds exact".into())
    } else {
        Err(bad.join(", "))
    }
}

fn c6_nrc() -> Check {
    let ext = |q: u64, n: usize| {
        let f = FieldCtx::with_order(q).unwrap();
        completeness_brute(&nrc_points(n, &f).unwrap()).map_err(|e| e.to_string())
    };
    let e4 = ext(4, 2)?;
    if e4 != [vec![0, 1, 0]] {
        return Err(format!("q=4 N=2: {e4:?}"));
    }
    for (q, n) in [(5, 2), (7, 2), (7, 3)] {
        let e = ext(q, n)?;
        if !e.is_empty() {
            return Err(format!("q={q} N={n}: {} extension points", e.len()));
        }
    }
    let e8 = ext(8, 6)?;
    if e8.len() <= 1 {
        return Err(format!("q=8 N=6: {} extension points", e8.len()));
    }
    Ok(format!("q=4 N=2 nucleus only; q=5,7 N=2 and q=7 N=3 complete; q=8 N=6 has {}", e8.len()))
}

fn brute_uncovered(m: &ConicModel, subset: &[Param]) -> Vec<bool> {
    let mut lines = Vec::new();
    for (i, &a) in subset.iter().enumerate() {
        for &b in &subset[i + 1..] {
            lines.push(cross(m.field(), m.conic_point(a).coords, m.conic_point(b).coords));
        }
    }
    m.m_points().map(|p| !lines.iter().any(|&l| dot(m.field(), l, p.coords) == 0)).collect()
}

fn leibniz(f: &FieldCtx, m: &[Vec<Elem>]) -> Elem {
    fn go(f: &FieldCtx, m: &[Vec<Elem>], row: usize, used: &mut Vec<bool>, sign: bool, acc: Elem, total: &mut Elem) {
        if row == m.len() {
            *total = if sign { f.sub(*total, acc) } else { f.add(*total, acc) };
            return;
        }
        for c in 0..m.len() {
            if used[c] {
                continue;
            }
            // Each used column to the right of c is one inversion.
            let inv = used[c + 1..].iter().filter(|&&u| u).count() % 2 == 1;
            used[c] = true;
            go(f, m, row + 1, used, sign ^ inv, f.mul(acc, m[row][c]), total);
            used[c] = false;
        }
    }
    let mut total = 0;
    go(f, m, 0, &mut vec![false; m.len()], false, 1, &mut total);
    total
}

fn c7_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut states = 0;
    for q in [5u64, 7, 8, 9, 11, 13] {
        let m = model(q);
        let n = m.n_params();
        let all: Vec<Param> = m.params().collect();
        for _ in 0..500 {
            let k = rng.random_range(0..=n);
            let subset: Vec<Param> = all.choose_multiple(&mut rng, k).copied().collect();
            let s = CoverageState::from_subset(&m, &subset).unwrap();
            let brute = brute_uncovered(&m, &subset);
            if (0..m.m_count()).any(|i| s.is_covered(i) == brute[i]) {
                return Err(format!("coverage mismatch q={q} {subset:?}"));
            }
            let w = subset.len();
            if (3..=(q as usize - 1) / 2).contains(&w) {
                states += 1;
                let best = m.params().filter(|&y| !s.is_chosen(y)).map(|y| s.gain(y).unwrap()).max().unwrap();
                let need = ((w - 2) * s.uncovered_count()).div_ceil(q as usize + 1 - w);
                if best < need {
                    return Err(format!("gain bound q={q} {subset:?}: {best} < {need}"));
                }
            }
        }
        let g = greedy_search(&m, &[]).unwrap();
        let mut before = m.m_count();
        for st in &g.step_log {
            states += 1;
            if st.w >= 3 && st.delta < ((st.w - 2) * before).div_ceil(q as usize + 1 - st.w) {
                return Err(format!("greedy step q={q} {st:?}"));
            }
            before = st.uncovered;
        }
    }
    for &(q, _) in &EXACT_MINIMA {
        let m = model(q);
        for b in 1..m.n_params() as Param {
            for a in 0..b {
                if m.bisecant_mpoints(a, b).unwrap().len() != q as usize - 1 {
                    return Err(format!("bisecant ({a},{b}) at q={q}"));
                }
            }
        }
    }
    for q in [4u64, 5, 7, 8, 9] {
        let f = FieldCtx::with_order(q).unwrap();
        let curve = nrc_points(2, &f).unwrap();
        for _ in 0..40 {
            let mut pts = curve.points.clone();
            pts.shuffle(&mut rng);
            pts.truncate(rng.random_range(3..=pts.len()));
            let mut extra = vec![rng.random_range(0..q), rng.random_range(0..q), 1];
            extra.rotate_left(rng.random_range(0..3));
            pts.push(extra);
            let mut minors = true;
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    for k in j + 1..pts.len() {
                        let m = vec![pts[i].clone(), pts[j].clone(), pts[k].clone()];
                        if determinant(&f, m.clone()) != leibniz(&f, &m) {
                            return Err(format!("determinant mismatch q={q}"));
                        }
                        minors &= leibniz(&f, &m) != 0;
                    }
                }
            }
            if is_arc(&pts, 2, &f).unwrap() != minors {
                return Err(format!("arc mismatch q={q}"));
            }
        }
    }
    Ok(format!("coverage 6×500 subsets, gain bound at {states} states, bisecants q≤32, arcs q≤9"))
}

fn c8_verify() -> Check {
    let t2 = verify(&ReferenceTable::exact_minima());
    let sample = verify(&ReferenceTable::curated_sample());
    if t2.passed() && sample.passed() {
        Ok(format!("{} + {} rows", t2.rows.len(), sample.rows.len()))
    } else {
        Err(format!("{} + {} rows failed", t2.failures(), sample.failures()))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("1 exact minima", c1_exact_minima),
        ("2 randomized greedy", c2_randomized),
        ("3 bound A", c3_bound_a),
        ("4 closed-form bounds", c4_closed_forms),
        ("5 p0 thresholds", c5_p0),
        ("6 NRC completeness", c6_nrc),
        ("7 property suites", c7_properties),
        ("8 table verification", c8_verify),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let res = check();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("PASS criterion {name} [{secs:.1}s]: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} [{secs:.1}s]: {msg}");
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
