//! Normal rational curves in PG(N,q): the arc property, generator matrices of
//! doubly-extended Reed-Solomon codes, brute-force completeness, and the
//! prime thresholds `p0(h)`.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::theta;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
pub use crate::primes::is_prime;
use crate::primes::next_prime;

/// Largest `q^N` accepted by [`completeness_brute`].
pub const COMPLETENESS_BUDGET: u64 = 100_000_000;

/// Largest number of hyperplanes spanned by `N` arc points that
/// [`completeness_brute`] will tabulate.
pub const HYPERPLANE_BUDGET: u64 = 20_000_000;

/// Above this order, [`gdrs_generator`] samples minors instead of checking
/// all of them.
pub const MDS_EXHAUSTIVE_MAX_Q: u64 = 9;

const MDS_SAMPLES: usize = 2000;

#[derive(Clone, Debug)]
pub struct NrcArc {
    pub n: usize,
    pub field: FieldCtx,
    /// `(1, t, ..., t^N)` for `t = 0..q`, then `(0, ..., 0, 1)`.
    pub points: Vec<Vec<Elem>>,
}

pub fn nrc_points(n: usize, ctx: &FieldCtx) -> Result<NrcArc> {
    let q = ctx.q();
    if n < 2 || n as u64 + 2 > q {
        return Err(Error::InvalidArgument(format!("N = {n} is not in 2..=q-2 for q = {q}")));
    }
    let mut points: Vec<Vec<Elem>> = ctx
        .elements()
        .map(|t| {
            let mut p = Vec::with_capacity(n + 1);
            let mut x = 1;
            for _ in 0..=n {
                p.push(x);
                x = ctx.mul(x, t);
            }
            p
        })
        .collect();
    let mut inf = vec![0; n + 1];
    inf[n] = 1;
    points.push(inf);
    Ok(NrcArc { n, field: ctx.clone(), points })
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn determinant(f: &FieldCtx, mut m: Vec<Vec<Elem>>) -> Elem {
    let n = m.len();
    let mut det = 1;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = f.neg(det);
        }
        det = f.mul(det, m[col][col]);
        let inv = f.inv(m[col][col]).expect("pivot is nonzero");
        for r in col + 1..n {
            if m[r][col] == 0 {
                continue;
            }
            let k = f.mul(m[r][col], inv);
            for c in col..n {
                let sub = f.mul(k, m[col][c]);
                m[r][c] = f.sub(m[r][c], sub);
            }
        }
    }
    det
}

/// A nonzero vector orthogonal to the `N` given rows of length `N + 1`, i.e.
/// the hyperplane they span; `None` if the rows are dependent.
pub fn hyperplane_through(f: &FieldCtx, rows: &[&[Elem]]) -> Option<Vec<Elem>> {
    let k = rows.len();
    let width = k + 1;
    let mut m: Vec<Vec<Elem>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut pivots = Vec::with_capacity(k);
    let mut row = 0;
    for col in 0..width {
        if row == k {
            break;
        }
        let Some(piv) = (row..k).find(|&r| m[r][col] != 0) else { continue };
        m.swap(piv, row);
        let inv = f.inv(m[row][col]).expect("pivot is nonzero");
        for c in 0..width {
            m[row][c] = f.mul(m[row][c], inv);
        }
        for r in 0..k {
            if r != row && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..width {
                    let sub = f.mul(factor, m[row][c]);
                    m[r][c] = f.sub(m[r][c], sub);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if row < k {
        return None;
    }
    let free = (0..width).find(|c| !pivots.contains(c)).expect("one free column");
    let mut h = vec![0; width];
    h[free] = 1;
    for (r, &pc) in pivots.iter().enumerate() {
        h[pc] = f.neg(m[r][free]);
    }
    Some(h)
}

fn dot(f: &FieldCtx, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        if !next_combination(&mut idx, n) {
            return;
        }
    }
}

/// Every `N + 1` of the points are linearly independent.
pub fn is_arc(points: &[Vec<Elem>], n: usize, ctx: &FieldCtx) -> Result<bool> {
    if let Some(p) = points.iter().find(|p| p.len() != n + 1) {
        return Err(Error::InvalidArgument(format!(
            "point of length {} in PG({n}, q)",
            p.len()
        )));
    }
    let mut ok = true;
    for_each_subset(points.len(), n + 1, |idx| {
        let m: Vec<Vec<Elem>> = idx.iter().map(|&i| points[i].clone()).collect();
        ok = determinant(ctx, m) != 0;
        ok
    });
    Ok(ok)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GdrsCode {
    /// `(N + 1) × (q + 1)`, row-major.
    pub matrix: Vec<Vec<Elem>>,
    /// All checked `(N + 1)`-minors are nonzero.
    pub is_mds: bool,
    /// Whether every minor was checked (`q ≤ 9`) or a sample.
    pub exhaustive: bool,
}

impl GdrsCode {
    pub fn columns(&self) -> Vec<Vec<Elem>> {
        let cols = self.matrix[0].len();
        (0..cols).map(|j| self.matrix.iter().map(|row| row[j]).collect()).collect()
    }
}

/// Generator matrix with columns `v_j (1, α_j, ..., α_j^N)` and
/// `(0, ..., 0, v_last)`.
pub fn gdrs_generator(ctx: &FieldCtx, n: usize, alphas: &[Elem], v: &[Elem], v_last: Elem) -> Result<GdrsCode> {
    let q = ctx.q();
    if alphas.len() as u64 != q || v.len() as u64 != q {
        return Err(Error::InvalidArgument(format!("need {q} evaluation points and {q} scalings")));
    }
    if n < 1 || n as u64 + 1 > q + 1 {
        return Err(Error::InvalidArgument(format!("N = {n} is out of range for q = {q}")));
    }
    let mut seen = vec![false; q as usize];
    for &a in alphas {
        if !ctx.contains(a) {
            return Err(Error::ElementOutOfRange { code: a, q });
        }
        if std::mem::replace(&mut seen[a as usize], true) {
            return Err(Error::InvalidArgument(format!("evaluation point {a} repeated")));
        }
    }
    if let Some(&z) = v.iter().chain([&v_last]).find(|&&x| x == 0 || !ctx.contains(x)) {
        return Err(Error::InvalidArgument(format!("scaling {z} is not a nonzero field element")));
    }
    let mut cols: Vec<Vec<Elem>> = alphas
        .iter()
        .zip(v)
        .map(|(&a, &s)| {
            let mut col = Vec::with_capacity(n + 1);
            let mut x = s;
            for _ in 0..=n {
                col.push(x);
                x = ctx.mul(x, a);
            }
            col
        })
        .collect();
    let mut last = vec![0; n + 1];
    last[n] = v_last;
    cols.push(last);
    let matrix: Vec<Vec<Elem>> = (0..=n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();

    let exhaustive = q <= MDS_EXHAUSTIVE_MAX_Q;
    let is_mds = if exhaustive {
        is_arc(&cols, n, ctx)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        (0..MDS_SAMPLES).all(|_| {
            let idx = sample(&mut rng, cols.len(), n + 1);
            let m: Vec<Vec<Elem>> = idx.iter().map(|i| cols[i].clone()).collect();
            determinant(ctx, m) != 0
        })
    };
    Ok(GdrsCode { matrix, is_mds, exhaustive })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// All points `P` of PG(N,q) such that the arc together with `P` is still an
/// arc. The curve is complete iff the list is empty.
pub fn completeness_brute(arc: &NrcArc) -> Result<Vec<Vec<Elem>>> {
    let f = &arc.field;
    let q = f.q();
    let n = arc.n;
    let space = q.checked_pow(n as u32).unwrap_or(u64::MAX);
    if space > COMPLETENESS_BUDGET {
        return Err(Error::TooLarge { needed: space, budget: COMPLETENESS_BUDGET });
    }
    let planes = binomial(arc.points.len() as u64, n as u64);
    if planes > HYPERPLANE_BUDGET {
        return Err(Error::TooLarge { needed: planes, budget: HYPERPLANE_BUDGET });
    }
    // P extends the arc iff it lies on no hyperplane spanned by N arc points.
    let mut hyperplanes = Vec::with_capacity(planes as usize);
    for_each_subset(arc.points.len(), n, |idx| {
        let rows: Vec<&[Elem]> = idx.iter().map(|&i| arc.points[i].as_slice()).collect();
        hyperplanes.push(hyperplane_through(f, &rows).expect("arc points are independent"));
        true
    });

    let mut found = Vec::new();
    for lead in 0..=n {
        let tails = q.pow((n - lead) as u32);
        let mut part: Vec<(u64, Vec<Elem>)> = (0..tails)
            .into_par_iter()
            .filter_map(|tail| {
                let mut p = vec![0; n + 1];
                p[lead] = 1;
                let mut x = tail;
                for c in (lead + 1..=n).rev() {
                    p[c] = x % q;
                    x /= q;
                }
                hyperplanes.iter().all(|h| dot(f, h, &p) != 0).then_some((tail, p))
            })
            .collect();
        part.sort_unstable_by_key(|(t, _)| *t);
        found.extend(part.into_iter().map(|(_, p)| p));
    }
    Ok(found)
}

/// The integer range `3 ≤ N ≤ q + 2 − Θ(q)`, or `None` when it is empty.
pub fn completeness_range(q: u64) -> Result<Option<(u64, u64)>> {
    let top = (q as f64 + 2.0 - theta(q)?).floor();
    Ok((top >= 3.0).then_some((3, top as u64)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct P0Entry {
    pub h: u32,
    pub c: f64,
    pub p0: u64,
    /// Left side minus right side of the threshold inequality at `p0`.
    pub check_value: f64,
}

/// Coefficient schedule for `p0(h)`.
pub fn p0_coefficient(h: u32) -> f64 {
    match h {
        0 | 1 => 1.525,
        2 => 1.548,
        3 => 1.572,
        4 | 5 => 1.585,
        6..=19 => 1.62,
        20..=28 => 1.635,
        _ => 1.835,
    }
}

/// `√p − 4c √((2h+1) ln p) − 29/(4 p^(h−1/2)) + 20/p^(h+1/2)`; positive iff
/// the threshold inequality holds. Without `correction` only the first two
/// terms are kept.
pub fn p0_slack(p: u64, h: u32, c: f64, correction: bool) -> f64 {
    let pf = p as f64;
    let main = pf.sqrt() - 4.0 * c * ((2 * h + 1) as f64 * pf.ln()).sqrt();
    if !correction {
        return main;
    }
    let hf = h as f64;
    main - 29.0 / (4.0 * pf.powf(hf - 0.5)) + 20.0 / pf.powf(hf + 0.5)
}

/// Number of following primes that must also satisfy the inequality.
pub const P0_PERSISTENCE: usize = 10;

/// Smallest odd prime from which the inequality holds for it and the next
/// [`P0_PERSISTENCE`] primes.
pub fn p0_scan(h: u32, c: f64, correction: bool) -> Result<P0Entry> {
    if h == 0 {
        return Err(Error::InvalidArgument("h must be at least 1".into()));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!("coefficient {c} must be positive")));
    }
    let holds = |p: u64| p0_slack(p, h, c, correction) > 0.0;
    let mut p = 3;
    loop {
        if holds(p) {
            let mut r = p;
            let persists = (0..P0_PERSISTENCE).all(|_| {
                r = next_prime(r + 1);
                holds(r)
            });
            if persists {
                return Ok(P0Entry {
                    h,
                    c,
                    p0: p,
                    check_value: p0_slack(p, h, c, correction),
                });
            }
        }
        p = next_prime(p + 1);
    }
}

/// `p0(h)` with the default coefficient schedule unless overridden.
pub fn p0_solve(h: u32, c_override: Option<f64>) -> Result<P0Entry> {
    p0_scan(h, c_override.unwrap_or_else(|| p0_coefficient(h)), true)
}

pub fn write_p0_csv<W: std::io::Write>(out: W, entries: &[P0Entry]) -> Result<()> {
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["h", "c", "p0"]).map_err(io)?;
    for e in entries {
        w.write_record([e.h.to_string(), e.c.to_string(), e.p0.to_string()]).map_err(io)?;
    }
    w.flush().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> FieldCtx {
        FieldCtx::with_order(q).unwrap()
    }

    #[test]
    fn determinant_small() {
        let f = field(7);
        assert_eq!(determinant(&f, vec![vec![1, 2], vec![3, 4]]), f.sub(4, 6));
        assert_eq!(determinant(&f, vec![vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn hyperplane_contains_its_rows() {
        let f = field(9);
        let arc = nrc_points(3, &f).unwrap();
        let rows: Vec<&[Elem]> = arc.points[..3].iter().map(|p| p.as_slice()).collect();
        let h = hyperplane_through(&f, &rows).unwrap();
        for r in rows {
            assert_eq!(dot(&f, &h, r), 0);
        }
        assert_ne!(dot(&f, &h, &arc.points[5]), 0);
    }

    #[test]
    fn nrc_basics() {
        let f = field(7);
        assert_eq!(nrc_points(3, &f).unwrap().points.len(), 8);
        assert!(nrc_points(6, &f).is_err());
        assert!(nrc_points(1, &f).is_err());
        let arc = nrc_points(3, &field(5)).unwrap();
        assert!(is_arc(&arc.points, 3, &arc.field).unwrap());
        let mut dup = arc.points.clone();
        dup.push(dup[2].clone());
        assert!(!is_arc(&dup, 3, &arc.field).unwrap());
        assert!(is_arc(&arc.points, 2, &arc.field).is_err());
    }

    #[test]
    fn hyperoval_q4() {
        let f = field(4);
        let arc = nrc_points(2, &f).unwrap();
        let ext = completeness_brute(&arc).unwrap();
        assert_eq!(ext, vec![vec![0, 1, 0]]);
        let mut pts = arc.points.clone();
        pts.push(ext[0].clone());
        assert!(is_arc(&pts, 2, &f).unwrap());
    }

    #[test]
    fn guard() {
        let arc = nrc_points(6, &field(32)).unwrap();
        assert!(matches!(completeness_brute(&arc), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn gdrs() {
        let f = field(5);
        let alphas: Vec<Elem> = f.elements().collect();
        let ones = vec![1; 5];
        let code = gdrs_generator(&f, 2, &alphas, &ones, 1).unwrap();
        assert!(code.is_mds && code.exhaustive);
        assert_eq!(code.columns(), nrc_points(2, &f).unwrap().points);
        let mut bad = alphas.clone();
        bad[1] = 0;
        assert!(gdrs_generator(&f, 2, &bad, &ones, 1).is_err());
        assert!(gdrs_generator(&f, 2, &alphas, &[1, 2, 0, 1, 1], 1).is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(completeness_range(25).unwrap(), Some((3, 12)));
        assert_eq!(completeness_range(9).unwrap(), Some((3, 3)));
        assert_eq!(completeness_range(5).unwrap(), None);
    }

    #[test]
    fn p0_first_values() {
        assert_eq!(p0_solve(1, None).unwrap().p0, 757);
        assert_eq!(p0_solve(1, Some(1.62)).unwrap().p0, 877);
    }
}
