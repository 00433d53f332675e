//! Upper bounds on `t(q)`.
//!
//! Bound A is an exact integer recursion on the worst-case number `U_w` of
//! uncovered points after `w` greedy steps. The other bounds replace the
//! recursion by its product form `q² f_q(w)` (the truncated process), by an
//! estimate of `ln f_q(w)` (bound B) or by a closed form (bound C, `Φ(q)`).
//! `Θ(q)` combines the closed forms with the coefficients certified by
//! computer search.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{is_prime_power, prime_power};

/// `√(q ln q)`, the normalization of every starred value.
pub fn sqrt_q_ln_q(q: f64) -> f64 {
    (q * q.ln()).sqrt()
}

/// `value / √(q ln q)`.
pub fn star(q: f64, value: f64) -> f64 {
    value / sqrt_q_ln_q(q)
}

/// The largest integer `k` with `k < x` (strict) or `k ≤ x`.
pub fn integer_below(x: f64, strict: bool) -> i64 {
    let f = x.floor();
    if strict && f == x {
        f as i64 - 1
    } else {
        f as i64
    }
}

fn check_order(q: u64) -> Result<()> {
    if q < 5 {
        return Err(Error::OrderTooSmall { q, min: 5 });
    }
    Ok(())
}

fn check_prime_power(q: u64) -> Result<()> {
    check_order(q)?;
    if !is_prime_power(q) {
        return Err(Error::NotPrimePower(q));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Bound A

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTrace {
    pub q: u64,
    pub w0: u64,
    pub u0: i128,
    /// `(w, U_w)` from `(w0, U0)` up to the first non-positive value.
    pub steps: Vec<(u64, i128)>,
    pub w_fin: u64,
    pub bound: u64,
    /// `w_fin < (q + 3) / 2`, the range where each step is justified.
    pub feasible: bool,
}

impl BoundTrace {
    pub fn star(&self) -> f64 {
        star(self.q as f64, self.bound as f64)
    }
}

/// Iterates `U_{w+1} = U_w − ⌈(w−2) U_w / (q+1−w)⌉` from `(w0, U0)` until the
/// value drops to zero or below.
pub fn bound_a_trace(q: u64, w0: u64, u0: i128) -> Result<BoundTrace> {
    if w0 < 2 {
        return Err(Error::InvalidArgument(format!("w0 = {w0} must be at least 2")));
    }
    if w0 > q {
        return Err(Error::InvalidArgument(format!("w0 = {w0} exceeds q = {q}")));
    }
    let q2 = (q as i128) * (q as i128);
    if u0 < 1 || u0 > q2 {
        return Err(Error::InvalidArgument(format!("U0 = {u0} is not in 1..=q²")));
    }
    let mut steps = vec![(w0, u0)];
    let mut w = w0;
    let mut u = u0;
    // At w = q the divisor is 1 and the decrement (q−2)U ≥ U, so this ends.
    while u > 0 {
        let num = (w as i128 - 2) * u;
        let den = (q + 1 - w) as i128;
        u -= (num + den - 1) / den;
        w += 1;
        steps.push((w, u));
    }
    let w_fin = w - 1;
    Ok(BoundTrace {
        q,
        w0,
        u0,
        steps,
        w_fin,
        bound: w_fin + 1,
        feasible: 2 * w_fin < q + 3,
    })
}

/// Bound A started from five points, which leave at most `(q − 5)²` points
/// uncovered.
pub fn bound_a5(q: u64) -> Result<BoundTrace> {
    check_order(q)?;
    bound_a_trace(q, 5, ((q - 5) as i128).pow(2))
}

// ---------------------------------------------------------------------------
// Truncated process and implicit bound B

/// `ln f_q(w) = Σ_{i=1..w} ln(1 − (i−2)/(q+1−i))`.
pub fn f_q_log(q: u64, w: u64) -> Result<f64> {
    if w == 0 || w > q {
        return Err(Error::InvalidArgument(format!("w = {w} is not in 1..=q")));
    }
    if 2 * w >= q + 3 {
        return Err(Error::InvalidArgument(format!(
            "factor {w} of f_q is not positive for q = {q}"
        )));
    }
    Ok((1..=w).map(|i| log_factor(q, i)).sum())
}

fn log_factor(q: u64, i: u64) -> f64 {
    (-(i as f64 - 2.0) / (q + 1 - i) as f64).ln_1p()
}

/// A bound of the form `w + 1 + ξ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImplicitBound {
    pub q: u64,
    pub w: u64,
    pub xi: f64,
    pub bound: f64,
}

impl ImplicitBound {
    pub fn star(&self) -> f64 {
        star(self.q as f64, self.bound)
    }

    /// `t(q) ≤ w + 1 + ξ`, so `t(q) ≤ ⌊w + 1 + ξ⌋`.
    pub fn integer_bound(&self) -> i64 {
        integer_below(self.bound, false)
    }
}

/// First `w < (q+3)/2` with `value(w) ≤ target`.
fn scan_first(q: u64, target: f64, mut value: impl FnMut(u64) -> f64) -> Option<u64> {
    (1..).take_while(|&w| 2 * w < q + 3).find(|&w| value(w) <= target)
}

fn check_xi(q: u64, xi: f64) -> Result<()> {
    if !(xi >= 1.0) {
        return Err(Error::InvalidArgument(format!("ξ = {xi} must be at least 1")));
    }
    if xi > (q as f64).powi(2) {
        return Err(Error::InvalidArgument(format!("ξ = {xi} exceeds q²")));
    }
    Ok(())
}

/// The default `ξ = √(q / (3 ln q))`.
pub fn default_xi(q: f64) -> f64 {
    (q / (3.0 * q.ln())).sqrt()
}

/// Smallest `w < (q+3)/2` with `f_q(w) ≤ ξ/q²`, giving `t(q) ≤ w + 1 + ξ`;
/// `None` when no admissible `w` exists.
pub fn bound_truncated(q: u64, xi: f64) -> Result<Option<ImplicitBound>> {
    check_order(q)?;
    check_xi(q, xi)?;
    let target = (xi / (q as f64).powi(2)).ln();
    let mut sum = 0.0;
    let mut last = 0;
    let w = scan_first(q, target, |w| {
        while last < w {
            last += 1;
            sum += log_factor(q, last);
        }
        sum
    });
    Ok(w.map(|w| ImplicitBound { q, w, xi, bound: (w + 1) as f64 + xi }))
}

/// Left-hand side of bound B's condition: `w − (q−1) ln((q+1)/(q+1−w))`.
pub fn bound_b_lhs(q: u64, w: u64) -> f64 {
    let qf = q as f64;
    w as f64 + (qf - 1.0) * (-(w as f64) / (qf + 1.0)).ln_1p()
}

/// Implicit bound B: the smallest `w < (q+3)/2` with
/// `w − (q−1) ln((q+1)/(q+1−w)) ≤ ln(ξ/q²)`. `ξ` defaults to `√(q/(3 ln q))`.
pub fn bound_b(q: u64, xi: Option<f64>) -> Result<Option<ImplicitBound>> {
    check_order(q)?;
    let xi = xi.unwrap_or_else(|| default_xi(q as f64));
    check_xi(q, xi)?;
    let target = (xi / (q as f64).powi(2)).ln();
    let w = scan_first(q, target, |w| bound_b_lhs(q, w));
    Ok(w.map(|w| ImplicitBound { q, w, xi, bound: (w + 1) as f64 + xi }))
}

// ---------------------------------------------------------------------------
// Closed forms

/// `Φ(q) = √(q(3 ln q + ln ln q + ln 3)) + √(q/(3 ln q)) + 4`.
pub fn bound_c_phi(q: f64) -> Result<f64> {
    if !(q >= 5.0) {
        return Err(Error::InvalidArgument(format!("Φ(q) needs q ≥ 5, got {q}")));
    }
    let l = q.ln();
    Ok((q * (3.0 * l + l.ln() + 3f64.ln())).sqrt() + default_xi(q) + 4.0)
}

/// `√(2q) √(ln(q²/ξ)) + ξ + 4` for any `ξ ≥ 1`.
pub fn bound_xi_family(q: f64, xi: f64) -> Result<f64> {
    if !(xi >= 1.0) || xi > q * q {
        return Err(Error::InvalidArgument(format!("ξ = {xi} is not in [1, q²]")));
    }
    Ok((2.0 * q).sqrt() * (q * q / xi).ln().sqrt() + xi + 4.0)
}

/// `φ'(ξ) = 1 − (1/ξ) √(q / (2 ln(q²/ξ)))`, the derivative of
/// [`bound_xi_family`] in `ξ`.
pub fn phi_prime(q: f64, xi: f64) -> f64 {
    1.0 - (q / (2.0 * (q * q / xi).ln())).sqrt() / xi
}

/// `8 ≤ q ≤ 139129`, `q = p^m` with `m ≥ 2`.
pub fn in_q1(q: u64) -> bool {
    (8..=139_129).contains(&q) && matches!(prime_power(q), Some((_, m)) if m >= 2)
}

/// `Θ(q)`: the least applicable branch among the search-certified
/// coefficients and `min{1.835 √(q ln q), Φ(q)}`.
pub fn theta(q: u64) -> Result<f64> {
    check_prime_power(q)?;
    let s = sqrt_q_ln_q(q as f64);
    let mut best = (1.835 * s).min(bound_c_phi(q as f64)?);
    if (8..=17_041).contains(&q) {
        best = best.min(1.62 * s);
    }
    if q > 17_041 && q <= 33_013 {
        best = best.min(1.635 * s);
    }
    if in_q1(q) {
        best = best.min(1.674 * s);
    }
    Ok(best)
}

/// Coefficients `c` with `t(q) < c √(q ln q)` certified by computer search,
/// with their ranges of `q` (all prime powers).
pub fn search_coefficients(q: u64) -> Vec<f64> {
    let mut out = Vec::new();
    if !is_prime_power(q) {
        return out;
    }
    if (8..=887).contains(&q) && q != 11 {
        out.push(1.525);
    }
    if q > 887 && q <= 1553 {
        out.push(1.548);
    }
    if (q > 1553 && q <= 2351) || q == 11 {
        out.push(1.572);
    }
    if q > 2351 && q <= 4027 {
        out.push(1.585);
    }
    if q > 4027 && q <= 17_041 {
        out.push(1.620);
    }
    if (q > 17_041 && q <= 33_013) || q == 7 {
        out.push(1.635);
    }
    if in_q1(q) {
        out.push(1.674);
    }
    if [160_801, 208_849, 253_009].contains(&q) {
        out.push(1.686);
    }
    out
}

/// The smallest applicable search-certified coefficient and the bound
/// `c √(q ln q)`.
pub fn search_bound(q: u64) -> Result<(f64, f64)> {
    let c = search_coefficients(q)
        .into_iter()
        .reduce(f64::min)
        .ok_or_else(|| Error::InvalidArgument(format!("no search-certified coefficient covers q = {q}")))?;
    Ok((c, c * sqrt_q_ln_q(q as f64)))
}

// ---------------------------------------------------------------------------
// Reports and curves

/// Bound names accepted by [`curve_emit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BoundName {
    /// Bound A from five points.
    A,
    /// Implicit bound B with the default `ξ`.
    B,
    /// `Φ(q)`.
    C,
    /// Truncated process with the default `ξ`.
    Truncated,
    /// `2 √(q ln q) + 5`.
    Xi1,
    /// `√(3 q ln q) + √q + 4`.
    XiSqrt,
    Theta,
    /// Search-certified coefficient bound.
    Certified,
}

impl BoundName {
    pub const ALL: [BoundName; 8] = [
        BoundName::A,
        BoundName::B,
        BoundName::C,
        BoundName::Truncated,
        BoundName::Xi1,
        BoundName::XiSqrt,
        BoundName::Theta,
        BoundName::Certified,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::A => "A",
            BoundName::B => "B",
            BoundName::C => "C",
            BoundName::Truncated => "trunc",
            BoundName::Xi1 => "xi1",
            BoundName::XiSqrt => "xisqrt",
            BoundName::Theta => "theta",
            BoundName::Certified => "certified",
        }
    }

    /// The bound's value at `q`, or `None` where it is undefined or vacuous.
    pub fn evaluate(self, q: u64) -> Option<f64> {
        let qf = q as f64;
        match self {
            BoundName::A => bound_a5(q).ok().map(|t| t.bound as f64),
            BoundName::B => bound_b(q, None).ok().flatten().map(|b| b.bound),
            BoundName::C => bound_c_phi(qf).ok(),
            BoundName::Truncated => bound_truncated(q, default_xi(qf).max(1.0)).ok().flatten().map(|b| b.bound),
            BoundName::Xi1 => bound_xi_family(qf, 1.0).ok(),
            BoundName::XiSqrt => bound_xi_family(qf, qf.sqrt()).ok(),
            BoundName::Theta => theta(q).ok(),
            BoundName::Certified => search_bound(q).ok().map(|(_, b)| b),
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundName::ALL
            .into_iter()
            .find(|b| b.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown bound `{s}`")))
    }
}

/// Parses a comma-separated list of bound names.
pub fn parse_bound_names(list: &str) -> Result<Vec<BoundName>> {
    list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub q: u64,
    pub bound_a: Option<f64>,
    pub bound_b: Option<f64>,
    pub bound_c: f64,
    pub theta: f64,
    /// Every available bound divided by `√(q ln q)`, keyed by name.
    pub t_star: BTreeMap<String, f64>,
    /// Integer consequences: `⌊A⌋`, `⌊B⌋` (non-strict) and the largest
    /// integer strictly below `Φ` and `Θ`.
    pub integer_bounds: BTreeMap<String, i64>,
}

pub fn bound_report(q: u64) -> Result<BoundReport> {
    check_prime_power(q)?;
    let qf = q as f64;
    let bound_a = BoundName::A.evaluate(q);
    let bound_b = BoundName::B.evaluate(q);
    let bound_c = bound_c_phi(qf)?;
    let theta = theta(q)?;
    let mut t_star = BTreeMap::new();
    let mut integer_bounds = BTreeMap::new();
    for name in BoundName::ALL {
        if let Some(v) = name.evaluate(q) {
            t_star.insert(name.to_string(), star(qf, v));
        }
    }
    if let Some(a) = bound_a {
        integer_bounds.insert("A".into(), integer_below(a, false));
    }
    if let Some(b) = bound_b {
        integer_bounds.insert("B".into(), integer_below(b, false));
    }
    integer_bounds.insert("C".into(), integer_below(bound_c, true));
    integer_bounds.insert("theta".into(), integer_below(theta, true));
    Ok(BoundReport {
        q,
        bound_a,
        bound_b,
        bound_c,
        theta,
        t_star,
        integer_bounds,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub q: u64,
    pub bound: BoundName,
    pub value: f64,
    pub value_star: f64,
}

/// Evaluates each named bound on each `q` of the grid. Pairs where a bound
/// is undefined (bound A at `q = 5`) or vacuous (no admissible `w` for B or
/// the truncated process) produce no row.
pub fn curve_emit(grid: &[u64], names: &[BoundName]) -> Vec<CurveRow> {
    grid.par_iter()
        .flat_map_iter(|&q| {
            names.iter().filter_map(move |&bound| {
                let value = bound.evaluate(q)?;
                Some(CurveRow {
                    q,
                    bound,
                    value,
                    value_star: star(q as f64, value),
                })
            })
        })
        .collect()
}

/// Formats `x` with 12 significant digits.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exp) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Writes rows as CSV with header `q,bound,value,value_star`.
pub fn write_curve_csv<W: std::io::Write>(out: W, rows: &[CurveRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    w.write_record(["q", "bound", "value", "value_star"]).map_err(io)?;
    for r in rows {
        w.write_record([
            r.q.to_string(),
            r.bound.to_string(),
            format_sig12(r.value),
            format_sig12(r.value_star),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    Ok(())
}

/// All prime powers `5 ≤ q ≤ 253009`.
pub fn grid_prime_powers() -> Vec<u64> {
    crate::primes::prime_powers_in(5, 253_009)
}

/// Prime powers up to 14000029: every one up to 1000, then the first prime
/// power at or above each of 600 geometrically spaced points, plus the
/// values singled out when comparing the bounds.
pub fn grid_extended() -> Vec<u64> {
    let hi = 14_000_029u64;
    let mut grid = crate::primes::prime_powers_in(5, 1000);
    let n = 600;
    let (a, b) = (1000f64.ln(), (hi as f64).ln());
    for k in 0..=n {
        let x = (a + (b - a) * k as f64 / n as f64).exp().round() as u64;
        let mut q = x.min(hi);
        while !is_prime_power(q) {
            q += 1;
        }
        grid.push(q);
    }
    grid.extend([55_711, 12_755_807, 13_995_829, hi]);
    grid.retain(|&q| q <= hi);
    grid.sort_unstable();
    grid.dedup();
    grid
}
