//! Exact `t(q)` by exhaustive search.
//!
//! Base subsets of a fixed size are enumerated up to PGL(2,q); each class
//! representative is extended in all ways to larger subsets, looking only for
//! AC-subsets smaller than the best found so far. Because any proper superset
//! of an AC-subset is again AC, "no AC-subset of size k" implies none of any
//! smaller size, so each representative is searched at size `best - 1` only.
//! Sizes below the base size are handled with the base `{0, 1, ∞}`, which
//! every subset of three or more points can be moved onto.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use super::coverage::{is_ac_subset, is_minimal_ac};
use super::greedy::{randomized_greedy, RandomizedConfig};
use super::pgl::orbit_representatives;
use crate::error::{Error, Result};
use crate::geometry::{ConicModel, Param};

/// The default exhaustive ceiling: every prime power up to 32 was settled
/// this way.
pub const DEFAULT_CEILING: u64 = 32;

/// Environment variable overriding the ceiling.
pub const CEILING_ENV: &str = "AC_MAX_Q_EXHAUSTIVE";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExhaustiveConfig {
    pub base_size: usize,
    pub ceiling: u64,
    pub force: bool,
}

impl Default for ExhaustiveConfig {
    fn default() -> Self {
        ExhaustiveConfig {
            base_size: 6,
            ceiling: DEFAULT_CEILING,
            force: false,
        }
    }
}

impl ExhaustiveConfig {
    /// Default configuration with the ceiling taken from `AC_MAX_Q_EXHAUSTIVE`
    /// when set.
    pub fn from_env() -> Self {
        let ceiling = std::env::var(CEILING_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_CEILING);
        ExhaustiveConfig {
            ceiling,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustiveOutcome {
    /// The smallest size of an AC-subset.
    pub t: usize,
    pub witness: Vec<Param>,
    /// Number of base-subset classes searched (0 for direct enumeration).
    pub base_classes: usize,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

/// Bisecant point sets as bitmasks, plus the second-intersection table.
struct SearchTables {
    n: usize,
    words: usize,
    m_count: usize,
    q: usize,
    masks: Vec<u64>,
    /// `partner[m * n + u]`: the other conic point on the line through M-point
    /// `m` and conic point `u`, or `NONE` for a tangent.
    partner: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl SearchTables {
    fn new(model: &ConicModel) -> Self {
        let n = model.n_params();
        let m_count = model.m_count();
        let words = m_count.div_ceil(64);
        let mut masks = vec![0u64; model.n_pairs() * words];
        for b in 1..n as Param {
            for a in 0..b {
                let k = model.pair_index(a, b);
                for &i in model.bisecant(a, b).iter() {
                    masks[k * words + i as usize / 64] |= 1 << (i % 64);
                }
            }
        }
        let mut partner = vec![NONE; m_count * n];
        for m in 0..m_count {
            let p = model.m_point(m);
            for u in 0..n as Param {
                if let Some(v) = model.partner(&p, u) {
                    partner[m * n + u as usize] = v;
                }
            }
        }
        SearchTables {
            n,
            words,
            m_count,
            q: model.q() as usize,
            masks,
            partner,
        }
    }

    #[inline]
    fn mask(&self, a: Param, b: Param) -> &[u64] {
        let (a, b) = if a < b { (a as usize, b as usize) } else { (b as usize, a as usize) };
        let k = b * (b - 1) / 2 + a;
        &self.masks[k * self.words..(k + 1) * self.words]
    }

    fn popcount(&self, mask: &[u64]) -> usize {
        mask.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first_uncovered(&self, mask: &[u64]) -> Option<usize> {
        for (w, &bits) in mask.iter().enumerate() {
            if bits != u64::MAX {
                let m = w * 64 + (!bits).trailing_zeros() as usize;
                return (m < self.m_count).then_some(m);
            }
        }
        None
    }
}

/// Depth-first search for a `target`-subset containing a fixed base.
struct Extender<'t> {
    tables: &'t SearchTables,
    target: usize,
    chosen: Vec<Param>,
    in_set: Vec<bool>,
    /// Candidates outside the base, ascending.
    cand: Vec<Param>,
    /// Position of each parameter in `cand`, `usize::MAX` if in the base.
    pos: Vec<usize>,
    stack: Vec<Vec<u64>>,
    nodes: u64,
}

impl<'t> Extender<'t> {
    fn new(tables: &'t SearchTables, base: &[Param], target: usize) -> Self {
        let n = tables.n;
        let mut in_set = vec![false; n];
        for &b in base {
            in_set[b as usize] = true;
        }
        let cand: Vec<Param> = (0..n as Param).filter(|&t| !in_set[t as usize]).collect();
        let mut pos = vec![usize::MAX; n];
        for (i, &c) in cand.iter().enumerate() {
            pos[c as usize] = i;
        }
        let mut mask = vec![0u64; tables.words];
        for (i, &a) in base.iter().enumerate() {
            for &b in &base[i + 1..] {
                for (m, w) in mask.iter_mut().zip(tables.mask(a, b)) {
                    *m |= w;
                }
            }
        }
        Extender {
            tables,
            target,
            chosen: base.to_vec(),
            in_set,
            cand,
            pos,
            stack: vec![mask],
            nodes: 0,
        }
    }

    fn push(&mut self, x: Param) {
        let t = self.tables;
        let mut next = self.stack.last().unwrap().clone();
        for &s in &self.chosen {
            for (m, w) in next.iter_mut().zip(t.mask(x, s)) {
                *m |= w;
            }
        }
        self.stack.push(next);
        self.chosen.push(x);
        self.in_set[x as usize] = true;
    }

    fn pop(&mut self) {
        let x = self.chosen.pop().unwrap();
        self.in_set[x as usize] = false;
        self.stack.pop();
    }

    fn completes(&self, x: Param) -> bool {
        let t = self.tables;
        let mask = self.stack.last().unwrap();
        let mut full = 0usize;
        for (k, &bits) in mask.iter().enumerate() {
            let mut w = bits;
            for &s in &self.chosen {
                w |= t.mask(x, s)[k];
            }
            full += w.count_ones() as usize;
        }
        full == t.m_count
    }

    /// Searches extensions using candidates from position `start` onwards.
    fn search(&mut self, start: usize) -> bool {
        self.nodes += 1;
        let t = self.tables;
        let w = self.chosen.len();
        let mask = self.stack.last().unwrap();
        let uncovered = t.m_count - t.popcount(mask);
        if uncovered == 0 {
            return true;
        }
        if w >= self.target {
            return false;
        }
        let r = self.target - w;
        // Adding r points to w creates at most sum_{j<r} (w + j) bisecants,
        // each carrying q - 1 points of M_q.
        let capacity = (r * w + r * (r - 1) / 2) * (t.q - 1);
        if uncovered > capacity {
            return false;
        }
        if r == 1 {
            // The last point must cover the first uncovered point P, so it is
            // the second intersection of a line through P and a chosen point.
            let p = t.first_uncovered(mask).expect("uncovered > 0");
            let row = &t.partner[p * t.n..(p + 1) * t.n];
            for k in 0..w {
                let v = row[self.chosen[k] as usize];
                if v == NONE || self.in_set[v as usize] || self.pos[v as usize] < start || self.pos[v as usize] == usize::MAX {
                    continue;
                }
                if self.completes(v) {
                    self.push(v);
                    return true;
                }
            }
            return false;
        }
        let last = self.cand.len().saturating_sub(r - 1);
        for i in start..last {
            let x = self.cand[i];
            self.push(x);
            if self.search(i + 1) {
                return true;
            }
            self.pop();
        }
        false
    }

    fn run(mut self) -> (Option<Vec<Param>>, u64) {
        let found = self.search(0);
        let nodes = self.nodes;
        (found.then_some(self.chosen), nodes)
    }
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

/// All subsets in order of size, for planes small enough to list them.
fn direct_enumeration(model: &ConicModel) -> (usize, Vec<Param>) {
    let n = model.n_params();
    for k in 1..n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let s: Vec<Param> = idx.iter().map(|&i| i as Param).collect();
            if is_ac_subset(model, &s) {
                return (k, s);
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    unreachable!("the conic minus one point is almost complete")
}

/// Smallest AC-subset size and a witness, by exhaustive search.
pub fn exhaustive_min_ac(model: &ConicModel, cfg: &ExhaustiveConfig) -> Result<ExhaustiveOutcome> {
    let q = model.q();
    if q > cfg.ceiling && !cfg.force {
        return Err(Error::AboveCeiling { q, ceiling: cfg.ceiling });
    }
    if cfg.base_size < 3 {
        return Err(Error::InvalidArgument("base size must be at least 3".into()));
    }
    let n = model.n_params();
    if n <= cfg.base_size + 2 {
        let (t, witness) = direct_enumeration(model);
        return Ok(ExhaustiveOutcome {
            t,
            witness,
            base_classes: 0,
            nodes: 0,
        });
    }

    // Starting point: a short randomized greedy campaign.
    let start = randomized_greedy(
        model,
        &RandomizedConfig {
            seed: 0,
            restarts: 20,
            random_step_prob: 0.1,
        },
    )?;
    let tables = SearchTables::new(model);
    let best = AtomicUsize::new(start.size);
    let witness = Mutex::new(start.witness.clone());
    let nodes = AtomicUsize::new(0);

    let record = |found: Vec<Param>| {
        let mut w = witness.lock().unwrap();
        if found.len() < w.len() {
            best.fetch_min(found.len(), Ordering::SeqCst);
            *w = found;
        }
    };

    let reps = orbit_representatives(model.field(), cfg.base_size);
    reps.par_iter().for_each(|rep| loop {
        let b = best.load(Ordering::SeqCst);
        if b <= cfg.base_size {
            break;
        }
        let (found, visited) = Extender::new(&tables, rep, b - 1).run();
        nodes.fetch_add(visited as usize, Ordering::Relaxed);
        match found {
            Some(s) => record(s),
            None => break,
        }
    });

    let three: [Param; 3] = [0, 1, model.infinity()];
    loop {
        let b = best.load(Ordering::SeqCst);
        if b <= 3 || b > cfg.base_size {
            break;
        }
        let (found, visited) = Extender::new(&tables, &three, b - 1).run();
        nodes.fetch_add(visited as usize, Ordering::Relaxed);
        match found {
            Some(s) => record(s),
            None => break,
        }
    }

    let mut witness = witness.into_inner().unwrap();
    witness.sort_unstable();
    debug_assert!(is_minimal_ac(model, &witness).unwrap_or(false));
    Ok(ExhaustiveOutcome {
        t: witness.len(),
        witness,
        base_classes: reps.len(),
        nodes: nodes.into_inner() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn model(q: u64) -> ConicModel {
        ConicModel::new(FieldCtx::with_order(q).unwrap()).unwrap()
    }

    /// Brute force over all subsets containing {0, 1, ∞}.
    fn brute_t(m: &ConicModel) -> usize {
        let rest: Vec<Param> = (2..m.q() as Param).collect();
        for k in 0..rest.len() {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                let mut s = vec![0, 1, m.infinity()];
                s.extend(idx.iter().map(|&i| rest[i]));
                if is_ac_subset(m, &s) {
                    return s.len();
                }
                if k == 0 || !next_combination(&mut idx, rest.len()) {
                    break;
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn matches_brute_force_small_q() {
        for q in [5u64, 7, 8, 9, 11] {
            let m = model(q);
            let out = exhaustive_min_ac(&m, &ExhaustiveConfig::default()).unwrap();
            assert_eq!(out.t, brute_t(&m), "q = {q}");
            assert!(is_minimal_ac(&m, &out.witness).unwrap());
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        let m = model(37);
        let err = exhaustive_min_ac(&m, &ExhaustiveConfig::default()).unwrap_err();
        assert_eq!(err, Error::AboveCeiling { q: 37, ceiling: 32 });
    }

    #[test]
    fn smaller_base_sizes_agree() {
        let m = model(13);
        let six = exhaustive_min_ac(&m, &ExhaustiveConfig::default()).unwrap();
        let four = exhaustive_min_ac(
            &m,
            &ExhaustiveConfig {
                base_size: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(six.t, four.t);
    }
}
