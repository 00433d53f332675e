//! PG(2,q) and the fixed conic `C = {(1,t,t^2)} ∪ {(0,0,1)}`.
//!
//! Conic points are addressed by a parameter in `0..=q`: a field code `t`
//! names `(1,t,t^2)` and the code `q` names the point at infinity `(0,0,1)`.
//! `M_q` is every plane point off the conic, minus the nucleus when `q` is
//! even, indexed in lexicographic order of canonical coordinates.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};

/// Conic parameter. `q` encodes infinity.
pub type Param = u32;

/// Largest `q` for which bisecant incidence is tabulated at build time.
/// Above it, bisecant point lists are recomputed per query.
pub const BISECANT_TABLE_MAX_Q: u64 = 256;

/// Largest supported plane order (M_q indices must fit in `u32`).
pub const MAX_PLANE_Q: u64 = 65_521;

/// A projective point with canonical coordinates: the leftmost nonzero
/// coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    pub coords: [Elem; 3],
}

impl ProjPoint {
    pub fn new(ctx: &FieldCtx, coords: [Elem; 3]) -> Result<Self> {
        canon_point(ctx, coords)
    }
}

/// Scales a nonzero triple so that its leftmost nonzero entry is 1.
pub fn canon_point(ctx: &FieldCtx, coords: [Elem; 3]) -> Result<ProjPoint> {
    for &c in &coords {
        if !ctx.contains(c) {
            return Err(Error::ElementOutOfRange { code: c, q: ctx.q() });
        }
    }
    let lead = coords.iter().copied().find(|&c| c != 0).ok_or(Error::ZeroPoint)?;
    let s = ctx.inv(lead)?;
    Ok(ProjPoint {
        coords: coords.map(|c| ctx.mul(c, s)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointClass {
    OnConic,
    Nucleus,
    /// Odd q: on two tangents.
    External,
    /// Odd q: on no tangent.
    Internal,
    /// Even q: a point of M_q, on exactly one tangent.
    MEven,
}

pub fn cross(ctx: &FieldCtx, a: [Elem; 3], b: [Elem; 3]) -> [Elem; 3] {
    let t = |i: usize, j: usize| ctx.sub(ctx.mul(a[i], b[j]), ctx.mul(a[j], b[i]));
    [t(1, 2), t(2, 0), t(0, 1)]
}

pub fn dot(ctx: &FieldCtx, a: [Elem; 3], b: [Elem; 3]) -> Elem {
    ctx.add(ctx.add(ctx.mul(a[0], b[0]), ctx.mul(a[1], b[1])), ctx.mul(a[2], b[2]))
}

/// The conic, its nucleus, the `M_q` index and bisecant incidence.
#[derive(Clone, Debug)]
pub struct ConicModel {
    field: FieldCtx,
    q: u64,
    conic: Vec<ProjPoint>,
    nucleus: Option<ProjPoint>,
    /// Sorted plane indices of the points removed to form M_q.
    excluded: Vec<u64>,
    /// `excluded[j] - j`, nondecreasing; inverts the M_q index.
    excluded_shift: Vec<u64>,
    m_count: usize,
    bisecants: Option<Vec<u32>>,
}

impl ConicModel {
    pub fn new(field: FieldCtx) -> Result<Self> {
        build_conic_model(field)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Number of conic parameters, `q + 1`.
    pub fn n_params(&self) -> usize {
        self.q as usize + 1
    }

    pub fn infinity(&self) -> Param {
        self.q as Param
    }

    pub fn params(&self) -> impl Iterator<Item = Param> {
        0..=self.q as Param
    }

    pub fn conic_point(&self, t: Param) -> ProjPoint {
        self.conic[t as usize]
    }

    pub fn conic_points(&self) -> &[ProjPoint] {
        &self.conic
    }

    pub fn nucleus(&self) -> Option<ProjPoint> {
        self.nucleus
    }

    /// `|M_q|`.
    pub fn m_count(&self) -> usize {
        self.m_count
    }

    /// `|PG(2,q)| = q^2 + q + 1`.
    pub fn plane_size(&self) -> u64 {
        self.q * self.q + self.q + 1
    }

    pub fn has_bisecant_table(&self) -> bool {
        self.bisecants.is_some()
    }

    /// Lexicographic rank of a canonical point among all plane points.
    pub fn plane_index(&self, p: &ProjPoint) -> u64 {
        let q = self.q;
        match p.coords {
            [0, 0, _] => 0,
            [0, 1, b] => 1 + b,
            [_, a, b] => 1 + q + a * q + b,
        }
    }

    pub fn plane_point(&self, idx: u64) -> ProjPoint {
        let q = self.q;
        let coords = if idx == 0 {
            [0, 0, 1]
        } else if idx <= q {
            [0, 1, idx - 1]
        } else {
            let r = idx - 1 - q;
            [1, r / q, r % q]
        };
        ProjPoint { coords }
    }

    pub fn is_excluded(&self, p: &ProjPoint) -> bool {
        self.excluded.binary_search(&self.plane_index(p)).is_ok()
    }

    /// Index of `p` in `M_q`, or `None` for conic points and the nucleus.
    pub fn m_index(&self, p: &ProjPoint) -> Option<usize> {
        let idx = self.plane_index(p);
        match self.excluded.binary_search(&idx) {
            Ok(_) => None,
            Err(before) => Some((idx - before as u64) as usize),
        }
    }

    pub fn m_point(&self, m: usize) -> ProjPoint {
        // Number of excluded points preceding the answer.
        let k = self.excluded_shift.partition_point(|&d| d <= m as u64);
        self.plane_point(m as u64 + k as u64)
    }

    pub fn m_points(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        (0..self.m_count).map(|m| self.m_point(m))
    }

    /// Triangular index of the unordered pair `{t1, t2}`.
    pub fn pair_index(&self, t1: Param, t2: Param) -> usize {
        let (a, b) = if t1 < t2 { (t1, t2) } else { (t2, t1) };
        let (a, b) = (a as usize, b as usize);
        b * (b - 1) / 2 + a
    }

    pub fn n_pairs(&self) -> usize {
        let n = self.n_params();
        n * (n - 1) / 2
    }

    fn check_param(&self, t: Param) -> Result<()> {
        if (t as u64) <= self.q {
            Ok(())
        } else {
            Err(Error::BadParameter(t))
        }
    }

    /// Sorted `M_q` indices on the line through conic points `t1` and `t2`.
    pub fn bisecant_mpoints(&self, t1: Param, t2: Param) -> Result<Vec<u32>> {
        self.check_param(t1)?;
        self.check_param(t2)?;
        if t1 == t2 {
            return Err(Error::DuplicateParameter(t1));
        }
        Ok(self.bisecant(t1, t2).into_owned())
    }

    /// Unchecked bisecant lookup for the search hot paths.
    pub(crate) fn bisecant(&self, t1: Param, t2: Param) -> std::borrow::Cow<'_, [u32]> {
        let len = self.q as usize - 1;
        match &self.bisecants {
            Some(table) => {
                let k = self.pair_index(t1, t2);
                std::borrow::Cow::Borrowed(&table[k * len..(k + 1) * len])
            }
            None => std::borrow::Cow::Owned(self.compute_bisecant(t1, t2)),
        }
    }

    /// The line through A and B carries A, B and the q-1 points A + λB with
    /// λ ≠ 0; none of the latter is on the conic or is the nucleus.
    fn compute_bisecant(&self, t1: Param, t2: Param) -> Vec<u32> {
        let f = &self.field;
        let a = self.conic[t1 as usize].coords;
        let b = self.conic[t2 as usize].coords;
        let mut out: Vec<u32> = (1..self.q)
            .map(|lam| {
                let v = [0, 1, 2].map(|i| f.add(a[i], f.mul(lam, b[i])));
                let p = canon_point(f, v).expect("distinct points are independent");
                self.m_index(&p).expect("bisecant points lie in M_q") as u32
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Tangent line at conic parameter `t`, the gradient of `x0 x2 - x1^2`.
    pub fn tangent_line(&self, t: Param) -> [Elem; 3] {
        let f = &self.field;
        if t as u64 == self.q {
            return [1, 0, 0];
        }
        let t = t as Elem;
        let two_t = f.add(t, t);
        [f.mul(t, t), f.neg(two_t), 1]
    }

    pub fn tangent_count(&self, p: &ProjPoint) -> usize {
        self.params()
            .filter(|&t| dot(&self.field, self.tangent_line(t), p.coords) == 0)
            .count()
    }

    pub fn classify_point(&self, p: &ProjPoint) -> PointClass {
        let idx = self.plane_index(p);
        if self.conic.iter().any(|c| self.plane_index(c) == idx) {
            return PointClass::OnConic;
        }
        if self.nucleus.as_ref() == Some(p) {
            return PointClass::Nucleus;
        }
        if self.field.is_even() {
            return PointClass::MEven;
        }
        match self.tangent_count(p) {
            0 => PointClass::Internal,
            _ => PointClass::External,
        }
    }

    /// Second intersection with the conic of the line through `p` and the
    /// conic point `u`; `None` when that line is the tangent at `u`.
    ///
    /// Conic points on a line `l` are the roots of `l0 + l1 t + l2 t^2`, with
    /// infinity on `l` iff `l2 = 0`.
    pub fn partner(&self, p: &ProjPoint, u: Param) -> Option<Param> {
        let f = &self.field;
        let l = cross(f, p.coords, self.conic[u as usize].coords);
        if u as u64 == self.q {
            if l[1] == 0 {
                return None;
            }
            let v = f.neg(f.mul(l[0], f.inv(l[1]).ok()?));
            return Some(v as Param);
        }
        if l[2] == 0 {
            return Some(self.infinity());
        }
        let sum = f.neg(f.mul(l[1], f.inv(l[2]).ok()?));
        let v = f.sub(sum, u as Elem);
        if v == u as Elem {
            None
        } else {
            Some(v as Param)
        }
    }
}

pub fn build_conic_model(field: FieldCtx) -> Result<ConicModel> {
    let q = field.q();
    if !(4..=MAX_PLANE_Q).contains(&q) {
        return Err(Error::OrderOutOfRange { q, min: 4, max: MAX_PLANE_Q });
    }
    let mut conic: Vec<ProjPoint> = (0..q)
        .map(|t| ProjPoint {
            coords: [1, t, field.mul(t, t)],
        })
        .collect();
    conic.push(ProjPoint { coords: [0, 0, 1] });

    let mut model = ConicModel {
        field,
        q,
        conic,
        nucleus: None,
        excluded: Vec::new(),
        excluded_shift: Vec::new(),
        m_count: 0,
        bisecants: None,
    };

    if model.field.is_even() {
        // Two distinct tangents meet in the nucleus.
        let l0 = model.tangent_line(0);
        let l1 = model.tangent_line(1);
        let n = canon_point(&model.field, cross(&model.field, l0, l1))?;
        debug_assert!(model.params().all(|t| dot(&model.field, model.tangent_line(t), n.coords) == 0));
        model.nucleus = Some(n);
    }

    let mut excluded: Vec<u64> = model.conic.iter().map(|p| model.plane_index(p)).collect();
    if let Some(n) = model.nucleus {
        excluded.push(model.plane_index(&n));
    }
    excluded.sort_unstable();
    model.excluded_shift = excluded.iter().enumerate().map(|(j, &e)| e - j as u64).collect();
    model.m_count = (model.plane_size() - excluded.len() as u64) as usize;
    model.excluded = excluded;

    if q <= BISECANT_TABLE_MAX_Q {
        let len = q as usize - 1;
        let mut table = vec![0u32; model.n_pairs() * len];
        for b in 1..=q as Param {
            for a in 0..b {
                let k = model.pair_index(a, b);
                table[k * len..(k + 1) * len].copy_from_slice(&model.compute_bisecant(a, b));
            }
        }
        model.bisecants = Some(table);
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(q: u64) -> ConicModel {
        ConicModel::new(FieldCtx::with_order(q).unwrap()).unwrap()
    }

    fn plane_points(m: &ConicModel) -> Vec<ProjPoint> {
        (0..m.plane_size()).map(|i| m.plane_point(i)).collect()
    }

    #[test]
    fn canonical_points() {
        let f = FieldCtx::new(5, 1).unwrap();
        assert_eq!(canon_point(&f, [0, 2, 4]).unwrap().coords, [0, 1, 2]);
        assert_eq!(canon_point(&f, [1, 3, 4]).unwrap().coords, [1, 3, 4]);
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(canon_point(&f7, [3, 0, 0]).unwrap().coords, [1, 0, 0]);
        assert_eq!(canon_point(&f7, [0, 0, 0]), Err(Error::ZeroPoint));
        let p = canon_point(&f7, [4, 5, 6]).unwrap();
        assert_eq!(canon_point(&f7, p.coords).unwrap(), p);
    }

    #[test]
    fn counts() {
        let m5 = model(5);
        assert_eq!(m5.conic_points().len(), 6);
        assert_eq!(m5.m_count(), 25);
        assert!(m5.nucleus().is_none());
        let m8 = model(8);
        assert_eq!(m8.conic_points().len(), 9);
        assert_eq!(m8.m_count(), 63);
        assert_eq!(m8.nucleus().unwrap().coords, [0, 1, 0]);
        let m9 = model(9);
        assert_eq!(m9.n_pairs(), 45);
        for b in 1..=9 {
            for a in 0..b {
                assert_eq!(m9.bisecant_mpoints(a, b).unwrap().len(), 8);
            }
        }
        assert!(matches!(
            ConicModel::new(FieldCtx::with_order(3).unwrap()),
            Err(Error::OrderOutOfRange { .. })
        ));
    }

    #[test]
    fn m_index_roundtrip_and_order() {
        for q in [4u64, 5, 8, 9, 16] {
            let m = model(q);
            let mut last = None;
            for i in 0..m.m_count() {
                let p = m.m_point(i);
                assert_eq!(m.m_index(&p), Some(i));
                if let Some(prev) = last {
                    assert!(prev < p, "lexicographic order");
                }
                last = Some(p);
            }
            for c in m.conic_points() {
                assert_eq!(m.m_index(c), None);
            }
        }
    }

    #[test]
    fn bisecant_through_zero_and_infinity() {
        let m = model(5);
        let got = m.bisecant_mpoints(0, 5).unwrap();
        let f = m.field();
        let mut want: Vec<u32> = (1..5)
            .map(|s| m.m_index(&canon_point(f, [1, 0, s]).unwrap()).unwrap() as u32)
            .collect();
        want.sort();
        assert_eq!(got, want);
        assert!(m.bisecant_mpoints(2, 2).is_err());
        assert!(m.bisecant_mpoints(0, 6).is_err());
    }

    /// Brute force: P is on the line through C(t1), C(t2) iff the 3x3
    /// determinant vanishes.
    fn brute_bisecant(m: &ConicModel, t1: Param, t2: Param) -> Vec<u32> {
        let f = m.field();
        let a = m.conic_point(t1).coords;
        let b = m.conic_point(t2).coords;
        let l = cross(f, a, b);
        (0..m.m_count())
            .filter(|&i| dot(f, l, m.m_point(i).coords) == 0)
            .map(|i| i as u32)
            .collect()
    }

    #[test]
    fn bisecants_match_brute_force() {
        for q in [7u64, 8, 9] {
            let m = model(q);
            for b in 1..=q as Param {
                for a in 0..b {
                    assert_eq!(m.bisecant_mpoints(a, b).unwrap(), brute_bisecant(&m, a, b));
                }
            }
        }
        // Streamed path above the table threshold.
        let big = model(257);
        assert!(!big.has_bisecant_table());
        assert_eq!(big.bisecant_mpoints(3, 200).unwrap(), brute_bisecant(&big, 3, 200));
    }

    #[test]
    fn lines_carry_q_plus_one_points() {
        for q in [4u64, 5, 7, 8, 9, 11, 13] {
            let m = model(q);
            let f = m.field();
            let pts = plane_points(&m);
            // Every line is the cross product of two of its points; check
            // all lines through pairs drawn from a sample of points.
            for (i, a) in pts.iter().enumerate().step_by(3) {
                for b in pts.iter().skip(i + 1).step_by(5) {
                    let l = cross(f, a.coords, b.coords);
                    let on: Vec<_> = pts.iter().filter(|p| dot(f, l, p.coords) == 0).collect();
                    assert_eq!(on.len() as u64, q + 1);
                    assert!(on.contains(&a) && on.contains(&b));
                }
            }
        }
    }

    #[test]
    fn conic_is_an_arc() {
        for q in [5u64, 8, 9] {
            let m = model(q);
            let f = m.field();
            let c = m.conic_points();
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    let l = cross(f, c[i].coords, c[j].coords);
                    let on = c.iter().filter(|p| dot(f, l, p.coords) == 0).count();
                    assert_eq!(on, 2);
                }
            }
        }
    }

    #[test]
    fn tangents_meet_conic_once() {
        for q in [5u64, 7, 8, 9, 16] {
            let m = model(q);
            let f = m.field();
            for t in m.params() {
                let l = m.tangent_line(t);
                let on: Vec<_> = m.params().filter(|&s| dot(f, l, m.conic_point(s).coords) == 0).collect();
                assert_eq!(on, vec![t]);
            }
        }
    }

    #[test]
    fn bisecant_union_is_m() {
        for q in crate::primes::prime_powers_in(4, 32) {
            let m = model(q);
            let mut hit = vec![false; m.m_count()];
            for b in 1..=q as Param {
                for a in 0..b {
                    let pts = m.bisecant_mpoints(a, b).unwrap();
                    assert_eq!(pts.len() as u64, q - 1);
                    for i in pts {
                        hit[i as usize] = true;
                    }
                }
            }
            assert!(hit.iter().all(|&h| h), "q = {q}");
        }
    }

    #[test]
    fn nucleus_is_on_every_tangent() {
        for q in [4u64, 8, 16, 32] {
            let m = model(q);
            let n = m.nucleus().unwrap();
            for t in m.params() {
                assert_eq!(dot(m.field(), m.tangent_line(t), n.coords), 0);
            }
        }
    }

    #[test]
    fn classification_counts() {
        let m = model(5);
        let classes: Vec<_> = m.m_points().map(|p| m.classify_point(&p)).collect();
        assert_eq!(classes.iter().filter(|&&c| c == PointClass::External).count(), 15);
        assert_eq!(classes.iter().filter(|&&c| c == PointClass::Internal).count(), 10);

        let m8 = model(8);
        for p in m8.m_points() {
            assert_eq!(m8.classify_point(&p), PointClass::MEven);
            assert_eq!(m8.tangent_count(&p), 1);
        }
        assert_eq!(m8.classify_point(&m8.nucleus().unwrap()), PointClass::Nucleus);

        let m7 = model(7);
        let p = canon_point(m7.field(), [1, 3, 2]).unwrap();
        assert_eq!(m7.classify_point(&p), PointClass::OnConic);
        for p in m7.m_points() {
            let n = m7.tangent_count(&p);
            assert!(n == 0 || n == 2);
        }
    }

    #[test]
    fn partner_matches_brute_force() {
        for q in [5u64, 8, 9] {
            let m = model(q);
            let f = m.field();
            for p in m.m_points().step_by(2) {
                for u in m.params() {
                    let l = cross(f, p.coords, m.conic_point(u).coords);
                    let others: Vec<Param> = m
                        .params()
                        .filter(|&s| s != u && dot(f, l, m.conic_point(s).coords) == 0)
                        .collect();
                    assert_eq!(m.partner(&p, u), others.first().copied());
                }
            }
        }
    }
}
