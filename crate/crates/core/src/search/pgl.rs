//! PGL(2,q) acting on conic parameters.
//!
//! The conic is the image of the projective line under (s:t) ↦ (s², st, t²),
//! so every 2x2 invertible matrix on (s:t) induces a collineation fixing the
//! conic (and therefore its nucleus, `M_q` and the set of bisecants). The
//! action on parameters is sharply 3-transitive, which gives a canonical
//! form for subsets: map each ordered triple of the subset to (0, 1, ∞) and
//! keep the lexicographically smallest sorted image.

use crate::field::{Elem, FieldCtx};
use crate::geometry::Param;

/// `(x0 : x1) ↦ (a x0 + b x1 : c x0 + d x1)`, where parameter `t` is
/// `(1 : t)` and infinity is `(0 : 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
}

fn homogeneous(q: u64, t: Param) -> (Elem, Elem) {
    if t as u64 == q {
        (0, 1)
    } else {
        (1, t as Elem)
    }
}

impl Mobius {
    pub fn apply(&self, f: &FieldCtx, t: Param) -> Param {
        let (x0, x1) = homogeneous(f.q(), t);
        let y0 = f.add(f.mul(self.a, x0), f.mul(self.b, x1));
        let y1 = f.add(f.mul(self.c, x0), f.mul(self.d, x1));
        if y0 == 0 {
            f.q() as Param
        } else {
            f.mul(y1, f.inv(y0).expect("nonzero")) as Param
        }
    }

    pub fn determinant(&self, f: &FieldCtx) -> Elem {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    /// The unique element sending `z0 → 0`, `z1 → 1`, `z_inf → ∞`.
    pub fn to_standard(f: &FieldCtx, z0: Param, z1: Param, z_inf: Param) -> Mobius {
        let q = f.q();
        let (p1x, p1y) = homogeneous(q, z0);
        let (p2x, p2y) = homogeneous(q, z1);
        let (p3x, p3y) = homogeneous(q, z_inf);
        // Write P2 = λ P1 + μ P3 (scaled by the common determinant); the
        // matrix [λP1 | μP3] sends (1:0), (0:1), (1:1) to P1, P3, P2, and
        // its adjugate is the inverse up to a scalar.
        let lam = f.sub(f.mul(p2x, p3y), f.mul(p3x, p2y));
        let mu = f.sub(f.mul(p1x, p2y), f.mul(p2x, p1y));
        Mobius {
            a: f.mul(mu, p3y),
            b: f.neg(f.mul(mu, p3x)),
            c: f.neg(f.mul(lam, p1y)),
            d: f.mul(lam, p1x),
        }
    }
}

/// Canonical representative of the PGL(2,q) orbit of a subset with at least
/// three elements. The result is sorted and contains `0`, `1` and `q`.
pub fn canonical_form(f: &FieldCtx, subset: &[Param]) -> Vec<Param> {
    let mut best: Option<Vec<Param>> = None;
    let mut img = Vec::with_capacity(subset.len());
    for &a in subset {
        for &b in subset {
            if b == a {
                continue;
            }
            for &c in subset {
                if c == a || c == b {
                    continue;
                }
                let g = Mobius::to_standard(f, a, b, c);
                img.clear();
                img.extend(subset.iter().map(|&t| g.apply(f, t)));
                img.sort_unstable();
                if best.as_ref().is_none_or(|cur| img < *cur) {
                    best = Some(img.clone());
                }
            }
        }
    }
    best.expect("subset has at least three elements")
}

/// Number of group elements fixing `subset` setwise.
pub fn stabilizer_order(f: &FieldCtx, subset: &[Param]) -> usize {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    let mut count = 0;
    for &a in subset {
        for &b in subset {
            for &c in subset {
                if a == b || b == c || a == c {
                    continue;
                }
                let g = Mobius::to_standard(f, a, b, c);
                let mut img: Vec<Param> = sorted.iter().map(|&t| g.apply(f, t)).collect();
                img.sort_unstable();
                if img == sorted {
                    count += 1;
                }
            }
        }
    }
    count
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

/// Canonical representatives of all PGL(2,q) orbits of `size`-subsets of
/// the conic (`size >= 3`), in increasing lexicographic order.
pub fn orbit_representatives(f: &FieldCtx, size: usize) -> Vec<Vec<Param>> {
    let q = f.q() as Param;
    assert!(size >= 3 && size as u64 <= f.q() + 1);
    let rest: Vec<Param> = (2..q).collect();
    let k = size - 3;
    let mut reps = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > rest.len() {
        return reps;
    }
    loop {
        let mut s: Vec<Param> = vec![0, 1];
        s.extend(idx.iter().map(|&i| rest[i]));
        s.push(q);
        if canonical_form(f, &s) == s {
            reps.push(s);
        }
        if k == 0 || !next_combination(&mut idx, rest.len()) {
            break;
        }
    }
    reps
}
