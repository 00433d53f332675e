use crate::error::{Error, Result};
use crate::geometry::{ConicModel, Param};

/// A growing subset `K_w` of the conic together with the set of `M_q`
/// points lying on its bisecants.
#[derive(Clone, Debug)]
pub struct CoverageState<'m> {
    model: &'m ConicModel,
    chosen: Vec<Param>,
    in_chosen: Vec<bool>,
    covered: Vec<u64>,
    uncovered: usize,
}

impl<'m> CoverageState<'m> {
    pub fn new(model: &'m ConicModel) -> Self {
        CoverageState {
            model,
            chosen: Vec::new(),
            in_chosen: vec![false; model.n_params()],
            covered: vec![0; model.m_count().div_ceil(64)],
            uncovered: model.m_count(),
        }
    }

    pub fn from_subset(model: &'m ConicModel, subset: &[Param]) -> Result<Self> {
        let mut s = Self::new(model);
        for &t in subset {
            s.add(t)?;
        }
        Ok(s)
    }

    pub fn model(&self) -> &'m ConicModel {
        self.model
    }

    pub fn chosen(&self) -> &[Param] {
        &self.chosen
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    pub fn is_chosen(&self, t: Param) -> bool {
        self.in_chosen.get(t as usize).copied().unwrap_or(false)
    }

    #[inline]
    pub fn is_covered(&self, m: usize) -> bool {
        self.covered[m / 64] >> (m % 64) & 1 == 1
    }

    pub fn uncovered_count(&self) -> usize {
        self.uncovered
    }

    pub fn covered_count(&self) -> usize {
        self.model.m_count() - self.uncovered
    }

    /// Every point of `M_q` is covered.
    pub fn is_complete(&self) -> bool {
        self.uncovered == 0
    }

    pub fn covered_words(&self) -> &[u64] {
        &self.covered
    }

    pub fn uncovered_points(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.model.m_count()).filter(|&m| !self.is_covered(m))
    }

    fn check_new(&self, t: Param) -> Result<()> {
        if t as usize >= self.model.n_params() {
            return Err(Error::BadParameter(t));
        }
        if self.in_chosen[t as usize] {
            return Err(Error::DuplicateParameter(t));
        }
        Ok(())
    }

    /// Number of points `add(t)` would newly cover.
    pub fn gain(&self, t: Param) -> Result<usize> {
        self.check_new(t)?;
        // Bisecants through t meet only in t, which is not in M_q, so their
        // point sets are disjoint.
        Ok(self
            .chosen
            .iter()
            .map(|&s| self.model.bisecant(t, s).iter().filter(|&&i| !self.is_covered(i as usize)).count())
            .sum())
    }

    /// Appends `t` and returns the number of newly covered points.
    pub fn add(&mut self, t: Param) -> Result<usize> {
        self.add_inner(t, None)
    }

    /// As [`add`](Self::add), also appending the newly covered indices.
    pub fn add_collect(&mut self, t: Param, newly: &mut Vec<u32>) -> Result<usize> {
        self.add_inner(t, Some(newly))
    }

    fn add_inner(&mut self, t: Param, mut newly: Option<&mut Vec<u32>>) -> Result<usize> {
        self.check_new(t)?;
        let mut delta = 0;
        for k in 0..self.chosen.len() {
            let s = self.chosen[k];
            for &i in self.model.bisecant(t, s).iter() {
                let (w, b) = (i as usize / 64, i % 64);
                if self.covered[w] >> b & 1 == 0 {
                    self.covered[w] |= 1 << b;
                    delta += 1;
                    if let Some(v) = newly.as_deref_mut() {
                        v.push(i);
                    }
                }
            }
        }
        self.chosen.push(t);
        self.in_chosen[t as usize] = true;
        self.uncovered -= delta;
        Ok(delta)
    }
}

/// A proper subset of the conic covering every point of `M_q`. Invalid
/// input (repeats, out-of-range parameters) is not almost complete.
pub fn is_ac_subset(model: &ConicModel, subset: &[Param]) -> bool {
    if subset.len() >= model.n_params() {
        return false;
    }
    match CoverageState::from_subset(model, subset) {
        Ok(s) => s.is_complete(),
        Err(_) => false,
    }
}

/// No single deletion leaves an almost complete subset. Since supersets of
/// almost complete subsets are almost complete (while proper), this is
/// equivalent to containing no smaller AC-subset.
pub fn is_minimal_ac(model: &ConicModel, subset: &[Param]) -> Result<bool> {
    if !is_ac_subset(model, subset) {
        return Err(Error::NotAlmostComplete);
    }
    let minimal = (0..subset.len()).all(|skip| {
        let rest: Vec<Param> = subset
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &t)| t)
            .collect();
        !is_ac_subset(model, &rest)
    });
    Ok(minimal)
}
