//! Step-by-step constructions: the deterministic greedy algorithm and its
//! randomized, restarted variant.

use std::sync::atomic::{AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::coverage::{is_ac_subset, CoverageState};
use super::{SearchResult, StepRecord};
use crate::error::{Error, Result};
use crate::geometry::{ConicModel, Param};

/// Default probability of a fully random step.
pub const DEFAULT_RANDOM_STEP_PROB: f64 = 0.1;

/// Coverage state plus the current gain `Δ(y)` of every unchosen candidate,
/// maintained incrementally.
struct GainTracker<'m> {
    state: CoverageState<'m>,
    gain: Vec<usize>,
    newly: Vec<u32>,
    log: Vec<StepRecord>,
}

impl<'m> GainTracker<'m> {
    fn new(model: &'m ConicModel) -> Self {
        GainTracker {
            state: CoverageState::new(model),
            gain: vec![0; model.n_params()],
            newly: Vec::new(),
            log: Vec::new(),
        }
    }

    fn add(&mut self, x: Param) -> Result<usize> {
        let model = self.state.model();
        let w = self.state.len();
        self.newly.clear();
        let delta = self.state.add_collect(x, &mut self.newly)?;

        // A newly covered P stops counting towards Δ(v) wherever v is the
        // second conic point on the line through P and a previously chosen s.
        let old = &self.state.chosen()[..w];
        for &m in &self.newly {
            let p = model.m_point(m as usize);
            for &s in old {
                if let Some(v) = model.partner(&p, s) {
                    if !self.state.is_chosen(v) {
                        self.gain[v as usize] -= 1;
                    }
                }
            }
        }
        self.gain[x as usize] = 0;

        // New bisecants (x, y) for every candidate y.
        for y in model.params() {
            if self.state.is_chosen(y) {
                continue;
            }
            let extra = model
                .bisecant(x, y)
                .iter()
                .filter(|&&i| !self.state.is_covered(i as usize))
                .count();
            self.gain[y as usize] += extra;
        }

        self.log.push(StepRecord {
            w,
            delta,
            uncovered: self.state.uncovered_count(),
        });
        Ok(delta)
    }

    fn candidates(&self) -> impl Iterator<Item = Param> + '_ {
        self.state.model().params().filter(|&y| !self.state.is_chosen(y))
    }

    fn best_gain(&self) -> Option<usize> {
        self.candidates().map(|y| self.gain[y as usize]).max()
    }

    fn into_result(self, seed: Option<u64>, restarts: u32) -> SearchResult {
        let model = self.state.model();
        let witness = self.state.chosen().to_vec();
        SearchResult {
            q: model.q(),
            size: witness.len(),
            is_ac: is_ac_subset(model, &witness),
            witness,
            is_minimal: None,
            seed,
            restarts,
            step_log: self.log,
        }
    }
}

/// Greedy completion of `start`: repeatedly add the candidate covering the
/// most new points, breaking ties by the smallest parameter code.
pub fn greedy_search(model: &ConicModel, start: &[Param]) -> Result<SearchResult> {
    let mut run = GainTracker::new(model);
    for &t in start {
        run.add(t)?;
    }
    while !run.state.is_complete() {
        let Some(best) = run.best_gain() else { break };
        let pick = run
            .candidates()
            .find(|&y| run.gain[y as usize] == best)
            .expect("a candidate attains the maximum");
        run.add(pick)?;
    }
    Ok(run.into_result(None, 1))
}

/// Settings for [`randomized_greedy`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomizedConfig {
    pub seed: u64,
    pub restarts: u32,
    pub random_step_prob: f64,
}

impl Default for RandomizedConfig {
    fn default() -> Self {
        RandomizedConfig {
            seed: 1,
            restarts: 200,
            random_step_prob: DEFAULT_RANDOM_STEP_PROB,
        }
    }
}

/// The PRNG stream of one restart.
pub fn restart_rng(seed: u64, restart: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// One randomized greedy run. Returns `None` once the subset grows to
/// `abandon_at` points without being almost complete.
fn randomized_run<'m>(model: &'m ConicModel, rng: &mut ChaCha8Rng, prob: f64, abandon_at: usize) -> Option<GainTracker<'m>> {
    let mut run = GainTracker::new(model);
    let mut ties: Vec<Param> = Vec::with_capacity(model.n_params());
    while !run.state.is_complete() {
        if run.state.len() >= abandon_at {
            return None;
        }
        ties.clear();
        if prob > 0.0 && rng.random_bool(prob) {
            ties.extend(run.candidates());
        } else {
            let best = run.best_gain()?;
            ties.extend(run.candidates().filter(|&y| run.gain[y as usize] == best));
        }
        let pick = ties[rng.random_range(0..ties.len())];
        run.add(pick).expect("candidates are unchosen");
    }
    Some(run)
}

/// Restarted randomized greedy search. Each restart draws from its own
/// stream of a ChaCha generator keyed by `seed`, so the result depends only
/// on the configuration, not on scheduling. The smallest AC-subset wins,
/// ties going to the lowest restart index.
pub fn randomized_greedy(model: &ConicModel, cfg: &RandomizedConfig) -> Result<SearchResult> {
    if cfg.restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&cfg.random_step_prob) {
        return Err(Error::InvalidArgument(format!(
            "random step probability {} is not in [0, 1]",
            cfg.random_step_prob
        )));
    }
    // Upper bound on the size worth finishing: a run reaching the current
    // best without being complete ends strictly larger.
    let best = AtomicUsize::new(model.n_params());
    let found: Vec<(usize, u32, GainTracker<'_>)> = (0..cfg.restarts)
        .into_par_iter()
        .filter_map(|r| {
            let mut rng = restart_rng(cfg.seed, r);
            let run = randomized_run(model, &mut rng, cfg.random_step_prob, best.load(Ordering::Relaxed))?;
            let size = run.state.len();
            if size >= model.n_params() {
                return None;
            }
            best.fetch_min(size, Ordering::Relaxed);
            Some((size, r, run))
        })
        .collect();
    let (_, _, run) = found
        .into_iter()
        .min_by_key(|(size, r, _)| (*size, *r))
        .expect("the first restart always completes");
    Ok(run.into_result(Some(cfg.seed), cfg.restarts))
}
