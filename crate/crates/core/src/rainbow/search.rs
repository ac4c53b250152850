use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::verify;
use crate::error::{invalid, Error, Result};
use crate::graph::{Colour, Colouring, DirectedHamCycle, Edge, Graph, ProtectedSet};
use crate::hamilton::{find_ham_cycle, HamOutcome, SearchBudget};
use crate::seed::derive_seed;
use crate::switching::{apply_switching, SwitchContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    /// Switching steps per restart.
    pub max_steps: u64,
    pub restarts: usize,
    pub seed: u64,
    /// Record the admissible-switching count and conflict count at every step.
    pub beta_report: bool,
    /// Budget for finding each starting Hamilton cycle.
    pub start_budget: SearchBudget,
    /// Rejection-sampling draws before falling back to enumeration.
    pub sample_attempts: usize,
    /// Run restarts on the rayon pool.
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_steps: 100_000,
            restarts: 20,
            seed: 0,
            beta_report: false,
            start_budget: SearchBudget::default(),
            sample_attempts: 64,
            parallel: true,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_steps == 0 || self.restarts == 0 {
            return invalid("max_steps and restarts must be positive");
        }
        self.start_budget.validate()
    }
}

/// Two cycle edges of the same colour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflictPair {
    pub e: Edge,
    pub f: Edge,
}

/// All same-coloured pairs of cycle edges, ordered by colour then edge.
pub fn conflict_pairs(c: &Colouring, h: &DirectedHamCycle) -> Vec<ConflictPair> {
    let mut by_colour: Vec<(Colour, Edge)> = h.edges().into_iter().map(|e| (c.colour_of(e).expect("cycle edge coloured"), e)).collect();
    by_colour.sort_unstable();
    let mut pairs = Vec::new();
    let mut i = 0;
    while i < by_colour.len() {
        let mut k = i;
        while k < by_colour.len() && by_colour[k].0 == by_colour[i].0 {
            k += 1;
        }
        for x in i..k {
            for y in x + 1..k {
                pairs.push(ConflictPair { e: by_colour[x].1, f: by_colour[y].1 });
            }
        }
        i = k;
    }
    pairs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RestartStatus {
    Success,
    StepCap,
    /// Neither edge of a conflict pair had an admissible switching.
    Stuck,
    /// No starting Hamilton cycle through `Z` was found.
    NoStart,
    /// A lower-indexed restart already succeeded.
    Cancelled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestartReport {
    pub index: usize,
    pub status: RestartStatus,
    pub steps: u64,
    pub initial_conflicts: Option<usize>,
    pub final_conflicts: Option<usize>,
    /// Per-step admissible counts for the switched edge, when requested.
    pub admissible: Vec<usize>,
    /// Per-step conflict-pair counts, when requested.
    pub conflicts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub seed: u64,
    pub restarts: Vec<RestartReport>,
    pub success_restart: Option<usize>,
}

impl SearchReport {
    pub fn total_steps(&self) -> u64 {
        self.restarts.iter().map(|r| r.steps).sum()
    }

    /// All recorded admissible counts, sorted.
    pub fn admissible_counts(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.restarts.iter().flat_map(|r| r.admissible.iter().copied()).collect();
        all.sort_unstable();
        all
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub cycle: Option<DirectedHamCycle>,
    pub report: SearchReport,
}

/// Resampling search for a rainbow Hamilton cycle through `z`, each restart
/// starting from a freshly found Hamilton cycle.
pub fn switching_search(g: &Graph, c: &Colouring, z: &ProtectedSet, cfg: &SearchConfig) -> Result<SearchResult> {
    run(g, c, z, None, cfg)
}

/// As [`switching_search`], with every restart starting from `start`.
pub fn switching_search_from(
    g: &Graph,
    c: &Colouring,
    z: &ProtectedSet,
    start: &DirectedHamCycle,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    if !crate::graph::validate_ham_cycle(g, start, z)? {
        return invalid("start cycle is not a Hamilton cycle of g through z");
    }
    run(g, c, z, Some(start), cfg)
}

fn run(g: &Graph, c: &Colouring, z: &ProtectedSet, start: Option<&DirectedHamCycle>, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    z.check_in(g)?;
    if g.edges().iter().any(|e| c.colour_of(*e).is_none()) {
        return invalid("colouring does not cover the graph");
    }
    let best = AtomicUsize::new(usize::MAX);
    let task = |r: usize| -> (RestartReport, Option<DirectedHamCycle>) { restart(g, c, z, start, cfg, r, &best) };
    let results: Vec<(RestartReport, Option<DirectedHamCycle>)> = if cfg.parallel {
        (0..cfg.restarts).into_par_iter().map(task).collect()
    } else {
        let mut out = Vec::new();
        for r in 0..cfg.restarts {
            let res = task(r);
            let done = res.1.is_some();
            out.push(res);
            if done {
                break;
            }
        }
        out
    };
    let mut reports = Vec::with_capacity(results.len());
    let mut found = None;
    for (rep, cyc) in results {
        if found.is_none() {
            if let Some(h) = cyc {
                found = Some((rep.index, h));
            }
        }
        // Restarts beyond the winner are not part of the record.
        if found.as_ref().map_or(true, |(i, _)| rep.index <= *i) {
            reports.push(rep);
        }
    }
    if found.is_none() && reports.iter().all(|r| r.status == RestartStatus::NoStart) {
        return Err(Error::NoStart("no Hamilton cycle through the protected edges was found".into()));
    }
    let success_restart = found.as_ref().map(|(i, _)| *i);
    Ok(SearchResult {
        cycle: found.map(|(_, h)| h),
        report: SearchReport { seed: cfg.seed, restarts: reports, success_restart },
    })
}

fn restart(
    g: &Graph,
    c: &Colouring,
    z: &ProtectedSet,
    start: Option<&DirectedHamCycle>,
    cfg: &SearchConfig,
    index: usize,
    best: &AtomicUsize,
) -> (RestartReport, Option<DirectedHamCycle>) {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, index as u64));
    let mut report = RestartReport {
        index,
        status: RestartStatus::StepCap,
        steps: 0,
        initial_conflicts: None,
        final_conflicts: None,
        admissible: Vec::new(),
        conflicts: Vec::new(),
    };
    let cancelled = || best.load(Ordering::Relaxed) < index;
    if cancelled() {
        report.status = RestartStatus::Cancelled;
        return (report, None);
    }
    let start_seed: u64 = rng.gen();
    let mut h = match start {
        Some(h) => h.clone(),
        None => match find_ham_cycle(g, z, cfg.start_budget, start_seed) {
            Ok(HamOutcome::Found(h)) => h,
            _ => {
                report.status = RestartStatus::NoStart;
                return (report, None);
            }
        },
    };
    loop {
        let pairs = conflict_pairs(c, &h);
        if report.initial_conflicts.is_none() {
            report.initial_conflicts = Some(pairs.len());
        }
        if pairs.is_empty() {
            report.final_conflicts = Some(0);
            debug_assert!(verify(g, c, &h, z));
            report.status = RestartStatus::Success;
            best.fetch_min(index, Ordering::Relaxed);
            return (report, Some(h));
        }
        if report.steps >= cfg.max_steps {
            report.final_conflicts = Some(pairs.len());
            report.status = RestartStatus::StepCap;
            return (report, None);
        }
        if report.steps % 256 == 0 && cancelled() {
            report.final_conflicts = Some(pairs.len());
            report.status = RestartStatus::Cancelled;
            return (report, None);
        }
        if cfg.beta_report {
            report.conflicts.push(pairs.len());
        }
        let pair = pairs[rng.gen_range(0..pairs.len())];
        let mut order: Vec<Edge> = [pair.e, pair.f].into_iter().filter(|e| !z.contains(*e)).collect();
        order.shuffle(&mut rng);
        // Either orientation of the cycle describes it equally well.
        if rng.gen_bool(0.5) {
            h = h.reverse();
        }
        let mut moved = false;
        for e in order {
            let tail = h.tail_of(e).expect("conflict edge on cycle");
            let ctx = SwitchContext::new(g, &h, z, tail);
            if cfg.beta_report {
                report.admissible.push(ctx.count());
            }
            if let Some(spec) = ctx.sample(&mut rng, cfg.sample_attempts) {
                let next = apply_switching(&h, &spec).expect("accepted switching applies");
                debug_assert!(z.edges().iter().all(|&f| next.contains(f)));
                h = next;
                moved = true;
                break;
            }
        }
        report.steps += 1;
        if !moved {
            report.final_conflicts = Some(pairs.len());
            report.status = RestartStatus::Stuck;
            return (report, None);
        }
    }
}
