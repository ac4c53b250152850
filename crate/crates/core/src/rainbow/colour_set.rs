use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fraction::Fraction;
use crate::graph::Colour;
use crate::seed::derive_seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    /// Every colour occurs at most `μn` times over all multisets together.
    pub mu: Fraction,
    /// Every multiset has at least `νn` elements.
    pub nu: Fraction,
    /// Colours required from each group.
    pub b: usize,
    /// Fraction of each multiset the selection may remove.
    pub eta: Fraction,
}

/// Multisets `C_1..C_m` of colours and disjoint groups `U_1..U_ℓ` of size `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColourMultisetFamily {
    n: usize,
    sets: Vec<Vec<Colour>>,
    groups: Vec<Vec<Colour>>,
    a: usize,
    params: FamilyParams,
}

impl ColourMultisetFamily {
    pub fn new(n: usize, sets: Vec<Vec<Colour>>, groups: Vec<Vec<Colour>>, params: FamilyParams) -> Result<Self> {
        let FamilyParams { mu, nu, b, eta } = params;
        if n == 0 {
            return invalid("family needs n >= 1");
        }
        if mu <= Fraction::zero() || nu <= Fraction::zero() || eta <= Fraction::zero() || eta > Fraction::one() {
            return invalid("family parameters need mu, nu > 0 and 0 < eta <= 1");
        }
        let a = groups.first().map_or(0, Vec::len);
        if a == 0 || groups.iter().any(|g| g.len() != a) {
            return invalid("groups must be non-empty and of equal size");
        }
        if b == 0 || b > a {
            return invalid(format!("b = {b} must lie in 1..={a}"));
        }
        let mut groups = groups;
        let mut seen = std::collections::BTreeSet::new();
        for g in &mut groups {
            g.sort_unstable();
            if g.windows(2).any(|w| w[0] == w[1]) || g.iter().any(|c| !seen.insert(*c)) {
                return invalid("groups must be disjoint sets");
            }
        }
        let mut sets = sets;
        let mut total: BTreeMap<Colour, usize> = BTreeMap::new();
        for (i, s) in sets.iter_mut().enumerate() {
            s.sort_unstable();
            if !nu.le_count(n, s.len()) || s.len() > n {
                return invalid(format!("multiset {i} has size {} outside [νn, n]", s.len()));
            }
            for &c in s.iter() {
                *total.entry(c).or_default() += 1;
            }
        }
        if let Some((c, t)) = total.iter().find(|(_, &t)| !mu.ge_count(n, t)) {
            return invalid(format!("colour {c} occurs {t} times, above μn"));
        }
        Ok(ColourMultisetFamily { n, sets, groups, a, params })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<Colour>] {
        &self.sets
    }

    pub fn groups(&self) -> &[Vec<Colour>] {
        &self.groups
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn params(&self) -> FamilyParams {
        self.params
    }

    /// `min(η/8, 1/(2ab))`.
    pub fn default_delta(&self) -> Fraction {
        let p = self.params;
        let d1 = p.eta.div_int(8);
        let d2 = Fraction::new(1, 2 * (self.a * p.b) as i64);
        d1.min(d2)
    }
}

/// Direct check of `T ⊆ U`, `|T ∩ U_k| ≥ b` and `|C_i ∖⁺ T| ≥ (1 − η)|C_i|`.
pub fn verify_selection(fam: &ColourMultisetFamily, t: &[Colour]) -> bool {
    let in_t: std::collections::BTreeSet<Colour> = t.iter().copied().collect();
    let in_u = |c: &Colour| fam.groups.iter().any(|g| g.binary_search(c).is_ok());
    if !in_t.iter().all(in_u) {
        return false;
    }
    let b = fam.params.b;
    if !fam.groups.iter().all(|g| g.iter().filter(|c| in_t.contains(c)).count() >= b) {
        return false;
    }
    fam.sets.iter().all(|s| {
        let removed = s.iter().filter(|c| in_t.contains(c)).count();
        fam.params.eta.ge_count(s.len(), removed)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectConfig {
    /// Fresh starts, each with twice the previous sampling probability.
    pub max_attempts: usize,
    /// Resampling rounds per attempt.
    pub max_rounds: usize,
}

impl Default for SelectConfig {
    fn default() -> Self {
        SelectConfig { max_attempts: 8, max_rounds: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColourSelection {
    /// Sorted.
    pub t: Vec<Colour>,
    pub delta: Fraction,
    /// Attempt index that succeeded.
    pub attempt: usize,
    pub resamplings: usize,
    /// Whether every bad event was avoided, not only the postcondition.
    pub events_clear: bool,
}

struct Event {
    /// Indices into the flattened `U`.
    support: Vec<usize>,
    kind: EventKind,
}

enum EventKind {
    /// `|T ∩ U_k| < b`.
    Deficit,
    /// `|S_i^j ∩ T| ≥ 2δ s_i^j`.
    Activated { s: usize },
}

/// Dyadic strata of a multiset: stratum `j ≥ 1` holds the colours with
/// `2^{-j} μn ≤ mult ≤ 2^{-(j-1)} μn` (lowest `j` on boundaries), capped at
/// `s = ⌈log₂ μn⌉`.
fn strata(set: &[Colour], mu: Fraction, n: usize) -> BTreeMap<u32, Vec<Colour>> {
    let mu_n_num = mu.numer() as u128 * n as u128;
    let den = mu.denom() as u128;
    // s = ⌈log₂(μn)⌉, at least 1
    let mut s = 1u32;
    while (1u128 << s) * den < mu_n_num {
        s += 1;
    }
    let mut out: BTreeMap<u32, Vec<Colour>> = BTreeMap::new();
    let mut i = 0;
    while i < set.len() {
        let c = set[i];
        let mut k = i;
        while k < set.len() && set[k] == c {
            k += 1;
        }
        let mult = (k - i) as u128;
        let mut j = 1u32;
        while j < s && mult * (1u128 << j) * den < mu_n_num {
            j += 1;
        }
        out.entry(j).or_default().push(c);
        i = k;
    }
    out
}

fn build_events(fam: &ColourMultisetFamily, index: &BTreeMap<Colour, usize>) -> Vec<Event> {
    let mut events = Vec::new();
    let mut offset = 0;
    for g in &fam.groups {
        events.push(Event { support: (offset..offset + g.len()).collect(), kind: EventKind::Deficit });
        offset += g.len();
    }
    let mu = fam.params.mu;
    for set in &fam.sets {
        for (j, colours) in strata(set, mu, fam.n) {
            let s = colours.len() as u128;
            // dense: s ≥ 2^{(j-1)/2} μ^{-1/2}  ⇔  s²μ ≥ 2^{j-1}
            let dense = s * s * mu.numer() as u128 >= (1u128 << (j - 1)) * mu.denom() as u128;
            let support: Vec<usize> = colours.iter().filter_map(|c| index.get(c).copied()).collect();
            if dense && !support.is_empty() {
                events.push(Event { support, kind: EventKind::Activated { s: colours.len() } });
            }
        }
    }
    events
}

/// Random `δ`-sampling of `U` with Moser–Tardos resampling of violated
/// group-deficit and activation events, followed by a direct check of the
/// postcondition. Each failed attempt doubles `δ` and draws fresh randomness.
pub fn select_colour_set(fam: &ColourMultisetFamily, seed: u64) -> Result<ColourSelection> {
    select_colour_set_with(fam, seed, SelectConfig::default())
}

pub fn select_colour_set_with(fam: &ColourMultisetFamily, seed: u64, cfg: SelectConfig) -> Result<ColourSelection> {
    let universe: Vec<Colour> = fam.groups.iter().flatten().copied().collect();
    let index: BTreeMap<Colour, usize> = universe.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let events = build_events(fam, &index);
    let b = fam.params.b;
    let mut delta = fam.default_delta();
    for attempt in 0..cfg.max_attempts.max(1) {
        let d = delta.min(Fraction::one());
        let (num, den) = (d.numer() as u32, d.denom() as u32);
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, attempt as u64));
        let mut in_t: Vec<bool> = (0..universe.len()).map(|_| rng.gen_ratio(num, den)).collect();
        let mut resamplings = 0;
        let mut clear = false;
        for _ in 0..cfg.max_rounds {
            let violated = events.iter().find(|ev| {
                let hits = ev.support.iter().filter(|&&u| in_t[u]).count();
                match ev.kind {
                    EventKind::Deficit => hits < b,
                    EventKind::Activated { s } => hits as u128 * den as u128 >= 2 * num as u128 * s as u128,
                }
            });
            let Some(ev) = violated else {
                clear = true;
                break;
            };
            for &u in &ev.support {
                in_t[u] = rng.gen_ratio(num, den);
            }
            resamplings += 1;
        }
        let mut t: Vec<Colour> = universe.iter().zip(&in_t).filter(|(_, &x)| x).map(|(&c, _)| c).collect();
        t.sort_unstable();
        if verify_selection(fam, &t) {
            return Ok(ColourSelection { t, delta: d, attempt, resamplings, events_clear: clear });
        }
        delta = delta.mul_int(2);
    }
    Err(Error::SelectionFailed(format!("no verified colour set after {} attempts", cfg.max_attempts.max(1))))
}
