//! Robust neighbourhoods, robust expansion, closeness to the two extremal
//! Dirac graphs, and the partition repairs that turn a closeness witness into
//! a superextremal two-clique or biclique.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fraction::Fraction;
use crate::graph::{complement, membership, Graph, Vertex};
use crate::seed::derive_seed;

/// Largest `n` for exhaustive subset enumeration.
pub const EXACT_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub nu: Fraction,
    pub tau: Fraction,
    pub gamma: Fraction,
    /// Largest ε a repaired partition may certify.
    pub eps: Fraction,
    /// Largest α a repaired biclique may certify.
    pub alpha: Fraction,
    pub eta: Fraction,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            nu: Fraction::new(1, 20),
            tau: Fraction::new(1, 5),
            gamma: Fraction::new(1, 20),
            eps: Fraction::new(1, 5),
            alpha: Fraction::new(1, 5),
            eta: Fraction::new(1, 10),
        }
    }
}

impl Params {
    pub fn validate(&self) -> Result<()> {
        for (name, f) in [
            ("nu", self.nu),
            ("tau", self.tau),
            ("gamma", self.gamma),
            ("eps", self.eps),
            ("alpha", self.alpha),
            ("eta", self.eta),
        ] {
            if !f.is_proper() {
                return invalid(format!("{name} = {f} is not in (0,1)"));
            }
        }
        if self.nu > self.tau {
            return invalid(format!("nu = {} exceeds tau = {}", self.nu, self.tau));
        }
        Ok(())
    }
}

/// `RN_ν(X) = { v : |N(v) ∩ X| ≥ νn }`.
pub fn robust_neighbourhood(g: &Graph, x_set: &[Vertex], nu: Fraction) -> Vec<Vertex> {
    let n = g.n();
    let mask = membership(n, x_set);
    (0..n).filter(|&v| nu.le_count(n, g.degree_into(v, &mask))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExpansionMode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionCertificate {
    pub tested: u64,
    pub exhaustive: bool,
    /// A set `X` with `|RN_ν(X)| < |X| + νn`, if one was found.
    pub witness: Option<Vec<Vertex>>,
}

impl ExpansionCertificate {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

fn expansion_size_range(n: usize, tau: Fraction) -> (usize, usize) {
    let lo = tau.ceil_times(n);
    let hi = Fraction::one().sub(tau).floor_times(n);
    (lo, hi)
}

fn violates_expansion(g: &Graph, x: &[Vertex], nu: Fraction) -> bool {
    let rn = robust_neighbourhood(g, x, nu).len();
    // |RN| ≥ |X| + νn  ⇔  (|RN| − |X|) ≥ νn
    rn < x.len() || !nu.le_count(g.n(), rn - x.len())
}

/// Robust `(ν, τ)`-expansion test. Exhaustive mode is exact and limited to
/// `n ≤ 20`; sampled mode can only refute.
pub fn is_robust_expander(g: &Graph, nu: Fraction, tau: Fraction, mode: ExpansionMode) -> Result<ExpansionCertificate> {
    let n = g.n();
    let (lo, hi) = expansion_size_range(n, tau);
    match mode {
        ExpansionMode::Exhaustive => {
            if n > EXACT_LIMIT {
                return Err(Error::Size(format!("exhaustive expansion test needs n <= {EXACT_LIMIT}, got {n}")));
            }
            let adj: Vec<u32> = (0..n).map(|v| g.neighbours(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
            let thr = nu.ceil_times(n).max(1) as u32;
            let extra = nu.ceil_times(n);
            let mut tested = 0;
            for mask in 0u32..(1u32 << n) {
                let size = mask.count_ones() as usize;
                if size < lo || size > hi {
                    continue;
                }
                tested += 1;
                let rn = adj.iter().filter(|&&a| (a & mask).count_ones() >= thr).count();
                if rn < size + extra {
                    let witness = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                    return Ok(ExpansionCertificate { tested, exhaustive: true, witness: Some(witness) });
                }
            }
            Ok(ExpansionCertificate { tested, exhaustive: true, witness: None })
        }
        ExpansionMode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let verts: Vec<Vertex> = (0..n).collect();
            let mut tested = 0;
            if lo <= hi && hi > 0 {
                for _ in 0..trials {
                    let size = rng.gen_range(lo.max(1)..=hi);
                    let mut x: Vec<Vertex> = verts.choose_multiple(&mut rng, size).copied().collect();
                    x.sort_unstable();
                    tested += 1;
                    if violates_expansion(g, &x, nu) {
                        return Ok(ExpansionCertificate { tested, exhaustive: false, witness: Some(x) });
                    }
                }
            }
            Ok(ExpansionCertificate { tested, exhaustive: false, witness: None })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    /// Minimise `e(A)`.
    Bipartite,
    /// Minimise `e(A, V∖A)`.
    TwoCliques,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosenessMode {
    Exact,
    LocalSearch { seed: u64, restarts: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Closeness {
    pub target: Target,
    /// Edge count achieved by `set`; `γ_best = edges / n²`.
    pub edges: usize,
    pub set: Vec<Vertex>,
    pub exact: bool,
}

impl Closeness {
    pub fn gamma_best(&self, n: usize) -> Fraction {
        Fraction::new(self.edges as i64, (n * n) as i64)
    }
}

fn objective(g: &Graph, target: Target, mask: &[bool]) -> usize {
    match target {
        Target::Bipartite => g.edges_within(mask),
        Target::TwoCliques => {
            let rest: Vec<bool> = mask.iter().map(|b| !b).collect();
            g.edges_between(mask, &rest)
        }
    }
}

/// Best half-set `A` (`|A| = ⌊n/2⌋`) for the given closeness target.
pub fn closeness(g: &Graph, target: Target, mode: ClosenessMode) -> Result<Closeness> {
    let n = g.n();
    if n < 4 {
        return invalid(format!("closeness needs n >= 4, got {n}"));
    }
    let k = n / 2;
    match mode {
        ClosenessMode::Exact => {
            if n > EXACT_LIMIT {
                return Err(Error::Size(format!("exact closeness needs n <= {EXACT_LIMIT}, got {n}")));
            }
            let adj: Vec<u32> = (0..n).map(|v| g.neighbours(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
            let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
            let mut best = (usize::MAX, 0u32);
            // Gosper's hack over k-subsets in increasing mask order.
            let mut mask: u32 = (1u32 << k) - 1;
            let limit = 1u64 << n;
            while (mask as u64) < limit {
                let mut inside = 0u32;
                let mut degsum = 0u32;
                let mut m = mask;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    inside += (adj[v] & mask).count_ones();
                    degsum += deg[v];
                    m &= m - 1;
                }
                let value = match target {
                    Target::Bipartite => inside / 2,
                    Target::TwoCliques => degsum - inside,
                } as usize;
                if value < best.0 {
                    best = (value, mask);
                }
                let c = mask & mask.wrapping_neg();
                let r = mask + c;
                mask = (((r ^ mask) >> 2) / c) | r;
            }
            let set = (0..n).filter(|&v| best.1 >> v & 1 == 1).collect();
            Ok(Closeness { target, edges: best.0, set, exact: true })
        }
        ClosenessMode::LocalSearch { seed, restarts } => {
            let mut best: Option<Closeness> = None;
            for r in 0..restarts.max(1) {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, r as u64));
                let c = hill_climb(g, target, k, &mut rng);
                if best.as_ref().map_or(true, |b| c.edges < b.edges) {
                    best = Some(c);
                }
            }
            Ok(best.expect("at least one restart"))
        }
    }
}

fn hill_climb(g: &Graph, target: Target, k: usize, rng: &mut ChaCha8Rng) -> Closeness {
    let n = g.n();
    let mut verts: Vec<Vertex> = (0..n).collect();
    verts.shuffle(rng);
    let mut mask = vec![false; n];
    for &v in &verts[..k] {
        mask[v] = true;
    }
    // d(v, A) for every v
    let mut d_in: Vec<i64> = (0..n).map(|v| g.degree_into(v, &mask) as i64).collect();
    let deg: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();
    let mut value = objective(g, target, &mask) as i64;
    loop {
        let mut best_delta = 0i64;
        let mut best_swap = None;
        for a in (0..n).filter(|&v| mask[v]) {
            for b in (0..n).filter(|&v| !mask[v]) {
                let ab = i64::from(g.has_edge(a, b));
                // e(A) after swapping a out and b in
                let d_edges = d_in[b] - ab - d_in[a];
                let delta = match target {
                    Target::Bipartite => d_edges,
                    Target::TwoCliques => deg[b] - deg[a] - 2 * d_edges,
                };
                if delta < best_delta {
                    best_delta = delta;
                    best_swap = Some((a, b));
                }
            }
        }
        let Some((a, b)) = best_swap else { break };
        mask[a] = false;
        mask[b] = true;
        for &w in g.neighbours(a) {
            d_in[w] -= 1;
        }
        for &w in g.neighbours(b) {
            d_in[w] += 1;
        }
        value += best_delta;
    }
    debug_assert_eq!(value as usize, objective(g, target, &mask));
    Closeness { target, edges: value as usize, set: (0..n).filter(|&v| mask[v]).collect(), exact: false }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tag {
    CloseToBipartite,
    CloseToTwoCliques,
    RobustExpander,
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub tag: Tag,
    /// Witness half-set for the closeness tags.
    pub partition: Option<Vec<Vertex>>,
    /// `e(A)` or `e(A, V∖A)` on the witness.
    pub witness_edges: Option<usize>,
    pub bipartite: Option<Closeness>,
    pub two_cliques: Option<Closeness>,
    pub certificate: Option<ExpansionCertificate>,
}

impl Classification {
    pub fn gamma_best(&self, n: usize) -> Option<Fraction> {
        self.witness_edges.map(|e| Fraction::new(e as i64, (n * n) as i64))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassifyMode {
    /// Exact closeness and exhaustive expansion up to `n = 20`, heuristics beyond.
    Auto,
    Exact,
    LocalSearch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyConfig {
    pub mode: ClassifyMode,
    pub seed: u64,
    pub restarts: usize,
    pub expansion_trials: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { mode: ClassifyMode::Auto, seed: 0, restarts: 8, expansion_trials: 2000 }
    }
}

/// Extremal cases first, expansion second; may abstain.
///
/// When the graph is γ-close to both extremal forms the smaller achieved
/// edge count wins, ties going to the two-clique form.
pub fn classify(g: &Graph, p: &Params, cfg: &ClassifyConfig) -> Result<Classification> {
    p.validate()?;
    let n = g.n();
    let mut out = Classification {
        tag: Tag::Unclassified,
        partition: None,
        witness_edges: None,
        bipartite: None,
        two_cliques: None,
        certificate: None,
    };
    if n < 4 {
        return Ok(out);
    }
    let small = n <= EXACT_LIMIT;
    let close_mode = match cfg.mode {
        ClassifyMode::Exact => ClosenessMode::Exact,
        ClassifyMode::Auto if small => ClosenessMode::Exact,
        _ => ClosenessMode::LocalSearch { seed: cfg.seed, restarts: cfg.restarts },
    };
    let bip = closeness(g, Target::Bipartite, close_mode)?;
    let two = closeness(g, Target::TwoCliques, close_mode)?;
    let within = |c: &Closeness| p.gamma.ge_count(n * n, c.edges);
    let pick = match (within(&bip), within(&two)) {
        (true, true) if bip.edges < two.edges => Some((Tag::CloseToBipartite, &bip)),
        (_, true) => Some((Tag::CloseToTwoCliques, &two)),
        (true, false) => Some((Tag::CloseToBipartite, &bip)),
        (false, false) => None,
    };
    if let Some((tag, c)) = pick {
        out.tag = tag;
        out.partition = Some(c.set.clone());
        out.witness_edges = Some(c.edges);
    }
    out.bipartite = Some(bip);
    out.two_cliques = Some(two);
    if out.tag != Tag::Unclassified {
        return Ok(out);
    }
    let exp_mode = match cfg.mode {
        ClassifyMode::Exact | ClassifyMode::Auto if small => ExpansionMode::Exhaustive,
        _ => ExpansionMode::Sampled { trials: cfg.expansion_trials, seed: derive_seed(cfg.seed, 0xE) },
    };
    let cert = is_robust_expander(g, p.nu, p.tau, exp_mode)?;
    if cert.holds() {
        out.tag = Tag::RobustExpander;
    }
    out.certificate = Some(cert);
    Ok(out)
}

/// How the cross edges `G[A, B]` of a repaired two-clique look.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrossDegree {
    /// Every vertex has a neighbour across.
    MinOneBothSides,
    /// Every vertex of `A` has at least two neighbours in `B`.
    MinTwoFromA,
    MinTwoFromB,
    /// Neither holds; the partition may still carry two disjoint cross edges.
    Weak,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCliquePartition {
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub eps: Fraction,
    pub cross: CrossDegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliquePartition {
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub alpha: Fraction,
    pub eps: Fraction,
    pub nu: Fraction,
}

impl BicliquePartition {
    pub fn imbalance(&self) -> usize {
        self.b.len() - self.a.len()
    }
}

/// Checks the five ε-superextremal two-clique properties by degree enumeration.
pub fn check_two_clique(g: &Graph, a: &[Vertex], b: &[Vertex], eps: Fraction) -> bool {
    let n = g.n();
    if a.len() + b.len() != n {
        return false;
    }
    let diff = a.len().abs_diff(b.len());
    if !eps.ge_count(n, diff) {
        return false;
    }
    let half = Fraction::new(1, 2).sub(eps);
    let quarter = Fraction::new(1, 4).sub(eps);
    for side in [a, b] {
        let mask = membership(n, side);
        let mut low = 0;
        for &v in side {
            let d = g.degree_into(v, &mask);
            if !quarter.le_count(n, d) {
                return false;
            }
            if !half.le_count(n, d) {
                low += 1;
            }
        }
        if !eps.ge_count(n, low) {
            return false;
        }
    }
    true
}

/// Checks the six `(α, ε, ν)`-superextremal biclique properties.
pub fn check_biclique(g: &Graph, part: &BicliquePartition) -> bool {
    let n = g.n();
    let (a, b) = (&part.a, &part.b);
    if a.len() + b.len() != n || b.len() < a.len() {
        return false;
    }
    if !part.alpha.ge_count(n, b.len() - a.len()) {
        return false;
    }
    let am = membership(n, a);
    let bm = membership(n, b);
    let half = Fraction::new(1, 2).sub(part.eps);
    let quarter = Fraction::new(1, 4).sub(part.eps);
    let low_a = a.iter().filter(|&&v| !half.le_count(n, g.degree_into(v, &bm))).count();
    let low_b = b.iter().filter(|&&v| !half.le_count(n, g.degree_into(v, &am))).count();
    if !part.alpha.ge_count(n, low_a) || !part.alpha.ge_count(n, low_b) {
        return false;
    }
    if !a.iter().all(|&v| part.nu.le_count(n, g.degree_into(v, &bm))) {
        return false;
    }
    if !b.iter().all(|&v| quarter.le_count(n, g.degree_into(v, &am))) {
        return false;
    }
    let two_nu = part.nu.mul_int(2);
    a.len() == n / 2 || b.iter().all(|&v| two_nu.ge_count(n, g.degree_into(v, &bm)))
}

fn sorted(mut v: Vec<Vertex>) -> Vec<Vertex> {
    v.sort_unstable();
    v
}

fn cross_degree(g: &Graph, a: &[Vertex], b: &[Vertex]) -> CrossDegree {
    let n = g.n();
    let am = membership(n, a);
    let bm = membership(n, b);
    let min_a = a.iter().map(|&v| g.degree_into(v, &bm)).min().unwrap_or(0);
    let min_b = b.iter().map(|&v| g.degree_into(v, &am)).min().unwrap_or(0);
    if min_a >= 1 && min_b >= 1 {
        CrossDegree::MinOneBothSides
    } else if min_a >= 2 {
        CrossDegree::MinTwoFromA
    } else if min_b >= 2 {
        CrossDegree::MinTwoFromB
    } else {
        CrossDegree::Weak
    }
}

fn has_two_disjoint_cross_edges(g: &Graph, a: &[Vertex]) -> bool {
    let am = membership(g.n(), a);
    let cross: Vec<_> = g.edges().iter().filter(|e| am[e.u] != am[e.v]).collect();
    cross.iter().enumerate().any(|(i, e)| cross[i + 1..].iter().any(|f| !e.shares_vertex(f)))
}

/// Moves vertices with at most `n/4` neighbours on their own side across and
/// certifies the smallest ε (a multiple of `1/(4n)`) for which the
/// two-clique properties hold.
pub fn repair_two_clique(g: &Graph, a0: &[Vertex], p: &Params) -> Result<TwoCliquePartition> {
    let n = g.n();
    let am0 = membership(n, a0);
    let b0 = complement(n, a0);
    let bm0 = membership(n, &b0);
    // d(v, own side) ≤ n/4  ⇔  4d ≤ n
    let xa: Vec<Vertex> = a0.iter().copied().filter(|&v| 4 * g.degree_into(v, &am0) <= n).collect();
    let xb: Vec<Vertex> = b0.iter().copied().filter(|&v| 4 * g.degree_into(v, &bm0) <= n).collect();
    let xam = membership(n, &xa);
    let xbm = membership(n, &xb);
    let a = sorted((0..n).filter(|&v| (am0[v] && !xam[v]) || xbm[v]).collect());
    let b = complement(n, &a);

    let am = membership(n, &a);
    let bm = membership(n, &b);
    if !p.gamma.ge_count(n * n, g.edges_between(&am, &bm)) {
        return Err(Error::RepairFailed(format!(
            "repaired partition has e(A,B) = {} > γn² (γ = {})",
            g.edges_between(&am, &bm),
            p.gamma
        )));
    }
    let eps = (0..=n as i64)
        .map(|t| Fraction::new(t, 4 * n as i64))
        .take_while(|e| *e <= p.eps)
        .find(|&e| check_two_clique(g, &a, &b, e))
        .ok_or_else(|| Error::RepairFailed(format!("no ε <= {} certifies the two-clique properties", p.eps)))?;
    if !has_two_disjoint_cross_edges(g, &a) {
        return Err(Error::RepairFailed("G[A,B] has no two vertex-disjoint edges".into()));
    }
    let cross = cross_degree(g, &a, &b);
    Ok(TwoCliquePartition { a, b, eps, cross })
}

/// Three-stage biclique repair: swap vertices with few neighbours across,
/// orient so that `B` is the larger side, then move up to half the surplus
/// of `B`-vertices with `≥ 2νn` neighbours inside `B` over to `A`. Certifies
/// the smallest ε and then the smallest α for `p.nu`.
pub fn repair_biclique(g: &Graph, a0: &[Vertex], p: &Params) -> Result<BicliquePartition> {
    let n = g.n();
    let nu = p.nu;
    let am0 = membership(n, a0);
    let b0 = complement(n, a0);
    let bm0 = membership(n, &b0);
    let cut = Fraction::new(1, 4).sub(p.gamma);
    let xa: Vec<Vertex> = a0.iter().copied().filter(|&v| cut.ge_count(n, g.degree_into(v, &bm0))).collect();
    let xb: Vec<Vertex> = b0.iter().copied().filter(|&v| cut.ge_count(n, g.degree_into(v, &am0))).collect();
    let xam = membership(n, &xa);
    let xbm = membership(n, &xb);
    let mut a1 = sorted((0..n).filter(|&v| (am0[v] && !xam[v]) || xbm[v]).collect());
    let mut b1 = complement(n, &a1);
    if b1.len() < a1.len() {
        std::mem::swap(&mut a1, &mut b1);
    }
    let b1m = membership(n, &b1);
    let two_nu = nu.mul_int(2);
    let mut yb: Vec<(usize, Vertex)> = b1
        .iter()
        .map(|&v| (g.degree_into(v, &b1m), v))
        .filter(|&(d, _)| two_nu.le_count(n, d))
        .collect();
    yb.sort_unstable_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let surplus = b1.len() - a1.len();
    if 2 * yb.len() >= surplus {
        yb.truncate(surplus / 2);
    }
    let moved: Vec<Vertex> = yb.into_iter().map(|(_, v)| v).collect();
    let mut a = a1;
    a.extend(&moved);
    a.sort_unstable();
    let b = complement(n, &a);

    let am = membership(n, &a);
    if !p.gamma.ge_count(n * n, g.edges_within(&am)) {
        return Err(Error::RepairFailed(format!(
            "repaired partition has e(A) = {} > γn² (γ = {})",
            g.edges_within(&am),
            p.gamma
        )));
    }
    let bm = membership(n, &b);
    if !a.iter().all(|&v| nu.le_count(n, g.degree_into(v, &bm))) {
        return Err(Error::RepairFailed(format!("some a ∈ A has d(a,B) < νn (ν = {nu})")));
    }
    if a.len() != n / 2 && !b.iter().all(|&v| two_nu.ge_count(n, g.degree_into(v, &bm))) {
        return Err(Error::RepairFailed("some b ∈ B has d(b,B) > 2νn".into()));
    }
    let quarter_ok = |eps: Fraction| {
        let q = Fraction::new(1, 4).sub(eps);
        b.iter().all(|&v| q.le_count(n, g.degree_into(v, &am)))
    };
    for t in 0..=n as i64 {
        let eps = Fraction::new(t, 4 * n as i64);
        if eps > p.eps {
            break;
        }
        if !quarter_ok(eps) {
            continue;
        }
        let half = Fraction::new(1, 2).sub(eps);
        let low_a = a.iter().filter(|&&v| !half.le_count(n, g.degree_into(v, &bm))).count();
        let low_b = b.iter().filter(|&&v| !half.le_count(n, g.degree_into(v, &am))).count();
        let need = (b.len() - a.len()).max(low_a).max(low_b);
        let alpha = Fraction::new(need as i64, n as i64);
        if alpha <= p.alpha {
            let part = BicliquePartition { a, b, alpha, eps, nu };
            debug_assert!(check_biclique(g, &part));
            return Ok(part);
        }
    }
    Err(Error::RepairFailed(format!(
        "no (α <= {}, ε <= {}) certifies the biclique properties",
        p.alpha, p.eps
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn two_cliques(k: usize) -> Graph {
        let e = (0..2 * k).flat_map(|u| (u + 1..2 * k).filter(move |&v| (u < k) == (v < k)).map(move |v| (u, v)));
        Graph::new(2 * k, e).unwrap()
    }

    fn with_edges(g: &Graph, extra: &[(usize, usize)]) -> Graph {
        Graph::new(g.n(), g.edges().iter().map(|e| (e.u, e.v)).chain(extra.iter().copied())).unwrap()
    }

    #[test]
    fn robust_neighbourhood_examples() {
        let k10 = Graph::complete(10);
        assert_eq!(robust_neighbourhood(&k10, &[1, 4, 7], Fraction::new(1, 5)).len(), 10);
        let g = two_cliques(5);
        assert_eq!(robust_neighbourhood(&g, &[0, 1, 2, 3, 4], Fraction::new(3, 10)), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn expansion_examples() {
        let nu = Fraction::new(1, 10);
        let tau = Fraction::new(3, 10);
        let k10 = is_robust_expander(&Graph::complete(10), nu, tau, ExpansionMode::Exhaustive).unwrap();
        assert!(k10.holds());
        let g = two_cliques(5);
        let split = is_robust_expander(&g, nu, tau, ExpansionMode::Exhaustive).unwrap();
        assert!(violates_expansion(&g, split.witness.as_ref().unwrap(), nu));
        assert!(violates_expansion(&g, &[0, 1, 2, 3, 4], nu));
        assert!(is_robust_expander(&Graph::complete(21), nu, tau, ExpansionMode::Exhaustive).is_err());
    }

    #[test]
    fn closeness_examples() {
        let kb = Graph::complete_bipartite(5, 5);
        let c = closeness(&kb, Target::Bipartite, ClosenessMode::Exact).unwrap();
        assert_eq!((c.edges, c.set.clone()), (0, vec![0, 1, 2, 3, 4]));
        let c = closeness(&two_cliques(5), Target::TwoCliques, ClosenessMode::Exact).unwrap();
        assert_eq!(c.edges, 0);
        let c = closeness(&Graph::complete(10), Target::TwoCliques, ClosenessMode::Exact).unwrap();
        assert_eq!(c.edges, 25);
        assert_eq!(c.gamma_best(10), Fraction::new(1, 4));
        assert!(closeness(&Graph::complete(3), Target::Bipartite, ClosenessMode::Exact).is_err());
    }

    #[test]
    fn local_search_finds_planted_split() {
        let g = two_cliques(15);
        let c = closeness(&g, Target::TwoCliques, ClosenessMode::LocalSearch { seed: 3, restarts: 4 }).unwrap();
        assert_eq!(c.edges, 0);
        let kb = Graph::complete_bipartite(13, 13);
        let c = closeness(&kb, Target::Bipartite, ClosenessMode::LocalSearch { seed: 3, restarts: 4 }).unwrap();
        assert_eq!(c.edges, 0);
    }

    #[test]
    fn classify_examples() {
        let p = Params::default();
        let cfg = ClassifyConfig::default();
        let matched = with_edges(&two_cliques(6), &(0..6).map(|i| (i, i + 6)).collect::<Vec<_>>());
        assert_eq!(classify(&matched, &p, &cfg).unwrap().tag, Tag::CloseToTwoCliques);
        let kb = Graph::complete_bipartite(6, 6);
        let c = classify(&kb, &p, &cfg).unwrap();
        assert_eq!(c.tag, Tag::CloseToBipartite);
        assert_eq!(c.witness_edges, Some(0));
        let k12 = classify(&Graph::complete(12), &p, &cfg).unwrap();
        assert_eq!(k12.tag, Tag::RobustExpander);
        assert_eq!(k12.bipartite.unwrap().edges, 15);
        assert_eq!(k12.two_cliques.unwrap().edges, 36);
    }

    #[test]
    fn repair_two_clique_examples() {
        let p = Params::default();
        let g = with_edges(&two_cliques(6), &[(0, 6), (1, 7)]);
        let part = repair_two_clique(&g, &[0, 1, 2, 3, 4, 5], &p).unwrap();
        assert_eq!(part.a, vec![0, 1, 2, 3, 4, 5]);
        assert!(part.eps <= Fraction::new(1, 12));
        assert!(check_two_clique(&g, &part.a, &part.b, part.eps));

        // vertex 0 placed with the wrong clique
        let part = repair_two_clique(&g, &[1, 2, 3, 4, 5, 6], &p).unwrap();
        assert_eq!(part.a, vec![0, 1, 2, 3, 4, 5]);

        let err = repair_two_clique(&Graph::complete(12), &[0, 2, 4, 6, 8, 10], &p);
        assert!(matches!(err, Err(Error::RepairFailed(_))));
    }

    #[test]
    fn repair_biclique_examples() {
        let p = Params::default();
        let kb = Graph::complete_bipartite(6, 6);
        let part = repair_biclique(&kb, &[0, 1, 2, 3, 4, 5], &p).unwrap();
        assert_eq!(part.imbalance(), 0);
        assert!(check_biclique(&kb, &part));

        let m = with_edges(&kb, &[(6, 7), (8, 9), (10, 11)]);
        let part = repair_biclique(&m, &[0, 1, 2, 3, 4, 5], &p).unwrap();
        assert_eq!(part.a, vec![0, 1, 2, 3, 4, 5]);
        assert!(check_biclique(&m, &part));

        for a0 in [vec![0, 1, 2, 3, 4, 5], vec![0, 1, 2, 6, 7, 8]] {
            assert!(matches!(repair_biclique(&two_cliques(6), &a0, &p), Err(Error::RepairFailed(_))));
        }
    }

    #[test]
    fn repaired_partitions_recheck() {
        let p = Params::default();
        let g = with_edges(&two_cliques(8), &[(0, 8), (1, 9), (2, 10)]);
        let part = repair_two_clique(&g, &[0, 1, 2, 3, 4, 5, 6, 15], &p).unwrap();
        assert!(check_two_clique(&g, &part.a, &part.b, part.eps));
        assert_eq!(part.cross, CrossDegree::Weak);
        let _ = Edge::new(0, 1);
    }
}
