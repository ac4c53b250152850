//! Seeded instance families and colourings, each with an audit that
//! re-checks the advertised property independently of the construction.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fraction::Fraction;
use crate::graph::{is_dirac, membership, Colour, Colouring, Edge, Graph, Vertex};

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Renumbers colours by first appearance in canonical edge order.
pub fn canonical_colouring(g: &Graph, colour: impl Fn(Edge) -> Colour) -> Colouring {
    let mut ids: BTreeMap<Colour, Colour> = BTreeMap::new();
    Colouring::from_fn(g, |e| {
        let next = ids.len() as Colour;
        *ids.entry(colour(e)).or_insert(next)
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub a_size: usize,
    pub b_size: usize,
    pub edges_in_b: usize,
    pub colours_in_b: usize,
    pub max_class: usize,
    /// `⌈k(⌈n/2⌉ + k) / (2(2k − 1))⌉`.
    pub class_bound: usize,
    pub dirac: bool,
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub graph: Graph,
    pub colouring: Colouring,
    /// `A = 0..a_size`, `B` the rest.
    pub report: CounterexampleReport,
}

/// Complete bipartite `A`–`B` with `|A| = ⌊n/2⌋ − k`, `|B| = ⌈n/2⌉ + k`, a
/// circulant `k`-regular graph on `B` carrying `2k − 1` colours in balanced
/// classes, and fresh colours on every cross edge. The seed permutes which
/// `B`-edges share a colour.
pub fn gen_counterexample(n: usize, k: usize, seed: u64) -> Result<Counterexample> {
    if k < 2 || k % 2 == 1 {
        return invalid(format!("k = {k} must be even and at least 2"));
    }
    if k >= n / 2 {
        return invalid(format!("k = {k} must be below ⌊n/2⌋ = {}", n / 2));
    }
    let a_size = n / 2 - k;
    let b_size = n.div_ceil(2) + k;
    let b = |i: usize| a_size + i;
    let mut inside: Vec<Edge> = Vec::new();
    for i in 0..b_size {
        for d in 1..=k / 2 {
            inside.push(Edge::new(b(i), b((i + d) % b_size)));
        }
    }
    inside.sort_unstable();
    inside.dedup();
    let cross = (0..a_size).flat_map(|u| (0..b_size).map(move |j| Edge::new(u, b(j))));
    let graph = Graph::from_edges(n, inside.iter().copied().chain(cross))?;

    let palette = 2 * k - 1;
    let mut order = inside.clone();
    order.shuffle(&mut rng_for(seed));
    let b_colour: BTreeMap<Edge, Colour> = order.iter().enumerate().map(|(i, &e)| (e, (i % palette) as Colour)).collect();
    let mut next = palette as Colour;
    let colouring = Colouring::from_fn(&graph, |e| match b_colour.get(&e) {
        Some(&c) => c,
        None => {
            next += 1;
            next - 1
        }
    });
    let e_b = inside.len();
    let report = CounterexampleReport {
        a_size,
        b_size,
        edges_in_b: e_b,
        colours_in_b: palette,
        max_class: colouring.max_multiplicity(),
        class_bound: (k * (n.div_ceil(2) + k)).div_ceil(2 * palette),
        dirac: is_dirac(&graph)?,
    };
    Ok(Counterexample { graph, colouring, report })
}

/// Non-edges of `g` satisfying `allowed`, in canonical order.
fn non_edges(g: &Graph, allowed: impl Fn(Vertex, Vertex) -> bool) -> Vec<Edge> {
    let n = g.n();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| allowed(u, v) && !g.has_edge(u, v))
        .map(|(u, v)| Edge::new(u, v))
        .collect()
}

fn insert_random(g: &Graph, pool: Vec<Edge>, count: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let extra: Vec<Edge> = pool.choose_multiple(rng, count.min(pool.len())).copied().collect();
    Graph::from_edges(g.n(), g.edges().iter().copied().chain(extra))
}

fn check_family_args(n: usize, gamma: Fraction) -> Result<()> {
    if n < 8 {
        return invalid(format!("n = {n} must be at least 8"));
    }
    if gamma < Fraction::zero() || gamma >= Fraction::new(1, 10) {
        return invalid(format!("gamma = {gamma} must lie in [0, 1/10)"));
    }
    Ok(())
}

/// Cliques on `A = 0..⌈n/2⌉` and `B = ⌈n/2⌉..n`, the least cross structure
/// that makes the graph Dirac, then random cross edges up to `⌊γn²⌋` in total.
pub fn gen_two_clique_like(n: usize, gamma: Fraction, seed: u64) -> Result<Graph> {
    check_family_args(n, gamma)?;
    let a = n.div_ceil(2);
    let side = |v: Vertex| v < a;
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| side(u) == side(v)).collect();
    for i in 0..n - a {
        pairs.push((i, a + i));
        if n % 2 == 1 {
            // |B| = |A| − 1: every b needs two neighbours across.
            pairs.push((i + 1, a + i));
        }
    }
    let base = Graph::new(n, pairs)?;
    let base_cross = base.edges().iter().filter(|e| side(e.u) != side(e.v)).count();
    let target = gamma.floor_times(n * n);
    let pool = non_edges(&base, |u, v| side(u) != side(v));
    let g = insert_random(&base, pool, target.saturating_sub(base_cross), &mut rng_for(seed))?;
    if !is_dirac(&g)? {
        return Err(Error::GenerationFailed("two-clique-like graph is not Dirac".into()));
    }
    Ok(g)
}

/// `K_{⌊n/2⌋,⌈n/2⌉}` with `A = 0..⌊n/2⌋`, a minimal matching inside `B` when
/// `n` is odd, then random internal edges up to `⌊γn²⌋` in total.
pub fn gen_bipartite_like(n: usize, gamma: Fraction, seed: u64) -> Result<Graph> {
    check_family_args(n, gamma)?;
    let a = n / 2;
    let side = |v: Vertex| v < a;
    let mut pairs: Vec<(Vertex, Vertex)> = (0..a).flat_map(|u| (a..n).map(move |v| (u, v))).collect();
    if n % 2 == 1 {
        let b_size = n - a;
        for i in (0..b_size - 1).step_by(2) {
            pairs.push((a + i, a + i + 1));
        }
        if b_size % 2 == 1 {
            pairs.push((a, n - 1));
        }
    }
    let base = Graph::new(n, pairs)?;
    let base_inside = base.edges().iter().filter(|e| side(e.u) == side(e.v)).count();
    let target = gamma.floor_times(n * n);
    let pool = non_edges(&base, |u, v| side(u) == side(v));
    let g = insert_random(&base, pool, target.saturating_sub(base_inside), &mut rng_for(seed))?;
    if !is_dirac(&g)? {
        return Err(Error::GenerationFailed("bipartite-like graph is not Dirac".into()));
    }
    Ok(g)
}

/// `G(n, p)` with deficient vertices joined to their lowest-degree
/// non-neighbours until `2δ ≥ n`.
pub fn gen_random_dirac(n: usize, p: Fraction, seed: u64) -> Result<Graph> {
    if n < 3 {
        return invalid(format!("n = {n} must be at least 3"));
    }
    if p <= Fraction::new(1, 2) || p > Fraction::one() {
        return invalid(format!("p = {p} must lie in (1/2, 1]"));
    }
    let mut rng = rng_for(seed);
    let (num, den) = (p.numer() as u32, p.denom() as u32);
    let mut adj = vec![vec![false; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_ratio(num, den) {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
    }
    let key: Vec<u64> = (0..n).map(|_| rng.gen()).collect();
    let degree = |adj: &Vec<Vec<bool>>, v: usize| adj[v].iter().filter(|&&x| x).count();
    let mut rounds = 0;
    loop {
        let deficient: Vec<usize> = (0..n).filter(|&v| 2 * degree(&adj, v) < n).collect();
        if deficient.is_empty() {
            break;
        }
        rounds += 1;
        if rounds > 200 {
            return Err(Error::GenerationFailed("Dirac patching did not converge in 200 rounds".into()));
        }
        for v in deficient {
            while 2 * degree(&adj, v) < n {
                let w = (0..n)
                    .filter(|&w| w != v && !adj[v][w])
                    .min_by_key(|&w| (degree(&adj, w), key[w]))
                    .expect("a deficient vertex has a non-neighbour");
                adj[v][w] = true;
                adj[w][v] = true;
            }
        }
    }
    let g = Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| adj[u][v]))?;
    debug_assert!(is_dirac(&g)?);
    Ok(g)
}

/// `|A| = (n − m)/2`, `|B| = (n + m)/2`, complete between the sides, and a
/// sparse graph inside `B` of minimum degree `⌈m/2⌉` so that the result is
/// Dirac.
pub fn gen_biclique(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m == 0 || m >= n || (n - m) % 2 == 1 || (n - m) / 2 < 2 {
        return invalid(format!("need n - m even, m >= 1 and |A| >= 2; got n = {n}, m = {m}"));
    }
    let a = (n - m) / 2;
    let need = m.div_ceil(2);
    let mut rng = rng_for(seed);
    let b_vertices: Vec<Vertex> = (a..n).collect();
    if need >= b_vertices.len() {
        return invalid("B is too small for the required internal degree");
    }
    let key: Vec<u64> = (0..n).map(|_| rng.gen()).collect();
    let mut inside: Vec<Vec<bool>> = vec![vec![false; n]; n];
    let mut deg = vec![0usize; n];
    let mut order = b_vertices.clone();
    order.shuffle(&mut rng);
    for &v in &order {
        while deg[v] < need {
            let w = b_vertices
                .iter()
                .copied()
                .filter(|&w| w != v && !inside[v][w])
                .min_by_key(|&w| (deg[w], key[w]))
                .expect("B has a non-neighbour");
            inside[v][w] = true;
            inside[w][v] = true;
            deg[v] += 1;
            deg[w] += 1;
        }
    }
    let cross = (0..a).flat_map(|u| (a..n).map(move |v| (u, v)));
    let internal = (a..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| inside[u][v]);
    let g = Graph::new(n, cross.chain(internal))?;
    if !is_dirac(&g)? {
        return Err(Error::GenerationFailed("biclique graph is not Dirac".into()));
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum ColourScheme {
    /// Classes of size `⌊μn⌋` over a seeded edge order.
    Bounded { mu: Fraction },
    /// Greedy proper colouring in canonical edge order.
    Proper,
    Rainbow,
}

pub fn gen_colouring(g: &Graph, scheme: ColourScheme, seed: u64) -> Result<Colouring> {
    match scheme {
        ColourScheme::Bounded { mu } => {
            let k = mu.floor_times(g.n());
            if k == 0 {
                return invalid(format!("⌊μn⌋ = 0 for μ = {mu}, n = {}", g.n()));
            }
            let mut order: Vec<Edge> = g.edges().to_vec();
            order.shuffle(&mut rng_for(seed));
            let class: BTreeMap<Edge, Colour> = order.iter().enumerate().map(|(i, &e)| (e, (i / k) as Colour)).collect();
            Ok(canonical_colouring(g, |e| class[&e]))
        }
        ColourScheme::Proper => {
            let n = g.n();
            let mut used: Vec<std::collections::BTreeSet<Colour>> = vec![Default::default(); n];
            let mut assigned = BTreeMap::new();
            for e in g.edges() {
                let c = (0..).find(|c| !used[e.u].contains(c) && !used[e.v].contains(c)).expect("unbounded palette");
                used[e.u].insert(c);
                used[e.v].insert(c);
                assigned.insert(*e, c);
            }
            Ok(canonical_colouring(g, |e| assigned[&e]))
        }
        ColourScheme::Rainbow => Ok(Colouring::rainbow(g)),
    }
}

/// `K_{n,n}` (rows `0..n`, columns `n..2n`) coloured by a seeded isotope of
/// the cyclic Latin square `(i + j) mod n`.
pub fn gen_latin_colouring(n: usize, seed: u64) -> Result<(Graph, Colouring)> {
    if n < 2 {
        return invalid(format!("n = {n} must be at least 2"));
    }
    let mut rng = rng_for(seed);
    let mut perm = || {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut rng);
        p
    };
    let (rows, cols, symbols) = (perm(), perm(), perm());
    let g = Graph::complete_bipartite(n, n);
    let c = canonical_colouring(&g, |e| symbols[(rows[e.u] + cols[e.v - n]) % n] as Colour);
    Ok((g, c))
}

/// A family member; parameters are validated when the instance is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    RandomDirac { p: Fraction },
    TwoCliqueLike { gamma: Fraction },
    BipartiteLike { gamma: Fraction },
    Counterexample { k: usize },
    LatinSquare,
    Biclique { m: usize },
    Complete,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::RandomDirac { .. } => "random_dirac",
            Family::TwoCliqueLike { .. } => "two_clique_like",
            Family::BipartiteLike { .. } => "bipartite_like",
            Family::Counterexample { .. } => "counterexample",
            Family::LatinSquare => "latin_square",
            Family::Biclique { .. } => "biclique",
            Family::Complete => "complete",
        }
    }

    /// Families that come with their own colouring.
    pub fn has_intrinsic_colouring(&self) -> bool {
        matches!(self, Family::Counterexample { .. } | Family::LatinSquare)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub family: Family,
    /// Vertex count; for the Latin family, the order of the square.
    pub n: usize,
    /// Ignored by families with an intrinsic colouring; rainbow when absent.
    #[serde(default)]
    pub colouring: Option<ColourScheme>,
    #[serde(default)]
    pub seed: u64,
}

/// Builds the graph and colouring of a spec.
pub fn generate(spec: &GenSpec) -> Result<(Graph, Colouring)> {
    let GenSpec { family, n, colouring, seed } = *spec;
    let g = match family {
        Family::Counterexample { k } => {
            let ce = gen_counterexample(n, k, seed)?;
            return Ok((ce.graph, ce.colouring));
        }
        Family::LatinSquare => return gen_latin_colouring(n, seed),
        Family::RandomDirac { p } => gen_random_dirac(n, p, seed)?,
        Family::TwoCliqueLike { gamma } => gen_two_clique_like(n, gamma, seed)?,
        Family::BipartiteLike { gamma } => gen_bipartite_like(n, gamma, seed)?,
        Family::Biclique { m } => gen_biclique(n, m, seed)?,
        Family::Complete => {
            if n < 3 {
                return invalid("complete family needs n >= 3");
            }
            Graph::complete(n)
        }
    };
    let c = gen_colouring(&g, colouring.unwrap_or(ColourScheme::Rainbow), crate::seed::derive_seed(seed, 0xC0))?;
    Ok((g, c))
}

/// `e(A) ≤ bound` (bipartite) or `e(A, V∖A) ≤ bound` (two cliques) on the
/// given witness.
pub fn audit_closeness(g: &Graph, a: &[Vertex], two_cliques: bool, bound: usize) -> bool {
    let am = membership(g.n(), a);
    let count = if two_cliques {
        g.edges().iter().filter(|e| am[e.u] != am[e.v]).count()
    } else {
        g.edges_within(&am)
    };
    count <= bound
}

/// Every colour class has at most `k` edges, recounted from the edge list.
pub fn audit_bounded(g: &Graph, c: &Colouring, k: usize) -> bool {
    let mut counts: BTreeMap<Colour, usize> = BTreeMap::new();
    for e in g.edges() {
        match c.colour_of(*e) {
            Some(col) => *counts.entry(col).or_default() += 1,
            None => return false,
        }
    }
    counts.values().all(|&m| m <= k)
}

/// Every colour class is a matching.
pub fn audit_proper(g: &Graph, c: &Colouring) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    g.edges().iter().all(|e| {
        let col = c.colour_of(*e).expect("coloured");
        seen.insert((e.u, col)) && seen.insert((e.v, col))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_n12_k2() {
        let ce = gen_counterexample(12, 2, 0).unwrap();
        let r = &ce.report;
        assert_eq!((r.a_size, r.b_size, r.edges_in_b, r.colours_in_b), (4, 8, 8, 3));
        assert_eq!((r.max_class, r.class_bound), (3, 3));
        assert!(r.dirac);
        let mut sizes: Vec<usize> = (0..3).map(|c| ce.colouring.multiplicity(c)).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3, 3]);
        assert!(gen_counterexample(12, 3, 0).is_err());
        assert!(gen_counterexample(20, 2, 0).unwrap().report.dirac);
    }

    #[test]
    fn counterexample_odd_n_is_not_dirac() {
        let ce = gen_counterexample(13, 2, 0).unwrap();
        assert!(!ce.report.dirac);
        assert_eq!(ce.report.a_size, 4);
    }

    #[test]
    fn extremal_families() {
        for n in [8, 9, 12, 13] {
            let g = gen_two_clique_like(n, Fraction::zero(), 0).unwrap();
            assert!(is_dirac(&g).unwrap());
            let cross = if n % 2 == 0 { n / 2 } else { n - 1 };
            assert!(audit_closeness(&g, &(0..n.div_ceil(2)).collect::<Vec<_>>(), true, cross));
            let g = gen_bipartite_like(n, Fraction::new(3, 100), 5).unwrap();
            assert!(is_dirac(&g).unwrap());
            assert!(audit_closeness(&g, &(0..n / 2).collect::<Vec<_>>(), false, (3 * n * n / 100).max(1)));
        }
        assert!(gen_two_clique_like(7, Fraction::zero(), 0).is_err());
        assert!(gen_two_clique_like(12, Fraction::new(1, 10), 0).is_err());
    }

    #[test]
    fn random_dirac() {
        assert_eq!(gen_random_dirac(7, Fraction::one(), 0).unwrap().m(), 21);
        let g = gen_random_dirac(9, Fraction::new(3, 5), 2).unwrap();
        assert!(2 * g.min_degree() >= 9);
        assert!(gen_random_dirac(9, Fraction::new(1, 2), 2).is_err());
    }

    #[test]
    fn colourings() {
        let k5 = Graph::complete(5);
        let c = gen_colouring(&k5, ColourScheme::Rainbow, 0).unwrap();
        assert_eq!(c.distinct_colours(), 10);
        let g = gen_random_dirac(32, Fraction::new(3, 4), 1).unwrap();
        let c = gen_colouring(&g, ColourScheme::Bounded { mu: Fraction::new(1, 16) }, 3).unwrap();
        assert!(audit_bounded(&g, &c, 2));
        let c6 = Graph::cycle(6);
        let c = gen_colouring(&c6, ColourScheme::Proper, 0).unwrap();
        assert!(audit_proper(&c6, &c));
        assert!((2..=3).contains(&c.distinct_colours()));
    }

    #[test]
    fn latin() {
        for n in [3, 4, 7] {
            let (g, c) = gen_latin_colouring(n, n as u64).unwrap();
            assert_eq!(c.distinct_colours(), n);
            assert!(audit_proper(&g, &c));
            assert!((0..n as Colour).all(|col| c.multiplicity(col) == n));
        }
    }

    #[test]
    fn biclique_family() {
        let g = gen_biclique(200, 8, 1).unwrap();
        let b: Vec<usize> = (96..200).collect();
        let bm = membership(200, &b);
        assert!(b.iter().all(|&v| (4..=8).contains(&g.degree_into(v, &bm))));
    }

    #[test]
    fn json_round_trip() {
        let spec: GenSpec = serde_json::from_str(r#"{"family":"counterexample","k":2,"n":12,"seed":4}"#).unwrap();
        assert_eq!(spec.family, Family::Counterexample { k: 2 });
        let (g1, c1) = generate(&spec).unwrap();
        let (g2, c2) = generate(&spec).unwrap();
        assert_eq!(crate::io::format_graph(&g1, &c1), crate::io::format_graph(&g2, &c2));
    }
}
