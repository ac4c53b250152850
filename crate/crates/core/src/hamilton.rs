//! Hamiltonicity: the Chvátal and Moon–Moser degree conditions, an exact
//! backtracking finder with required edges, and the constructive builders
//! for superextremal two-cliques and bicliques.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classification::{BicliquePartition, TwoCliquePartition};
use crate::error::{invalid, Error, Result};
use crate::graph::{membership, validate_ham_cycle, DirectedHamCycle, Edge, Graph, ProtectedSet, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 5_000_000, time_limit: Duration::from_secs(30) }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_nodes == 0 || self.time_limit.is_zero() {
            return invalid("search budget must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HamOutcome {
    Found(DirectedHamCycle),
    /// The search space was exhausted: no Hamilton cycle contains the required edges.
    Exhausted,
    Budget,
}

impl HamOutcome {
    pub fn cycle(self) -> Option<DirectedHamCycle> {
        match self {
            HamOutcome::Found(h) => Some(h),
            _ => None,
        }
    }
}

/// `d₁ ≤ … ≤ d_m`: for every `1 ≤ k ≤ m/2`, `d_k ≤ k ⇒ d_{m−k} ≥ m−k`.
pub fn chvatal_check(degrees: &[usize]) -> Result<bool> {
    let m = degrees.len();
    if m < 3 {
        return invalid(format!("degree sequence needs length >= 3, got {m}"));
    }
    if degrees.windows(2).any(|w| w[0] > w[1]) {
        return invalid("degree sequence is not sorted ascending");
    }
    let d = |k: usize| degrees[k - 1];
    Ok((1..=m / 2).all(|k| d(k) > k || d(m - k) >= m - k))
}

/// Both sides of a balanced bipartite graph satisfy `d(r_k) > k` for `k ≤ m/2`,
/// with degrees counted into the opposite side.
pub fn moon_moser_check(g: &Graph, r: &[Vertex], s: &[Vertex]) -> Result<bool> {
    let m = r.len();
    if s.len() != m {
        return invalid(format!("unbalanced parts: {} and {}", r.len(), s.len()));
    }
    if m < 2 {
        return invalid("parts need at least two vertices");
    }
    let rm = membership(g.n(), r);
    let sm = membership(g.n(), s);
    if r.iter().any(|&v| sm[v]) {
        return invalid("parts overlap");
    }
    let ok = |side: &[Vertex], other: &[bool]| {
        let mut d: Vec<usize> = side.iter().map(|&v| g.degree_into(v, other)).collect();
        d.sort_unstable();
        (1..=m / 2).all(|k| d[k - 1] > k)
    };
    Ok(ok(r, &sm) && ok(s, &rm))
}

const NONE: usize = usize::MAX;

enum Step {
    Found,
    Fail,
    Budget,
}

struct Dfs<'a> {
    g: &'a Graph,
    n: usize,
    req: Vec<[usize; 2]>,
    visited: Vec<bool>,
    /// Unvisited neighbours of each vertex.
    free: Vec<usize>,
    path: Vec<Vertex>,
    key: Vec<u64>,
    nodes: u64,
    max_nodes: u64,
    deadline: Instant,
    cancel: Option<&'a AtomicBool>,
}

impl<'a> Dfs<'a> {
    fn req_of(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.req[v].into_iter().filter(|&r| r != NONE)
    }

    fn visit(&mut self, v: Vertex) {
        self.visited[v] = true;
        for &w in self.g.neighbours(v) {
            self.free[w] -= 1;
        }
        self.path.push(v);
    }

    fn unvisit(&mut self) {
        let v = self.path.pop().expect("non-empty path");
        self.visited[v] = false;
        for &w in self.g.neighbours(v) {
            self.free[w] += 1;
        }
    }

    fn out_of_budget(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return true;
        }
        if self.nodes % 1024 == 0 {
            if Instant::now() > self.deadline {
                return true;
            }
            if self.cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
                return true;
            }
        }
        false
    }

    fn closes(&self, v: Vertex) -> bool {
        let s = self.path[0];
        let second = self.path[1];
        let before = self.path[self.n - 2];
        self.g.has_edge(v, s)
            && self.req_of(s).all(|r| r == second || r == v)
            && self.req_of(v).all(|r| r == before || r == s)
    }

    /// `w` may be entered from `v`; `last` when it would be the final vertex.
    fn allowed(&self, w: Vertex, v: Vertex, last: bool) -> bool {
        let s = self.path[0];
        let open = |r: Vertex| r == v || !self.visited[r] || (last && r == s);
        match self.req[w] {
            [NONE, NONE] => true,
            [r, NONE] | [NONE, r] => open(r),
            [r1, r2] => (r1 == v && (!self.visited[r2] || (last && r2 == s))) || (r2 == v && (!self.visited[r1] || (last && r1 == s))),
        }
    }

    fn extend(&mut self) -> Step {
        if self.out_of_budget() {
            return Step::Budget;
        }
        let v = *self.path.last().expect("non-empty path");
        let len = self.path.len();
        if len == self.n {
            return if self.closes(v) { Step::Found } else { Step::Fail };
        }
        let s = self.path[0];
        let remaining = self.n - len;
        let mut forced = NONE;
        for w in 0..self.n {
            if self.visited[w] {
                continue;
            }
            let at_v = self.g.has_edge(w, v);
            let at_s = v != s && self.g.has_edge(w, s);
            let options = self.free[w] + usize::from(at_v) + usize::from(at_s);
            if options < 2 {
                return Step::Fail;
            }
            for r in self.req_of(w) {
                if self.visited[r] && r != v && r != s {
                    return Step::Fail;
                }
            }
            if options == 2 && at_v && remaining > 1 && v != s {
                if forced != NONE {
                    return Step::Fail;
                }
                forced = w;
            }
        }
        let mut candidates: Vec<Vertex> = Vec::new();
        if let Some(r) = self.req_of(v).find(|&r| !self.visited[r]) {
            if forced != NONE && forced != r {
                return Step::Fail;
            }
            candidates.push(r);
        } else if self.req_of(v).any(|r| self.visited[r] && (len < 2 || r != self.path[len - 2]) && !(r == s && len == self.n)) {
            return Step::Fail;
        } else if forced != NONE {
            candidates.push(forced);
        } else {
            candidates.extend(self.g.neighbours(v).iter().copied().filter(|&w| !self.visited[w]));
            candidates.sort_unstable_by_key(|&w| (self.free[w], self.key[w]));
        }
        let last = remaining == 1;
        for w in candidates {
            if !self.allowed(w, v, last) {
                continue;
            }
            self.visit(w);
            match self.extend() {
                Step::Fail => self.unvisit(),
                other => return other,
            }
        }
        Step::Fail
    }
}

/// Required edges as an adjacency table; errors when a vertex carries three
/// or the edges close a cycle shorter than `n`.
fn required_table(g: &Graph, required: &ProtectedSet) -> Result<(Vec<[usize; 2]>, bool)> {
    let n = g.n();
    required.check_in(g)?;
    let mut req = vec![[NONE; 2]; n];
    for e in required.edges() {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            let slot = req[a].iter_mut().find(|r| **r == NONE).ok_or_else(|| {
                Error::InvalidInput(format!("vertex {a} lies on three or more required edges"))
            })?;
            *slot = b;
        }
    }
    // Union-find to detect required cycles.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut closes_cycle = false;
    for e in required.edges() {
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a == b {
            if required.len() != n {
                return invalid("required edges form a cycle shorter than n");
            }
            closes_cycle = true;
        } else {
            parent[a] = b;
        }
    }
    Ok((req, closes_cycle))
}

/// Exact backtracking search for a Hamilton cycle through `required`.
pub fn find_ham_cycle(g: &Graph, required: &ProtectedSet, budget: SearchBudget, seed: u64) -> Result<HamOutcome> {
    find_ham_cycle_with_cancel(g, required, budget, seed, None)
}

/// As [`find_ham_cycle`]; a raised `cancel` flag ends the search with `Budget`.
pub fn find_ham_cycle_with_cancel(
    g: &Graph,
    required: &ProtectedSet,
    budget: SearchBudget,
    seed: u64,
    cancel: Option<&AtomicBool>,
) -> Result<HamOutcome> {
    budget.validate()?;
    let n = g.n();
    if n < 3 {
        return invalid(format!("Hamilton cycles need n >= 3, got {n}"));
    }
    let (req, closed) = required_table(g, required)?;
    if closed {
        // The required edges already form a spanning cycle.
        let mut order = vec![0];
        let mut prev = NONE;
        let mut v = 0;
        while order.len() < n {
            let next = if req[v][0] != prev { req[v][0] } else { req[v][1] };
            order.push(next);
            prev = v;
            v = next;
        }
        return Ok(HamOutcome::Found(DirectedHamCycle::from_order(&order)?));
    }
    if g.min_degree() < 2 {
        return Ok(HamOutcome::Exhausted);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let key: Vec<u64> = (0..n).map(|_| rng.gen()).collect();
    // Start at a required-path endpoint if there is one, else at a minimum-degree vertex.
    let start = (0..n)
        .filter(|&v| req[v][0] != NONE && req[v][1] == NONE)
        .min_by_key(|&v| (g.degree(v), key[v]))
        .unwrap_or_else(|| (0..n).min_by_key(|&v| (g.degree(v), key[v])).expect("n >= 3"));
    let mut dfs = Dfs {
        g,
        n,
        req,
        visited: vec![false; n],
        free: g.degrees(),
        path: Vec::with_capacity(n),
        key,
        nodes: 0,
        max_nodes: budget.max_nodes,
        deadline: Instant::now() + budget.time_limit,
        cancel,
    };
    dfs.visit(start);
    Ok(match dfs.extend() {
        Step::Found => HamOutcome::Found(DirectedHamCycle::from_order(&dfs.path)?),
        Step::Fail => HamOutcome::Exhausted,
        Step::Budget => HamOutcome::Budget,
    })
}

/// Which route produced a constructive cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstructionRoute {
    /// The proof's construction; `condition` records whether the degree
    /// condition it relies on held on the auxiliary graph.
    Constructive { condition: bool },
    /// Direct search on the whole graph with the protected edges required.
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub cycle: DirectedHamCycle,
    pub route: ConstructionRoute,
}

fn fallback(g: &Graph, z: &ProtectedSet, budget: SearchBudget, seed: u64) -> Result<Construction> {
    match find_ham_cycle(g, z, budget, seed)? {
        HamOutcome::Found(cycle) => Ok(Construction { cycle, route: ConstructionRoute::Fallback }),
        HamOutcome::Exhausted => Err(Error::ConstructionFailed("no Hamilton cycle contains the protected edges".into())),
        HamOutcome::Budget => Err(Error::ConstructionFailed("search budget exhausted".into())),
    }
}

/// Spanning path of `g[side]` from `p` to `q` via an auxiliary vertex adjacent
/// to exactly `p` and `q`. Returns the path and whether Chvátal's condition held.
fn spanning_path(g: &Graph, side: &[Vertex], p: Vertex, q: Vertex, budget: SearchBudget, seed: u64) -> Result<Option<(Vec<Vertex>, bool)>> {
    let k = side.len();
    let local = |v: Vertex| side.binary_search(&v).expect("vertex on side");
    let sub = g.induced(side);
    let x = k;
    let edges = sub
        .edges()
        .iter()
        .copied()
        .chain([Edge::new(x, local(p)), Edge::new(x, local(q))]);
    let aux = Graph::from_edges(k + 1, edges)?;
    let mut degrees = aux.degrees();
    degrees.sort_unstable();
    let condition = degrees.len() >= 3 && chvatal_check(&degrees)?;
    let required = ProtectedSet::new([Edge::new(x, local(p)), Edge::new(x, local(q))]);
    let Some(h) = find_ham_cycle(&aux, &required, budget, seed)?.cycle() else {
        return Ok(None);
    };
    let order = h.order_from(x);
    let mut path: Vec<Vertex> = order[1..].iter().map(|&i| side[i]).collect();
    if path[0] != p {
        path.reverse();
    }
    Ok(Some((path, condition)))
}

/// Hamilton cycle through the vertex-disjoint cross edges `f`, `f′`, built
/// from spanning paths of `G[A]` and `G[B]`; falls back to direct search.
pub fn two_clique_ham(
    g: &Graph,
    part: &TwoCliquePartition,
    f: Edge,
    f2: Edge,
    budget: SearchBudget,
    seed: u64,
) -> Result<Construction> {
    let n = g.n();
    let am = membership(n, &part.a);
    if f.shares_vertex(&f2) {
        return invalid(format!("{f} and {f2} share a vertex"));
    }
    for e in [f, f2] {
        if am[e.u] == am[e.v] {
            return invalid(format!("{e} does not cross the partition"));
        }
        if !g.contains(e) {
            return invalid(format!("{e} is not an edge"));
        }
    }
    let split = |e: Edge| if am[e.u] { (e.u, e.v) } else { (e.v, e.u) };
    let (a, b) = split(f);
    let (a2, b2) = split(f2);
    let z = ProtectedSet::new([f, f2]);
    let pa = spanning_path(g, &part.a, a, a2, budget, seed)?;
    let pb = spanning_path(g, &part.b, b2, b, budget, seed.wrapping_add(1))?;
    if let (Some((pa, ca)), Some((pb, cb))) = (pa, pb) {
        // a ⇝ a′ - b′ ⇝ b - a
        let order: Vec<Vertex> = pa.into_iter().chain(pb).collect();
        let cycle = DirectedHamCycle::from_order(&order)?;
        if validate_ham_cycle(g, &cycle, &z)? {
            return Ok(Construction { cycle, route: ConstructionRoute::Constructive { condition: ca && cb } });
        }
    }
    fallback(g, &z, budget, seed)
}

/// A path `b₁ b₁′ … b_k b_k′` through the matching edges whose connectors run
/// through `A`, either `b′ a b` or `b′ a c a′ b` with `c ∈ B` unmatched.
fn connect_matching(g: &Graph, part: &BicliquePartition, matching: &[Edge]) -> Option<Vec<Vertex>> {
    let n = g.n();
    let am = membership(n, &part.a);
    let mut used = vec![false; n];
    for e in matching {
        used[e.u] = true;
        used[e.v] = true;
    }
    let first = matching[0];
    let mut path = vec![first.u, first.v];
    for e in &matching[1..] {
        let from = *path.last().expect("non-empty");
        let mut joined = false;
        for (b, b2) in [(e.u, e.v), (e.v, e.u)] {
            if let Some(connector) = short_connector(g, &am, &used, from, b) {
                for &v in &connector {
                    used[v] = true;
                }
                path.extend(connector);
                path.extend([b, b2]);
                joined = true;
                break;
            }
        }
        if !joined {
            return None;
        }
    }
    Some(path)
}

/// Internal vertices of a path `from ⇝ to` of length 2 or 4 avoiding `used`.
fn short_connector(g: &Graph, am: &[bool], used: &[bool], from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
    let free_a = |v: &&Vertex| am[**v] && !used[**v];
    if let Some(&a) = g.neighbours(from).iter().filter(free_a).find(|&&a| g.has_edge(a, to)) {
        return Some(vec![a]);
    }
    for &a in g.neighbours(from).iter().filter(free_a) {
        for &c in g.neighbours(a).iter().filter(|&&c| !am[c] && !used[c] && c != from && c != to) {
            if let Some(&a2) = g.neighbours(c).iter().filter(free_a).find(|&&a2| a2 != a && g.has_edge(a2, to)) {
                return Some(vec![a, c, a2]);
            }
        }
    }
    None
}

/// Hamilton cycle containing the matching `M ⊆ G[B]` with `|M| = |B| − |A|`:
/// chain `M` into a path through `A`, then close it through a balanced
/// bipartite remainder. Falls back to direct search.
pub fn biclique_ham(
    g: &Graph,
    part: &BicliquePartition,
    matching: &ProtectedSet,
    budget: SearchBudget,
    seed: u64,
) -> Result<Construction> {
    let n = g.n();
    let bm = membership(n, &part.b);
    if part.b.len() < part.a.len() {
        return invalid("biclique needs |B| >= |A|");
    }
    let k = part.b.len() - part.a.len();
    if matching.len() != k {
        return invalid(format!("matching has {} edges, |B| - |A| = {k}", matching.len()));
    }
    if !matching.is_matching() || matching.edges().iter().any(|e| !bm[e.u] || !bm[e.v]) {
        return invalid("protected set is not a matching inside B");
    }
    matching.check_in(g)?;
    let am = membership(n, &part.a);
    let cross = g.filter_edges(|e| am[e.u] != am[e.v]);

    if k == 0 {
        let condition = part.a.len() >= 2 && moon_moser_check(g, &part.a, &part.b)?;
        if let HamOutcome::Found(cycle) = find_ham_cycle(&cross, matching, budget, seed)? {
            return Ok(Construction { cycle, route: ConstructionRoute::Constructive { condition } });
        }
        return fallback(g, matching, budget, seed);
    }

    if let Some(path) = connect_matching(g, part, matching.edges()) {
        let (b, b2) = (path[0], *path.last().expect("non-empty"));
        let mut inner = vec![false; n];
        for &v in &path[1..path.len() - 1] {
            inner[v] = true;
        }
        let rest: Vec<Vertex> = (0..n).filter(|&v| !inner[v]).collect();
        let rest_a: Vec<usize> = (0..rest.len()).filter(|&i| am[rest[i]]).collect();
        let rest_b: Vec<usize> = (0..rest.len()).filter(|&i| !am[rest[i]]).collect();
        // The auxiliary vertex joins the A side.
        if rest_a.len() + 1 == rest_b.len() {
            let x = rest.len();
            let local = |v: Vertex| rest.binary_search(&v).expect("kept vertex");
            let sub = cross.induced(&rest);
            let aux_edges = sub.edges().iter().copied().chain([Edge::new(x, local(b)), Edge::new(x, local(b2))]);
            let aux = Graph::from_edges(x + 1, aux_edges)?;
            let mut side_a = rest_a.clone();
            side_a.push(x);
            let condition = side_a.len() >= 2 && moon_moser_check(&aux, &side_a, &rest_b)?;
            let required = ProtectedSet::new([Edge::new(x, local(b)), Edge::new(x, local(b2))]);
            if let HamOutcome::Found(h) = find_ham_cycle(&aux, &required, budget, seed)? {
                let order = h.order_from(x);
                let mut tail: Vec<Vertex> = order[1..].iter().map(|&i| rest[i]).collect();
                // tail runs b′ ⇝ b so that it continues the path b ⇝ b′.
                if tail[0] != b2 {
                    tail.reverse();
                }
                let full: Vec<Vertex> = path.iter().copied().chain(tail[1..tail.len() - 1].iter().copied()).collect();
                let cycle = DirectedHamCycle::from_order(&full)?;
                if validate_ham_cycle(g, &cycle, matching)? {
                    return Ok(Construction { cycle, route: ConstructionRoute::Constructive { condition } });
                }
            }
        }
    }
    fallback(g, matching, budget, seed)
}
