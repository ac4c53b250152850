//! Graphs, edge colourings, directed Hamilton cycles and protected edge sets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub type Vertex = usize;
pub type Colour = u32;

/// Undirected edge stored canonically with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    /// Canonical edge between `a` and `b`. Panics on a self-loop.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        assert_ne!(a, b, "self-loop {a}-{a}");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.contains(other.u) || self.contains(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// Membership vector for a vertex subset.
pub fn membership(n: usize, set: &[Vertex]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in set {
        mask[v] = true;
    }
    mask
}

/// Complement of a subset, as sorted vertex ids.
pub fn complement(n: usize, set: &[Vertex]) -> Vec<Vertex> {
    let mask = membership(n, set);
    (0..n).filter(|&v| !mask[v]).collect()
}

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
    matrix: Vec<bool>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, out-of-range ids and duplicates.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut matrix = vec![false; n * n];
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return invalid(format!("edge {a}-{b} has a vertex >= n = {n}"));
            }
            if a == b {
                return invalid(format!("self-loop at {a}"));
            }
            if matrix[a * n + b] {
                return invalid(format!("duplicate edge {a}-{b}"));
            }
            matrix[a * n + b] = true;
            matrix[b * n + a] = true;
            list.push(Edge::new(a, b));
        }
        list.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for e in &list {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj, matrix })
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        Graph::new(n, edges.into_iter().map(|e| (e.u, e.v)))
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, std::iter::empty()).expect("empty graph")
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("complete graph")
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).expect("complete bipartite")
    }

    /// The cycle `0-1-…-(n-1)-0`.
    pub fn cycle(n: usize) -> Self {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical sorted order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a != b && self.matrix[a * self.n + b]
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// `d(v, A)` for a membership mask.
    pub fn degree_into(&self, v: Vertex, set: &[bool]) -> usize {
        self.adj[v].iter().filter(|&&w| set[w]).count()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// `e(A)`: edges with both endpoints in the set.
    pub fn edges_within(&self, set: &[bool]) -> usize {
        self.edges.iter().filter(|e| set[e.u] && set[e.v]).count()
    }

    /// `e(A, B)`: edges with one endpoint in each set (sets may overlap).
    pub fn edges_between(&self, a: &[bool], b: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|e| (a[e.u] && b[e.v]) || (a[e.v] && b[e.u]))
            .count()
    }

    /// Spanning subgraph keeping the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(&Edge) -> bool) -> Graph {
        Graph::from_edges(self.n, self.edges.iter().copied().filter(|e| keep(e))).expect("subgraph of a valid graph")
    }

    /// Induced subgraph on `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| index[e.u] != usize::MAX && index[e.v] != usize::MAX)
            .map(|e| (index[e.u], index[e.v]));
        Graph::new(vertices.len(), edges).expect("induced subgraph")
    }
}

/// Total map from the edges of a graph to colour ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    n: usize,
    edges: Vec<Edge>,
    colours: Vec<Colour>,
    lookup: Vec<Colour>,
    multiplicity: Vec<usize>,
}

const NO_COLOUR: Colour = Colour::MAX;

impl Colouring {
    /// `colours[i]` is the colour of `g.edges()[i]`.
    pub fn new(g: &Graph, colours: Vec<Colour>) -> Result<Self> {
        if colours.len() != g.m() {
            return invalid(format!("{} colours for {} edges", colours.len(), g.m()));
        }
        if colours.iter().any(|&c| c == NO_COLOUR) {
            return invalid("colour id u32::MAX is reserved");
        }
        let n = g.n();
        let mut lookup = vec![NO_COLOUR; n * n];
        let max = colours.iter().copied().max().map_or(0, |c| c as usize + 1);
        let mut multiplicity = vec![0; max];
        for (e, &c) in g.edges().iter().zip(&colours) {
            lookup[e.u * n + e.v] = c;
            lookup[e.v * n + e.u] = c;
            multiplicity[c as usize] += 1;
        }
        Ok(Colouring { n, edges: g.edges().to_vec(), colours, lookup, multiplicity })
    }

    pub fn from_fn(g: &Graph, mut f: impl FnMut(Edge) -> Colour) -> Self {
        let colours = g.edges().iter().map(|&e| f(e)).collect();
        Colouring::new(g, colours).expect("one colour per edge")
    }

    /// Every edge gets its own colour.
    pub fn rainbow(g: &Graph) -> Self {
        Colouring::new(g, (0..g.m() as Colour).collect()).expect("rainbow colouring")
    }

    #[inline]
    pub fn colour(&self, a: Vertex, b: Vertex) -> Option<Colour> {
        if a >= self.n || b >= self.n || a == b {
            return None;
        }
        let c = self.lookup[a * self.n + b];
        (c != NO_COLOUR).then_some(c)
    }

    pub fn colour_of(&self, e: Edge) -> Option<Colour> {
        self.colour(e.u, e.v)
    }

    /// Colours aligned with the graph's canonical edge order.
    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn multiplicity(&self, c: Colour) -> usize {
        self.multiplicity.get(c as usize).copied().unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.multiplicity.iter().copied().max().unwrap_or(0)
    }

    pub fn is_k_bounded(&self, k: usize) -> bool {
        self.max_multiplicity() <= k
    }

    pub fn distinct_colours(&self) -> usize {
        self.multiplicity.iter().filter(|&&m| m > 0).count()
    }

    /// Edges carrying colour `c`.
    pub fn class(&self, c: Colour) -> Vec<Edge> {
        self.edges.iter().zip(&self.colours).filter(|(_, &k)| k == c).map(|(e, _)| *e).collect()
    }

    /// Restriction to a spanning subgraph; colour ids are preserved.
    pub fn restrict(&self, sub: &Graph) -> Result<Colouring> {
        let mut colours = Vec::with_capacity(sub.m());
        for e in sub.edges() {
            match self.colour_of(*e) {
                Some(c) => colours.push(c),
                None => return invalid(format!("edge {e} is not coloured")),
            }
        }
        Colouring::new(sub, colours)
    }
}

/// A directed Hamilton cycle given by its successor permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedHamCycle {
    succ: Vec<Vertex>,
    pred: Vec<Vertex>,
}

/// Serialised as the vertex order starting at 0; deserialisation re-validates.
impl Serialize for DirectedHamCycle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.order().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirectedHamCycle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let order = Vec::<Vertex>::deserialize(d)?;
        DirectedHamCycle::from_order(&order).map_err(serde::de::Error::custom)
    }
}

impl DirectedHamCycle {
    /// Accepts `succ` only if it is a single cycle through all `n ≥ 3` vertices.
    pub fn from_successors(succ: Vec<Vertex>) -> Result<Self> {
        let n = succ.len();
        if n < 3 {
            return invalid(format!("a Hamilton cycle needs n >= 3, got {n}"));
        }
        let mut pred = vec![usize::MAX; n];
        for (v, &s) in succ.iter().enumerate() {
            if s >= n {
                return invalid(format!("successor {s} of {v} is out of range"));
            }
            if pred[s] != usize::MAX {
                return invalid(format!("vertex {s} has two predecessors"));
            }
            pred[s] = v;
        }
        let mut len = 1;
        let mut v = succ[0];
        while v != 0 {
            v = succ[v];
            len += 1;
        }
        if len != n {
            return invalid(format!("successor map splits into several cycles (cycle through 0 has length {len})"));
        }
        Ok(DirectedHamCycle { succ, pred })
    }

    /// Cycle visiting `order[0] → order[1] → … → order[n-1] → order[0]`.
    pub fn from_order(order: &[Vertex]) -> Result<Self> {
        let n = order.len();
        let mut succ = vec![usize::MAX; n];
        for i in 0..n {
            let v = order[i];
            if v >= n {
                return invalid(format!("vertex {v} out of range"));
            }
            if succ[v] != usize::MAX {
                return invalid(format!("vertex {v} repeated"));
            }
            succ[v] = order[(i + 1) % n];
        }
        DirectedHamCycle::from_successors(succ)
    }

    pub fn n(&self) -> usize {
        self.succ.len()
    }

    #[inline]
    pub fn succ(&self, v: Vertex) -> Vertex {
        self.succ[v]
    }

    #[inline]
    pub fn pred(&self, v: Vertex) -> Vertex {
        self.pred[v]
    }

    pub fn successors(&self) -> &[Vertex] {
        &self.succ
    }

    /// Vertices in successor order starting at `start`.
    pub fn order_from(&self, start: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.n());
        let mut v = start;
        loop {
            out.push(v);
            v = self.succ[v];
            if v == start {
                break;
            }
        }
        out
    }

    pub fn order(&self) -> Vec<Vertex> {
        self.order_from(0)
    }

    /// Position of each vertex in `order_from(start)`.
    pub fn positions_from(&self, start: Vertex) -> Vec<usize> {
        let mut pos = vec![0; self.n()];
        for (i, v) in self.order_from(start).into_iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Undirected cycle edges, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut e: Vec<Edge> = (0..self.n()).map(|v| Edge::new(v, self.succ[v])).collect();
        e.sort_unstable();
        e
    }

    #[inline]
    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.n() && b < self.n() && a != b && (self.succ[a] == b || self.succ[b] == a)
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    pub fn has_arc(&self, from: Vertex, to: Vertex) -> bool {
        self.succ[from] == to
    }

    /// The tail `x` with `e = (x, π(x))`, if `e` lies on the cycle.
    pub fn tail_of(&self, e: Edge) -> Option<Vertex> {
        if self.succ[e.u] == e.v {
            Some(e.u)
        } else if self.succ[e.v] == e.u {
            Some(e.v)
        } else {
            None
        }
    }

    pub fn reverse(&self) -> DirectedHamCycle {
        DirectedHamCycle { succ: self.pred.clone(), pred: self.succ.clone() }
    }
}

/// The set `Z` of edges a Hamilton cycle must contain.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtectedSet {
    edges: Vec<Edge>,
}

impl ProtectedSet {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Self {
        let set: BTreeSet<Edge> = edges.into_iter().collect();
        ProtectedSet { edges: set.into_iter().collect() }
    }

    pub fn empty() -> Self {
        ProtectedSet::default()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Pairwise vertex-disjoint.
    pub fn is_matching(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert(e.u) && seen.insert(e.v))
    }

    pub fn check_in(&self, g: &Graph) -> Result<()> {
        match self.edges.iter().find(|e| e.v >= g.n() || !g.contains(**e)) {
            Some(e) => invalid(format!("protected edge {e} is not in the graph")),
            None => Ok(()),
        }
    }
}

/// `2·δ(G) ≥ n`.
pub fn is_dirac(g: &Graph) -> Result<bool> {
    if g.n() < 3 {
        return invalid(format!("Dirac condition needs n >= 3, got {}", g.n()));
    }
    Ok(2 * g.min_degree() >= g.n())
}

/// Every cycle edge lies in `g` and every protected edge lies on the cycle.
pub fn validate_ham_cycle(g: &Graph, h: &DirectedHamCycle, z: &ProtectedSet) -> Result<bool> {
    if h.n() != g.n() {
        return invalid(format!("cycle on {} vertices, graph on {}", h.n(), g.n()));
    }
    let on_graph = (0..h.n()).all(|v| g.has_edge(v, h.succ(v)));
    Ok(on_graph && z.edges().iter().all(|&e| h.contains(e)))
}

/// True iff the colours on `edges` are pairwise distinct.
pub fn is_rainbow(c: &Colouring, edges: &[Edge]) -> Result<bool> {
    let mut seen = BTreeSet::new();
    for &e in edges {
        let col = c.colour_of(e).ok_or_else(|| Error::InvalidInput(format!("edge {e} is not coloured")))?;
        if !seen.insert(col) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn dirac_examples() {
        assert!(is_dirac(&Graph::complete(6)).unwrap());
        assert!(!is_dirac(&Graph::cycle(6)).unwrap());
        // 2K_4 joined by a perfect matching: degree 3 + 1 = 4 = n/2.
        let mut e: Vec<(usize, usize)> = Vec::new();
        for side in [0, 4] {
            for i in 0..4 {
                for j in i + 1..4 {
                    e.push((side + i, side + j));
                }
            }
        }
        e.extend((0..4).map(|i| (i, i + 4)));
        let g = Graph::new(8, e).unwrap();
        assert_eq!(g.min_degree(), 4);
        assert!(is_dirac(&g).unwrap());
        assert!(is_dirac(&Graph::complete(2)).is_err());
    }

    #[test]
    fn odd_dirac_threshold_is_ceiling() {
        // n = 5, δ = 2: 2·2 < 5.
        assert!(!is_dirac(&Graph::cycle(5)).unwrap());
        let k5_minus_matching = Graph::complete(5).filter_edges(|e| *e != Edge::new(0, 1) && *e != Edge::new(2, 3));
        assert_eq!(k5_minus_matching.min_degree(), 3);
        assert!(is_dirac(&k5_minus_matching).unwrap());
    }

    #[test]
    fn validate_examples() {
        let k4 = Graph::complete(4);
        let h = DirectedHamCycle::from_successors(vec![1, 2, 3, 0]).unwrap();
        assert!(validate_ham_cycle(&k4, &h, &ProtectedSet::empty()).unwrap());
        assert!(!validate_ham_cycle(&k4, &h, &ProtectedSet::new([Edge::new(0, 2)])).unwrap());
        let c5 = Graph::cycle(5);
        let h5 = DirectedHamCycle::from_order(&[0, 1, 2, 3, 4]).unwrap();
        assert!(validate_ham_cycle(&c5, &h5, &ProtectedSet::new([Edge::new(3, 4)])).unwrap());
        assert!(validate_ham_cycle(&c5, &h, &ProtectedSet::empty()).is_err());
    }

    #[test]
    fn rainbow_examples() {
        let t = Graph::complete(3);
        let c = Colouring::new(&t, vec![0, 1, 2]).unwrap();
        assert!(is_rainbow(&c, t.edges()).unwrap());
        assert!(is_rainbow(&c, &[]).unwrap());
        let p = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let same = Colouring::new(&p, vec![7, 7]).unwrap();
        assert!(!is_rainbow(&same, p.edges()).unwrap());
        assert!(is_rainbow(&same, &[Edge::new(0, 2)]).is_err());
    }

    #[test]
    fn cycle_rejects_two_cycles() {
        assert!(DirectedHamCycle::from_successors(vec![1, 2, 0, 4, 5, 3]).is_err());
        assert!(DirectedHamCycle::from_successors(vec![1, 1, 0]).is_err());
        let h = DirectedHamCycle::from_order(&[0, 2, 1, 3]).unwrap();
        assert_eq!(h.reverse().reverse(), h);
        assert_eq!(h.reverse().edges(), h.edges());
        assert_eq!(h.tail_of(Edge::new(0, 2)), Some(0));
        assert_eq!(h.tail_of(Edge::new(0, 1)), None);
    }

    #[test]
    fn multiplicity_tracking() {
        let g = Graph::complete(4);
        let c = Colouring::new(&g, vec![0, 0, 1, 2, 2, 2]).unwrap();
        assert_eq!(c.multiplicity(2), 3);
        assert_eq!(c.max_multiplicity(), 3);
        assert!(c.is_k_bounded(3));
        assert!(!c.is_k_bounded(2));
        assert_eq!(c.distinct_colours(), 3);
    }
}
