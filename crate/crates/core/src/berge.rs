//! Berge Hamilton cycles in uniform hypergraphs via rainbow Hamilton cycles
//! in the shadow graph, coloured by a containing hyperedge.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::classification::Params;
use crate::error::{invalid, Result};
use crate::graph::{Colour, Colouring, Edge, Graph};
use crate::rainbow::{find_rainbow_hc, PipelineConfig, RainbowResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    /// Sorted vertex lists, in input order.
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, r: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if r < 2 {
            return invalid(format!("uniformity r = {r} must be at least 2"));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            if e.len() != r || e.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("hyperedge {e:?} is not an {r}-set"));
            }
            if e.iter().any(|&v| v >= n) {
                return invalid(format!("hyperedge {e:?} has a vertex >= n = {n}"));
            }
            if !seen.insert(e.clone()) {
                return invalid(format!("duplicate hyperedge {e:?}"));
            }
            out.push(e);
        }
        Ok(Hypergraph { n, r, edges: out })
    }

    /// All `r`-subsets of `0..n` in lexicographic order.
    pub fn complete(n: usize, r: usize) -> Result<Self> {
        if r > n {
            return invalid(format!("r = {r} exceeds n = {n}"));
        }
        let mut edges = Vec::new();
        let mut cur: Vec<usize> = (0..r).collect();
        loop {
            edges.push(cur.clone());
            let Some(i) = (0..r).rev().find(|&i| cur[i] < n - r + i) else { break };
            cur[i] += 1;
            for k in i + 1..r {
                cur[k] = cur[k - 1] + 1;
            }
        }
        Hypergraph::new(n, r, edges)
    }

    /// Vertex-disjoint union: `other` is shifted past this hypergraph's vertices.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Result<Self> {
        if self.r != other.r {
            return invalid("uniformities differ");
        }
        let shifted = other.edges.iter().map(|e| e.iter().map(|v| v + self.n).collect());
        Hypergraph::new(self.n + other.n, self.r, self.edges.iter().cloned().chain(shifted).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// `δ₁(H)`: the minimum number of hyperedges at a vertex.
    pub fn min_vertex_degree(&self) -> usize {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg.into_iter().min().unwrap_or(0)
    }
}

/// `C(⌈n/2⌉ − 1, r − 1)`.
pub fn degree_threshold(n: usize, r: usize) -> Result<BigUint> {
    if r < 2 || r > n {
        return invalid(format!("need 2 <= r <= n, got r = {r}, n = {n}"));
    }
    Ok(binomial(n.div_ceil(2) - 1, r - 1))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Shadow graph with each pair coloured by the index of the
/// lexicographically smallest hyperedge containing it.
#[derive(Clone, Debug)]
pub struct Shadow {
    pub graph: Graph,
    pub colouring: Colouring,
    /// Colour `c` is hyperedge `c`; kept explicit for callers that renumber.
    pub edge_map: BTreeMap<Colour, usize>,
}

pub fn shadow_reduce(h: &Hypergraph) -> Shadow {
    let mut order: Vec<usize> = (0..h.edges.len()).collect();
    order.sort_by(|&a, &b| h.edges[a].cmp(&h.edges[b]));
    let mut owner: BTreeMap<Edge, usize> = BTreeMap::new();
    for &i in &order {
        let e = &h.edges[i];
        for (x, &u) in e.iter().enumerate() {
            for &v in &e[x + 1..] {
                owner.entry(Edge::new(u, v)).or_insert(i);
            }
        }
    }
    let graph = Graph::from_edges(h.n, owner.keys().copied()).expect("shadow is simple");
    let colouring = Colouring::from_fn(&graph, |e| owner[&e] as Colour);
    let edge_map = owner.values().map(|&i| (i as Colour, i)).collect();
    Shadow { graph, colouring, edge_map }
}

/// `v₁ e₁ v₂ e₂ … v_n e_n` with `{v_i, v_{i+1}} ⊆ e_i` cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergeCycle {
    pub vertices: Vec<usize>,
    /// Hyperedge indices.
    pub edges: Vec<usize>,
}

impl std::fmt::Display for BergeCycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.vertices.iter().zip(&self.edges).map(|(v, e)| format!("{v} {e}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn verify_berge(h: &Hypergraph, b: &BergeCycle) -> bool {
    let n = h.n;
    if b.vertices.len() != n || b.edges.len() != n || n < 2 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in &b.vertices {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    let mut used = std::collections::BTreeSet::new();
    for (i, &e) in b.edges.iter().enumerate() {
        if e >= h.edges.len() || !used.insert(e) {
            return false;
        }
        let edge = &h.edges[e];
        let (u, v) = (b.vertices[i], b.vertices[(i + 1) % n]);
        if edge.binary_search(&u).is_err() || edge.binary_search(&v).is_err() {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BergeResult {
    pub cycle: Option<BergeCycle>,
    pub threshold: String,
    pub min_degree: usize,
    /// `δ₁(H)` exceeds the threshold.
    pub above_threshold: bool,
    /// Largest colour class of the shadow colouring.
    pub shadow_max_class: usize,
    pub search: RainbowResult,
}

/// Searches for a rainbow Hamilton cycle in the shadow and reads it back as
/// a Berge cycle. Inputs below the degree threshold are attempted anyway.
pub fn berge_hamilton(h: &Hypergraph, p: &Params, cfg: &PipelineConfig) -> Result<BergeResult> {
    if h.n < 3 {
        return invalid("Berge Hamilton cycles need n >= 3");
    }
    let threshold = degree_threshold(h.n, h.r)?;
    let min_degree = h.min_vertex_degree();
    let shadow = shadow_reduce(h);
    let cfg = PipelineConfig { allow_non_dirac: true, ..*cfg };
    let search = find_rainbow_hc(&shadow.graph, &shadow.colouring, p, &cfg)?;
    let cycle = search.cycle.as_ref().map(|hc| {
        let vertices = hc.order();
        let edges = (0..vertices.len())
            .map(|i| {
                let col = shadow.colouring.colour(vertices[i], vertices[(i + 1) % vertices.len()]).expect("shadow edge");
                shadow.edge_map[&col]
            })
            .collect();
        BergeCycle { vertices, edges }
    });
    if let Some(b) = &cycle {
        debug_assert!(verify_berge(h, b));
        if !verify_berge(h, b) {
            return Err(crate::error::Error::ConstructionFailed("shadow cycle does not translate to a Berge cycle".into()));
        }
    }
    Ok(BergeResult {
        cycle,
        above_threshold: BigUint::from(min_degree) > threshold,
        threshold: threshold.to_string(),
        min_degree,
        shadow_max_class: shadow.colouring.max_multiplicity(),
        search,
    })
}
