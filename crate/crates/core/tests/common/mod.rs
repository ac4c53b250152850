//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rainbow_core::{Colouring, Edge, Graph};

/// Every directed Hamilton cycle of `K_n` as a vertex order starting at 0.
pub fn all_orders(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

pub fn cycle_edges(order: &[usize]) -> BTreeSet<Edge> {
    let n = order.len();
    (0..n).map(|i| Edge::new(order[i], order[(i + 1) % n])).collect()
}

/// Is the edge set a single cycle through all `n` vertices?
pub fn is_hamilton_edge_set(n: usize, edges: &BTreeSet<Edge>) -> bool {
    if edges.len() != n {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    if adj.iter().any(|a| a.len() != 2) {
        return false;
    }
    let (mut prev, mut cur, mut seen) = (0, adj[0][0], 1);
    while cur != 0 {
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        prev = cur;
        cur = next;
        seen += 1;
    }
    seen == n
}

/// Any Hamilton cycle of `g` containing `required`, by scanning every
/// permutation that fixes vertex 0.
pub fn brute_force_hc(g: &Graph, required: &[Edge]) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    all_orders(n).into_iter().find(|o| {
        (0..n).all(|i| g.has_edge(o[i], o[(i + 1) % n])) && {
            let es = cycle_edges(o);
            required.iter().all(|e| es.contains(e))
        }
    })
}

/// Depth-first search for a rainbow Hamilton cycle, pruning on repeated colours.
pub fn rainbow_hc_dfs(g: &Graph, c: &Colouring) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let colour = |u: usize, v: usize| c.colour(u, v).expect("coloured edge");
    let mut path = vec![0];
    let mut on = vec![false; n];
    on[0] = true;
    let mut used: HashSet<u32> = HashSet::new();
    fn rec(
        g: &Graph,
        colour: &dyn Fn(usize, usize) -> u32,
        path: &mut Vec<usize>,
        on: &mut [bool],
        used: &mut HashSet<u32>,
    ) -> bool {
        let n = g.n();
        let v = *path.last().unwrap();
        if path.len() == n {
            return g.has_edge(v, 0) && !used.contains(&colour(v, 0));
        }
        for &w in g.neighbours(v) {
            if on[w] {
                continue;
            }
            let col = colour(v, w);
            if used.contains(&col) {
                continue;
            }
            on[w] = true;
            used.insert(col);
            path.push(w);
            if rec(g, colour, path, on, used) {
                return true;
            }
            path.pop();
            used.remove(&col);
            on[w] = false;
        }
        false
    }
    rec(g, &colour, &mut path, &mut on, &mut used).then_some(path)
}

/// Held–Karp over `(visited, end, colours used among the repeated colours)`.
/// Colours occurring once can never clash, so only the repeated ones are
/// tracked. Exact for `n ≤ 20` with at most 64 repeated colours.
pub fn rainbow_hc_exists_dp(g: &Graph, c: &Colouring) -> bool {
    let n = g.n();
    assert!((3..=20).contains(&n));
    let mut count: BTreeMap<u32, usize> = BTreeMap::new();
    for e in g.edges() {
        *count.entry(c.colour_of(*e).unwrap()).or_default() += 1;
    }
    let repeated: BTreeMap<u32, u32> = count.iter().filter(|(_, &k)| k > 1).enumerate().map(|(i, (&col, _))| (col, i as u32)).collect();
    assert!(repeated.len() <= 64);
    let bit = |u: usize, v: usize| -> u64 {
        repeated.get(&c.colour(u, v).unwrap()).map_or(0, |&i| 1u64 << i)
    };
    // layer: (mask, end) -> set of colour masks
    let mut layer: BTreeMap<(u32, usize), HashSet<u64>> = BTreeMap::new();
    layer.entry((1, 0)).or_default().insert(0);
    for _ in 1..n {
        let mut next: BTreeMap<(u32, usize), HashSet<u64>> = BTreeMap::new();
        for (&(mask, end), cms) in &layer {
            for &w in g.neighbours(end) {
                if mask & (1 << w) != 0 {
                    continue;
                }
                let b = bit(end, w);
                let slot = next.entry((mask | (1 << w), w)).or_default();
                for &cm in cms {
                    if cm & b == 0 {
                        slot.insert(cm | b);
                    }
                }
            }
        }
        next.retain(|_, s| !s.is_empty());
        layer = next;
    }
    layer.iter().any(|(&(_, end), cms)| {
        g.has_edge(end, 0) && {
            let b = bit(end, 0);
            cms.iter().any(|&cm| cm & b == 0)
        }
    })
}

/// Edge set after the switching with tail `x` and `e' = (x', y')`, derived
/// from the three removed and three added edges alone, or `None` when the
/// positional condition fails or the exchange is degenerate.
pub fn switch_oracle(order: &[usize], x: usize, xp: usize, yp: usize, kind: u8) -> Option<BTreeSet<Edge>> {
    let n = order.len();
    let pos: Vec<usize> = {
        let mut p = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    let succ = |v: usize| order[(pos[v] + 1) % n];
    let pred = |v: usize| order[(pos[v] + n - 1) % n];
    let before = cycle_edges(order);
    if xp == yp || x == xp || before.contains(&Edge::new(xp, yp)) {
        return None;
    }
    // x must be met walking forward from y' before passing x'
    let mut v = yp;
    let mut found = v == x;
    while v != xp && !found {
        v = succ(v);
        found = v == x;
    }
    if !found {
        return None;
    }
    let (px, pxp, qyp) = (succ(x), succ(xp), pred(yp));
    let removed = [(x, px), (xp, pxp), (qyp, yp)];
    let added = match kind {
        1 => [(xp, yp), (x, pxp), (qyp, px)],
        _ => [(xp, yp), (x, qyp), (px, pxp)],
    };
    if added.iter().any(|&(a, b)| a == b) {
        return None;
    }
    let removed: BTreeSet<Edge> = removed.iter().map(|&(a, b)| Edge::new(a, b)).collect();
    let added: BTreeSet<Edge> = added.iter().map(|&(a, b)| Edge::new(a, b)).collect();
    if removed.len() != 3 || added.len() != 3 || added.iter().any(|e| before.contains(e)) {
        return None;
    }
    let after: BTreeSet<Edge> = before.difference(&removed).chain(added.iter()).copied().collect();
    is_hamilton_edge_set(n, &after).then_some(after)
}

/// Number of admissible switchings for the cycle edge with tail `x`, keeping
/// every edge of `z`.
pub fn count_admissible(g: &Graph, order: &[usize], x: usize, z: &[Edge]) -> usize {
    let n = order.len();
    let mut count = 0;
    for xp in 0..n {
        for yp in 0..n {
            if !g.has_edge(xp, yp) {
                continue;
            }
            for kind in [1, 2] {
                if let Some(after) = switch_oracle(order, x, xp, yp, kind) {
                    let in_g = after.iter().all(|e| g.contains(*e));
                    let keeps_z = z.iter().all(|e| after.contains(e));
                    if in_g && keeps_z {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// All graphs on `n` labelled vertices, as edge bitmasks over the pairs of
/// `0..n` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

pub fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p)).unwrap()
}

/// Prints a criterion line and returns whether it passed.
pub fn report(id: &str, pass: bool, detail: impl std::fmt::Display) -> bool {
    println!("criterion {id}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    pass
}
