use serde::{Deserialize, Serialize};

use super::colour_set::{select_colour_set, ColourMultisetFamily, ColourSelection, FamilyParams};
use super::matching::greedy_rainbow_matching;
use crate::classification::{BicliquePartition, Params, TwoCliquePartition};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::graph::{membership, Colour, Colouring, Edge, Graph, ProtectedSet};

/// A protected set together with the reduced graph `Ĝ` the search runs on.
#[derive(Clone, Debug)]
pub struct ProtectedInstance {
    pub z: ProtectedSet,
    pub reduced: Graph,
    pub details: ProtectedDetails,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProtectedDetails {
    TwoCliques,
    Biclique {
        /// Size of the greedy rainbow matching in `G[B]`.
        matching_size: usize,
        selection: Option<ColourSelection>,
        /// Edges removed by the low-degree rule.
        low_degree_deletions: usize,
    },
}

fn colour_counts(g: &Graph, c: &Colouring) -> std::collections::BTreeMap<Colour, usize> {
    let mut counts = std::collections::BTreeMap::new();
    for e in g.edges() {
        if let Some(col) = c.colour_of(*e) {
            *counts.entry(col).or_insert(0) += 1;
        }
    }
    counts
}

/// Two vertex-disjoint cross edges with distinct colours, rarest colours
/// first; `Ĝ` keeps only those two cross edges and drops every other edge
/// sharing their colours.
pub fn protect_two_clique(g: &Graph, c: &Colouring, part: &TwoCliquePartition) -> Result<ProtectedInstance> {
    let n = g.n();
    let am = membership(n, &part.a);
    let counts = colour_counts(g, c);
    let colour = |e: &Edge| c.colour_of(*e).ok_or_else(|| Error::InvalidInput(format!("edge {e} is not coloured")));
    let mut cross: Vec<(usize, Edge, Colour)> = Vec::new();
    for e in g.edges().iter().filter(|e| am[e.u] != am[e.v]) {
        let col = colour(e)?;
        cross.push((counts[&col], *e, col));
    }
    cross.sort_unstable();
    let pair = cross.iter().enumerate().find_map(|(i, f)| {
        cross[i + 1..].iter().find(|f2| f2.2 != f.2 && !f.1.shares_vertex(&f2.1)).map(|f2| (*f, *f2))
    });
    let Some((f, f2)) = pair else {
        return Err(Error::ConstructionFailed("no two vertex-disjoint cross edges with distinct colours".into()));
    };
    let z = ProtectedSet::new([f.1, f2.1]);
    let reduced = g.filter_edges(|e| {
        if z.contains(*e) {
            return true;
        }
        let col = c.colour_of(*e);
        am[e.u] == am[e.v] && col != Some(f.2) && col != Some(f2.2)
    });
    let inst = ProtectedInstance { z, reduced, details: ProtectedDetails::TwoCliques };
    if !check_c1_c2(&inst, c, &part.a) {
        return Err(Error::ConstructionFailed("reduced graph violates the protected-set conditions".into()));
    }
    Ok(inst)
}

/// `E_Ĝ(A, B) = Z` and each edge of `Z` has a colour unique in `Ĝ`.
pub fn check_c1_c2(inst: &ProtectedInstance, c: &Colouring, a: &[usize]) -> bool {
    let g = &inst.reduced;
    let am = membership(g.n(), a);
    let cross: Vec<Edge> = g.edges().iter().copied().filter(|e| am[e.u] != am[e.v]).collect();
    cross == inst.z.edges() && unique_colours(g, c, &inst.z)
}

fn unique_colours(g: &Graph, c: &Colouring, z: &ProtectedSet) -> bool {
    let counts = colour_counts(g, c);
    z.edges().iter().all(|e| c.colour_of(*e).is_some_and(|col| counts[&col] == 1))
}

/// Rainbow matching `M` of size `|B| − |A|` inside `B`, chosen through a
/// colour set `T`, and the reduced bipartite graph `Ĝ`: internal edges other
/// than `M` go, edges coloured from `T` go, then edges whose endpoints both
/// have cross-degree at most `(1/2 − η)n` go, repeatedly.
pub fn protect_biclique(g: &Graph, c: &Colouring, part: &BicliquePartition, p: &Params, seed: u64) -> Result<ProtectedInstance> {
    let n = g.n();
    let am = membership(n, &part.a);
    let k = part.imbalance();
    let (z, matching_size, selection) = if k == 0 {
        (ProtectedSet::empty(), 0, None)
    } else {
        let m0 = greedy_rainbow_matching(g, c, &part.b, part.b.len());
        if m0.len() < k {
            return Err(Error::ConstructionFailed(format!(
                "rainbow matching in B has {} edges, need {k}",
                m0.len()
            )));
        }
        let colours: Vec<Colour> = m0.edges().iter().map(|e| c.colour_of(*e).expect("coloured")).collect();
        let (groups, b) = if colours.len() >= 2 * k {
            let a = colours.len() / k;
            ((0..k).map(|i| colours[i * a..(i + 1) * a].to_vec()).collect(), 1)
        } else {
            (vec![colours.clone()], k)
        };
        let fam = incidence_family(g, c, &am, groups, b, p.eta.div_int(2))?;
        let sel = select_colour_set(&fam, seed)?;
        let t: Vec<Colour> = sel.t.iter().copied().take(k).collect();
        let m: Vec<Edge> = m0.edges().iter().copied().filter(|e| t.contains(&c.colour_of(*e).expect("coloured"))).collect();
        debug_assert_eq!(m.len(), k);
        (ProtectedSet::new(m), m0.len(), Some(sel))
    };
    let t_colours: Vec<Colour> = z.edges().iter().map(|e| c.colour_of(*e).expect("coloured")).collect();
    let mut reduced = g.filter_edges(|e| {
        z.contains(*e) || (am[e.u] != am[e.v] && !c.colour_of(*e).is_some_and(|col| t_colours.contains(&col)))
    });
    let threshold = Fraction::new(1, 2).sub(p.eta);
    let mut low_degree_deletions = 0;
    loop {
        let low: Vec<bool> = (0..n)
            .map(|v| {
                let cross = reduced.neighbours(v).iter().filter(|&&w| am[w] != am[v]).count();
                threshold.ge_count(n, cross)
            })
            .collect();
        let before = reduced.m();
        reduced = reduced.filter_edges(|e| z.contains(*e) || am[e.u] == am[e.v] || !(low[e.u] && low[e.v]));
        if reduced.m() == before {
            break;
        }
        low_degree_deletions += before - reduced.m();
    }
    let inst = ProtectedInstance {
        z,
        reduced,
        details: ProtectedDetails::Biclique { matching_size, selection, low_degree_deletions },
    };
    if !check_d1_d3(&inst, c, &part.a, p.eta) {
        return Err(Error::ConstructionFailed("reduced graph violates the protected-set conditions".into()));
    }
    Ok(inst)
}

/// `C_v`: multiset of colours on cross edges at `v`, for every `v` with at
/// least one cross edge. `μ` and `ν` are the family's exact extremes.
fn incidence_family(
    g: &Graph,
    c: &Colouring,
    am: &[bool],
    groups: Vec<Vec<Colour>>,
    b: usize,
    eta: Fraction,
) -> Result<ColourMultisetFamily> {
    let n = g.n();
    let sets: Vec<Vec<Colour>> = (0..n)
        .map(|v| {
            g.neighbours(v)
                .iter()
                .filter(|&&w| am[w] != am[v])
                .map(|&w| c.colour(v, w).expect("coloured"))
                .collect::<Vec<_>>()
        })
        .filter(|s: &Vec<Colour>| !s.is_empty())
        .collect();
    let Some(min_size) = sets.iter().map(Vec::len).min() else {
        return Err(Error::ConstructionFailed("no cross edges".into()));
    };
    let mut totals = std::collections::BTreeMap::<Colour, usize>::new();
    for s in &sets {
        for &col in s {
            *totals.entry(col).or_default() += 1;
        }
    }
    let max_total = totals.values().copied().max().unwrap_or(1);
    let params = FamilyParams {
        mu: Fraction::new(max_total as i64, n as i64),
        nu: Fraction::new(min_size as i64, n as i64),
        b,
        eta,
    };
    ColourMultisetFamily::new(n, sets, groups, params)
}

/// `E_Ĝ(A) = ∅`, `E_Ĝ(B) = M`, every cross edge has an endpoint with
/// cross-degree at least `(1/2 − η)n`, and `M` is uniquely coloured.
pub fn check_d1_d3(inst: &ProtectedInstance, c: &Colouring, a: &[usize], eta: Fraction) -> bool {
    let g = &inst.reduced;
    let n = g.n();
    let am = membership(n, a);
    let internal: Vec<Edge> = g.edges().iter().copied().filter(|e| am[e.u] == am[e.v]).collect();
    if internal != inst.z.edges() || inst.z.edges().iter().any(|e| am[e.u]) {
        return false;
    }
    let threshold = Fraction::new(1, 2).sub(eta);
    let cross_deg: Vec<usize> = (0..n).map(|v| g.neighbours(v).iter().filter(|&&w| am[w] != am[v]).count()).collect();
    let d2 = g
        .edges()
        .iter()
        .filter(|e| am[e.u] != am[e.v])
        .all(|e| threshold.le_count(n, cross_deg[e.u].max(cross_deg[e.v])));
    d2 && unique_colours(g, c, &inst.z)
}
