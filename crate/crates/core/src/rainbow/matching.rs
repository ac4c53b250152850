use crate::graph::{membership, Colouring, Graph, ProtectedSet, Vertex};

/// Greedy rainbow matching inside `G[inside]`, scanning edges in canonical
/// order and stopping at `target` edges.
pub fn greedy_rainbow_matching(g: &Graph, c: &Colouring, inside: &[Vertex], target: usize) -> ProtectedSet {
    let n = g.n();
    let mask = membership(n, inside);
    let mut used = vec![false; n];
    let mut colours = std::collections::BTreeSet::new();
    let mut chosen = Vec::new();
    for e in g.edges() {
        if chosen.len() >= target {
            break;
        }
        if !mask[e.u] || !mask[e.v] || used[e.u] || used[e.v] {
            continue;
        }
        let Some(col) = c.colour_of(*e) else { continue };
        if colours.contains(&col) {
            continue;
        }
        used[e.u] = true;
        used[e.v] = true;
        colours.insert(col);
        chosen.push(*e);
    }
    ProtectedSet::new(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let k5 = Graph::complete(5);
        let m = greedy_rainbow_matching(&k5, &Colouring::rainbow(&k5), &[0, 1, 2, 3, 4], 2);
        assert_eq!(m.len(), 2);
        assert!(m.is_matching());

        let k4 = Graph::complete(4);
        let mono = Colouring::from_fn(&k4, |_| 0);
        assert_eq!(greedy_rainbow_matching(&k4, &mono, &[0, 1, 2, 3], 2).len(), 1);

        let m = greedy_rainbow_matching(&k5, &Colouring::rainbow(&k5), &[2, 3], 5);
        assert_eq!(m.edges(), &[crate::graph::Edge::new(2, 3)]);
    }
}
