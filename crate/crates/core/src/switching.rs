//! The two three-edge cycle switchings `s₁`, `s₂`.
//!
//! Fix a directed Hamilton cycle with successor `π`, a cycle edge
//! `e = (x, π(x))` and a non-edge `e' = (x', y')` of the cycle such that `x`
//! lies on the directed path from `y'` to `x'`. Cutting the cycle at
//! `x→π(x)`, `x'→π(x')` and `π⁻¹(y')→y'` leaves three directed segments
//!
//! ```text
//! P1 = y' … x      P2 = π(x) … x'      P3 = π(x') … π⁻¹(y')
//! ```
//!
//! `s₁` reassembles them as `P1 P3 P2` (adding `xπ(x')`, `π⁻¹(y')π(x)`, `x'y'`)
//! and `s₂` as `P1 rev(P3) P2` (adding `xπ⁻¹(y')`, `π(x)π(x')`, `x'y'`).
//! Both results contain the arc `(x', y')` and drop `e`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedHamCycle, Edge, Graph, ProtectedSet, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SwitchKind {
    One,
    Two,
}

impl SwitchKind {
    pub const BOTH: [SwitchKind; 2] = [SwitchKind::One, SwitchKind::Two];

    pub fn index(self) -> u8 {
        match self {
            SwitchKind::One => 1,
            SwitchKind::Two => 2,
        }
    }
}

/// A switching `s_kind(H; (x, π(x)), (x', y'))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SwitchSpec {
    /// Tail `x` of the cycle edge being removed.
    pub tail: Vertex,
    pub x_prime: Vertex,
    pub y_prime: Vertex,
    pub kind: SwitchKind,
}

/// Removed and added undirected edges of a switching.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwitchEdges {
    pub removed: [Edge; 3],
    pub added: [Edge; 3],
}

fn distinct3(e: &[Edge; 3]) -> bool {
    e[0] != e[1] && e[0] != e[2] && e[1] != e[2]
}

/// Checks the positional condition and the six-edge structure, returning the
/// edges exchanged. Does not consult any host graph.
pub fn switch_edges(h: &DirectedHamCycle, spec: &SwitchSpec) -> Result<SwitchEdges> {
    let n = h.n();
    let SwitchSpec { tail: x, x_prime: xp, y_prime: yp, kind } = *spec;
    if x >= n || xp >= n || yp >= n {
        return Err(Error::InvalidSpec(format!("vertex out of range in {spec:?}")));
    }
    if xp == yp {
        return Err(Error::InvalidSpec("e' is a loop".into()));
    }
    if h.has_edge(xp, yp) {
        return Err(Error::InvalidSpec(format!("e' = {} is already on the cycle", Edge::new(xp, yp))));
    }
    if !on_path(h, x, xp, yp) {
        return Err(Error::InvalidSpec(format!("{x} is not on the directed path from {yp} to {xp}")));
    }
    let px = h.succ(x);
    let pxp = h.succ(xp);
    let qyp = h.pred(yp);
    if x == xp {
        return Err(Error::DegenerateSpec("x' coincides with x".into()));
    }
    let removed = [Edge::new(x, px), Edge::new(xp, pxp), Edge::new(qyp, yp)];
    let pair = |a: Vertex, b: Vertex| -> Result<Edge> {
        if a == b {
            Err(Error::DegenerateSpec(format!("added edge collapses to a loop at {a}")))
        } else {
            Ok(Edge::new(a, b))
        }
    };
    let added = match kind {
        SwitchKind::One => [Edge::new(xp, yp), pair(x, pxp)?, pair(qyp, px)?],
        SwitchKind::Two => [Edge::new(xp, yp), pair(x, qyp)?, pair(px, pxp)?],
    };
    if !distinct3(&removed) {
        return Err(Error::DegenerateSpec(format!("removed edges coincide: {removed:?}")));
    }
    if !distinct3(&added) {
        return Err(Error::DegenerateSpec(format!("added edges coincide: {added:?}")));
    }
    if let Some(e) = added.iter().find(|e| h.contains(**e)) {
        return Err(Error::DegenerateSpec(format!("added edge {e} is already on the cycle")));
    }
    Ok(SwitchEdges { removed, added })
}

/// Is `x` on the directed path `y' → … → x'`?
fn on_path(h: &DirectedHamCycle, x: Vertex, xp: Vertex, yp: Vertex) -> bool {
    if x == yp || x == xp {
        return true;
    }
    let mut v = yp;
    while v != xp {
        v = h.succ(v);
        if v == x {
            return true;
        }
    }
    false
}

/// Applies a switching and returns the new directed cycle, which contains the
/// arc `(x', y')`.
pub fn apply_switching(h: &DirectedHamCycle, spec: &SwitchSpec) -> Result<DirectedHamCycle> {
    switch_edges(h, spec)?;
    let SwitchSpec { tail: x, x_prime: xp, y_prime: yp, kind } = *spec;
    let n = h.n();
    let mut order = Vec::with_capacity(n);
    let push_segment = |order: &mut Vec<Vertex>, from: Vertex, to: Vertex| {
        let mut v = from;
        loop {
            order.push(v);
            if v == to {
                break;
            }
            v = h.succ(v);
        }
    };
    // P1 = y' … x
    push_segment(&mut order, yp, x);
    let p3_start = order.len();
    // P3 = π(x') … π⁻¹(y')
    push_segment(&mut order, h.succ(xp), h.pred(yp));
    if kind == SwitchKind::Two {
        order[p3_start..].reverse();
    }
    // P2 = π(x) … x'
    push_segment(&mut order, h.succ(x), xp);
    if order.len() != n {
        return Err(Error::DegenerateSpec(format!("segments cover {} of {n} vertices", order.len())));
    }
    let out = DirectedHamCycle::from_order(&order)?;
    debug_assert!(out.has_arc(xp, yp));
    Ok(out)
}

/// The switching that undoes `spec`: same kind, removing `(x', y')` from the
/// switched cycle and re-inserting the original arc `(x, π(x))`.
pub fn inverse_spec(h: &DirectedHamCycle, spec: &SwitchSpec) -> SwitchSpec {
    SwitchSpec { tail: spec.x_prime, x_prime: spec.tail, y_prime: h.succ(spec.tail), kind: spec.kind }
}

/// Every added edge (including `e'`) lies in `g`.
pub fn is_admissible(g: &Graph, h: &DirectedHamCycle, spec: &SwitchSpec) -> Result<bool> {
    let se = switch_edges(h, spec)?;
    Ok(se.added.iter().all(|e| g.contains(*e)))
}

/// Precomputed view of a cycle for O(1) switching tests.
pub struct SwitchContext<'a> {
    g: &'a Graph,
    h: &'a DirectedHamCycle,
    z: &'a ProtectedSet,
    tail: Vertex,
    /// Forward distance from `tail`.
    rank: Vec<usize>,
}

impl<'a> SwitchContext<'a> {
    pub fn new(g: &'a Graph, h: &'a DirectedHamCycle, z: &'a ProtectedSet, tail: Vertex) -> Self {
        SwitchContext { g, h, z, tail, rank: h.positions_from(tail) }
    }

    /// Valid, admissible and keeps every protected edge.
    #[inline]
    pub fn accepts(&self, xp: Vertex, yp: Vertex, kind: SwitchKind) -> bool {
        let (g, h, x) = (self.g, self.h, self.tail);
        if xp == yp || xp == x || !g.has_edge(xp, yp) || h.has_edge(xp, yp) {
            return false;
        }
        // x on the path y' → x'  ⇔  y' = x or rank(x') < rank(y')
        if !(yp == x || self.rank[xp] < self.rank[yp]) {
            return false;
        }
        let px = h.succ(x);
        let pxp = h.succ(xp);
        let qyp = h.pred(yp);
        let (a1, a2) = match kind {
            SwitchKind::One => ((x, pxp), (qyp, px)),
            SwitchKind::Two => ((x, qyp), (px, pxp)),
        };
        if a1.0 == a1.1 || a2.0 == a2.1 {
            return false;
        }
        let added = [Edge::new(xp, yp), Edge::new(a1.0, a1.1), Edge::new(a2.0, a2.1)];
        let removed = [Edge::new(x, px), Edge::new(xp, pxp), Edge::new(qyp, yp)];
        if !distinct3(&added) || !distinct3(&removed) {
            return false;
        }
        if added.iter().any(|e| h.contains(*e) || !g.contains(*e)) {
            return false;
        }
        !removed.iter().any(|e| self.z.contains(*e))
    }

    pub fn spec(&self, xp: Vertex, yp: Vertex, kind: SwitchKind) -> SwitchSpec {
        SwitchSpec { tail: self.tail, x_prime: xp, y_prime: yp, kind }
    }

    /// All accepted switchings, sorted by `(x', y', kind)`.
    pub fn enumerate(&self) -> Vec<SwitchSpec> {
        let n = self.h.n();
        let mut out = Vec::new();
        for xp in 0..n {
            for &yp in self.g.neighbours(xp) {
                for kind in SwitchKind::BOTH {
                    if self.accepts(xp, yp, kind) {
                        out.push(self.spec(xp, yp, kind));
                    }
                }
            }
        }
        out
    }

    pub fn count(&self) -> usize {
        let n = self.h.n();
        let mut count = 0;
        for xp in 0..n {
            for &yp in self.g.neighbours(xp) {
                count += SwitchKind::BOTH.iter().filter(|&&k| self.accepts(xp, yp, k)).count();
            }
        }
        count
    }

    /// A uniformly random accepted switching, or `None` when there is none.
    ///
    /// Rejection-samples over arcs of `g` first and falls back to full
    /// enumeration, so the draw stays uniform either way.
    pub fn sample<R: Rng>(&self, rng: &mut R, attempts: usize) -> Option<SwitchSpec> {
        let arcs = 2 * self.g.m();
        if arcs == 0 {
            return None;
        }
        for _ in 0..attempts {
            let e = self.g.edges()[rng.gen_range(0..self.g.m())];
            let (xp, yp) = if rng.gen_bool(0.5) { (e.u, e.v) } else { (e.v, e.u) };
            let kind = if rng.gen_bool(0.5) { SwitchKind::One } else { SwitchKind::Two };
            if self.accepts(xp, yp, kind) {
                return Some(self.spec(xp, yp, kind));
            }
        }
        let all = self.enumerate();
        if all.is_empty() {
            None
        } else {
            Some(all[rng.gen_range(0..all.len())])
        }
    }
}

/// All admissible switchings for cycle edge `e` that keep `z` on the cycle.
pub fn enumerate_admissible(g: &Graph, h: &DirectedHamCycle, e: Edge, z: &ProtectedSet) -> Result<Vec<SwitchSpec>> {
    if h.n() != g.n() {
        return Err(Error::InvalidInput("cycle and graph sizes differ".into()));
    }
    let tail = h.tail_of(e).ok_or_else(|| Error::InvalidInput(format!("{e} is not a cycle edge")))?;
    if z.contains(e) {
        return Err(Error::InvalidInput(format!("{e} is protected")));
    }
    Ok(SwitchContext::new(g, h, z, tail).enumerate())
}
