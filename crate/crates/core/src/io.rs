//! Text formats.
//!
//! Graph file: header `n m`, then `m` lines `u v c` (colour `c ≥ 0`).
//! Cycle file: one line of `n` vertex ids in successor order.
//! Protected-set file: one `u v` pair per line.
//! Hypergraph file: header `n m r`, then `m` lines of `r` sorted vertex ids.
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::fmt::Write as _;
use std::path::Path;

use crate::berge::Hypergraph;
use crate::error::{Error, Result};
use crate::graph::{Colour, Colouring, DirectedHamCycle, Edge, Graph, ProtectedSet};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| parse_err(line, format!("not a non-negative integer: {t:?}"))))
        .collect()
}

pub fn parse_graph(text: &str) -> Result<(Graph, Colouring)> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n m`"))?;
    let h = numbers(hl, header)?;
    let [n, m] = h[..] else {
        return Err(parse_err(hl, "header must be `n m`"));
    };
    let mut edges = Vec::with_capacity(m);
    let mut colours: Vec<(Edge, Colour)> = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    for (ln, l) in lines {
        let f = numbers(ln, l)?;
        match f[..] {
            [u, v, c] => {
                if u >= n || v >= n {
                    return Err(parse_err(ln, format!("vertex id >= n = {n}")));
                }
                if u == v {
                    return Err(parse_err(ln, format!("self-loop at {u}")));
                }
                let e = Edge::new(u, v);
                if !seen.insert(e) {
                    return Err(parse_err(ln, format!("duplicate edge {e}")));
                }
                let c = Colour::try_from(c)
                    .ok()
                    .filter(|&c| c != Colour::MAX)
                    .ok_or_else(|| parse_err(ln, "colour id too large"))?;
                edges.push(e);
                colours.push((e, c));
            }
            [_, _] => return Err(parse_err(ln, "missing colour")),
            _ => return Err(parse_err(ln, "expected `u v c`")),
        }
    }
    if edges.len() != m {
        return Err(parse_err(0, format!("header announces {m} edges, found {}", edges.len())));
    }
    let g = Graph::from_edges(n, edges)?;
    colours.sort_unstable();
    let c = Colouring::new(&g, colours.into_iter().map(|(_, c)| c).collect())?;
    Ok((g, c))
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<(Graph, Colouring)> {
    parse_graph(&std::fs::read_to_string(path)?)
}

/// Canonical rendering: edges in sorted order.
pub fn format_graph(g: &Graph, c: &Colouring) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        let col = c.colour_of(*e).expect("colouring covers the graph");
        writeln!(out, "{} {} {}", e.u, e.v, col).unwrap();
    }
    out
}

pub fn save_graph(path: impl AsRef<Path>, g: &Graph, c: &Colouring) -> Result<()> {
    std::fs::write(path, format_graph(g, c))?;
    Ok(())
}

pub fn parse_cycle(text: &str) -> Result<DirectedHamCycle> {
    let mut order = Vec::new();
    for (ln, l) in content_lines(text) {
        order.extend(numbers(ln, l)?);
    }
    DirectedHamCycle::from_order(&order)
}

pub fn format_cycle(h: &DirectedHamCycle) -> String {
    let order: Vec<String> = h.order().iter().map(ToString::to_string).collect();
    format!("{}\n", order.join(" "))
}

pub fn parse_protected(text: &str) -> Result<ProtectedSet> {
    let mut edges = Vec::new();
    for (ln, l) in content_lines(text) {
        match numbers(ln, l)?[..] {
            [u, v] if u != v => edges.push(Edge::new(u, v)),
            [_, _] => return Err(parse_err(ln, "self-loop")),
            _ => return Err(parse_err(ln, "expected `u v`")),
        }
    }
    Ok(ProtectedSet::new(edges))
}

pub fn format_protected(z: &ProtectedSet) -> String {
    z.edges().iter().map(|e| format!("{} {}\n", e.u, e.v)).collect()
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n m r`"))?;
    let [n, m, r] = numbers(hl, header)?[..] else {
        return Err(parse_err(hl, "header must be `n m r`"));
    };
    let mut edges = Vec::with_capacity(m);
    for (ln, l) in lines {
        let e = numbers(ln, l)?;
        if e.len() != r {
            return Err(parse_err(ln, format!("expected {r} vertex ids")));
        }
        if e.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_err(ln, "vertex ids must be strictly increasing"));
        }
        if e.iter().any(|&v| v >= n) {
            return Err(parse_err(ln, format!("vertex id >= n = {n}")));
        }
        edges.push(e);
    }
    if edges.len() != m {
        return Err(parse_err(0, format!("header announces {m} hyperedges, found {}", edges.len())));
    }
    Hypergraph::new(n, r, edges)
}

pub fn format_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.n(), h.edges().len(), h.r());
    for e in h.edges() {
        let ids: Vec<String> = e.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", ids.join(" ")).unwrap();
    }
    out
}
