//! Canonical labeling by equitable partition refinement and backtracking.
//!
//! The search individualizes one vertex of the first non-singleton cell at a
//! time, refines, and keeps the lexicographically least permuted adjacency
//! over all discrete leaves. Branches on vertices that are twins of an
//! already explored vertex of the same cell are skipped: swapping two twins
//! is an automorphism fixing every other vertex, so both branches produce
//! the same leaves.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{bits, Graph};
use crate::graph6;

/// Canonical form of a graph: equal certificates iff isomorphic graphs.
///
/// Ordered by vertex count, then edge count, then the canonical graph6
/// bytes, which gives a total order used for deterministic output.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Certificate {
    n: u8,
    m: u16,
    canon: Box<str>,
}

impl Certificate {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    /// The canonical graph6 string.
    pub fn as_str(&self) -> &str {
        &self.canon
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.canon.as_bytes()
    }

    /// The canonically labeled representative.
    pub fn graph(&self) -> Graph {
        graph6::parse_graph6(&self.canon).expect("certificates hold valid graph6")
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canon)
    }
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Certificate({})", self.canon)
    }
}

type Cells = Vec<u32>;

fn count_in(g: &Graph, v: usize, w: u32) -> u32 {
    (g.row(v) & w).count_ones()
}

/// Refines `cells` to the coarsest equitable partition finer than it.
/// Split pieces are ordered by neighbour count, so the result depends only
/// on the isomorphism type of (graph, ordered partition).
fn refine(g: &Graph, cells: &mut Cells) {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let w = cells[s];
            let mut k = 0;
            while k < cells.len() {
                let x = cells[k];
                if x.count_ones() < 2 {
                    k += 1;
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = bits(x).map(|v| (count_in(g, v, w), v)).collect();
                keyed.sort_unstable();
                if keyed[0].0 == keyed[keyed.len() - 1].0 {
                    k += 1;
                    continue;
                }
                let mut pieces: Vec<u32> = Vec::new();
                let mut last = u32::MAX;
                for (c, v) in keyed {
                    if c != last || pieces.is_empty() {
                        pieces.push(0);
                        last = c;
                    }
                    *pieces.last_mut().unwrap() |= 1 << v;
                }
                let added = pieces.len();
                cells.splice(k..=k, pieces);
                k += added;
                changed = true;
            }
            s += 1;
        }
        if !changed {
            break;
        }
    }
}

#[inline]
fn twins(g: &Graph, u: usize, v: usize) -> bool {
    (g.row(u) & !(1 << v)) == (g.row(v) & !(1 << u))
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<Vec<u32>>,
    best_order: Vec<usize>,
}

impl Search<'_> {
    fn leaf(&mut self, cells: &Cells) {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let n = order.len();
        let mut pos = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let rows: Vec<u32> = order
            .iter()
            .map(|&v| bits(self.g.row(v)).fold(0u32, |acc, u| acc | 1 << pos[u]))
            .collect();
        let better = match &self.best {
            None => true,
            Some(b) => rows.cmp(b) == Ordering::Less,
        };
        if better {
            self.best = Some(rows);
            self.best_order = order;
        }
    }

    fn descend(&mut self, mut cells: Cells) {
        refine(self.g, &mut cells);
        let Some(t) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let target = cells[t];
        let mut tried: Vec<usize> = Vec::new();
        for v in bits(target) {
            if tried.iter().any(|&u| twins(self.g, u, v)) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..t]);
            next.push(1 << v);
            next.push(target & !(1 << v));
            next.extend_from_slice(&cells[t + 1..]);
            self.descend(next);
        }
    }
}

/// Canonical vertex order: `order[i]` is the vertex placed at position `i`.
pub fn canonical_order(g: &Graph) -> Vec<usize> {
    let mut s = Search {
        g,
        best: None,
        best_order: Vec::new(),
    };
    // Start from the degree partition, lower degrees first.
    let mut by_deg: Vec<(usize, usize)> = (0..g.n()).map(|v| (g.degree(v), v)).collect();
    by_deg.sort_unstable();
    let mut cells: Cells = Vec::new();
    let mut last = usize::MAX;
    for (d, v) in by_deg {
        if d != last {
            cells.push(0);
            last = d;
        }
        *cells.last_mut().unwrap() |= 1 << v;
    }
    s.descend(cells);
    s.best_order
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let order = canonical_order(g);
    let mut perm = vec![0usize; g.n()];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    g.permuted(&perm)
}

pub fn canonical_form(g: &Graph) -> Certificate {
    let c = canonical_graph(g);
    Certificate {
        n: g.n() as u8,
        m: g.m() as u16,
        canon: graph6::write_graph6(&c).into_boxed_str(),
    }
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.m() != h.m() || g.degree_sequence() != h.degree_sequence() {
        return false;
    }
    canonical_form(g) == canonical_form(h)
}
