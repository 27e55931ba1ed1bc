//! Small simple graphs stored as one adjacency bit row per vertex.

use std::fmt;

use crate::canon::canonical_form;
use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] can hold; rows are single `u32` words.
pub const MAX_VERTICES: usize = 32;

/// A labeled simple undirected graph on vertices `0..n`.
///
/// Row `v` of the adjacency holds the neighbourhood of `v` as a bit set.
/// The relation is kept symmetric and irreflexive by every constructor and
/// mutator; rows at or past `n` are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u8,
    adj: [u32; MAX_VERTICES],
}

#[inline]
pub(crate) fn bits(mask: u32) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                got: n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n: n as u8,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw rows. Rows must already be symmetric.
    pub(crate) fn from_rows(rows: &[u32]) -> Graph {
        debug_assert!(!rows.is_empty() && rows.len() <= MAX_VERTICES);
        let mut adj = [0; MAX_VERTICES];
        adj[..rows.len()].copy_from_slice(rows);
        Graph {
            n: rows.len() as u8,
            adj,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn rows(&self) -> &[u32] {
        &self.adj[..self.n()]
    }

    /// Neighbourhood of `v` as a bit set.
    #[inline]
    pub fn row(&self, v: usize) -> u32 {
        self.adj[v]
    }

    /// Bit set with one bit per vertex.
    #[inline]
    pub fn vertex_mask(&self) -> u32 {
        if self.n() == MAX_VERTICES {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u] >> v & 1 == 1
    }

    /// Adds the edge `uv`. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::EdgeAbsent(u, v));
        }
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        Ok(())
    }

    /// `G - uv`, keeping every vertex.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = *self;
        g.remove_edge(u, v)?;
        Ok(g)
    }

    /// `G + uv`.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = *self;
        g.add_edge(u, v)?;
        Ok(g)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    /// Degree multiset, sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| bits(self.adj[u] >> u >> 1).map(move |k| (u, u + 1 + k)))
    }

    /// Unordered non-adjacent pairs `(u, v)` with `u < v`.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let all = self.vertex_mask();
        (0..self.n()).flat_map(move |u| {
            let above = all & !((2u32 << u).wrapping_sub(1));
            bits(above & !self.adj[u]).map(move |v| (u, v))
        })
    }

    /// Number of edges adjacent to `uv`: `deg(u) + deg(v) - 2`.
    pub fn edge_degree(&self, u: usize, v: usize) -> Result<u32> {
        if !self.has_edge(u, v) {
            return Err(Error::EdgeAbsent(u, v));
        }
        Ok((self.degree(u) + self.degree(v) - 2) as u32)
    }

    /// Vertices reachable from `start`, as a bit set.
    pub fn reach(&self, start: usize) -> u32 {
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn component_masks(&self) -> Vec<u32> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let c = self.reach(left.trailing_zeros() as usize);
            out.push(c);
            left &= !c;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0) == self.vertex_mask()
    }

    pub fn is_tree(&self) -> bool {
        self.m() + 1 == self.n() && self.is_connected()
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degree(0);
        (1..self.n()).all(|v| self.degree(v) == d)
    }

    /// Subgraph induced by `mask`, relabeled to `0..popcount(mask)` in
    /// increasing vertex order.
    pub fn induced(&self, mask: u32) -> Graph {
        let verts: Vec<usize> = bits(mask & self.vertex_mask()).collect();
        let mut rows = vec![0u32; verts.len().max(1)];
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if self.has_edge(u, v) {
                    rows[i] |= 1 << j;
                }
            }
        }
        Graph::from_rows(&rows)
    }

    /// Connected components as standalone graphs, largest certificate first.
    pub fn components(&self) -> Vec<Graph> {
        let mut comps: Vec<_> = self
            .component_masks()
            .into_iter()
            .map(|c| {
                let h = self.induced(c);
                (canonical_form(&h), h)
            })
            .collect();
        comps.sort_by(|a, b| b.0.cmp(&a.0));
        comps.into_iter().map(|(_, h)| h).collect()
    }

    /// Disjoint union; `other`'s vertices are shifted past `self`'s.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n() + other.n();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                got: n,
                max: MAX_VERTICES,
            });
        }
        let mut rows = self.rows().to_vec();
        rows.extend(other.rows().iter().map(|r| r << self.n));
        Ok(Graph::from_rows(&rows))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length must equal n");
        let mut rows = vec![0u32; self.n()];
        for u in 0..self.n() {
            for v in bits(self.adj[u]) {
                rows[perm[u]] |= 1 << perm[v];
            }
        }
        Graph::from_rows(&rows)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::graph6::write_graph6(self))
    }
}
