//! Named graph families, the textual family grammar, and isomorph-free
//! enumeration of trees and small graphs.

use std::collections::BTreeMap;

use crate::canon::{canonical_form, canonical_graph, Certificate};
use crate::caterpillar::CaterpillarSeq;
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use crate::graph6::parse_graph6;
use crate::par::{self, Parallelism};

pub const MAX_TREE_ORDER: usize = 12;
pub const MAX_GRAPH_ORDER: usize = 8;

fn too_small(what: &'static str, got: usize, min: usize) -> Error {
    Error::FamilySpec {
        spec: format!("{what}({got})"),
        reason: format!("needs at least {min}"),
    }
}

/// `P_n`, canonically labeled.
pub fn path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(too_small("path", n, 1));
    }
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(canonical_graph(&Graph::from_edges(n, &e)?))
}

/// The star `K_{1,n}`.
pub fn star(n: usize) -> Result<Graph> {
    complete_bipartite(1, n)
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(too_small("complete", n, 1));
    }
    let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok(canonical_graph(&Graph::from_edges(n, &e)?))
}

pub fn complete_bipartite(p: usize, q: usize) -> Result<Graph> {
    if p < 1 || q < 1 {
        return Err(too_small("complete_bipartite", p.min(q), 1));
    }
    let e: Vec<_> = (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v))).collect();
    Ok(canonical_graph(&Graph::from_edges(p + q, &e)?))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(too_small("cycle", n, 3));
    }
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(canonical_graph(&Graph::from_edges(n, &e)?))
}

/// `n` isolated vertices.
pub fn null(n: usize) -> Result<Graph> {
    Graph::empty(n)
}

/// `k` disjoint copies of `h`.
pub fn disjoint_union(k: usize, h: &Graph) -> Result<Graph> {
    if k < 1 {
        return Err(too_small("disjoint_union", k, 1));
    }
    if k * h.n() > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            got: k * h.n(),
            max: MAX_VERTICES,
        });
    }
    let mut g = *h;
    for _ in 1..k {
        g = g.union(h)?;
    }
    Ok(g)
}

/// The caterpillar with spine `0..n` and `a_i` leaves on spine vertex `i`.
/// Leaves are numbered after the spine, grouped by spine vertex.
pub fn caterpillar_graph(s: &CaterpillarSeq) -> Result<Graph> {
    let a = s.entries();
    let spine = a.len();
    let total = spine + a.iter().map(|&x| x as usize).sum::<usize>();
    let mut g = Graph::empty(total)?;
    for i in 1..spine {
        g.add_edge(i - 1, i)?;
    }
    let mut next = spine;
    for (i, &x) in a.iter().enumerate() {
        for _ in 0..x {
            g.add_edge(i, next)?;
            next += 1;
        }
    }
    Ok(g)
}

/// Paths of the given edge-lengths sharing the end vertex 0.
pub fn spider(lengths: &[usize]) -> Result<Graph> {
    if lengths.len() < 3 {
        return Err(Error::FamilySpec {
            spec: format!("spider{lengths:?}"),
            reason: "needs at least three legs".into(),
        });
    }
    if lengths.contains(&0) {
        return Err(Error::FamilySpec {
            spec: format!("spider{lengths:?}"),
            reason: "legs have length at least 1".into(),
        });
    }
    let total = 1 + lengths.iter().sum::<usize>();
    let mut g = Graph::empty(total)?;
    let mut next = 1;
    for &len in lengths {
        let mut prev = 0;
        for _ in 0..len {
            g.add_edge(prev, next)?;
            prev = next;
            next += 1;
        }
    }
    Ok(g)
}

/// `S^n_{p+1}`: the star `K_{1,n}` with every edge subdivided `p` times.
pub fn subdivided_star(n: usize, p: usize) -> Result<Graph> {
    spider(&vec![p + 1; n])
}

fn spec_err(spec: &str, reason: impl Into<String>) -> Error {
    Error::FamilySpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn numbers(spec: &str, args: &str) -> Result<Vec<usize>> {
    args.split(',')
        .map(|a| {
            a.trim()
                .parse::<usize>()
                .map_err(|_| spec_err(spec, format!("`{a}` is not a non-negative integer")))
        })
        .collect()
}

fn one(spec: &str, args: &str) -> Result<usize> {
    match numbers(spec, args)?[..] {
        [x] => Ok(x),
        _ => Err(spec_err(spec, "expected one argument")),
    }
}

fn term(spec: &str) -> Result<Graph> {
    let (name, args) = spec
        .split_once(':')
        .ok_or_else(|| spec_err(spec, "expected `name:args`"))?;
    match name.trim() {
        "P" => path(one(spec, args)?),
        "S" => star(one(spec, args)?),
        "K" => complete(one(spec, args)?),
        "C" => cycle(one(spec, args)?),
        "N" => null(one(spec, args)?),
        "Kpq" => match numbers(spec, args)?[..] {
            [p, q] => complete_bipartite(p, q),
            _ => Err(spec_err(spec, "expected `Kpq:p,q`")),
        },
        "U" => {
            let (k, inner) = args
                .split_once('*')
                .ok_or_else(|| spec_err(spec, "expected `U:k*<spec>`"))?;
            let k = k
                .trim()
                .parse()
                .map_err(|_| spec_err(spec, "bad copy count"))?;
            disjoint_union(k, &term(inner)?)
        }
        "cat" => caterpillar_graph(&CaterpillarSeq::parse(args)?),
        "spider" => spider(&numbers(spec, args)?),
        other => Err(spec_err(spec, format!("unknown family `{other}`"))),
    }
}

/// Parses the family grammar: `P:n`, `S:n` (star `K_{1,n}`), `K:n`,
/// `Kpq:p,q`, `C:n`, `N:n` (isolated vertices), `U:k*<spec>`,
/// `cat:a1,...,an`, `spider:l1,l2,...`, and `A+B` for disjoint unions of
/// different terms.
pub fn parse_family(spec: &str) -> Result<Graph> {
    let mut parts = spec.split('+');
    let first = parts.next().expect("split yields one part");
    let mut g = term(first.trim())?;
    for p in parts {
        g = g.union(&term(p.trim())?)?;
    }
    Ok(g)
}

/// A family spec if the text contains `:` (never a graph6 byte),
/// otherwise graph6.
pub fn parse_input(text: &str) -> Result<Graph> {
    if text.contains(':') {
        parse_family(text)
    } else {
        parse_graph6(text)
    }
}

/// One representative per isomorphism class of free trees on `n`
/// vertices, in certificate order.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>> {
    if !(1..=MAX_TREE_ORDER).contains(&n) {
        return Err(Error::OutOfRange {
            what: "tree order",
            got: n,
            max: MAX_TREE_ORDER,
        });
    }
    let mut level = vec![Graph::empty(1)?];
    for size in 1..n {
        let mut next: BTreeMap<Certificate, Graph> = BTreeMap::new();
        for t in &level {
            let grown = Graph::from_rows(&[t.rows(), &[0]].concat());
            for v in 0..size {
                let h = grown.with_edge(v, size)?;
                let c = canonical_form(&h);
                next.entry(c).or_insert_with(|| canonical_graph(&h));
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// optionally only those with `m` edges, in certificate order.
pub fn enumerate_graphs(n: usize, m: Option<usize>) -> Result<Vec<Graph>> {
    enumerate_graphs_with(n, m, Parallelism::default())
}

pub fn enumerate_graphs_with(n: usize, m: Option<usize>, mode: Parallelism) -> Result<Vec<Graph>> {
    if !(1..=MAX_GRAPH_ORDER).contains(&n) {
        return Err(Error::OutOfRange {
            what: "graph order",
            got: n,
            max: MAX_GRAPH_ORDER,
        });
    }
    let max_m = n * (n - 1) / 2;
    if m.is_some_and(|m| m > max_m) {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::empty(n)?];
    let mut out = Vec::new();
    for edges in 0..=m.unwrap_or(max_m) {
        if m.is_none_or(|m| m == edges) {
            out.extend_from_slice(&level);
        }
        if edges == max_m || m == Some(edges) {
            break;
        }
        let children = par::map(&level, mode, |g| {
            g.non_edges()
                .map(|(u, v)| {
                    let h = g.with_edge(u, v).expect("non-edge");
                    (canonical_form(&h), h)
                })
                .collect::<Vec<_>>()
        });
        let mut next: BTreeMap<Certificate, Graph> = BTreeMap::new();
        for (c, h) in children.into_iter().flatten() {
            next.entry(c).or_insert_with(|| canonical_graph(&h));
        }
        level = next.into_values().collect();
    }
    Ok(out)
}

/// Connected graphs on `n` vertices, in certificate order.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    Ok(enumerate_graphs(n, None)?
        .into_iter()
        .filter(|g| g.is_connected())
        .collect())
}
