//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's canonical labelling, deck or blocker code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use reconkit::Graph;

/// Edge list of a graph, `u < v`.
pub fn edge_list(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                out.push((u, v));
            }
        }
    }
    out
}

fn pair_bit(n: usize, u: usize, v: usize) -> u64 {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    // row-major upper triangle index
    let idx = u * n - u * (u + 1) / 2 + (v - u - 1);
    1 << idx
}

/// Every permutation of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    let mut out = vec![p.clone()];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

thread_local! {
    static PERMS: std::cell::RefCell<HashMap<usize, Vec<Vec<usize>>>> = Default::default();
    static DECKS: std::cell::RefCell<HashMap<(Code, bool), BTreeMap<Key, usize>>> = Default::default();
}

/// Canonical code: `(n, least edge-bitmask over all relabellings)`.
/// Only for n <= 8.
pub fn brute_code(n: usize, edges: &[(usize, usize)]) -> (usize, u64) {
    assert!(n <= 8, "brute force oracle is for n <= 8");
    PERMS.with(|cache| {
        let mut cache = cache.borrow_mut();
        let perms = cache.entry(n).or_insert_with(|| permutations(n));
        let best = perms
            .iter()
            .map(|p| {
                edges
                    .iter()
                    .fold(0u64, |acc, &(u, v)| acc | pair_bit(n, p[u], p[v]))
            })
            .min()
            .unwrap_or(0);
        (n, best)
    })
}

pub fn brute_canon(g: &Graph) -> (usize, u64) {
    brute_code(g.n(), &edge_list(g))
}

pub fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && edge_list(g).len() == edge_list(h).len() && brute_canon(g) == brute_canon(h)
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// by scanning every labelled graph.
pub fn brute_classes(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = BTreeMap::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let code = brute_code(n, &edges);
        seen.entry(code)
            .or_insert_with(|| Graph::from_edges(n, &edges).unwrap());
    }
    seen.into_values().collect()
}

/// Every graph obtained from a card of `g` by adding one edge, one per
/// class. Any graph sharing a card with `g` is among these.
pub fn extension_classes(g: &Graph) -> Vec<Graph> {
    let n = g.n();
    let edges = edge_list(g);
    let mut seen = BTreeMap::new();
    for i in 0..edges.len() {
        let mut card: Vec<_> = edges.clone();
        card.remove(i);
        for u in 0..n {
            for v in u + 1..n {
                if card.contains(&(u, v)) {
                    continue;
                }
                let mut h = card.clone();
                h.push((u, v));
                seen.entry(brute_code(n, &h))
                    .or_insert_with(|| Graph::from_edges(n, &h).unwrap());
            }
        }
    }
    seen.into_values().collect()
}

pub type Code = (usize, u64);
pub type Key = (Code, Option<u32>);

/// Deck as a multiset of brute-force card codes.
pub fn brute_deck(g: &Graph, da: bool) -> BTreeMap<Key, usize> {
    let key = (brute_canon(g), da);
    if let Some(d) = DECKS.with(|c| c.borrow().get(&key).cloned()) {
        return d;
    }
    let d = brute_deck_uncached(g, da);
    DECKS.with(|c| c.borrow_mut().insert(key, d.clone()));
    d
}

fn brute_deck_uncached(g: &Graph, da: bool) -> BTreeMap<Key, usize> {
    let edges = edge_list(g);
    let deg = |v: usize| edges.iter().filter(|&&(a, b)| a == v || b == v).count() as u32;
    let mut out = BTreeMap::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        let rest: Vec<_> = edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| e)
            .collect();
        let d = da.then(|| deg(u) + deg(v) - 2);
        *out.entry((brute_code(g.n(), &rest), d)).or_insert(0) += 1;
    }
    out
}

/// Graphs (one per class, as brute codes) other than `g` on the same
/// vertex and edge count sharing at least one card with `g`, found by
/// scanning `classes`.
pub fn brute_blockers(g: &Graph, da: bool, classes: &[Graph]) -> BTreeSet<(usize, u64)> {
    let me = brute_canon(g);
    let m = edge_list(g).len();
    let dg = brute_deck(g, da);
    classes
        .iter()
        .filter(|h| h.n() == g.n() && edge_list(h).len() == m && brute_canon(h) != me)
        .filter(|h| brute_deck(h, da).keys().any(|k| dg.contains_key(k)))
        .map(brute_canon)
        .collect()
}

fn contained(s: &BTreeMap<Key, usize>, t: &BTreeMap<Key, usize>) -> bool {
    s.iter().all(|(k, &c)| t.get(k).copied().unwrap_or(0) >= c)
}

fn sub_multisets(
    keys: &[(Key, usize)],
    k: usize,
    cur: &mut BTreeMap<Key, usize>,
    f: &mut dyn FnMut(&BTreeMap<Key, usize>) -> bool,
) -> bool {
    if k == 0 {
        return f(cur);
    }
    let Some((&(key, mult), rest)) = keys.split_first() else {
        return false;
    };
    for c in (0..=mult.min(k)).rev() {
        if c > 0 {
            cur.insert(key, c);
        } else {
            cur.remove(&key);
        }
        if sub_multisets(rest, k - c, cur, f) {
            cur.remove(&key);
            return true;
        }
    }
    cur.remove(&key);
    false
}

/// ern / dern by definition: the least k such that some k cards of the
/// deck appear together in no other graph's deck. `None` when the whole
/// deck is shared.
pub fn brute_recon(g: &Graph, da: bool, classes: &[Graph]) -> Option<usize> {
    let dg = brute_deck(g, da);
    let me = brute_canon(g);
    let m = edge_list(g).len();
    let others: Vec<BTreeMap<Key, usize>> = classes
        .iter()
        .filter(|h| h.n() == g.n() && edge_list(h).len() == m && brute_canon(h) != me)
        .map(|h| brute_deck(h, da))
        .filter(|d| d.keys().any(|k| dg.contains_key(k)))
        .collect();
    let keys: Vec<(Key, usize)> = dg.iter().map(|(&k, &c)| (k, c)).collect();
    (1..=m).find(|&k| {
        sub_multisets(&keys, k, &mut BTreeMap::new(), &mut |s| {
            others.iter().all(|o| !contained(s, o))
        })
    })
}

/// Largest number of cards of `g` shared with another graph's deck, plus
/// one; `None` if some graph shares the whole deck.
pub fn brute_adv(g: &Graph, da: bool, classes: &[Graph]) -> Option<usize> {
    let dg = brute_deck(g, da);
    let me = brute_canon(g);
    let m = edge_list(g).len();
    let best = classes
        .iter()
        .filter(|h| h.n() == g.n() && edge_list(h).len() == m && brute_canon(h) != me)
        .map(|h| {
            let dh = brute_deck(h, da);
            dg.iter()
                .map(|(k, &c)| c.min(dh.get(k).copied().unwrap_or(0)))
                .sum::<usize>()
        })
        .max()
        .unwrap_or(0);
    (best < m).then_some(best + 1)
}

/// AHU code of a tree rooted at its centre (or the smaller code over the
/// two centres).
pub fn tree_code(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in &adj[v] {
                if deg[u] > 1 {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        next.push(u);
                    }
                }
            }
            deg[v] = 0;
        }
        layer = next;
    }
    fn ahu(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[v]
            .iter()
            .filter(|&&u| u != parent)
            .map(|&u| ahu(adj, u, v))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    layer.iter().map(|&c| ahu(&adj, c, usize::MAX)).min().unwrap()
}

/// Number of free trees on `n` vertices by decoding every Prüfer sequence.
pub fn prufer_tree_count(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut codes = BTreeSet::new();
    loop {
        let mut deg = vec![1usize; n];
        for &x in &seq {
            deg[x] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &x in &seq {
            let leaf = (0..n).find(|&v| deg[v] == 1).unwrap();
            edges.push((leaf, x));
            deg[leaf] -= 1;
            deg[x] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        codes.insert(tree_code(n, &edges));

        let mut i = 0;
        loop {
            if i == len {
                return codes.len();
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

/// Free tree counts from the rooted-tree recurrence and Otter's formula.
pub fn otter_tree_count(n: usize) -> u64 {
    let mut r = vec![0u64; n + 1];
    r[1] = 1;
    for m in 2..=n {
        let mut s = 0u64;
        for k in 1..m {
            let dsum: u64 = (1..=k).filter(|d| k % d == 0).map(|d| d as u64 * r[d]).sum();
            s += dsum * r[m - k];
        }
        r[m] = s / (m as u64 - 1);
    }
    let mut pairs = 0i64;
    for i in 1..n {
        let j = n - i;
        if i < j {
            pairs += r[i] as i64 * r[j] as i64;
        }
    }
    let mut t = r[n] as i64 - pairs;
    if n.is_multiple_of(2) {
        let h = r[n / 2] as i64;
        t -= h * (h - 1) / 2;
    }
    t as u64
}
