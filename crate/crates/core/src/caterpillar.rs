//! Caterpillar sequences and their reductions.
//!
//! A caterpillar with spine `v_1..v_n` is written `<a_1,...,a_n>` where
//! `a_i` counts the leaves on `v_i`; the sequence is only defined up to
//! reversal. Deleting a leaf edge that keeps the spine intact decrements
//! one entry, giving a *reduction*. Two reductions taken at distinct spine
//! positions are the sequence-level view of two da-ecards, and
//! [`reconstruct`] lists every sequence they could have come from.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

#[derive(Clone, Debug)]
pub struct CaterpillarSeq {
    a: Vec<u32>,
}

impl CaterpillarSeq {
    /// Validates: a single entry must be at least 2 (the spine vertex is
    /// not a leaf); otherwise both ends are at least 1.
    pub fn new(a: Vec<u32>) -> Result<CaterpillarSeq> {
        match a[..] {
            [] => Err(Error::InvalidSequence("empty sequence".into())),
            [x] if x < 2 => Err(Error::InvalidSequence(format!(
                "single spine vertex needs at least 2 leaves, got {x}"
            ))),
            [first, .., last] if first == 0 || last == 0 => Err(Error::InvalidSequence(
                "end entries must be at least 1".into(),
            )),
            _ => Ok(CaterpillarSeq { a }),
        }
    }

    /// Parses comma-separated entries, e.g. `2,0,2`. Angle brackets are
    /// tolerated.
    pub fn parse(text: &str) -> Result<CaterpillarSeq> {
        let body = text
            .trim()
            .trim_start_matches(['<', '⟨'])
            .trim_end_matches(['>', '⟩']);
        let a = body
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidSequence(format!("`{x}` is not an entry")))
            })
            .collect::<Result<Vec<_>>>()?;
        CaterpillarSeq::new(a)
    }

    /// Entries in the orientation this value was built with.
    pub fn entries(&self) -> &[u32] {
        &self.a
    }

    /// Spine length.
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.a.len() + self.a.iter().map(|&x| x as usize).sum::<usize>()
    }

    pub fn reversed(&self) -> CaterpillarSeq {
        CaterpillarSeq {
            a: self.a.iter().rev().copied().collect(),
        }
    }

    /// The lexicographically smaller of the two orientations.
    pub fn canonical(&self) -> CaterpillarSeq {
        let r = self.reversed();
        if r.a < self.a {
            r
        } else {
            self.clone()
        }
    }

    fn key(&self) -> Vec<u32> {
        self.canonical().a
    }

    /// `<1,0,...,0,1>`, or `<2>` for `P_3`.
    pub fn is_path(&self) -> bool {
        match self.a[..] {
            [x] => x == 2,
            [first, ref mid @ .., last] => first == 1 && last == 1 && mid.iter().all(|&x| x == 0),
            [] => false,
        }
    }

    /// Whether deleting a leaf at position `i` keeps the spine.
    pub fn reducible(&self, i: usize) -> bool {
        let n = self.a.len();
        match self.a.get(i) {
            None => false,
            Some(&x) if n == 1 => x >= 3,
            Some(&x) if i == 0 || i == n - 1 => x >= 2,
            Some(&x) => x >= 1,
        }
    }

    /// The reduction at position `i`, if spine-preserving.
    pub fn reduce(&self, i: usize) -> Option<CaterpillarSeq> {
        self.reducible(i).then(|| {
            let mut a = self.a.clone();
            a[i] -= 1;
            CaterpillarSeq { a }
        })
    }

    fn increment(&self, i: usize) -> CaterpillarSeq {
        let mut a = self.a.clone();
        a[i] += 1;
        CaterpillarSeq { a }
    }

    /// `d(e)` for a leaf edge `e` at position `i`: the other edges on
    /// spine vertex `i`.
    pub fn leaf_degree(&self, i: usize) -> u32 {
        let n = self.a.len();
        let spine = match n {
            1 => 0,
            _ if i == 0 || i == n - 1 => 1,
            _ => 2,
        };
        self.a[i] + spine - 1
    }

    /// Positions `i` and `n-1-i` are conjugate.
    pub fn conjugate(&self, i: usize) -> usize {
        self.a.len() - 1 - i
    }
}

impl PartialEq for CaterpillarSeq {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a || self.a.iter().eq(other.a.iter().rev())
    }
}

impl Eq for CaterpillarSeq {}

impl Hash for CaterpillarSeq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for CaterpillarSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CaterpillarSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for CaterpillarSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.a.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// A reduced sequence and the (0-based) position that was decremented.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub seq: CaterpillarSeq,
    pub pos: usize,
}

impl PartialEq for Reduction {
    fn eq(&self, other: &Self) -> bool {
        self.seq == other.seq
    }
}

/// Every spine-preserving reduction, one per position.
pub fn reductions(s: &CaterpillarSeq) -> Vec<Reduction> {
    (0..s.len())
        .filter_map(|pos| s.reduce(pos).map(|seq| Reduction { seq, pos }))
        .collect()
}

/// A spine-preserving leaf da-ecard at the sequence level: the reduced
/// sequence and `d` of the deleted edge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DaReduction {
    pub seq: CaterpillarSeq,
    pub d: u32,
}

impl fmt::Display for DaReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(<{}>, {})", self.seq, self.d)
    }
}

impl CaterpillarSeq {
    /// The da-reduction at position `i`, if spine-preserving.
    pub fn da_reduce(&self, i: usize) -> Option<DaReduction> {
        let d = self.leaf_degree(i);
        self.reduce(i).map(|seq| DaReduction { seq, d })
    }

    /// Copies of `card` among the spine-preserving leaf da-ecards; every
    /// leaf on a reducible position contributes one.
    fn da_multiplicity(&self, card: &DaReduction) -> usize {
        (0..self.len())
            .filter(|&i| self.da_reduce(i).is_some_and(|c| c == *card))
            .map(|i| self.a[i] as usize)
            .sum()
    }
}

/// All sequences (canonical orientation) whose leaf da-ecards include both
/// `c1` and `c2`, counted with multiplicity. Unlike [`reconstruct`], two
/// leaves on the same spine vertex may supply both cards.
pub fn reconstruct_da(c1: &DaReduction, c2: &DaReduction) -> Result<Vec<CaterpillarSeq>> {
    if c1.seq.len() != c2.seq.len() {
        return Err(Error::InconsistentReductions);
    }
    let mut out = BTreeSet::new();
    for i in 0..c1.seq.len() {
        let s = c1.seq.increment(i);
        if s.da_reduce(i).as_ref() != Some(c1) {
            continue;
        }
        let ok = if c1 == c2 {
            s.da_multiplicity(c1) >= 2
        } else {
            s.da_multiplicity(c2) >= 1
        };
        if ok {
            out.insert(s.canonical().a);
        }
    }
    if out.is_empty() {
        return Err(Error::InconsistentReductions);
    }
    Ok(out.into_iter().map(|a| CaterpillarSeq { a }).collect())
}

/// All sequences (canonical orientation) having both `r1` and `r2` as
/// reductions at two distinct spine positions.
pub fn reconstruct(r1: &CaterpillarSeq, r2: &CaterpillarSeq) -> Result<Vec<CaterpillarSeq>> {
    if r1.len() != r2.len() {
        return Err(Error::InconsistentReductions);
    }
    let r2_rev = r2.reversed();
    let mut out = BTreeSet::new();
    for i in 0..r1.len() {
        let s = r1.increment(i);
        if CaterpillarSeq::new(s.a.clone()).is_err() || !s.reducible(i) {
            continue;
        }
        let hit = (0..s.len()).filter(|&j| j != i).any(|j| {
            s.reduce(j)
                .is_some_and(|t| t.a == r2.a || t.a == r2_rev.a)
        });
        if hit {
            out.insert(s.canonical().a);
        }
    }
    if out.is_empty() {
        return Err(Error::InconsistentReductions);
    }
    Ok(out.into_iter().map(|a| CaterpillarSeq { a }).collect())
}

fn unique_from(s: &CaterpillarSeq, i: usize, j: usize) -> bool {
    let single = |c: Result<Vec<CaterpillarSeq>>| c.is_ok_and(|c| c.len() == 1 && c[0] == *s);
    match (s.da_reduce(i), s.da_reduce(j)) {
        (Some(a), Some(b)) => single(reconstruct(&a.seq, &b.seq)) && single(reconstruct_da(&a, &b)),
        _ => false,
    }
}

/// Two distinct positions whose reductions reconstruct `s` uniquely, both
/// as plain reductions and as da-reductions.
///
/// Tries the two ends first, then conjugate pairs with unequal entries,
/// then every remaining pair of reducible positions.
pub fn identifying_pair(s: &CaterpillarSeq) -> Result<(usize, usize)> {
    if s.is_path() {
        return Err(Error::InvalidSequence("paths have no spine-preserving reductions".into()));
    }
    let pos: Vec<usize> = (0..s.len()).filter(|&i| s.reducible(i)).collect();
    if pos.len() < 2 {
        return Err(Error::TooFewReductions);
    }
    let n = s.len();
    let mut order = vec![(0, n - 1)];
    order.extend((1..n / 2).filter(|&j| s.a[j] != s.a[n - 1 - j]).map(|j| (j, n - 1 - j)));
    for (k, &i) in pos.iter().enumerate() {
        order.extend(pos[k + 1..].iter().map(|&j| (i, j)));
    }
    order
        .into_iter()
        .find(|&(i, j)| i != j && unique_from(s, i, j))
        .ok_or(Error::NoIdentifyingPair)
}

/// The caterpillar sequence of a tree, in canonical orientation, or `None`
/// if the tree is not a caterpillar or has no non-leaf vertex.
pub fn seq_of(t: &Graph) -> Result<Option<CaterpillarSeq>> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let inner: u32 = (0..t.n())
        .filter(|&v| t.degree(v) >= 2)
        .fold(0, |m, v| m | 1 << v);
    if inner == 0 {
        return Ok(None);
    }
    let spine_deg = |v: usize| (t.row(v) & inner).count_ones();
    if bits(inner).any(|v| spine_deg(v) > 2) {
        return Ok(None);
    }
    let start = bits(inner)
        .find(|&v| spine_deg(v) <= 1)
        .expect("an induced subtree has an end");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = bits(t.row(cur) & inner).find(|&u| u != prev);
        match next {
            Some(u) => {
                order.push(u);
                prev = cur;
                cur = u;
            }
            None => break,
        }
    }
    let a = order
        .iter()
        .map(|&v| (t.row(v) & !inner).count_ones())
        .collect();
    Ok(Some(CaterpillarSeq::new(a)?.canonical()))
}

/// The leaf edge of `caterpillar_graph(s)` whose deletion realizes the
/// reduction at position `i`.
pub fn leaf_edge(s: &CaterpillarSeq, i: usize) -> Option<(usize, usize)> {
    let a = s.entries();
    if a.get(i).is_none_or(|&x| x == 0) {
        return None;
    }
    let first = a.len() + a[..i].iter().map(|&x| x as usize).sum::<usize>();
    Some((i, first))
}
