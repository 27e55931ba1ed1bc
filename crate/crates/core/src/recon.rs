//! Blockers and the four edge-reconstruction numbers.
//!
//! Every graph `H` sharing a card `C` with `G` is `C + uv` for some
//! non-adjacent pair of `C`, and when the card carries an edge degree `d`
//! the pair must have degree sum `d` in `C`. Extending every distinct card
//! of `G` therefore yields every blocker. Each blocker's deck is computed
//! once and reduced to a vector of multiplicities over `G`'s distinct
//! cards; a sub-multiset of `G`'s deck is blocked iff some blocker vector
//! dominates it componentwise.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, canonical_graph, is_isomorphic, Certificate};
use crate::deck::{self, CardKey, Deck};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A reconstruction number, or `Indeterminate` when the whole deck is
/// shared with a non-isomorphic graph. `Indeterminate` orders above every
/// finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "ValueRepr", try_from = "ValueRepr")]
pub enum ReconValue {
    Finite(usize),
    Indeterminate,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ValueRepr {
    Num(usize),
    Word(String),
}

impl From<ReconValue> for ValueRepr {
    fn from(v: ReconValue) -> Self {
        match v {
            ReconValue::Finite(k) => ValueRepr::Num(k),
            ReconValue::Indeterminate => ValueRepr::Word("indeterminate".into()),
        }
    }
}

impl TryFrom<ValueRepr> for ReconValue {
    type Error = String;
    fn try_from(r: ValueRepr) -> std::result::Result<Self, String> {
        match r {
            ValueRepr::Num(k) => Ok(ReconValue::Finite(k)),
            ValueRepr::Word(w) if w == "indeterminate" => Ok(ReconValue::Indeterminate),
            ValueRepr::Word(w) => Err(format!("unexpected value `{w}`")),
        }
    }
}

impl ReconValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            ReconValue::Finite(k) => Some(k),
            ReconValue::Indeterminate => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ReconValue::Finite(_))
    }
}

impl fmt::Display for ReconValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReconValue::Finite(k) => write!(f, "{k}"),
            ReconValue::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconResult {
    pub value: ReconValue,
    /// A sub-multiset of the deck of size `value` that no blocker contains,
    /// as `(key, multiplicity)` pairs in key order. Empty when
    /// indeterminate.
    pub witness: Vec<(CardKey, usize)>,
    /// Largest number of cards shared with any single blocker.
    pub max_shared: usize,
    /// The least blocker (by certificate) sharing `max_shared` cards.
    pub blocker_example: Option<Graph>,
}

impl ReconResult {
    pub fn witness_deck(&self) -> Deck {
        let mut d = Deck::new();
        for (k, c) in &self.witness {
            d.insert(k.clone(), *c);
        }
        d
    }
}

/// All graphs `card + uv` over non-adjacent pairs, one canonical
/// representative per isomorphism class. With `d` given, only pairs whose
/// degree sum in `card` equals `d` are used, so the new edge has degree `d`.
pub fn extensions(card: &Graph, d: Option<u32>) -> BTreeMap<Certificate, Graph> {
    let degs = card.degrees();
    let mut out = BTreeMap::new();
    for (u, v) in card.non_edges() {
        if d.is_some_and(|d| (degs[u] + degs[v]) as u32 != d) {
            continue;
        }
        let h = card.with_edge(u, v).expect("non-edge of a valid graph");
        let c = canonical_form(&h);
        out.entry(c).or_insert_with(|| canonical_graph(&h));
    }
    out
}

/// Number of non-adjacent pairs of `card` whose degree sum is `d`.
pub fn placements(card: &Graph, d: u32) -> usize {
    let degs = card.degrees();
    card.non_edges()
        .filter(|&(u, v)| (degs[u] + degs[v]) as u32 == d)
        .count()
}

/// The single-card sufficient condition: `d = 0`, or exactly one
/// non-adjacent pair of `card` has degree sum `d`.
pub fn degree_sum_condition(card: &Graph, d: u32) -> bool {
    d == 0 || placements(card, d) == 1
}

/// Whether the da-ecard `(card, d)` alone determines `origin`.
pub fn determines(card: &Graph, d: u32, origin: &Graph) -> Result<bool> {
    let not_a_card = || Error::NotACard {
        card: card.to_string(),
        d,
    };
    if card.n() != origin.n() || card.m() + 1 != origin.m() {
        return Err(not_a_card());
    }
    let target = canonical_form(origin);
    if degree_sum_condition(card, d) {
        let degs = card.degrees();
        let (u, v) = card
            .non_edges()
            .find(|&(u, v)| (degs[u] + degs[v]) as u32 == d)
            .ok_or_else(not_a_card)?;
        let h = card.with_edge(u, v)?;
        return if canonical_form(&h) == target {
            Ok(true)
        } else {
            Err(not_a_card())
        };
    }
    let ext = extensions(card, Some(d));
    if !ext.contains_key(&target) {
        return Err(not_a_card());
    }
    Ok(ext.len() == 1)
}

/// Blocker search state for one graph and one card kind.
///
/// Holds `G`'s distinct cards with their multiplicities and, for each
/// blocker class, its multiplicities over those same cards.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    graph: Graph,
    da: bool,
    keys: Vec<CardKey>,
    caps: Vec<usize>,
    blockers: Vec<Blocker>,
}

#[derive(Clone, Debug)]
struct Blocker {
    cert: Certificate,
    graph: Graph,
    counts: Vec<usize>,
}

impl Blocker {
    fn shared(&self, caps: &[usize]) -> usize {
        self.counts.iter().zip(caps).map(|(&b, &c)| b.min(c)).sum()
    }
}

impl Reconstruction {
    pub fn new(g: &Graph, da: bool) -> Result<Reconstruction> {
        let own = deck::deck(g, da)?;
        let keys: Vec<CardKey> = own.keys().cloned().collect();
        let caps: Vec<usize> = own.iter().map(|(_, c)| c).collect();
        let me = canonical_form(g);
        let mut found: BTreeMap<Certificate, Graph> = BTreeMap::new();
        for key in &keys {
            let card = key.card.graph();
            for (c, h) in extensions(&card, key.d) {
                if c != me {
                    found.entry(c).or_insert(h);
                }
            }
        }
        let blockers = found
            .into_iter()
            .map(|(cert, graph)| {
                let theirs = deck::deck(&graph, da).expect("blockers have edges");
                let counts = keys.iter().map(|k| theirs.multiplicity(k)).collect();
                Blocker {
                    cert,
                    graph,
                    counts,
                }
            })
            .collect();
        Ok(Reconstruction {
            graph: *g,
            da,
            keys,
            caps,
            blockers,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn is_da(&self) -> bool {
        self.da
    }

    /// The deck this search runs over.
    pub fn deck(&self) -> Deck {
        let mut d = Deck::new();
        for (k, &c) in self.keys.iter().zip(&self.caps) {
            d.insert(k.clone(), c);
        }
        d
    }

    /// Blocker classes, one canonical representative each, in certificate
    /// order.
    pub fn blockers(&self) -> impl Iterator<Item = &Graph> {
        self.blockers.iter().map(|b| &b.graph)
    }

    pub fn blocker_count(&self) -> usize {
        self.blockers.len()
    }

    fn max_shared(&self) -> (usize, Option<&Blocker>) {
        let mut best: (usize, Option<&Blocker>) = (0, None);
        for b in &self.blockers {
            let s = b.shared(&self.caps);
            if s > best.0 {
                best = (s, Some(b));
            }
        }
        best
    }

    fn blocked(&self, x: &[usize]) -> bool {
        self.blockers
            .iter()
            .any(|b| x.iter().zip(&b.counts).all(|(xi, bi)| xi <= bi))
    }

    fn witness_of(&self, x: &[usize]) -> Vec<(CardKey, usize)> {
        self.keys
            .iter()
            .zip(x)
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| (k.clone(), c))
            .collect()
    }

    /// Smallest `k` such that some `k` cards of the deck lie in no
    /// blocker's deck (`ern`, or `dern` for da-ecards).
    pub fn recon_number(&self) -> ReconResult {
        let total: usize = self.caps.iter().sum();
        let (max_shared, example) = self.max_shared();
        let blocker_example = example.map(|b| b.graph);
        if max_shared == total {
            return ReconResult {
                value: ReconValue::Indeterminate,
                witness: Vec::new(),
                max_shared,
                blocker_example,
            };
        }
        for k in 1..=total {
            let mut best: Option<Vec<(CardKey, usize)>> = None;
            let mut x = vec![0usize; self.keys.len()];
            self.scan(0, k, &mut x, &mut best);
            if let Some(witness) = best {
                return ReconResult {
                    value: ReconValue::Finite(k),
                    witness,
                    max_shared,
                    blocker_example,
                };
            }
        }
        unreachable!("the full deck is unblocked once max_shared < total")
    }

    fn scan(
        &self,
        i: usize,
        left: usize,
        x: &mut Vec<usize>,
        best: &mut Option<Vec<(CardKey, usize)>>,
    ) {
        if i == self.keys.len() {
            if left == 0 && !self.blocked(x) {
                let w = self.witness_of(x);
                if best.as_ref().is_none_or(|b| w < *b) {
                    *best = Some(w);
                }
            }
            return;
        }
        let room: usize = self.caps[i + 1..].iter().sum();
        let lo = left.saturating_sub(room);
        for c in lo..=left.min(self.caps[i]) {
            x[i] = c;
            self.scan(i + 1, left - c, x, best);
        }
        x[i] = 0;
    }

    /// Least `k` such that every `k` cards of the deck lie in no blocker's
    /// deck: one more than the largest overlap with a blocker.
    pub fn adv_recon_number(&self) -> ReconResult {
        let total: usize = self.caps.iter().sum();
        let (max_shared, example) = self.max_shared();
        if max_shared == total {
            return ReconResult {
                value: ReconValue::Indeterminate,
                witness: Vec::new(),
                max_shared,
                blocker_example: example.map(|b| b.graph),
            };
        }
        // The overlap with the extreme blocker plus one card it lacks.
        let mut x: Vec<usize> = match example {
            Some(b) => b.counts.iter().zip(&self.caps).map(|(&b, &c)| b.min(c)).collect(),
            None => vec![0; self.keys.len()],
        };
        let extra = (0..x.len())
            .find(|&i| x[i] < self.caps[i])
            .expect("overlap is smaller than the deck");
        x[extra] += 1;
        ReconResult {
            value: ReconValue::Finite(max_shared + 1),
            witness: self.witness_of(&x),
            max_shared,
            blocker_example: example.map(|b| b.graph),
        }
    }

    /// Certificates of the blockers whose decks contain `cards`.
    pub fn blockers_of(&self, cards: &Deck) -> Vec<&Certificate> {
        let x: Option<Vec<usize>> = {
            let mut x = vec![0usize; self.keys.len()];
            let mut ok = true;
            for (k, c) in cards.iter() {
                match self.keys.iter().position(|kk| kk == k) {
                    Some(i) => x[i] = c,
                    None => ok = false,
                }
            }
            ok.then_some(x)
        };
        let Some(x) = x else {
            return Vec::new();
        };
        self.blockers
            .iter()
            .filter(|b| x.iter().zip(&b.counts).all(|(xi, bi)| xi <= bi))
            .map(|b| &b.cert)
            .collect()
    }
}

/// All graphs not isomorphic to `g` that share at least one card with it.
pub fn blockers(g: &Graph, da: bool) -> Result<Vec<Graph>> {
    Ok(Reconstruction::new(g, da)?.blockers().copied().collect())
}

/// `ern(g)` when `da` is false, `dern(g)` when true.
pub fn recon_number(g: &Graph, da: bool) -> Result<ReconResult> {
    Ok(Reconstruction::new(g, da)?.recon_number())
}

/// `adv-ern(g)` when `da` is false, `adv-dern(g)` when true.
pub fn adv_recon_number(g: &Graph, da: bool) -> Result<ReconResult> {
    Ok(Reconstruction::new(g, da)?.adv_recon_number())
}

/// All four numbers of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Numbers {
    pub ern: ReconResult,
    pub dern: ReconResult,
    pub adv_ern: ReconResult,
    pub adv_dern: ReconResult,
}

pub fn all_numbers(g: &Graph) -> Result<Numbers> {
    let plain = Reconstruction::new(g, false)?;
    let da = Reconstruction::new(g, true)?;
    Ok(Numbers {
        ern: plain.recon_number(),
        adv_ern: plain.adv_recon_number(),
        dern: da.recon_number(),
        adv_dern: da.adv_recon_number(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeVerdict {
    Tree,
    Unknown,
}

fn two_tree_orders(card: &Graph) -> Option<[usize; 2]> {
    let comps = card.component_masks();
    if comps.len() != 2 {
        return None;
    }
    let mut orders = [0; 2];
    for (i, &c) in comps.iter().enumerate() {
        let h = card.induced(c);
        if !h.is_tree() {
            return None;
        }
        orders[i] = h.n();
    }
    orders.sort_unstable();
    Some(orders)
}

/// Two edge-cards of one graph, each made of exactly two tree components:
/// if the component orders differ between the cards the graph is a tree.
pub fn is_tree_from_two_cards(c1: &Graph, c2: &Graph) -> TreeVerdict {
    match (two_tree_orders(c1), two_tree_orders(c2)) {
        (Some(a), Some(b)) if a != b => TreeVerdict::Tree,
        _ => TreeVerdict::Unknown,
    }
}

/// Both sides of `ern(kH) <= min(adv-ern(H), 2 + mm(H))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KhBound {
    pub ern: ReconValue,
    pub adv_ern_component: ReconValue,
    pub mm_component: usize,
    /// `min(adv-ern(H), 2 + mm(H))`; an indeterminate `adv-ern(H)` leaves
    /// only the second term.
    pub bound: usize,
    pub holds: bool,
    /// `max(2, bound)`: the argument needs two non-isomorphic cards of
    /// `kH` before it applies, so `ern(kH) >= 2` whenever `k >= 2`.
    pub two_card_bound: usize,
    pub holds_two_card: bool,
}

/// Checks the `kH` edge-reconstruction bound for `k` copies of connected
/// `h` whose edge-cards are not all isomorphic.
pub fn kh_ern_bound(h: &Graph, k: usize) -> Result<KhBound> {
    if k < 2 {
        return Err(Error::OutOfRange {
            what: "copies",
            got: k,
            max: usize::MAX,
        });
    }
    if !h.is_connected() {
        return Err(Error::NotConnected);
    }
    let cards = deck::edge_deck(h)?;
    if cards.distinct() < 2 {
        return Err(Error::IsomorphicEdgeCards);
    }
    let g = crate::families::disjoint_union(k, h)?;
    let ern = recon_number(&g, false)?.value;
    let adv = adv_recon_number(h, false)?.value;
    let mm = cards.min_multiplicity().expect("non-empty deck");
    let bound = match adv {
        ReconValue::Finite(a) => a.min(2 + mm),
        ReconValue::Indeterminate => 2 + mm,
    };
    let holds = ern.finite().is_some_and(|e| e <= bound);
    let two_card_bound = bound.max(2);
    Ok(KhBound {
        ern,
        adv_ern_component: adv,
        mm_component: mm,
        bound,
        holds,
        two_card_bound,
        holds_two_card: ern.finite().is_some_and(|e| e <= two_card_bound),
    })
}

/// `true` iff `g` and `h` share a card of the given kind.
pub fn shares_card(g: &Graph, h: &Graph, da: bool) -> Result<bool> {
    if is_isomorphic(g, h) {
        return Ok(false);
    }
    Ok(deck::deck(g, da)?.intersection_size(&deck::deck(h, da)?) > 0)
}
