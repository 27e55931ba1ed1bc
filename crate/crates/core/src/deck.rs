//! Edge-decks and degree-associated edge-decks as certificate-keyed
//! multisets.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, Certificate};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::parse_graph6;

/// One deck entry: the card's certificate and, for da-ecards, the degree
/// of the deleted edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CardKey {
    pub card: Certificate,
    pub d: Option<u32>,
}

impl CardKey {
    pub fn is_da(&self) -> bool {
        self.d.is_some()
    }
}

impl fmt::Display for CardKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some(d) => write!(f, "({}, {d})", self.card),
            None => write!(f, "{}", self.card),
        }
    }
}

/// A multiset of cards. Two decks are equal iff their entry maps are.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Deck {
    entries: BTreeMap<CardKey, usize>,
    total: usize,
}

impl Deck {
    pub fn new() -> Deck {
        Deck::default()
    }

    pub fn insert(&mut self, key: CardKey, count: usize) {
        if count == 0 {
            return;
        }
        *self.entries.entry(key).or_insert(0) += count;
        self.total += count;
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn multiplicity(&self, key: &CardKey) -> usize {
        self.entries.get(key).copied().unwrap_or(0)
    }

    /// Entries in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&CardKey, usize)> {
        self.entries.iter().map(|(k, &c)| (k, c))
    }

    pub fn keys(&self) -> impl Iterator<Item = &CardKey> {
        self.entries.keys()
    }

    pub fn min_multiplicity(&self) -> Option<usize> {
        self.entries.values().copied().min()
    }

    /// Containment with multiplicity.
    pub fn is_sub_multiset_of(&self, other: &Deck) -> bool {
        self.total <= other.total && self.iter().all(|(k, c)| c <= other.multiplicity(k))
    }

    /// `sum over keys of min(mult_self, mult_other)`.
    pub fn intersection_size(&self, other: &Deck) -> usize {
        let (small, big) = if self.distinct() <= other.distinct() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().map(|(k, c)| c.min(big.multiplicity(k))).sum()
    }

    /// Multiset intersection.
    pub fn intersection(&self, other: &Deck) -> Deck {
        let mut out = Deck::new();
        for (k, c) in self.iter() {
            out.insert(k.clone(), c.min(other.multiplicity(k)));
        }
        out
    }

    /// Parses the line format written by `Display`:
    /// `<multiplicity> <d or -> <graph6>` per line.
    pub fn parse(text: &str) -> Result<Deck> {
        let mut deck = Deck::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let body = line.trim();
            if !body.is_empty() {
                let bad = |reason: &str| Error::Graph6 {
                    offset,
                    reason: format!("deck line `{body}`: {reason}"),
                };
                let mut parts = body.split_whitespace();
                let (Some(mult), Some(d), Some(g6), None) =
                    (parts.next(), parts.next(), parts.next(), parts.next())
                else {
                    return Err(bad("expected three fields"));
                };
                let mult: usize = mult.parse().map_err(|_| bad("bad multiplicity"))?;
                let d = match d {
                    "-" => None,
                    s => Some(s.parse().map_err(|_| bad("bad edge degree"))?),
                };
                let card = canonical_form(&parse_graph6(g6)?);
                deck.insert(CardKey { card, d }, mult);
            }
            offset += line.len();
        }
        Ok(deck)
    }
}

impl fmt::Display for Deck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.iter() {
            match k.d {
                Some(d) => writeln!(f, "{c} {d} {}", k.card)?,
                None => writeln!(f, "{c} - {}", k.card)?,
            }
        }
        Ok(())
    }
}

fn build(g: &Graph, da: bool) -> Result<Deck> {
    if g.m() == 0 {
        return Err(Error::Edgeless);
    }
    let mut deck = Deck::new();
    for (u, v) in g.edges() {
        let card = canonical_form(&g.without_edge(u, v)?);
        let d = da.then(|| (g.degree(u) + g.degree(v) - 2) as u32);
        deck.insert(CardKey { card, d }, 1);
    }
    Ok(deck)
}

/// The edge-deck of `g`; cards keep every vertex of `g`.
pub fn edge_deck(g: &Graph) -> Result<Deck> {
    build(g, false)
}

/// The da-edeck: each card paired with the degree of its deleted edge.
pub fn da_edeck(g: &Graph) -> Result<Deck> {
    build(g, true)
}

pub fn deck(g: &Graph, da: bool) -> Result<Deck> {
    build(g, da)
}

/// Smallest multiplicity among the edge-card classes of `g`.
pub fn min_multiplicity(g: &Graph) -> Result<usize> {
    Ok(edge_deck(g)?.min_multiplicity().expect("non-empty deck"))
}

pub fn sub_multiset(s: &Deck, t: &Deck) -> bool {
    s.is_sub_multiset_of(t)
}

pub fn intersection_size(s: &Deck, t: &Deck) -> usize {
    s.intersection_size(t)
}
