//! Sweeps of named claims over graph families, backed by the store.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use crate::canon::{canonical_form, is_isomorphic};
use crate::caterpillar::{identifying_pair, leaf_edge, seq_of, CaterpillarSeq};
use crate::deck::{self, CardKey, Deck};
use crate::error::{Error, Result};
use crate::families::{
    caterpillar_graph, complete_bipartite, disjoint_union, enumerate_connected, enumerate_graphs,
    enumerate_trees, star, MAX_GRAPH_ORDER, MAX_TREE_ORDER,
};
use crate::graph::{Graph, MAX_VERTICES};
use crate::par::{self, Parallelism};
use crate::recon::{kh_ern_bound, ReconValue, Reconstruction};
use crate::store::{compute_record, Needs, Record, Store};

/// Default order caps for sweeps; `force` lifts them to the hard limits.
pub const TREE_SWEEP_CAP: usize = 10;
pub const UNION_SWEEP_CAP: usize = 10;

/// What a sweep enumerates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Free trees on exactly `n` vertices.
    Trees(usize),
    /// Caterpillars on exactly `n` vertices, paths included.
    Caterpillars(usize),
    /// `k H` for every connected `H` with 2 to `max_component` vertices.
    Disconnected { k: usize, max_component: usize },
    /// All graphs on `n` vertices with at least one edge.
    Graphs(usize),
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Trees(n) => write!(f, "trees n={n}"),
            Scope::Caterpillars(n) => write!(f, "caterpillars n={n}"),
            Scope::Disconnected { k, max_component } => {
                write!(f, "{k}H, n(H)<={max_component}")
            }
            Scope::Graphs(n) => write!(f, "graphs n={n}"),
        }
    }
}

/// One graph of a sweep, with its component when it is `k H`.
#[derive(Clone, Debug)]
pub struct Item {
    pub graph: Graph,
    pub component: Option<(Graph, usize)>,
}

impl Scope {
    fn check(&self, force: bool) -> Result<Option<String>> {
        let (what, got, soft, hard) = match *self {
            Scope::Trees(n) | Scope::Caterpillars(n) => ("tree order", n, TREE_SWEEP_CAP, MAX_TREE_ORDER),
            Scope::Disconnected { k, max_component } => (
                "k * n(H)",
                k * max_component,
                UNION_SWEEP_CAP,
                MAX_VERTICES.min(k * MAX_GRAPH_ORDER),
            ),
            Scope::Graphs(n) => ("graph order", n, MAX_GRAPH_ORDER, MAX_GRAPH_ORDER),
        };
        if got > hard || (got > soft && !force) {
            return Err(Error::OutOfRange {
                what,
                got,
                max: if force { hard } else { soft },
            });
        }
        Ok((got > soft).then(|| format!("{what} {got} is past the default cap {soft}")))
    }

    /// The graphs in scope, one per isomorphism class.
    pub fn items(&self) -> Result<Vec<Item>> {
        let plain = |g: Graph| Item {
            graph: g,
            component: None,
        };
        Ok(match *self {
            Scope::Trees(n) => enumerate_trees(n)?
                .into_iter()
                .filter(|t| t.m() > 0)
                .map(plain)
                .collect(),
            Scope::Caterpillars(n) => {
                let mut out = Vec::new();
                for t in enumerate_trees(n)? {
                    if t.m() > 0 && seq_of(&t)?.is_some() {
                        out.push(plain(t));
                    }
                }
                out
            }
            Scope::Disconnected { k, max_component } => {
                let mut out = Vec::new();
                for size in 2..=max_component.min(MAX_GRAPH_ORDER) {
                    if k * size > MAX_VERTICES {
                        break;
                    }
                    for h in enumerate_connected(size)? {
                        out.push(Item {
                            graph: disjoint_union(k, &h)?,
                            component: Some((h, k)),
                        });
                    }
                }
                out
            }
            Scope::Graphs(n) => enumerate_graphs(n, None)?
                .into_iter()
                .filter(|g| g.m() > 0)
                .map(plain)
                .collect(),
        })
    }
}

/// Named, versioned predicates over sweep results.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `dern <= 2` (the tree conjecture when swept over trees).
    DernLe2,
    /// Lists graphs with `ern = 3`; never fails.
    ErnEq3Census,
    /// For `kH`: `ern > 3` only when `H` is a star.
    KhErnAboveThreeIsStar,
    /// For `kH` with all edge-cards of `H` isomorphic and `H` not
    /// `K_{1,3}`, `K_{1,2}` or `K_{2,3}`: `dern <= 2`.
    KhEdgeTransitiveDernLe2,
    /// For `kH` with non-isomorphic edge-cards of `H`:
    /// `ern(kH) <= min(adv-ern(H), 2 + mm(H))`.
    KhErnBound,
    /// The same bound with `max(2, .)` applied to its right-hand side.
    KhErnBoundTwoCard,
    /// Non-path caterpillars have `dern <= 2`, certified by the
    /// identifying pair of leaf da-ecards when one exists.
    CaterpillarDernLe2,
}

pub const CLAIMS: [Claim; 7] = [
    Claim::DernLe2,
    Claim::ErnEq3Census,
    Claim::KhErnAboveThreeIsStar,
    Claim::KhEdgeTransitiveDernLe2,
    Claim::KhErnBound,
    Claim::KhErnBoundTwoCard,
    Claim::CaterpillarDernLe2,
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Violated(String),
    /// A census hit.
    Listed,
    /// Hypothesis not met.
    Skipped,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::DernLe2 => "dern-le-2@1",
            Claim::ErnEq3Census => "ern-eq-3-census@1",
            Claim::KhErnAboveThreeIsStar => "conj-2.1@1",
            Claim::KhEdgeTransitiveDernLe2 => "conj-4.1@1",
            Claim::KhErnBound => "thm-4.3@1",
            Claim::KhErnBoundTwoCard => "thm-4.3@2",
            Claim::CaterpillarDernLe2 => "cor-5.1@1",
        }
    }

    /// Looks a claim up by name; the `@version` suffix is optional.
    pub fn by_name(name: &str) -> Result<Claim> {
        let base = |c: Claim| c.name().split('@').next().expect("named").to_string();
        CLAIMS
            .into_iter()
            .find(|&c| c.name() == name || base(c) == name)
            .or(match name {
                "conj-5.1" | "conj-5.1@1" => Some(Claim::DernLe2),
                _ => None,
            })
            .ok_or_else(|| Error::UnknownClaim(name.to_string()))
    }

    pub fn needs(self) -> Needs {
        match self {
            Claim::DernLe2 | Claim::KhEdgeTransitiveDernLe2 | Claim::CaterpillarDernLe2 => Needs {
                dern: true,
                ..Needs::default()
            },
            Claim::ErnEq3Census
            | Claim::KhErnAboveThreeIsStar
            | Claim::KhErnBound
            | Claim::KhErnBoundTwoCard => Needs {
                ern: true,
                ..Needs::default()
            },
        }
    }

    pub fn evaluate(self, item: &Item, rec: &Record) -> Result<Outcome> {
        let dern = || rec.dern.expect("claim needs dern");
        let ern = || rec.ern.expect("claim needs ern");
        Ok(match self {
            Claim::DernLe2 => le2(dern()),
            Claim::ErnEq3Census => {
                if ern() == ReconValue::Finite(3) {
                    Outcome::Listed
                } else {
                    Outcome::Holds
                }
            }
            Claim::KhErnAboveThreeIsStar => {
                let Some((h, _)) = &item.component else {
                    return Ok(Outcome::Skipped);
                };
                if h.m() == 0 || item.graph.m() < 4 {
                    Outcome::Skipped
                } else if ern() > ReconValue::Finite(3) && !is_isomorphic(h, &star(h.m())?) {
                    Outcome::Violated(format!("ern = {} but H = {h} is not a star", ern()))
                } else {
                    Outcome::Holds
                }
            }
            Claim::KhEdgeTransitiveDernLe2 => {
                let Some((h, _)) = &item.component else {
                    return Ok(Outcome::Skipped);
                };
                let excluded = [star(3)?, star(2)?, complete_bipartite(2, 3)?];
                if deck::edge_deck(h)?.distinct() != 1 || excluded.iter().any(|x| is_isomorphic(h, x)) {
                    Outcome::Skipped
                } else {
                    le2(dern())
                }
            }
            Claim::KhErnBound | Claim::KhErnBoundTwoCard => {
                let Some((h, k)) = &item.component else {
                    return Ok(Outcome::Skipped);
                };
                let b = match kh_ern_bound(h, *k) {
                    Err(Error::IsomorphicEdgeCards) => return Ok(Outcome::Skipped),
                    r => r?,
                };
                let (holds, wrap) = if self == Claim::KhErnBound {
                    (b.holds, ("", ""))
                } else {
                    (b.holds_two_card, ("max(2, ", ")"))
                };
                if holds {
                    Outcome::Holds
                } else {
                    Outcome::Violated(format!(
                        "ern = {} exceeds {}min(adv-ern(H) = {}, 2 + mm(H) = {}){}",
                        b.ern,
                        wrap.0,
                        b.adv_ern_component,
                        2 + b.mm_component,
                        wrap.1
                    ))
                }
            }
            Claim::CaterpillarDernLe2 => {
                let Some(s) = seq_of(&item.graph)? else {
                    return Ok(Outcome::Skipped);
                };
                if s.is_path() {
                    return Ok(Outcome::Skipped);
                }
                match le2(dern()) {
                    Outcome::Holds => match certify_pair(&s)? {
                        PairCheck::Certified
                        | PairCheck::CertifiedAmongTrees(_)
                        | PairCheck::NoPair => Outcome::Holds,
                        PairCheck::Blocked(b) => Outcome::Violated(format!(
                            "identifying pair of {s} is blocked by {b}"
                        )),
                    },
                    other => other,
                }
            }
        })
    }
}

fn le2(v: ReconValue) -> Outcome {
    if v <= ReconValue::Finite(2) {
        Outcome::Holds
    } else {
        Outcome::Violated(format!("dern = {v}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairCheck {
    /// The two da-ecards lie in no other graph's da-edeck.
    Certified,
    /// Only graphs that are not trees share both cards; one is given
    /// (graph6).
    CertifiedAmongTrees(String),
    /// The sequence has no identifying pair.
    NoPair,
    /// Another tree shares both cards (graph6).
    Blocked(String),
}

/// The two leaf da-ecards picked by `identifying_pair`, as a deck of
/// `caterpillar_graph(s)`.
pub fn pair_cards(s: &CaterpillarSeq) -> Result<Option<(Graph, Deck)>> {
    let (i, j) = match identifying_pair(s) {
        Ok(p) => p,
        Err(Error::TooFewReductions | Error::NoIdentifyingPair | Error::InvalidSequence(_)) => {
            return Ok(None)
        }
        Err(e) => return Err(e),
    };
    let g = caterpillar_graph(s)?;
    let mut cards = Deck::new();
    for p in [i, j] {
        let (u, v) = leaf_edge(s, p).expect("reducible positions carry leaves");
        let card = canonical_form(&g.without_edge(u, v)?);
        let d = g.edge_degree(u, v)?;
        cards.insert(CardKey { card, d: Some(d) }, 1);
    }
    Ok(Some((g, cards)))
}

/// Checks that the identifying-pair da-ecards of `s` determine the tree.
pub fn certify_pair(s: &CaterpillarSeq) -> Result<PairCheck> {
    let Some((g, cards)) = pair_cards(s)? else {
        return Ok(PairCheck::NoPair);
    };
    let r = Reconstruction::new(&g, true)?;
    let found = r.blockers_of(&cards);
    Ok(match found.iter().find(|b| b.graph().is_tree()) {
        Some(t) => PairCheck::Blocked(t.to_string()),
        None => match found.first() {
            Some(b) => PairCheck::CertifiedAmongTrees(b.to_string()),
            None => PairCheck::Certified,
        },
    })
}

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    pub parallelism: Parallelism,
    /// Allow scopes past the default caps.
    pub force: bool,
    /// Stop after computing this many new records (for interrupted runs).
    pub limit: Option<usize>,
    /// Records computed per parallel batch before they are written.
    pub batch: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub scope: String,
    pub claim: String,
    /// One record per graph in scope, in enumeration order.
    pub records: Vec<Record>,
    /// Records contradicting the claim, with the reason.
    pub violations: Vec<(Record, String)>,
    /// Census hits.
    pub listed: Vec<Record>,
    pub skipped: usize,
    /// Records taken from the store instead of recomputed.
    pub reused: usize,
    pub computed: usize,
    /// Whether the whole scope was covered (false after `limit`).
    pub complete: bool,
    pub warnings: Vec<String>,
    pub elapsed: Duration,
}

/// Evaluates `claim` on every graph of `scope`, reusing and extending the
/// records in `store`.
pub fn run_sweep(
    scope: &Scope,
    claim: Claim,
    store: &mut Store,
    opts: &SweepOptions,
) -> Result<SweepReport> {
    let start = Instant::now();
    let mut warnings = Vec::new();
    if let Some(w) = scope.check(opts.force)? {
        warnings.push(w);
    }
    let needs = claim.needs();
    let items = scope.items()?;
    let known = store.index()?;

    let mut seen = HashSet::new();
    let mut slots: Vec<(Item, Option<Record>)> = Vec::new();
    for item in items {
        let key = canonical_form(&item.graph).as_str().to_string();
        if !seen.insert(key.clone()) {
            continue;
        }
        let cached = known.get(&key).filter(|r| r.covers(needs)).cloned();
        slots.push((item, cached));
    }
    let reused = slots.iter().filter(|(_, r)| r.is_some()).count();

    let todo: Vec<usize> = (0..slots.len()).filter(|&i| slots[i].1.is_none()).collect();
    let budget = opts.limit.unwrap_or(usize::MAX).min(todo.len());
    let batch = opts.batch.unwrap_or(64).max(1);
    let mut computed = 0;
    for chunk in todo[..budget].chunks(batch) {
        let fresh = par::map(chunk, opts.parallelism, |&i| {
            let g = &slots[i].0.graph;
            let mut rec = compute_record(g, needs)?;
            // keep numbers the store already had for this graph
            if let Some(old) = known.get(&rec.graph6) {
                rec.ern = rec.ern.or(old.ern);
                rec.dern = rec.dern.or(old.dern);
                rec.adv_ern = rec.adv_ern.or(old.adv_ern);
                rec.adv_dern = rec.adv_dern.or(old.adv_dern);
            }
            Ok::<_, Error>(rec)
        });
        for (&i, rec) in chunk.iter().zip(fresh) {
            let rec = rec?;
            store.append(&rec)?;
            slots[i].1 = Some(rec);
            computed += 1;
        }
    }

    let complete = slots.iter().all(|(_, r)| r.is_some());
    let mut report = SweepReport {
        scope: scope.to_string(),
        claim: claim.name().to_string(),
        records: Vec::new(),
        violations: Vec::new(),
        listed: Vec::new(),
        skipped: 0,
        reused,
        computed,
        complete,
        warnings,
        elapsed: Duration::ZERO,
    };
    let outcomes = par::map(&slots, opts.parallelism, |(item, rec)| {
        rec.as_ref().map(|r| claim.evaluate(item, r)).transpose()
    });
    for ((_, rec), outcome) in slots.into_iter().zip(outcomes) {
        let (Some(rec), Some(outcome)) = (rec, outcome?) else {
            continue;
        };
        match outcome {
            Outcome::Holds => {}
            Outcome::Skipped => report.skipped += 1,
            Outcome::Listed => report.listed.push(rec.clone()),
            Outcome::Violated(why) => report.violations.push((rec.clone(), why)),
        }
        report.records.push(rec);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}
