//! Edge-reconstruction numbers of small graphs.
//!
//! Graphs are stored as bit rows ([`Graph`]) and compared through
//! canonical graph6 certificates ([`Certificate`]). On top of that sit
//! edge-decks and degree-associated edge-decks ([`deck`]), exact
//! reconstruction numbers ([`recon`]), caterpillar sequences
//! ([`caterpillar`]), family generators ([`families`]) and resumable
//! claim sweeps ([`sweep`]) backed by an append-only record store
//! ([`store`]).

pub mod canon;
pub mod caterpillar;
pub mod centroid;
pub mod deck;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod par;
pub mod recon;
pub mod store;
pub mod sweep;

pub use canon::{canonical_form, is_isomorphic, Certificate};
pub use caterpillar::CaterpillarSeq;
pub use deck::{CardKey, Deck};
pub use error::{Error, Result};
pub use graph::{Graph, MAX_VERTICES};
pub use graph6::{parse_graph6, write_graph6};
pub use par::Parallelism;
pub use recon::{ReconResult, ReconValue, Reconstruction};
