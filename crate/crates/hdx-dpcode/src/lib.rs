//! Direct product codes over an abstract hypergraph system.
//!
//! A system is a vertex set V, a hyperedge set S of uniform degree, and a
//! decoding graph on overlapping hyperedges. A message assigns a symbol to
//! every vertex; its encoding records the message restricted to each
//! hyperedge. Everything downstream (channels, list composition, decoders)
//! goes through the HypergraphSystemAccess trait, so the subspace system,
//! the rank-3 coset complex, and toy complete complexes are interchangeable.
//!
//! Words can be dense (a materialized block map) or lazy (computed per
//! block from a message or a channel description); lazy words make the
//! composed-layer experiments possible, where a single block has tens of
//! thousands of symbols and only a few blocks are ever read.

pub mod channel;
pub mod encode;
pub mod gi;
pub mod io;
pub mod rep;
pub mod sys;

pub use channel::{corrupt_random, corrupt_two_messages, TwoPlantedWord};
pub use encode::{dp_encode, dp_encode_block, CleanSWord, CleanTWord};
pub use gi::{gi_compose_lists, GiLists};
pub use rep::{rep_decode_sample, rep_pad, slot_multiplicity};
pub use sys::{CompleteSystem, KmsD3System, SubspaceSystem};

use hdx_algebra::Rng;
use std::collections::BTreeMap;

/// Largest supported alphabet.
pub const SIGMA_CAP: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DpError {
    Format(String),
    /// A cell outside the canonical-form support; encodes as the filler
    /// symbol and is charged to the decoder's input error.
    Degenerate,
    NotAdjacent,
    RouteFail,
    Unsupported,
    Sampling,
}

impl std::fmt::Display for DpError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DpError::Format(m) => write!(f, "format error: {m}"),
            DpError::Degenerate => write!(f, "degenerate cell"),
            DpError::NotAdjacent => write!(f, "not adjacent"),
            DpError::RouteFail => write!(f, "routing failed"),
            DpError::Unsupported => write!(f, "operation unsupported by this system"),
            DpError::Sampling => write!(f, "sampling budget exhausted"),
        }
    }
}

impl std::error::Error for DpError {}

impl From<hdx_subspace::SubspaceError> for DpError {
    fn from(e: hdx_subspace::SubspaceError) -> DpError {
        use hdx_subspace::SubspaceError as E;
        match e {
            E::Degenerate | E::Fail => DpError::Degenerate,
            E::NotAdjacent => DpError::NotAdjacent,
            E::Sampling => DpError::Sampling,
            other => DpError::Format(other.to_string()),
        }
    }
}

impl From<hdx_kms::KmsError> for DpError {
    fn from(e: hdx_kms::KmsError) -> DpError {
        use hdx_kms::KmsError as E;
        match e {
            E::NotAdjacent => DpError::NotAdjacent,
            E::Sampling => DpError::Sampling,
            E::Degenerate => DpError::Degenerate,
            other => DpError::Format(other.to_string()),
        }
    }
}

/// The hypergraph system contract: names are opaque strings, neighbor maps
/// are index circuits, and a router produces decoding-graph paths.
pub trait HypergraphSystemAccess {
    fn id(&self) -> String;
    fn vertex_name_len(&self) -> usize;
    fn edge_name_len(&self) -> usize;
    /// Down-degree of every hyperedge.
    fn degree(&self) -> u64;
    /// Index space of the vertex-to-hyperedge map.
    fn up_degree(&self) -> u64;
    /// Index space of the edge-intersection circuit.
    fn edge_degree(&self) -> u64;
    fn nbr_down(&self, s: &str, i: u64) -> Result<String, DpError>;
    fn nbr_up(&self, v: &str, j: u64) -> Result<String, DpError>;
    /// Index idx with nbr(a, idx) = b; direction inferred from the names.
    fn inv_index(&self, a: &str, b: &str) -> Result<u64, DpError>;
    /// The i-th vertex lying inside both hyperedges.
    fn edge_intersect(&self, s: &str, s2: &str, i: u64) -> Result<String, DpError>;
    /// Decoding-graph adjacency.
    fn adjacent(&self, s: &str, s2: &str) -> bool;
    /// A decoding-graph path from s to s2, endpoints included.
    fn route(&self, s: &str, s2: &str, rng: &mut Rng) -> Result<Vec<String>, DpError>;
    fn random_vertex(&self, rng: &mut Rng) -> Result<String, DpError>;
    fn random_edge(&self, rng: &mut Rng) -> Result<String, DpError>;
    /// Full enumerations, for systems small enough to list.
    fn vertex_names(&self) -> Result<Vec<String>, DpError> {
        Err(DpError::Unsupported)
    }
    fn edge_names(&self) -> Result<Vec<String>, DpError> {
        Err(DpError::Unsupported)
    }
}

/// A message f: V -> Sigma_1, dense or seeded (uniform value per vertex
/// keyed by the name; the lazy form backs the planted-message channels on
/// systems too large to materialize).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message {
    sigma: u64,
    kind: MessageKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum MessageKind {
    Dense(BTreeMap<String, u32>),
    Seeded(u64),
}

impl Message {
    pub fn dense(sigma: u64, values: BTreeMap<String, u32>) -> Result<Message, DpError> {
        if sigma < 2 || sigma > SIGMA_CAP {
            return Err(DpError::Format(format!("alphabet size {sigma} out of range")));
        }
        if values.values().any(|&v| v as u64 >= sigma) {
            return Err(DpError::Format("message entry outside alphabet".into()));
        }
        Ok(Message { sigma, kind: MessageKind::Dense(values) })
    }

    pub fn seeded(sigma: u64, seed: u64) -> Result<Message, DpError> {
        if sigma < 2 || sigma > SIGMA_CAP {
            return Err(DpError::Format(format!("alphabet size {sigma} out of range")));
        }
        Ok(Message { sigma, kind: MessageKind::Seeded(seed) })
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn value(&self, v: &str) -> u32 {
        match &self.kind {
            MessageKind::Dense(m) => *m.get(v).unwrap_or(&0),
            MessageKind::Seeded(seed) => {
                (hdx_algebra::rng::keyed_hash(*seed, v.as_bytes()) % self.sigma) as u32
            }
        }
    }
}

/// Read access to a word: one local-function block per name.
pub trait WordAccess {
    fn sigma(&self) -> u64;
    fn block_len(&self) -> usize;
    fn block(&self, name: &str) -> Vec<u32>;
    /// A contiguous slice of a block; lazy words override this to avoid
    /// computing the whole block.
    fn restrict(&self, name: &str, offset: usize, len: usize) -> Vec<u32> {
        self.block(name)[offset..offset + len].to_vec()
    }
}

/// Materialized codeword: hyperedge name -> local function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub sigma: u64,
    pub block_len: usize,
    pub blocks: BTreeMap<String, Vec<u32>>,
}

impl Codeword {
    pub fn materialize(w: &dyn WordAccess, names: &[String]) -> Codeword {
        let blocks = names.iter().map(|n| (n.clone(), w.block(n))).collect();
        Codeword { sigma: w.sigma(), block_len: w.block_len(), blocks }
    }
}

impl WordAccess for Codeword {
    fn sigma(&self) -> u64 {
        self.sigma
    }

    fn block_len(&self) -> usize {
        self.block_len
    }

    fn block(&self, name: &str) -> Vec<u32> {
        self.blocks.get(name).cloned().unwrap_or_else(|| vec![0; self.block_len])
    }
}

/// Read access to per-hyperedge candidate lists.
pub trait ListAccess {
    fn sigma(&self) -> u64;
    /// Declared list-size bound.
    fn ell(&self) -> usize;
    fn list(&self, s: &str) -> Vec<Vec<u32>>;
}

/// Materialized list word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListWord {
    pub sigma: u64,
    pub ell: usize,
    pub lists: BTreeMap<String, Vec<Vec<u32>>>,
}

impl ListWord {
    pub fn new(
        sigma: u64,
        ell: usize,
        lists: BTreeMap<String, Vec<Vec<u32>>>,
    ) -> Result<ListWord, DpError> {
        if lists.values().any(|l| l.len() > ell) {
            return Err(DpError::Format("list longer than the declared bound".into()));
        }
        Ok(ListWord { sigma, ell, lists })
    }
}

impl ListAccess for ListWord {
    fn sigma(&self) -> u64 {
        self.sigma
    }

    fn ell(&self) -> usize {
        self.ell
    }

    fn list(&self, s: &str) -> Vec<Vec<u32>> {
        self.lists.get(s).cloned().unwrap_or_default()
    }
}
