//! Subspace hypergraph system over F_q^{2d}.
//!
//! Vertices are the valid (d-1)-dimensional subspaces (level V), hyperedges
//! the valid (d+1)-dimensional ones (level S), where "valid" means the
//! canonical basis matrix has the form [I_k | M]. Names encode M and are in
//! bijection with valid subspaces, so all neighbor and index operations are
//! strongly explicit: they touch only small matrices, never global lists.

pub mod graph;
pub mod nbr;
pub mod route;

pub use graph::{inclusion_graph_joint, intersection_graph_joint};
pub use nbr::{edge_intersect, gi_sampler_nbr, inv_index, nbr_s_to_v, nbr_v_to_s};
pub use route::{route_subspace, RouteKind, RoutePath};

use hdx_algebra::field::FieldSpec;
use hdx_algebra::{AlgebraError, Domain, Mat, Rng, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubspaceError {
    Format(String),
    /// The pair is not adjacent in the relevant inclusion graph.
    NotAdjacent,
    /// An operation landed outside the valid-subspace encoding.
    Degenerate,
    /// No usable intersection (wrong dimension or invalid canonical form).
    Fail,
    /// A sampling loop exhausted its retry budget.
    Sampling,
    Algebra(AlgebraError),
}

impl std::fmt::Display for SubspaceError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubspaceError::Format(s) => write!(f, "format error: {s}"),
            SubspaceError::NotAdjacent => write!(f, "subspaces are not adjacent"),
            SubspaceError::Degenerate => write!(f, "result is outside the valid encoding"),
            SubspaceError::Fail => write!(f, "no usable intersection"),
            SubspaceError::Sampling => write!(f, "sampling retry budget exhausted"),
            SubspaceError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SubspaceError {}

impl From<AlgebraError> for SubspaceError {
    fn from(e: AlgebraError) -> Self {
        SubspaceError::Algebra(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    /// Vertices: dimension d-1.
    V,
    /// Hyperedges: dimension d+1.
    S,
}

impl Level {
    pub fn prefix(self) -> &'static str {
        match self {
            Level::V => "V",
            Level::S => "S",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SubspaceParams {
    dom: Domain,
    d: usize,
}

impl SubspaceParams {
    pub fn new(q: u64, d: usize) -> Result<Self, SubspaceError> {
        if d < 2 {
            return Err(SubspaceError::Format(format!("d must be >= 2, got {d}")));
        }
        let dom = Domain::field(FieldSpec::gf(q)?)?;
        Ok(SubspaceParams { dom, d })
    }

    pub fn domain(&self) -> &Domain {
        &self.dom
    }

    pub fn q(&self) -> u64 {
        self.dom.size()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ambient(&self) -> usize {
        2 * self.d
    }

    pub fn level_dim(&self, level: Level) -> usize {
        match level {
            Level::V => self.d - 1,
            Level::S => self.d + 1,
        }
    }

    /// Number of F_q symbols in a name: both levels have d^2 - 1.
    pub fn name_symbols(&self) -> usize {
        self.d * self.d - 1
    }

    /// Number of valid subspaces at either level.
    pub fn valid_count(&self) -> u64 {
        self.q().pow(self.name_symbols() as u32)
    }

    /// Degree of the inclusion graph at the S side: one index per M' matrix.
    pub fn nbr_degree(&self) -> u64 {
        self.q().pow(2 * (self.d as u32 - 1))
    }
}

/// A valid subspace: canonical basis matrix [I_k | M], k rows, 2d columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceRep {
    level: Level,
    mat: Mat,
}

/// Pivot structure check: RREF input with pivots exactly in the first k columns.
pub(crate) fn is_valid_form(m: &Mat) -> bool {
    let k = m.rows();
    for i in 0..k {
        for j in 0..k {
            let want = if i == j { 1 } else { 0 };
            if m.get(i, j) != want {
                return false;
            }
        }
    }
    true
}

impl SubspaceRep {
    /// Wraps a basis matrix, canonicalizing; None if the row space is not a
    /// valid subspace of the level's dimension.
    pub fn from_basis(params: &SubspaceParams, level: Level, m: &Mat) -> Option<SubspaceRep> {
        let b = m.row_basis();
        if b.rows() != params.level_dim(level) || b.cols() != params.ambient() {
            return None;
        }
        if !is_valid_form(&b) {
            return None;
        }
        Some(SubspaceRep { level, mat: b })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// The canonical basis matrix [I_k | M].
    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    /// Row-major entries of the M block.
    pub fn m_entries(&self, params: &SubspaceParams) -> Vec<Scalar> {
        let k = self.mat.rows();
        let mut out = Vec::with_capacity(params.name_symbols());
        for i in 0..k {
            for j in k..params.ambient() {
                out.push(self.mat.get(i, j));
            }
        }
        out
    }

    pub fn name(&self, params: &SubspaceParams) -> String {
        format!(
            "{}:{}",
            self.level.prefix(),
            hdx_algebra::field::poly_hex(&self.m_entries(params))
        )
    }
}

pub fn name_to_subspace(
    params: &SubspaceParams,
    level: Level,
    name: &str,
) -> Result<SubspaceRep, SubspaceError> {
    let body = name
        .strip_prefix(&format!("{}:", level.prefix()))
        .ok_or_else(|| SubspaceError::Format(format!("expected {} name", level.prefix())))?;
    let entries = hdx_algebra::field::poly_from_hex(body)?;
    subspace_from_entries(params, level, &entries)
}

pub fn subspace_from_entries(
    params: &SubspaceParams,
    level: Level,
    entries: &[Scalar],
) -> Result<SubspaceRep, SubspaceError> {
    if entries.len() != params.name_symbols() {
        return Err(SubspaceError::Format(format!(
            "name has {} symbols, expected {}",
            entries.len(),
            params.name_symbols()
        )));
    }
    if entries.iter().any(|&v| v as u64 >= params.q()) {
        return Err(SubspaceError::Format("symbol out of field".into()));
    }
    let k = params.level_dim(level);
    let n = params.ambient();
    let mut m = Mat::zero(params.domain(), k, n);
    let mut it = entries.iter();
    for i in 0..k {
        m.set(i, i, 1);
        for j in k..n {
            m.set(i, j, *it.next().unwrap());
        }
    }
    Ok(SubspaceRep { level, mat: m })
}

/// The i-th valid subspace in lexicographic name order, i < valid_count.
pub fn subspace_from_counter(
    params: &SubspaceParams,
    level: Level,
    mut i: u64,
) -> SubspaceRep {
    let q = params.q();
    let n = params.name_symbols();
    let mut entries = vec![0; n];
    for pos in (0..n).rev() {
        entries[pos] = (i % q) as Scalar;
        i /= q;
    }
    subspace_from_entries(params, level, &entries).unwrap()
}

/// Uniform valid subspace.
pub fn uniform_subspace(params: &SubspaceParams, level: Level, rng: &mut Rng) -> SubspaceRep {
    let entries: Vec<Scalar> = (0..params.name_symbols())
        .map(|_| rng.below(params.q()) as Scalar)
        .collect();
    subspace_from_entries(params, level, &entries).unwrap()
}

pub fn enumerate_valid(params: &SubspaceParams, level: Level) -> Vec<SubspaceRep> {
    (0..params.valid_count())
        .map(|i| subspace_from_counter(params, level, i))
        .collect()
}

/// Index codec: idx <-> row-major base-q digits of a small matrix, first
/// entry most significant.
pub(crate) fn idx_to_mat(params: &SubspaceParams, rows: usize, cols: usize, mut idx: u64) -> Mat {
    let q = params.q();
    let mut m = Mat::zero(params.domain(), rows, cols);
    for i in (0..rows).rev() {
        for j in (0..cols).rev() {
            m.set(i, j, (idx % q) as Scalar);
            idx /= q;
        }
    }
    m
}

pub(crate) fn mat_to_idx(params: &SubspaceParams, m: &Mat) -> u64 {
    let q = params.q();
    let mut idx = 0u64;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            idx = idx * q + m.get(i, j) as u64;
        }
    }
    idx
}

/// Column reversal, for the last-coordinate validity convention on duals.
pub(crate) fn rev_cols(m: &Mat) -> Mat {
    let mut out = Mat::zero(m.domain(), m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, m.cols() - 1 - j, m.get(i, j));
        }
    }
    out
}
