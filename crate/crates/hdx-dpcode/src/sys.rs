//! Hypergraph-system implementations: the two-layer subspace system, the
//! rank-3 coset complex, and the complete complex used as a toy local
//! system.

use crate::{DpError, HypergraphSystemAccess};
use hdx_algebra::{Mat, Rng, Scalar};
use hdx_kms::{
    d3_fast_index, d3_fast_nbr, route_randomized, uniform_sl, CanonicalCoset, ColorSet,
    KmsParams,
};
use hdx_subspace::{
    edge_intersect, enumerate_valid, inv_index, name_to_subspace, nbr_s_to_v, nbr_v_to_s,
    route_subspace, subspace_from_counter, uniform_subspace, Level, SubspaceParams,
};

const ENUM_CAP: u64 = 1 << 20;

/// V = valid d-dim subspaces, S = valid (d+1)-dim subspaces of F_q^{2d};
/// the decoding graph joins hyperedges meeting in dimension d.
pub struct SubspaceSystem {
    params: SubspaceParams,
    v_name_len: usize,
    s_name_len: usize,
}

impl SubspaceSystem {
    pub fn new(params: SubspaceParams) -> SubspaceSystem {
        let v_name_len = subspace_from_counter(&params, Level::V, 0).name(&params).len();
        let s_name_len = subspace_from_counter(&params, Level::S, 0).name(&params).len();
        SubspaceSystem { params, v_name_len, s_name_len }
    }

    pub fn params(&self) -> &SubspaceParams {
        &self.params
    }
}

impl HypergraphSystemAccess for SubspaceSystem {
    fn id(&self) -> String {
        format!("subspace-q{}-d{}", self.params.q(), self.params.d())
    }

    fn vertex_name_len(&self) -> usize {
        self.v_name_len
    }

    fn edge_name_len(&self) -> usize {
        self.s_name_len
    }

    fn degree(&self) -> u64 {
        self.params.nbr_degree()
    }

    fn up_degree(&self) -> u64 {
        self.params.nbr_degree()
    }

    fn edge_degree(&self) -> u64 {
        self.params.q().pow(self.params.d() as u32 - 1)
    }

    fn nbr_down(&self, s: &str, i: u64) -> Result<String, DpError> {
        let s = name_to_subspace(&self.params, Level::S, s)?;
        Ok(nbr_s_to_v(&self.params, &s, i)?.name(&self.params))
    }

    fn nbr_up(&self, v: &str, j: u64) -> Result<String, DpError> {
        let v = name_to_subspace(&self.params, Level::V, v)?;
        Ok(nbr_v_to_s(&self.params, &v, j)?.name(&self.params))
    }

    fn inv_index(&self, a: &str, b: &str) -> Result<u64, DpError> {
        let (la, lb) = if a.starts_with("S:") { (Level::S, Level::V) } else { (Level::V, Level::S) };
        let a = name_to_subspace(&self.params, la, a)?;
        let b = name_to_subspace(&self.params, lb, b)?;
        Ok(inv_index(&self.params, &a, &b)?)
    }

    fn edge_intersect(&self, s: &str, s2: &str, i: u64) -> Result<String, DpError> {
        let s = name_to_subspace(&self.params, Level::S, s)?;
        let s2 = name_to_subspace(&self.params, Level::S, s2)?;
        Ok(edge_intersect(&self.params, &s, &s2, i)?.name(&self.params))
    }

    fn adjacent(&self, s: &str, s2: &str) -> bool {
        if s == s2 {
            return false;
        }
        let (Ok(a), Ok(b)) = (
            name_to_subspace(&self.params, Level::S, s),
            name_to_subspace(&self.params, Level::S, s2),
        ) else {
            return false;
        };
        // dim(a cap b) = d <=> dim(a + b) = d + 2.
        Mat::stack(a.mat(), b.mat()).rank() == self.params.d() + 2
    }

    fn route(&self, s: &str, s2: &str, rng: &mut Rng) -> Result<Vec<String>, DpError> {
        let s = name_to_subspace(&self.params, Level::S, s)?;
        let s2 = name_to_subspace(&self.params, Level::S, s2)?;
        let path = route_subspace(&self.params, &s, &s2, rng)?;
        if path.fail {
            return Err(DpError::RouteFail);
        }
        Ok(path.nodes)
    }

    fn random_vertex(&self, rng: &mut Rng) -> Result<String, DpError> {
        Ok(uniform_subspace(&self.params, Level::V, rng).name(&self.params))
    }

    fn random_edge(&self, rng: &mut Rng) -> Result<String, DpError> {
        Ok(uniform_subspace(&self.params, Level::S, rng).name(&self.params))
    }

    fn vertex_names(&self) -> Result<Vec<String>, DpError> {
        if self.params.valid_count() > ENUM_CAP {
            return Err(DpError::Unsupported);
        }
        Ok(enumerate_valid(&self.params, Level::V)
            .iter()
            .map(|r| r.name(&self.params))
            .collect())
    }

    fn edge_names(&self) -> Result<Vec<String>, DpError> {
        if self.params.valid_count() > ENUM_CAP {
            return Err(DpError::Unsupported);
        }
        Ok(enumerate_valid(&self.params, Level::S)
            .iter()
            .map(|r| r.name(&self.params))
            .collect())
    }
}

/// Rank-3 coset complex as a two-layer system: vertices are the color-3
/// cosets, hyperedges the color-2 cosets, with the fast affine neighbor
/// maps giving degree q^2 on both sides.
pub struct KmsD3System {
    params: KmsParams,
}

impl KmsD3System {
    pub fn new(params: KmsParams) -> Result<KmsD3System, DpError> {
        if params.d() != 3 {
            return Err(DpError::Format("rank-3 system needs d = 3".into()));
        }
        Ok(KmsD3System { params })
    }

    pub fn params(&self) -> &KmsParams {
        &self.params
    }

    fn parse(&self, name: &str) -> Result<CanonicalCoset, DpError> {
        Ok(CanonicalCoset::from_name(&self.params, name)?)
    }

    fn split_idx(&self, i: u64) -> (Scalar, Scalar) {
        let q = self.params.q();
        ((i / q) as Scalar, (i % q) as Scalar)
    }

    /// Sorted names of the color-3 cosets inside both hyperedges.
    fn common_vertices(&self, s: &CanonicalCoset, s2: &CanonicalCoset) -> Vec<String> {
        let q = self.params.q();
        let mut out: Vec<String> = (0..q * q)
            .filter_map(|i| {
                let (beta, gamma) = self.split_idx(i);
                let v = d3_fast_nbr(&self.params, s, 3, beta, gamma).ok()?;
                d3_fast_index(&self.params, s2, &v).ok()?;
                Some(v.name(&self.params))
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl HypergraphSystemAccess for KmsD3System {
    fn id(&self) -> String {
        format!("kms-d3-q{}-k{}", self.params.q(), self.params.kappa())
    }

    fn vertex_name_len(&self) -> usize {
        CanonicalCoset::new(
            &self.params,
            &hdx_kms::GroupElem::identity(&self.params),
            ColorSet::singleton(3),
        )
        .map(|c| c.name(&self.params).len())
        .unwrap_or(0)
    }

    fn edge_name_len(&self) -> usize {
        CanonicalCoset::new(
            &self.params,
            &hdx_kms::GroupElem::identity(&self.params),
            ColorSet::singleton(2),
        )
        .map(|c| c.name(&self.params).len())
        .unwrap_or(0)
    }

    fn degree(&self) -> u64 {
        self.params.q() * self.params.q()
    }

    fn up_degree(&self) -> u64 {
        self.params.q() * self.params.q()
    }

    fn edge_degree(&self) -> u64 {
        self.params.q() * self.params.q()
    }

    fn nbr_down(&self, s: &str, i: u64) -> Result<String, DpError> {
        let x = self.parse(s)?;
        let (beta, gamma) = self.split_idx(i);
        Ok(d3_fast_nbr(&self.params, &x, 3, beta, gamma)?.name(&self.params))
    }

    fn nbr_up(&self, v: &str, j: u64) -> Result<String, DpError> {
        let x = self.parse(v)?;
        let (beta, gamma) = self.split_idx(j);
        Ok(d3_fast_nbr(&self.params, &x, 2, beta, gamma)?.name(&self.params))
    }

    fn inv_index(&self, a: &str, b: &str) -> Result<u64, DpError> {
        let a = self.parse(a)?;
        let b = self.parse(b)?;
        let (beta, gamma) = d3_fast_index(&self.params, &a, &b)?;
        Ok(beta as u64 * self.params.q() + gamma as u64)
    }

    fn edge_intersect(&self, s: &str, s2: &str, i: u64) -> Result<String, DpError> {
        let s = self.parse(s)?;
        let s2 = self.parse(s2)?;
        let common = self.common_vertices(&s, &s2);
        common.get(i as usize).cloned().ok_or(DpError::Degenerate)
    }

    fn adjacent(&self, s: &str, s2: &str) -> bool {
        if s == s2 {
            return false;
        }
        let (Ok(a), Ok(b)) = (self.parse(s), self.parse(s2)) else {
            return false;
        };
        !self.common_vertices(&a, &b).is_empty()
    }

    fn route(&self, s: &str, s2: &str, rng: &mut Rng) -> Result<Vec<String>, DpError> {
        let x = self.parse(s)?;
        let y = self.parse(s2)?;
        let path = route_randomized(&self.params, &x, &y, rng)?;
        // Keep the hyperedge layer; the interleaved color-3 nodes realize
        // the decoding-graph edges. The group walk may bounce back through
        // a vertex, so collapse consecutive repeats.
        let mut nodes: Vec<String> = Vec::new();
        for n in path.nodes.into_iter().step_by(2) {
            if nodes.last() != Some(&n) {
                nodes.push(n);
            }
        }
        Ok(nodes)
    }

    fn random_vertex(&self, rng: &mut Rng) -> Result<String, DpError> {
        let g = uniform_sl(&self.params, rng)?;
        Ok(CanonicalCoset::new(&self.params, &g, ColorSet::singleton(3))?.name(&self.params))
    }

    fn random_edge(&self, rng: &mut Rng) -> Result<String, DpError> {
        let g = uniform_sl(&self.params, rng)?;
        Ok(CanonicalCoset::new(&self.params, &g, ColorSet::singleton(2))?.name(&self.params))
    }
}

/// Complete complex: V = [n], S = all k-subsets, names "v<i>" and
/// "s:<i1>.<i2>...". The local toy system for the inner decoder.
pub struct CompleteSystem {
    n: usize,
    k: usize,
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut out: u64 = 1;
    for i in 0..k.min(n - k) {
        out = out * (n - i) as u64 / (i + 1) as u64;
    }
    out
}

/// Lexicographic unranking of a k-subset of {0..n-1}.
fn unrank_subset(n: usize, k: usize, mut r: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut lo = 0;
    for rem in (1..=k).rev() {
        let mut x = lo;
        loop {
            let count = binom(n - 1 - x, rem - 1);
            if r < count {
                break;
            }
            r -= count;
            x += 1;
        }
        out.push(x);
        lo = x + 1;
    }
    out
}

fn rank_subset(n: usize, subset: &[usize]) -> u64 {
    let k = subset.len();
    let mut r = 0;
    let mut lo = 0;
    for (pos, &x) in subset.iter().enumerate() {
        for y in lo..x {
            r += binom(n - 1 - y, k - 1 - pos);
        }
        lo = x + 1;
    }
    r
}

impl CompleteSystem {
    pub fn new(n: usize, k: usize) -> Result<CompleteSystem, DpError> {
        if k == 0 || k > n || n > 64 {
            return Err(DpError::Format(format!("bad complete complex ({n},{k})")));
        }
        Ok(CompleteSystem { n, k })
    }

    fn parse_vertex(&self, v: &str) -> Result<usize, DpError> {
        let i: usize = v
            .strip_prefix('v')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| DpError::Format(format!("bad vertex name {v}")))?;
        if i >= self.n {
            return Err(DpError::Format(format!("vertex {i} out of range")));
        }
        Ok(i)
    }

    fn parse_edge(&self, s: &str) -> Result<Vec<usize>, DpError> {
        let body = s
            .strip_prefix("s:")
            .ok_or_else(|| DpError::Format(format!("bad edge name {s}")))?;
        let mut out = Vec::with_capacity(self.k);
        for part in body.split('.') {
            let i: usize = part
                .parse()
                .map_err(|_| DpError::Format(format!("bad edge name {s}")))?;
            if i >= self.n {
                return Err(DpError::Format(format!("vertex {i} out of range")));
            }
            out.push(i);
        }
        if out.len() != self.k || out.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DpError::Format(format!("edge name {s} not a sorted {}-set", self.k)));
        }
        Ok(out)
    }

    fn edge_name(&self, subset: &[usize]) -> String {
        let parts: Vec<String> = subset.iter().map(|i| i.to_string()).collect();
        format!("s:{}", parts.join("."))
    }
}

impl HypergraphSystemAccess for CompleteSystem {
    fn id(&self) -> String {
        format!("complete-n{}-k{}", self.n, self.k)
    }

    fn vertex_name_len(&self) -> usize {
        format!("v{}", self.n - 1).len()
    }

    fn edge_name_len(&self) -> usize {
        self.edge_name(&(self.n - self.k..self.n).collect::<Vec<_>>()).len()
    }

    fn degree(&self) -> u64 {
        self.k as u64
    }

    fn up_degree(&self) -> u64 {
        binom(self.n - 1, self.k - 1)
    }

    fn edge_degree(&self) -> u64 {
        self.k as u64
    }

    fn nbr_down(&self, s: &str, i: u64) -> Result<String, DpError> {
        let subset = self.parse_edge(s)?;
        subset
            .get(i as usize)
            .map(|&v| format!("v{v}"))
            .ok_or_else(|| DpError::Format(format!("index {i} out of range")))
    }

    fn nbr_up(&self, v: &str, j: u64) -> Result<String, DpError> {
        let v = self.parse_vertex(v)?;
        if j >= self.up_degree() {
            return Err(DpError::Format(format!("index {j} out of range")));
        }
        // Unrank in [n-1], then shift past v.
        let rest = unrank_subset(self.n - 1, self.k - 1, j);
        let mut subset: Vec<usize> =
            rest.iter().map(|&x| if x >= v { x + 1 } else { x }).collect();
        subset.push(v);
        subset.sort_unstable();
        Ok(self.edge_name(&subset))
    }

    fn inv_index(&self, a: &str, b: &str) -> Result<u64, DpError> {
        if a.starts_with("s:") {
            let subset = self.parse_edge(a)?;
            let v = self.parse_vertex(b)?;
            subset
                .iter()
                .position(|&x| x == v)
                .map(|p| p as u64)
                .ok_or(DpError::NotAdjacent)
        } else {
            let v = self.parse_vertex(a)?;
            let subset = self.parse_edge(b)?;
            if !subset.contains(&v) {
                return Err(DpError::NotAdjacent);
            }
            let rest: Vec<usize> = subset
                .iter()
                .filter(|&&x| x != v)
                .map(|&x| if x > v { x - 1 } else { x })
                .collect();
            Ok(rank_subset(self.n - 1, &rest))
        }
    }

    fn edge_intersect(&self, s: &str, s2: &str, i: u64) -> Result<String, DpError> {
        let a = self.parse_edge(s)?;
        let b = self.parse_edge(s2)?;
        let common: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
        common
            .get(i as usize)
            .map(|&v| format!("v{v}"))
            .ok_or(DpError::Degenerate)
    }

    fn adjacent(&self, s: &str, s2: &str) -> bool {
        if s == s2 {
            return false;
        }
        let (Ok(a), Ok(b)) = (self.parse_edge(s), self.parse_edge(s2)) else {
            return false;
        };
        a.iter().any(|x| b.contains(x))
    }

    fn route(&self, _s: &str, _s2: &str, _rng: &mut Rng) -> Result<Vec<String>, DpError> {
        Err(DpError::Unsupported)
    }

    fn random_vertex(&self, rng: &mut Rng) -> Result<String, DpError> {
        Ok(format!("v{}", rng.below_usize(self.n)))
    }

    fn random_edge(&self, rng: &mut Rng) -> Result<String, DpError> {
        let mut subset = rng.sample_distinct(self.n, self.k);
        subset.sort_unstable();
        Ok(self.edge_name(&subset))
    }

    fn vertex_names(&self) -> Result<Vec<String>, DpError> {
        Ok((0..self.n).map(|i| format!("v{i}")).collect())
    }

    fn edge_names(&self) -> Result<Vec<String>, DpError> {
        let total = binom(self.n, self.k);
        if total > ENUM_CAP {
            return Err(DpError::Unsupported);
        }
        Ok((0..total).map(|r| self.edge_name(&unrank_subset(self.n, self.k, r))).collect())
    }
}
