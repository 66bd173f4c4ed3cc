//! Neighbor and index circuits of the inclusion graph and the decoding graph.
//!
//! The S-side neighbor map sends index M' (a (d-1)x2 matrix) to the row space
//! of [I_{d-1} | M'] * A_s. Because A_s = [I_{d+1} | M_s], the product already
//! has an identity block in its first d-1 columns, so it is canonical as
//! written: the map is a bijection between indices and valid vertices inside
//! s. The V-side map is the same construction on the dual, carried out in
//! reversed coordinates where duals of valid subspaces are valid.

use crate::{
    idx_to_mat, is_valid_form, mat_to_idx, rev_cols, Level, SubspaceError, SubspaceParams,
    SubspaceRep,
};
use hdx_algebra::Mat;

/// Left-multiplies by [I_k | M'] where M' has the same row count.
fn apply_index(a: &Mat, mprime: &Mat) -> Mat {
    let k = mprime.rows();
    let mut x = Mat::zero(a.domain(), k, a.rows());
    for i in 0..k {
        x.set(i, i, 1);
        for j in 0..mprime.cols() {
            x.set(i, k + j, mprime.get(i, j));
        }
    }
    x.mul(a)
}

/// Reads the index matrix back off a canonical subspace T inside canonical A:
/// T = [I_k | M'] * A forces M' = T[:, k..rows(A)]. Returns None when T does
/// not actually lie inside A's row space with that coefficient form.
fn extract_index(a: &Mat, t: &Mat) -> Option<Mat> {
    let k = t.rows();
    let kk = a.rows();
    let mut mprime = Mat::zero(a.domain(), k, kk - k);
    for i in 0..k {
        for j in k..kk {
            mprime.set(i, j - k, t.get(i, j));
        }
    }
    if &apply_index(a, &mprime) == t {
        Some(mprime)
    } else {
        None
    }
}

pub fn nbr_s_to_v(
    params: &SubspaceParams,
    s: &SubspaceRep,
    idx: u64,
) -> Result<SubspaceRep, SubspaceError> {
    assert_eq!(s.level(), Level::S);
    if idx >= params.nbr_degree() {
        return Err(SubspaceError::Format(format!("index {idx} out of range")));
    }
    let mprime = idx_to_mat(params, params.d() - 1, 2, idx);
    let v = apply_index(s.mat(), &mprime);
    if !is_valid_form(&v) {
        return Err(SubspaceError::Degenerate);
    }
    Ok(SubspaceRep::from_basis(params, Level::V, &v).ok_or(SubspaceError::Degenerate)?)
}

/// The sampler graph of the system is the inclusion graph itself.
pub fn gi_sampler_nbr(
    params: &SubspaceParams,
    s: &SubspaceRep,
    idx: u64,
) -> Result<SubspaceRep, SubspaceError> {
    nbr_s_to_v(params, s, idx)
}

/// Dual of a subspace under the standard bilinear form, in reversed
/// coordinates and canonicalized there. Duals of valid subspaces are always
/// valid in the reversed convention.
fn dual_rev(m: &Mat) -> Mat {
    rev_cols(&m.nullspace()).row_basis()
}

pub fn nbr_v_to_s(
    params: &SubspaceParams,
    v: &SubspaceRep,
    idx: u64,
) -> Result<SubspaceRep, SubspaceError> {
    assert_eq!(v.level(), Level::V);
    if idx >= params.nbr_degree() {
        return Err(SubspaceError::Format(format!("index {idx} out of range")));
    }
    let w = dual_rev(v.mat());
    if w.rows() != params.d() + 1 || !is_valid_form(&w) {
        return Err(SubspaceError::Degenerate);
    }
    let mprime = idx_to_mat(params, params.d() - 1, 2, idx);
    let t_rev = apply_index(&w, &mprime);
    if !is_valid_form(&t_rev) {
        return Err(SubspaceError::Degenerate);
    }
    let s_mat = rev_cols(&t_rev).nullspace();
    SubspaceRep::from_basis(params, Level::S, &s_mat).ok_or(SubspaceError::Degenerate)
}

/// Inverse indexing: idx with nbr(a, idx) = b, for an adjacent pair.
pub fn inv_index(
    params: &SubspaceParams,
    a: &SubspaceRep,
    b: &SubspaceRep,
) -> Result<u64, SubspaceError> {
    match (a.level(), b.level()) {
        (Level::S, Level::V) => {
            let mprime = extract_index(a.mat(), b.mat()).ok_or(SubspaceError::NotAdjacent)?;
            Ok(mat_to_idx(params, &mprime))
        }
        (Level::V, Level::S) => {
            let w = dual_rev(a.mat());
            let t_rev = dual_rev(b.mat());
            if w.rows() != params.d() + 1 || t_rev.rows() != params.d() - 1 {
                return Err(SubspaceError::NotAdjacent);
            }
            let mprime = extract_index(&w, &t_rev).ok_or(SubspaceError::NotAdjacent)?;
            let idx = mat_to_idx(params, &mprime);
            // The forward map must reproduce b exactly.
            match nbr_v_to_s(params, a, idx) {
                Ok(s) if &s == b => Ok(idx),
                _ => Err(SubspaceError::NotAdjacent),
            }
        }
        _ => Err(SubspaceError::NotAdjacent),
    }
}

/// Decoding-graph edge circuit: the idx-th valid vertex inside s and s2.
/// Fails unless the intersection has dimension exactly d and is itself valid.
pub fn edge_intersect(
    params: &SubspaceParams,
    s: &SubspaceRep,
    s2: &SubspaceRep,
    idx: u64,
) -> Result<SubspaceRep, SubspaceError> {
    assert_eq!(s.level(), Level::S);
    assert_eq!(s2.level(), Level::S);
    let deg = params.q().pow(params.d() as u32 - 1);
    if idx >= deg {
        return Err(SubspaceError::Format(format!("index {idx} out of range")));
    }
    let w = Mat::rowspace_intersect(s.mat(), s2.mat());
    if w.rows() != params.d() || !is_valid_form(&w) {
        return Err(SubspaceError::Fail);
    }
    let mprime = idx_to_mat(params, params.d() - 1, 1, idx);
    let v = apply_index(&w, &mprime);
    if !is_valid_form(&v) {
        return Err(SubspaceError::Fail);
    }
    SubspaceRep::from_basis(params, Level::V, &v).ok_or(SubspaceError::Fail)
}
