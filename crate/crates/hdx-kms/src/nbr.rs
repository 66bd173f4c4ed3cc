//! Neighbor circuits on the coset complex.
//!
//! Moving to a coarser color keeps the representative; moving to a finer
//! color multiplies lex_min of the coset by an enumerated cross-coset
//! representative. At d = 3 both directions also have closed forms: the
//! cross-coset representatives of K_{{k,j}} inside K_j are the two-parameter
//! matrices A_{kj in j}(beta, gamma), and the inverse map recovers the
//! parameters from one small linear solve.

use crate::canon::mat_key;
use crate::subgroup::{in_subgroup_mat, index_sets, random_subgroup_elem, subgroup_enumerate};
use crate::{CanonicalCoset, ColorSet, GroupElem, KmsError, KmsParams};
use hdx_algebra::{Mat, Rng, Scalar};

/// The unique K_C2-coset containing x; C2 must be a subset of x's color.
pub fn nbr_down(
    params: &KmsParams,
    x: &CanonicalCoset,
    c2: &ColorSet,
) -> Result<CanonicalCoset, KmsError> {
    if !c2.is_subset_of(x.color()) {
        return Err(KmsError::ColorUnsupported);
    }
    CanonicalCoset::new(params, x.rep(), *c2)
}

/// Number of K_C2-cosets inside a K_C1-coset, C1 a subset of C2.
pub fn nbr_up_degree(params: &KmsParams, c1: &ColorSet, c2: &ColorSet) -> u64 {
    crate::subgroup::subgroup_size(params, c1) / crate::subgroup::subgroup_size(params, c2)
}

/// The idx-th K_C2-coset contained in x, where x's color is a subset of C2.
/// Distinct idx hit each contained coset exactly once.
pub fn nbr_up(
    params: &KmsParams,
    x: &CanonicalCoset,
    c2: &ColorSet,
    idx: u64,
) -> Result<CanonicalCoset, KmsError> {
    if !x.color().is_subset_of(c2) {
        return Err(KmsError::ColorUnsupported);
    }
    if idx >= nbr_up_degree(params, x.color(), c2) {
        return Err(KmsError::IndexRange);
    }
    // Cross-coset representatives of K_C2 inside K_C1, in a fixed order.
    let mut reps: Vec<(Vec<Scalar>, GroupElem)> = Vec::new();
    for h in subgroup_enumerate(params, x.color())? {
        let r = crate::lex_min(params, &h, c2)?;
        let key = mat_key(params, r.mat());
        if !reps.iter().any(|(k, _)| *k == key) {
            reps.push((key, r));
        }
    }
    reps.sort_by(|(a, _), (b, _)| a.cmp(b));
    let base = crate::lex_min(params, x.rep(), x.color())?;
    CanonicalCoset::new(params, &base.mul(&reps[idx as usize].1), *c2)
}

/// Cross-coset representative A_{kj in j}(beta, gamma) at d = 3: the two
/// free positions, with their t carriers, for each (target k, source j).
fn d3_rep_positions(k: usize, j: usize) -> [(usize, usize, bool); 2] {
    match (k, j) {
        (1, 3) => [(1, 2, false), (1, 3, false)],
        (2, 3) => [(1, 3, false), (2, 3, false)],
        (3, 2) => [(3, 1, true), (3, 2, true)],
        (3, 1) => [(2, 1, true), (3, 1, true)],
        (1, 2) => [(1, 2, false), (3, 2, true)],
        (2, 1) => [(2, 1, true), (2, 3, false)],
        _ => panic!("colors must be distinct in 1..=3"),
    }
}

pub(crate) fn d3_rep_matrix(
    params: &KmsParams,
    k: usize,
    j: usize,
    beta: Scalar,
    gamma: Scalar,
) -> Mat {
    let ring = params.ring();
    let t = ring.gen_t();
    let mut m = Mat::identity(ring, 3);
    for (&(a, b, lower), &v) in d3_rep_positions(k, j).iter().zip([beta, gamma].iter()) {
        m.set(a - 1, b - 1, if lower { ring.mul(t, v) } else { v });
    }
    m
}

/// Closed-form K_k-neighbor of a K_j-vertex at d = 3.
pub fn d3_fast_nbr(
    params: &KmsParams,
    x: &CanonicalCoset,
    k: usize,
    beta: Scalar,
    gamma: Scalar,
) -> Result<CanonicalCoset, KmsError> {
    let j = x
        .color()
        .as_singleton()
        .filter(|_| params.d() == 3)
        .ok_or(KmsError::ColorUnsupported)?;
    if k == j || k == 0 || k > 3 {
        return Err(KmsError::ColorUnsupported);
    }
    let prod = x.rep().mat().mul(&d3_rep_matrix(params, k, j, beta, gamma));
    CanonicalCoset::new(params, &GroupElem::from_unchecked(prod), ColorSet::singleton(k))
}

/// Inverse of d3_fast_nbr: the (beta, gamma) with
/// canonize(y)^{-1} canonize(x) A_{kj in j}(beta, gamma) in K_k, found by a
/// linear solve over F_q. NotAdjacent when no parameters work.
pub fn d3_fast_index(
    params: &KmsParams,
    x: &CanonicalCoset,
    y: &CanonicalCoset,
) -> Result<(Scalar, Scalar), KmsError> {
    let j = x
        .color()
        .as_singleton()
        .filter(|_| params.d() == 3)
        .ok_or(KmsError::ColorUnsupported)?;
    let k = y.color().as_singleton().ok_or(KmsError::ColorUnsupported)?;
    if k == j {
        return Err(KmsError::ColorUnsupported);
    }
    let ring = params.ring();
    let base = params.base_field();
    let t = ring.gen_t();
    let kappa = params.kappa();
    let m = y.rep().inv().mat().mul(x.rep().mat());
    // M (I + beta P1 + gamma P2) in K_k, linear in (beta, gamma): P1 P2 = 0
    // for every position pair in the table, so the product is exactly affine.
    let vars: Vec<(usize, usize, Scalar)> = d3_rep_positions(k, j)
        .iter()
        .map(|&(a, b, lower)| (a - 1, b - 1, if lower { t } else { ring.one() }))
        .collect();
    let (uk, lk) = index_sets(3, &ColorSet::singleton(k));
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            let zero_coeffs: Vec<usize> = if r == c {
                (0..kappa).collect()
            } else if uk.contains(&(r + 1, c + 1)) {
                (1..kappa).collect()
            } else if lk.contains(&(r + 1, c + 1)) {
                (0..kappa).filter(|&i| i != 1).collect()
            } else {
                (0..kappa).collect()
            };
            for i in zero_coeffs {
                let mut row = Vec::with_capacity(2);
                for &(va, vb, carrier) in &vars {
                    let w = if vb == c { ring.mul(m.get(r, va), carrier) } else { 0 };
                    row.push(ring.coeff(w, i));
                }
                let mut target = base.neg(ring.coeff(m.get(r, c), i));
                if r == c && i == 0 {
                    target = base.add(target, 1);
                }
                rows.push(row);
                rhs.push(vec![target]);
            }
        }
    }
    let a = Mat::from_rows(base, &rows);
    let b = Mat::from_rows(base, &rhs);
    let x_sol = Mat::solve_right(&a, &b).ok_or(KmsError::NotAdjacent)?;
    let (beta, gamma) = (x_sol.get(0, 0), x_sol.get(1, 0));
    debug_assert!(in_subgroup_mat(
        params,
        &m.mul(&d3_rep_matrix(params, k, j, beta, gamma)),
        &ColorSet::singleton(k)
    ));
    Ok((beta, gamma))
}

/// Uniform C2-colored face in the link of x (C2 disjoint from x's color):
/// multiply a representative by a uniform element of x's subgroup.
pub fn link_sample(
    params: &KmsParams,
    x: &CanonicalCoset,
    c2: &ColorSet,
    rng: &mut Rng,
) -> Result<CanonicalCoset, KmsError> {
    if !c2.is_disjoint(x.color()) {
        return Err(KmsError::ColorUnsupported);
    }
    let h = random_subgroup_elem(params, x.color(), rng);
    CanonicalCoset::new(params, &x.rep().mul(&h), *c2)
}

/// All C2-colored faces in the link of x; needs |K_{x.color}| under the cap.
pub fn link_enumerate(
    params: &KmsParams,
    x: &CanonicalCoset,
    c2: &ColorSet,
) -> Result<Vec<CanonicalCoset>, KmsError> {
    let mut out: Vec<CanonicalCoset> = Vec::new();
    for h in subgroup_enumerate(params, x.color())? {
        let y = CanonicalCoset::new(params, &x.rep().mul(&h), *c2)?;
        if !out.contains(&y) {
            out.push(y);
        }
    }
    Ok(out)
}
