//! Basis-exchange routing on the decoding graph.
//!
//! A path from hyperedge u to u' is built by fixing a uniformly random
//! ordered basis of the intersection, extending it uniformly to bases of u
//! and of u', and then swapping one extension vector per step. Consecutive
//! spaces share d of their d+1 basis vectors, so every step is an edge of
//! the decoding graph; the length is (d+1) - dim(intersection) <= d - 1.

use crate::{Level, SubspaceError, SubspaceParams, SubspaceRep};
use hdx_algebra::{Mat, Rng, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteKind {
    Deterministic,
    Randomized,
    SubsetInternal,
}

#[derive(Debug, Clone)]
pub struct RoutePath {
    /// Hyperedge names, endpoints included. Empty when fail is set.
    pub nodes: Vec<String>,
    pub kind: RouteKind,
    /// Set when a path step landed outside the valid encoding.
    pub fail: bool,
}

impl RoutePath {
    pub fn len(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() <= 1
    }
}

const ATTEMPTS: usize = 64;

/// Uniformly random invertible k x k matrix, by rejection.
fn random_invertible(dom: &hdx_algebra::Domain, k: usize, rng: &mut Rng) -> Option<Mat> {
    for _ in 0..ATTEMPTS {
        let m = Mat::random(dom, k, k, rng);
        if m.det_inv().0 != 0 {
            return Some(m);
        }
    }
    None
}

/// Uniform vector of the row space of `basis` that extends the rank of `cur`.
fn random_extending_vector(basis: &Mat, cur: &Mat, rng: &mut Rng) -> Option<Vec<Scalar>> {
    let dom = basis.domain();
    for _ in 0..ATTEMPTS {
        let coeff = Mat::random(dom, 1, basis.rows(), rng);
        let v = coeff.mul(basis);
        let ext = Mat::stack(cur, &v);
        if ext.rank() == cur.rank() + 1 {
            return Some(v.row(0).to_vec());
        }
    }
    None
}

pub fn route_subspace(
    params: &SubspaceParams,
    s: &SubspaceRep,
    s2: &SubspaceRep,
    rng: &mut Rng,
) -> Result<RoutePath, SubspaceError> {
    assert_eq!(s.level(), Level::S);
    assert_eq!(s2.level(), Level::S);
    let kind = RouteKind::Randomized;
    if s == s2 {
        return Ok(RoutePath { nodes: vec![s.name(params)], kind, fail: false });
    }
    let dom = params.domain();
    let inter = Mat::rowspace_intersect(s.mat(), s2.mat());
    let k = inter.rows();
    let m = params.d() + 1 - k;

    'attempt: for _ in 0..ATTEMPTS {
        let r = random_invertible(dom, k, rng).ok_or(SubspaceError::Sampling)?;
        let c = r.mul(&inter);
        // Uniform extensions of c to ordered bases of each endpoint.
        let mut xs = Vec::with_capacity(m);
        let mut ys = Vec::with_capacity(m);
        let mut cur_x = c.clone();
        let mut cur_y = c.clone();
        for _ in 0..m {
            let x = random_extending_vector(s.mat(), &cur_x, rng)
                .ok_or(SubspaceError::Sampling)?;
            cur_x = Mat::stack(&cur_x, &Mat::from_rows(dom, &[x.clone()]));
            xs.push(x);
            let y = random_extending_vector(s2.mat(), &cur_y, rng)
                .ok_or(SubspaceError::Sampling)?;
            cur_y = Mat::stack(&cur_y, &Mat::from_rows(dom, &[y.clone()]));
            ys.push(y);
        }
        // Step j swaps x_j for y_j.
        let mut spaces = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let mut rows: Vec<Vec<Scalar>> = (0..k).map(|i| c.row(i).to_vec()).collect();
            rows.extend(ys[..j].iter().cloned());
            rows.extend(xs[j..].iter().cloned());
            let space = Mat::from_rows(dom, &rows);
            if space.rank() != params.d() + 1 {
                continue 'attempt;
            }
            spaces.push(space);
        }
        // Consecutive spaces must intersect in dimension exactly d.
        for j in 0..m {
            if Mat::stack(&spaces[j], &spaces[j + 1]).rank() != params.d() + 2 {
                continue 'attempt;
            }
        }
        let mut nodes = Vec::with_capacity(m + 1);
        for space in &spaces {
            match SubspaceRep::from_basis(params, Level::S, space) {
                Some(rep) => nodes.push(rep.name(params)),
                None => return Ok(RoutePath { nodes: vec![], kind, fail: true }),
            }
        }
        debug_assert_eq!(nodes[0], s.name(params));
        debug_assert_eq!(nodes[m], s2.name(params));
        return Ok(RoutePath { nodes, kind, fail: false });
    }
    Err(SubspaceError::Sampling)
}
