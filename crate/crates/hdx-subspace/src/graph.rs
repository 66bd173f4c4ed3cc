//! Exhaustively built joint distributions for sampler-quality measurements.
//!
//! Each builder returns (left label, right label, probability) triples that
//! sum to 1; the spectral measurement itself lives in the harness. These are
//! only meant for desk-scale parameters where the hyperedge set fits in
//! memory.

use crate::{enumerate_valid, nbr_s_to_v, Level, SubspaceParams, SubspaceRep};
use hdx_algebra::Mat;
use std::collections::HashMap;

/// Joint distribution of the bipartite experiment behind the intersection
/// graph of hyperedge s: sample a uniform decoding-graph neighbor s' of s,
/// take t = s cap s', then a uniform valid vertex inside t.
pub fn intersection_graph_joint(
    params: &SubspaceParams,
    s: &SubspaceRep,
) -> Vec<(String, String, f64)> {
    let verts = enumerate_valid(params, Level::V);
    // t -> number of neighbors s' realizing it.
    let mut t_mult: HashMap<String, (Mat, u64)> = HashMap::new();
    for i in 0..params.valid_count() {
        let s2 = crate::subspace_from_counter(params, Level::S, i);
        if &s2 == s {
            continue;
        }
        let t = Mat::rowspace_intersect(s.mat(), s2.mat());
        if t.rows() != params.d() {
            continue;
        }
        let key = t.to_hex();
        t_mult.entry(key).or_insert((t, 0)).1 += 1;
    }
    let total: u64 = t_mult.values().map(|&(_, c)| c).sum();
    let mut out = Vec::new();
    for (key, (t, count)) in &t_mult {
        let inside: Vec<&SubspaceRep> = verts
            .iter()
            .filter(|v| t.row_space_contains_all(v.mat()))
            .collect();
        if inside.is_empty() {
            continue;
        }
        let w = *count as f64 / total as f64 / inside.len() as f64;
        for v in inside {
            out.push((key.clone(), v.name(params), w));
        }
    }
    // Intersections with no valid vertex abort the experiment; condition on
    // the complement so the result is a distribution.
    let mass: f64 = out.iter().map(|&(_, _, w)| w).sum();
    for entry in &mut out {
        entry.2 /= mass;
    }
    out
}

/// Joint distribution of the inclusion-graph experiment: uniform valid
/// hyperedge, uniform neighbor index.
pub fn inclusion_graph_joint(params: &SubspaceParams) -> Vec<(String, String, f64)> {
    let n = params.valid_count();
    let deg = params.nbr_degree();
    let w = 1.0 / (n as f64 * deg as f64);
    let mut out = Vec::with_capacity((n * deg) as usize);
    for i in 0..n {
        let s = crate::subspace_from_counter(params, Level::S, i);
        let sname = s.name(params);
        for idx in 0..deg {
            let v = nbr_s_to_v(params, &s, idx).expect("neighbor map is total");
            out.push((sname.clone(), v.name(params), w));
        }
    }
    out
}
