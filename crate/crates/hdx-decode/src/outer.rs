//! Outer decoder: route through the subgraph of vertices whose local lists
//! sparsify cleanly at level j, and at each hop pick the unique next-list
//! entry close to the carried one on shared sampled points. Any ambiguity
//! short of a tie, or a routing failure, is a FAIL rather than a guess.

use crate::separate::{sep_density, well_separate_dists};
use crate::DecodeError;
use hdx_algebra::rng::keyed_hash;
use hdx_algebra::Rng;
use std::cell::RefCell;
use std::collections::BTreeMap;

/// What the outer decoder needs from a concrete geometry: per-vertex lists
/// of point functions, internal routing under a vertex predicate, and point
/// samplers (global, or restricted to a shared neighborhood of two
/// vertices).
pub trait OuterLayer {
    /// Path of vertex names from u0 to u1 staying inside the predicate,
    /// or None when routing fails.
    fn route_internal(
        &self,
        u0: &str,
        u1: &str,
        pred: &dyn Fn(&str) -> bool,
        rng: &mut Rng,
    ) -> Option<Vec<String>>;
    /// A point on which both u and u2's list entries are defined.
    fn shared_point(&self, u: &str, u2: &str, rng: &mut Rng) -> u64;
    /// A point in u's own domain.
    fn sample_point(&self, u: &str, rng: &mut Rng) -> u64;
    fn list_len(&self, u: &str) -> usize;
    /// Value of u's g-th list entry at a point.
    fn eval(&self, u: &str, g: usize, point: u64) -> u32;
    /// A vertex whose domain contains the point.
    fn locate(&self, point: u64, rng: &mut Rng) -> String;
}

/// Empirical pairwise distances of u's list on p self-sampled points.
fn local_dists(layer: &dyn OuterLayer, u: &str, p: usize, rng: &mut Rng) -> Vec<Vec<f64>> {
    let n = layer.list_len(u);
    let points: Vec<u64> = (0..p).map(|_| layer.sample_point(u, rng)).collect();
    let evals: Vec<Vec<u32>> = (0..n)
        .map(|g| points.iter().map(|&x| layer.eval(u, g, x)).collect())
        .collect();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..i {
            let bad = evals[i]
                .iter()
                .zip(&evals[j])
                .filter(|(a, b): &(&u32, &u32)| a != b)
                .count();
            let dist = bad as f64 / p.max(1) as f64;
            d[i][j] = dist;
            d[j][i] = dist;
        }
    }
    d
}

/// One hop of the carried-entry selection: every survivor under the
/// distance threshold and the subset tied for the minimum.
#[derive(Debug, Clone)]
pub struct OuterStep {
    pub vertex: String,
    pub passing: Vec<usize>,
    pub tied_best: Vec<usize>,
    pub chosen: usize,
}

/// Decodes the j-th-level value at `point` carried from entry g at u0, or
/// None (FAIL). A vertex participates only when its list sparsifies without
/// FAIL at level j; each hop must find at least one close next entry, and
/// exact ties are broken uniformly.
pub fn outer_decode(
    layer: &dyn OuterLayer,
    u0: &str,
    g: usize,
    point: u64,
    j: usize,
    delta0: f64,
    p: usize,
    rng: &mut Rng,
) -> Result<Option<u32>, DecodeError> {
    Ok(outer_decode_trace(layer, u0, g, point, j, delta0, p, rng)?.0)
}

/// Same, with the per-hop selection record (empty on FAIL before the first
/// hop).
pub fn outer_decode_trace(
    layer: &dyn OuterLayer,
    u0: &str,
    g: usize,
    point: u64,
    j: usize,
    delta0: f64,
    p: usize,
    rng: &mut Rng,
) -> Result<(Option<u32>, Vec<OuterStep>), DecodeError> {
    if j == 0 || delta0 <= 0.0 || p == 0 {
        return Err(DecodeError::Format("need j >= 1, delta0 > 0, p > 0".into()));
    }
    if g >= layer.list_len(u0) {
        return Err(DecodeError::Format(format!("entry {g} outside the start list")));
    }
    let base_seed = rng.next_u64();
    // Sparsification verdicts are cached: the predicate must answer the
    // same way every time routing probes a vertex.
    let cache: RefCell<BTreeMap<String, Option<Vec<usize>>>> = RefCell::new(BTreeMap::new());
    let separate = |u: &str| -> Option<Vec<usize>> {
        if let Some(v) = cache.borrow().get(u) {
            return v.clone();
        }
        let mut local = Rng::new(base_seed).split(keyed_hash(base_seed, u.as_bytes()));
        let out = well_separate_dists(&local_dists(layer, u, p, &mut local), j, delta0);
        cache.borrow_mut().insert(u.to_string(), out.clone());
        out
    };
    let pred = |u: &str| separate(u).is_some();
    if !pred(u0) {
        return Ok((None, vec![]));
    }
    let u_t = layer.locate(point, rng);
    if !pred(&u_t) {
        return Ok((None, vec![]));
    }
    let Some(path) = layer.route_internal(u0, &u_t, &pred, rng) else {
        return Ok((None, vec![]));
    };
    let threshold = 3.0 * sep_density(delta0, j);
    let mut cur_u = path[0].clone();
    let mut cur_g = g;
    let mut steps: Vec<OuterStep> = Vec::new();
    for next_u in path.iter().skip(1) {
        let Some(survivors) = separate(next_u) else { return Ok((None, steps)) };
        let points: Vec<u64> =
            (0..p).map(|_| layer.shared_point(&cur_u, next_u, rng)).collect();
        let mut passing: Vec<usize> = Vec::new();
        let mut best: Vec<usize> = Vec::new();
        let mut best_bad = usize::MAX;
        for &cand in &survivors {
            let bad = points
                .iter()
                .filter(|&&x| layer.eval(&cur_u, cur_g, x) != layer.eval(next_u, cand, x))
                .count();
            if (bad as f64) < threshold * points.len() as f64 {
                passing.push(cand);
                match bad.cmp(&best_bad) {
                    std::cmp::Ordering::Less => {
                        best = vec![cand];
                        best_bad = bad;
                    }
                    std::cmp::Ordering::Equal => best.push(cand),
                    std::cmp::Ordering::Greater => {}
                }
            }
        }
        if best.is_empty() {
            return Ok((None, steps));
        }
        // Exact empirical ties only; the separation scale makes a genuine
        // tie between distinct survivors vanishingly rare.
        cur_g = best[rng.below_usize(best.len())];
        steps.push(OuterStep {
            vertex: next_u.clone(),
            passing,
            tied_best: best,
            chosen: cur_g,
        });
        cur_u = next_u.clone();
    }
    Ok((Some(layer.eval(&cur_u, cur_g, point)), steps))
}
