//! List recovery by propagation: route from the start hyperedge to one
//! containing the queried vertex, and carry a surviving sub-list across
//! each decoding-graph edge with the shared-sample list tester. The
//! survivors at each step are tracked by index (forward layered dynamic
//! programming; each step's survivors are tested against the next input
//! list).

use crate::tester::list_distance_test_points;
use crate::{DecodeError, DecoderHandle, DecoderParams};
use hdx_algebra::rng::keyed_hash;
use hdx_algebra::Rng;
use hdx_dpcode::{HypergraphSystemAccess, ListAccess};

/// Retained indices per path step; the first layer is the handle's single
/// start index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubList {
    pub path: Vec<String>,
    pub retained: Vec<Vec<usize>>,
}

/// Shared coordinate pairs of two adjacent hyperedges: up to p sampled
/// vertices of the intersection, as (index in s, index in s2).
pub fn intersection_points(
    sys: &dyn HypergraphSystemAccess,
    s: &str,
    s2: &str,
    p: usize,
    rng: &mut Rng,
) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(p);
    // Degenerate cells burn budget; they are charged to the input noise.
    for _ in 0..4 * p {
        if out.len() == p {
            break;
        }
        let idx = rng.below(sys.edge_degree());
        let Ok(v) = sys.edge_intersect(s, s2, idx) else { continue };
        let (Ok(i1), Ok(i2)) = (sys.inv_index(s, &v), sys.inv_index(s2, &v)) else {
            continue;
        };
        out.push((i1 as usize, i2 as usize));
    }
    out
}

/// Failed path attempts are resampled: the route, the target hyperedge,
/// and the sampled evidence are all randomized, so a FAIL on one path says
/// little about the next.
const PATH_ATTEMPTS: usize = 4;

fn propagate_attempt(
    sys: &dyn HypergraphSystemAccess,
    lists: &dyn ListAccess,
    handle: &DecoderHandle,
    params: &DecoderParams,
    v: &str,
    start_list: &[Vec<u32>],
    rng: &mut Rng,
) -> (Option<u32>, SubList) {
    let empty = SubList { path: vec![], retained: vec![] };
    // A hyperedge containing v, uniform over the up-index space.
    let mut s_t = None;
    for _ in 0..params.retries {
        if let Ok(s) = sys.nbr_up(v, rng.below(sys.up_degree())) {
            s_t = Some(s);
            break;
        }
    }
    let Some(s_t) = s_t else { return (None, empty) };
    // The route is randomized and can fail; retry within budget. A
    // persistent failure is a trial failure, not a wrong answer.
    let mut path = None;
    for _ in 0..params.retries {
        if let Ok(p) = sys.route(&handle.s0, &s_t, rng) {
            path = Some(p);
            break;
        }
    }
    let Some(path) = path else { return (None, empty) };
    if path.len() > params.t + 1 {
        return (None, SubList { path, retained: vec![] });
    }

    let mut retained = vec![vec![handle.g]];
    let mut cur_list: Vec<Vec<u32>> = start_list.to_vec();
    let mut cur_idx = vec![handle.g];
    for k in 1..path.len() {
        let next_list = lists.list(&path[k]);
        let points = intersection_points(sys, &path[k - 1], &path[k], params.p, rng);
        // No shared evidence cannot distinguish between multiple candidate
        // entries; guessing here would silently mix classes. A singleton
        // list carries no ambiguity, so it survives an evidence-free step.
        if points.is_empty() && next_list.len() > 1 {
            retained.push(vec![]);
            return (None, SubList { path, retained });
        }
        let cur_fns: Vec<&[u32]> = cur_idx.iter().map(|&i| cur_list[i].as_slice()).collect();
        let kept =
            list_distance_test_points(&cur_fns, &next_list, &points, params.tester_threshold);
        retained.push(kept.clone());
        if kept.is_empty() {
            return (None, SubList { path, retained });
        }
        cur_list = next_list;
        cur_idx = kept;
    }
    // A uniformly random survivor answers the query.
    let g_t = cur_idx[rng.below_usize(cur_idx.len())];
    let last = path.last().unwrap();
    let Ok(pos) = sys.inv_index(last, v) else {
        return (None, SubList { path, retained });
    };
    let sym = cur_list[g_t][pos as usize];
    (Some(sym), SubList { path, retained })
}

fn propagate_inner(
    sys: &dyn HypergraphSystemAccess,
    lists: &dyn ListAccess,
    handle: &DecoderHandle,
    params: &DecoderParams,
    v: &str,
    rng: &mut Rng,
) -> Result<(Option<u32>, SubList), DecodeError> {
    params.validate()?;
    let start_list = lists.list(&handle.s0);
    if handle.g >= start_list.len() {
        return Err(DecodeError::Format(format!(
            "handle index {} outside the start list",
            handle.g
        )));
    }
    let mut last = (None, SubList { path: vec![], retained: vec![] });
    for _ in 0..PATH_ATTEMPTS {
        last = propagate_attempt(sys, lists, handle, params, v, &start_list, rng);
        if last.0.is_some() {
            return Ok(last);
        }
    }
    Ok(last)
}

/// Decodes f(v) from the handle's start list entry, or FAIL (None). The
/// randomness is frozen by (handle seed, v), so a handle is a deterministic
/// local function.
pub fn propagate_recover(
    sys: &dyn HypergraphSystemAccess,
    lists: &dyn ListAccess,
    handle: &DecoderHandle,
    params: &DecoderParams,
    v: &str,
) -> Result<Option<u32>, DecodeError> {
    let mut rng = Rng::new(handle.seed).split(keyed_hash(handle.seed, v.as_bytes()));
    Ok(propagate_inner(sys, lists, handle, params, v, &mut rng)?.0)
}

/// Same, but also returns the per-step survivor indices.
pub fn propagate_recover_trace(
    sys: &dyn HypergraphSystemAccess,
    lists: &dyn ListAccess,
    handle: &DecoderHandle,
    params: &DecoderParams,
    v: &str,
) -> Result<(Option<u32>, SubList), DecodeError> {
    let mut rng = Rng::new(handle.seed).split(keyed_hash(handle.seed, v.as_bytes()));
    propagate_inner(sys, lists, handle, params, v, &mut rng)
}
