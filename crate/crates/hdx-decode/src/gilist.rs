//! List decoding of the composed code: build shared-seed lists, emit one
//! decoder handle per entry at a random start hyperedge (twice), and prune
//! the handle list down to a short, pairwise-separated subset.

use crate::propagate::propagate_recover;
use crate::{DecodeError, DecoderHandle, DecoderParams};
use hdx_algebra::Rng;
use hdx_dpcode::{GiLists, HypergraphSystemAccess, WordAccess};

/// Shared list seed plus one handle per start-list entry; the procedure is
/// run twice with independent start hyperedges.
pub fn gi_list_decode(
    sys: &dyn HypergraphSystemAccess,
    w: &dyn WordAccess,
    params: &DecoderParams,
    rng: &mut Rng,
) -> Result<(u64, Vec<DecoderHandle>), DecodeError> {
    params.validate()?;
    if w.block_len() != (sys.up_degree() * sys.degree()) as usize {
        return Err(DecodeError::Format("word is not on the composed layer".into()));
    }
    let shared_seed = rng.next_u64();
    let mut handles = Vec::with_capacity(2 * params.ell_in);
    for _ in 0..2 {
        let s0 = sys.random_edge(rng)?;
        for g in 0..params.ell_in {
            handles.push(DecoderHandle { s0: s0.clone(), g, seed: rng.next_u64() });
        }
    }
    Ok((shared_seed, handles))
}

/// Runs a handle against the composed lists for the given seed.
pub fn decode_handle(
    sys: &dyn HypergraphSystemAccess,
    w: &dyn WordAccess,
    shared_seed: u64,
    handle: &DecoderHandle,
    params: &DecoderParams,
    v: &str,
) -> Result<Option<u32>, DecodeError> {
    let lists = GiLists { sys, w, ell: params.ell_in, seed: shared_seed };
    propagate_recover(sys, &lists, handle, params, v)
}

/// Keeps handles that empirically agree with the word, then greedily (by
/// ascending index) retains a maximal subset pairwise more than
/// 6 delta_out apart on the sampled outputs; the survivors are capped at
/// 2 ell_in / eps.
pub fn prune_decoder_list<E, W>(
    handles: Vec<DecoderHandle>,
    points: &[String],
    mut decode: E,
    mut agrees: W,
    params: &DecoderParams,
) -> Vec<DecoderHandle>
where
    E: FnMut(&DecoderHandle, &str) -> Option<u32>,
    W: FnMut(&str, u32) -> bool,
{
    let outputs: Vec<Vec<Option<u32>>> = handles
        .iter()
        .map(|h| points.iter().map(|v| decode(h, v)).collect())
        .collect();
    let n = points.len().max(1) as f64;
    // Agreement filter: the decoded function must match the word on a
    // non-trivial fraction of the sampled coordinates.
    let passing: Vec<usize> = (0..handles.len())
        .filter(|&i| {
            let good = outputs[i]
                .iter()
                .zip(points)
                .filter(|(o, v)| matches!(o, Some(sym) if agrees(v, *sym)))
                .count();
            good as f64 / n >= params.eps / 2.0
        })
        .collect();
    let dist = |a: &[Option<u32>], b: &[Option<u32>]| -> f64 {
        let bad = a
            .iter()
            .zip(b)
            .filter(|(x, y)| match (x, y) {
                (Some(x), Some(y)) => x != y,
                (None, None) => false,
                _ => true,
            })
            .count();
        bad as f64 / n
    };
    let mut kept: Vec<usize> = Vec::new();
    for &i in &passing {
        if kept.iter().all(|&k| dist(&outputs[i], &outputs[k]) > 6.0 * params.delta_out) {
            kept.push(i);
        }
    }
    let cap = (2.0 * params.ell_in as f64 / params.eps).floor() as usize;
    kept.truncate(cap);
    kept.into_iter().map(|i| handles[i].clone()).collect()
}
