//! Truncated repetition: length adaptation between message sizes. The
//! message is tiled up to the target length; the decode side maps a source
//! index to a uniformly random repetition slot.

use crate::DpError;
use hdx_algebra::Rng;

/// f repeated and truncated to k_big symbols.
pub fn rep_pad(k_small: usize, k_big: usize, f: &[u32]) -> Result<Vec<u32>, DpError> {
    if f.len() != k_small || k_small == 0 || k_small > k_big {
        return Err(DpError::Format(format!(
            "rep_pad wants |f| = k_small <= k_big, got {} / {k_small} / {k_big}",
            f.len()
        )));
    }
    Ok((0..k_big).map(|i| f[i % k_small]).collect())
}

/// Number of encoded positions carrying source index v.
pub fn slot_multiplicity(k_small: usize, k_big: usize, v: usize) -> usize {
    k_big / k_small + usize::from(v < k_big % k_small)
}

/// A uniformly random encoded position carrying source index v.
pub fn rep_decode_sample(
    k_small: usize,
    k_big: usize,
    v: usize,
    rng: &mut Rng,
) -> Result<usize, DpError> {
    if v >= k_small || k_small > k_big {
        return Err(DpError::Format(format!("bad repetition query {v} / {k_small} / {k_big}")));
    }
    let slot = rng.below_usize(slot_multiplicity(k_small, k_big, v));
    Ok(v + slot * k_small)
}
