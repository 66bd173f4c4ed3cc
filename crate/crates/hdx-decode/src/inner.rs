//! Local inner decoder: starting from a candidate hyperedge s, repeatedly
//! sample another hyperedge through the queried vertex, accept it when its
//! block is close to s's block on their (nonempty) intersection, and read
//! the answer off the accepted block. Falls back to the fixed filler
//! symbol when no candidate passes.

use crate::propagate::intersection_points;
use hdx_algebra::Rng;
use hdx_dpcode::{HypergraphSystemAccess, WordAccess};

pub fn inner_decode(
    sys: &dyn HypergraphSystemAccess,
    w: &dyn WordAccess,
    s: &str,
    v: &str,
    delta_in: f64,
    eps: f64,
    rng: &mut Rng,
) -> u32 {
    let loops = (4.0 * (1.0 / delta_in).ln() / eps).ceil() as usize;
    // Sample count per distance check, at the 1/delta^2 scale.
    let m = ((1.0 / delta_in).ln() / (delta_in * delta_in)).ceil() as usize;
    let m = m.min(4096);
    let block_s = w.block(s);
    for _ in 0..loops {
        let Ok(s2) = sys.nbr_up(v, rng.below(sys.up_degree())) else { continue };
        if s2 == s {
            continue;
        }
        // (i) an empty intersection is rejected outright.
        let points = intersection_points(sys, s, &s2, m, rng);
        if points.is_empty() {
            continue;
        }
        // (ii) the blocks must agree up to 4 delta_in on the overlap.
        let block_s2 = w.block(&s2);
        let bad = points.iter().filter(|&&(i, j)| block_s[i] != block_s2[j]).count();
        if (bad as f64) < 4.0 * delta_in * points.len() as f64 {
            if let Ok(pos) = sys.inv_index(&s2, v) {
                return block_s2[pos as usize];
            }
        }
    }
    0
}
