//! Shared-seed list composition: the candidate list at a hyperedge s is
//! built by reading the composed-layer word at a few sampler neighbors of s
//! and restricting each to s. The neighbor choice is a deterministic
//! function of (seed, s), so every decoder sees the same lists.

use crate::{DpError, HypergraphSystemAccess, ListAccess, ListWord, WordAccess};
use hdx_algebra::rng::keyed_hash;
use hdx_algebra::Rng;

/// Lazy composed lists over a composed-layer word.
pub struct GiLists<'a> {
    pub sys: &'a dyn HypergraphSystemAccess,
    pub w: &'a dyn WordAccess,
    pub ell: usize,
    pub seed: u64,
}

impl ListAccess for GiLists<'_> {
    fn sigma(&self) -> u64 {
        self.w.sigma()
    }

    fn ell(&self) -> usize {
        self.ell
    }

    fn list(&self, s: &str) -> Vec<Vec<u32>> {
        let deg = self.sys.degree() as usize;
        let mut rng = Rng::new(self.seed).split(keyed_hash(self.seed, s.as_bytes()));
        let mut out = Vec::with_capacity(self.ell);
        for _ in 0..self.ell {
            let idx = rng.below(self.sys.degree());
            let entry = match self.sys.nbr_down(s, idx) {
                // Degenerate sampler neighbors answer with the filler.
                Err(_) => vec![0; deg],
                Ok(r) => match self.sys.inv_index(&r, s) {
                    Err(_) => vec![0; deg],
                    Ok(j) => self.w.restrict(&r, j as usize * deg, deg),
                },
            };
            out.push(entry);
        }
        out
    }
}

/// Materializes the composed lists for every named hyperedge.
pub fn gi_compose_lists(
    sys: &dyn HypergraphSystemAccess,
    w: &dyn WordAccess,
    ell: usize,
    shared_seed: u64,
    edges: &[String],
) -> Result<ListWord, DpError> {
    let lazy = GiLists { sys, w, ell, seed: shared_seed };
    let lists = edges.iter().map(|s| (s.clone(), lazy.list(s))).collect();
    ListWord::new(w.sigma(), ell, lists)
}
