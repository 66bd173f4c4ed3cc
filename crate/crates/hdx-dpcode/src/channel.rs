//! Corruption channels: independent block noise, and the two-planted-
//! messages distribution used by the list-decoding experiments.

use crate::{Codeword, DpError, HypergraphSystemAccess, Message, WordAccess};
use hdx_algebra::Rng;
use std::collections::{BTreeMap, BTreeSet};

/// Keeps each block independently with probability eps, otherwise replaces
/// it with uniform noise. Returns the corrupted word and the kept set.
pub fn corrupt_random(
    w: &Codeword,
    eps: f64,
    rng: &mut Rng,
) -> Result<(Codeword, BTreeSet<String>), DpError> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(DpError::Format(format!("eps {eps} out of range")));
    }
    let mut blocks = BTreeMap::new();
    let mut kept = BTreeSet::new();
    for (name, block) in &w.blocks {
        if rng.chance(eps) {
            kept.insert(name.clone());
            blocks.insert(name.clone(), block.clone());
        } else {
            let noise = (0..block.len()).map(|_| rng.below(w.sigma) as u32).collect();
            blocks.insert(name.clone(), noise);
        }
    }
    Ok((Codeword { sigma: w.sigma, block_len: w.block_len, blocks }, kept))
}

/// The two-planted-messages word on the composed layer: a subset D of the
/// blocks of measure exactly 4 eps carries one of two planted messages
/// (independent fair choice per block), every other block is all-ones.
/// Blocks are computed lazily; only D and the plant assignment are stored.
pub struct TwoPlantedWord<'a> {
    sys: &'a dyn HypergraphSystemAccess,
    f1: &'a Message,
    f2: &'a Message,
    d_set: BTreeSet<String>,
    assignment: BTreeMap<String, u8>,
}

impl<'a> TwoPlantedWord<'a> {
    /// Samples the channel over an explicit block-name list.
    pub fn sample_over(
        sys: &'a dyn HypergraphSystemAccess,
        names: &[String],
        f1: &'a Message,
        f2: &'a Message,
        eps: f64,
        rng: &mut Rng,
    ) -> Result<TwoPlantedWord<'a>, DpError> {
        if !(eps > 0.0 && eps <= 0.25) {
            return Err(DpError::Format(format!("eps {eps} out of range (0, 1/4]")));
        }
        if f1.sigma() != f2.sigma() {
            return Err(DpError::Format("planted messages over different alphabets".into()));
        }
        let d_count = (4.0 * eps * names.len() as f64).round() as usize;
        // Without replacement, measure exactly 4 eps.
        let picks = rng.sample_distinct(names.len(), d_count.min(names.len()));
        let mut d_set = BTreeSet::new();
        let mut assignment = BTreeMap::new();
        for i in picks {
            let name = names[i].clone();
            assignment.insert(name.clone(), 1 + rng.below(2) as u8);
            d_set.insert(name);
        }
        Ok(TwoPlantedWord { sys, f1, f2, d_set, assignment })
    }

    pub fn planted_set(&self) -> &BTreeSet<String> {
        &self.d_set
    }

    /// Which message each D-block carries (1 or 2).
    pub fn assignment(&self) -> &BTreeMap<String, u8> {
        &self.assignment
    }
}

pub fn corrupt_two_messages<'a>(
    sys: &'a dyn HypergraphSystemAccess,
    f1: &'a Message,
    f2: &'a Message,
    eps: f64,
    rng: &mut Rng,
) -> Result<TwoPlantedWord<'a>, DpError> {
    let names = sys.vertex_names()?;
    TwoPlantedWord::sample_over(sys, &names, f1, f2, eps, rng)
}

impl WordAccess for TwoPlantedWord<'_> {
    fn sigma(&self) -> u64 {
        self.f1.sigma()
    }

    fn block_len(&self) -> usize {
        (self.sys.up_degree() * self.sys.degree()) as usize
    }

    fn block(&self, name: &str) -> Vec<u32> {
        self.restrict(name, 0, self.block_len())
    }

    fn restrict(&self, name: &str, offset: usize, len: usize) -> Vec<u32> {
        let f = match self.assignment.get(name) {
            Some(1) => self.f1,
            Some(_) => self.f2,
            None => return vec![1; len],
        };
        crate::CleanTWord { sys: self.sys, f }.restrict(name, offset, len)
    }
}
