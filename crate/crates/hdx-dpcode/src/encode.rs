//! Direct product encoding: the block at hyperedge s is the message read
//! off along s's down-neighbors. The composed layer stacks, per vertex r,
//! the blocks of every hyperedge containing r (the multiset t_r), which is
//! what the list-composition sampler reads.

use crate::{HypergraphSystemAccess, Message, WordAccess};

/// One symbol of Enc^f: f at the i-th vertex of s, with the fixed filler 0
/// for degenerate cells.
pub fn dp_encode(sys: &dyn HypergraphSystemAccess, f: &Message, s: &str, i: u64) -> u32 {
    match sys.nbr_down(s, i) {
        Ok(v) => f.value(&v),
        Err(_) => 0,
    }
}

pub fn dp_encode_block(sys: &dyn HypergraphSystemAccess, f: &Message, s: &str) -> Vec<u32> {
    (0..sys.degree()).map(|i| dp_encode(sys, f, s, i)).collect()
}

/// Lazy clean word on the hyperedge layer.
pub struct CleanSWord<'a> {
    pub sys: &'a dyn HypergraphSystemAccess,
    pub f: &'a Message,
}

impl WordAccess for CleanSWord<'_> {
    fn sigma(&self) -> u64 {
        self.f.sigma()
    }

    fn block_len(&self) -> usize {
        self.sys.degree() as usize
    }

    fn block(&self, name: &str) -> Vec<u32> {
        dp_encode_block(self.sys, self.f, name)
    }
}

/// Lazy clean word on the composed layer: the block at vertex r is the
/// concatenation over j of Enc^f(nbr_up(r, j)), with zero-filled sub-blocks
/// at degenerate up-neighbors.
pub struct CleanTWord<'a> {
    pub sys: &'a dyn HypergraphSystemAccess,
    pub f: &'a Message,
}

impl WordAccess for CleanTWord<'_> {
    fn sigma(&self) -> u64 {
        self.f.sigma()
    }

    fn block_len(&self) -> usize {
        (self.sys.up_degree() * self.sys.degree()) as usize
    }

    fn block(&self, name: &str) -> Vec<u32> {
        self.restrict(name, 0, self.block_len())
    }

    fn restrict(&self, name: &str, offset: usize, len: usize) -> Vec<u32> {
        let deg = self.sys.degree() as usize;
        let mut out = Vec::with_capacity(len);
        let mut cached: Option<(usize, Result<String, crate::DpError>)> = None;
        for p in offset..offset + len {
            let j = p / deg;
            if cached.as_ref().map(|c| c.0) != Some(j) {
                cached = Some((j, self.sys.nbr_up(name, j as u64)));
            }
            let sym = match &cached.as_ref().unwrap().1 {
                Ok(s) => dp_encode(self.sys, self.f, s, (p % deg) as u64),
                Err(_) => 0,
            };
            out.push(sym);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sys::{CompleteSystem, SubspaceSystem};
    use hdx_subspace::SubspaceParams;
    use std::collections::BTreeMap;

    #[test]
    fn encoding_reads_off_the_message() {
        // V = {0,1,2}, S = all 2-subsets, f = (0,1,1).
        let sys = CompleteSystem::new(3, 2).unwrap();
        let mut vals = BTreeMap::new();
        vals.insert("v0".to_string(), 0u32);
        vals.insert("v1".to_string(), 1);
        vals.insert("v2".to_string(), 1);
        let f = Message::dense(2, vals).unwrap();
        assert_eq!(dp_encode_block(&sys, &f, "s:0.1"), vec![0, 1]);
        assert_eq!(dp_encode_block(&sys, &f, "s:1.2"), vec![1, 1]);
    }

    #[test]
    fn constant_message_gives_constant_blocks() {
        let sys = CompleteSystem::new(6, 3).unwrap();
        let vals = (0..6).map(|i| (format!("v{i}"), 3u32)).collect();
        let f = Message::dense(5, vals).unwrap();
        for s in sys.edge_names().unwrap() {
            assert_eq!(dp_encode_block(&sys, &f, &s), vec![3, 3, 3]);
        }
    }

    #[test]
    fn restriction_consistency_on_shared_vertices() {
        // Enc^f(s) and Enc^f(s') agree wherever the hyperedges overlap.
        let sys = SubspaceSystem::new(SubspaceParams::new(2, 2).unwrap());
        let f = Message::seeded(4, 99).unwrap();
        let edges = sys.edge_names().unwrap();
        for s in &edges {
            for s2 in &edges {
                if !sys.adjacent(s, s2) {
                    continue;
                }
                for i in 0..sys.edge_degree() {
                    let Ok(v) = sys.edge_intersect(s, s2, i) else { continue };
                    let b1 = dp_encode_block(&sys, &f, s);
                    let b2 = dp_encode_block(&sys, &f, s2);
                    let i1 = sys.inv_index(s, &v).unwrap() as usize;
                    let i2 = sys.inv_index(s2, &v).unwrap() as usize;
                    assert_eq!(b1[i1], b2[i2]);
                }
            }
        }
    }

    #[test]
    fn composed_layer_stacks_up_neighbors() {
        let sys = SubspaceSystem::new(SubspaceParams::new(2, 2).unwrap());
        let f = Message::seeded(4, 7).unwrap();
        let tw = CleanTWord { sys: &sys, f: &f };
        let deg = sys.degree() as usize;
        for v in sys.vertex_names().unwrap() {
            let block = tw.block(&v);
            assert_eq!(block.len(), tw.block_len());
            for j in 0..sys.up_degree() {
                let s = sys.nbr_up(&v, j).unwrap();
                let j = j as usize;
                assert_eq!(&block[j * deg..(j + 1) * deg], &dp_encode_block(&sys, &f, &s)[..]);
                // Partial reads agree with the full block.
                assert_eq!(tw.restrict(&v, j * deg, deg), &block[j * deg..(j + 1) * deg]);
            }
        }
    }
}
