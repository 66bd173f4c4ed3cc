//! Counter-based splittable random stream.
//!
//! State is a (key, counter) pair; output block i depends only on (key, i), so
//! streams can be split hierarchically and consumed out of order while staying
//! reproducible from a single root seed. The mixer is the SplitMix64 finalizer.

pub const GENERATOR_NAME: &str = "splitmix64-ctr";

#[inline]
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Splittable counter-based random stream.
#[derive(Debug, Clone)]
pub struct Rng {
    key: u64,
    ctr: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { key: mix(seed ^ 0x5851_f42d_4c95_7f2d), ctr: 0 }
    }

    /// Derives an independent child stream. Children with distinct labels are
    /// independent of each other and of the parent's future output.
    pub fn split(&self, label: u64) -> Rng {
        Rng { key: mix(self.key ^ mix(label ^ 0xd605_0b16_0b81_7ba9)), ctr: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let out = mix(self.key ^ mix(self.ctr));
        self.ctr = self.ctr.wrapping_add(1);
        out
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform value in [0, n). Rejection keeps it exactly uniform.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        if n.is_power_of_two() {
            return self.next_u64() & (n - 1);
        }
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    pub fn below_usize(&mut self, n: usize) -> usize {
        self.below(n as u64) as usize
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below_usize(i + 1);
            xs.swap(i, j);
        }
    }

    /// Samples k distinct indices from [0, n) without replacement.
    pub fn sample_distinct(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n);
        // Partial Fisher-Yates over a sparse permutation map.
        let mut map = std::collections::HashMap::new();
        let mut out = Vec::with_capacity(k);
        for i in 0..k {
            let j = i + self.below_usize(n - i);
            let vi = *map.get(&i).unwrap_or(&i);
            let vj = *map.get(&j).unwrap_or(&j);
            map.insert(j, vi);
            out.push(vj);
        }
        out
    }
}

/// Keyed hash of a byte string, for deterministic predicates over names.
pub fn keyed_hash(key: u64, bytes: &[u8]) -> u64 {
    let mut h = mix(key ^ 0x1f83_d9ab_fb41_bd6b);
    for chunk in bytes.chunks(8) {
        let mut w = [0u8; 8];
        w[..chunk.len()].copy_from_slice(chunk);
        h = mix(h ^ u64::from_le_bytes(w));
    }
    mix(h ^ (bytes.len() as u64))
}
