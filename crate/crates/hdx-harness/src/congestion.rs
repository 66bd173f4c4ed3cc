//! Congestion measurement for routing schemes: a hash-defined bad edge set
//! of known measure, uniform endpoint pairs, and the empirical probability
//! that a routed path touches the bad set, with a binomial standard error.

use hdx_algebra::rng::keyed_hash;
use hdx_algebra::Rng;

/// Edge predicate by keyed hash of the unordered endpoint pair, true on an
/// analytic `measure` fraction of all possible edges without materializing
/// any edge set.
#[derive(Debug, Clone, Copy)]
pub struct HashBadSet {
    pub key: u64,
    pub measure: f64,
}

impl HashBadSet {
    pub fn hits_edge(&self, a: &str, b: &str) -> bool {
        let (x, y) = if a <= b { (a, b) } else { (b, a) };
        let mut buf = Vec::with_capacity(x.len() + y.len() + 1);
        buf.extend_from_slice(x.as_bytes());
        buf.push(b'|');
        buf.extend_from_slice(y.as_bytes());
        (keyed_hash(self.key, &buf) as f64 / u64::MAX as f64) < self.measure
    }

    pub fn hits_path(&self, path: &[String]) -> bool {
        path.windows(2).any(|w| self.hits_edge(&w[0], &w[1]))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CongestionEstimate {
    pub hit_probability: f64,
    pub stderr: f64,
    pub routed: usize,
    pub route_failures: usize,
}

impl CongestionEstimate {
    /// True when the estimate sits under `bound` with 3 sigma slack.
    pub fn within(&self, bound: f64) -> bool {
        self.hit_probability <= bound + 3.0 * self.stderr
    }
}

/// Routes `trials` uniform endpoint pairs (the route closure draws its own
/// endpoints from the rng) and reports the bad-set hit frequency. Pairs the
/// router fails on are counted separately and excluded from the frequency.
pub fn measure_congestion<R>(
    mut route: R,
    bad: &HashBadSet,
    trials: usize,
    rng: &mut Rng,
) -> CongestionEstimate
where
    R: FnMut(&mut Rng) -> Option<Vec<String>>,
{
    let mut hits = 0usize;
    let mut routed = 0usize;
    let mut failures = 0usize;
    for _ in 0..trials {
        match route(rng) {
            Some(path) => {
                routed += 1;
                if bad.hits_path(&path) {
                    hits += 1;
                }
            }
            None => failures += 1,
        }
    }
    let n = routed.max(1) as f64;
    let p = hits as f64 / n;
    CongestionEstimate {
        hit_probability: p,
        stderr: (p * (1.0 - p) / n).sqrt(),
        routed,
        route_failures: failures,
    }
}
