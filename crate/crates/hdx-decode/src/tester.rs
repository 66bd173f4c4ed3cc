//! Sampled distance testers. Acceptance is on empirical DISAGREEMENT: the
//! tester accepts iff the observed disagreement fraction is at most the
//! threshold, which gives the one-sided Chernoff guarantees at sample count
//! p >= 5 log(1/gamma) / alpha^2.

use hdx_algebra::Rng;

/// True iff the empirical disagreement of f and g on p sampled points is at
/// most delta.
pub fn distance_test<F, G, S>(
    f: F,
    g: G,
    mut sampler: S,
    p: usize,
    delta: f64,
    rng: &mut Rng,
) -> bool
where
    F: Fn(u64) -> u32,
    G: Fn(u64) -> u32,
    S: FnMut(&mut Rng) -> u64,
{
    let mut bad = 0usize;
    for _ in 0..p {
        let x = sampler(rng);
        if f(x) != g(x) {
            bad += 1;
        }
    }
    (bad as f64) <= delta * (p as f64)
}

/// One shared sample of p points; returns every index of l2 whose empirical
/// distance to some member of l1 is at most 2 delta.
pub fn list_distance_test<F, S>(
    l1: &[F],
    l2: &[F],
    mut sampler: S,
    p: usize,
    delta: f64,
    rng: &mut Rng,
) -> Vec<usize>
where
    F: Fn(u64) -> u32,
    S: FnMut(&mut Rng) -> u64,
{
    let points: Vec<u64> = (0..p).map(|_| sampler(rng)).collect();
    let evals1: Vec<Vec<u32>> =
        l1.iter().map(|f| points.iter().map(|&x| f(x)).collect()).collect();
    let bound = 2.0 * delta * (p as f64);
    (0..l2.len())
        .filter(|&gi| {
            let ge: Vec<u32> = points.iter().map(|&x| l2[gi](x)).collect();
            evals1.iter().any(|fe| {
                let bad = fe.iter().zip(&ge).filter(|(a, b)| a != b).count();
                (bad as f64) <= bound
            })
        })
        .collect()
}

/// Vector form used by path propagation: entries are dense local functions
/// and a point is a pair of coordinates (one into each side's block).
pub fn list_distance_test_points(
    l1: &[&[u32]],
    l2: &[Vec<u32>],
    points: &[(usize, usize)],
    delta: f64,
) -> Vec<usize> {
    // No sampled evidence cannot reject: keep everything.
    if points.is_empty() {
        return (0..l2.len()).collect();
    }
    let bound = 2.0 * delta * (points.len() as f64);
    (0..l2.len())
        .filter(|&gi| {
            l1.iter().any(|fe| {
                let bad = points
                    .iter()
                    .filter(|&&(i, jj)| fe[i] != l2[gi][jj])
                    .count();
                (bad as f64) <= bound
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use hdx_algebra::rng::keyed_hash;

    const N: u64 = 1_000_000;

    fn uniform_sampler(rng: &mut Rng) -> u64 {
        rng.below(N)
    }

    /// g disagrees with f on an exact planted fraction of the domain.
    fn planted_pair(dist: f64) -> (impl Fn(u64) -> u32, impl Fn(u64) -> u32) {
        let cut = (dist * N as f64).round() as u64;
        let f = move |x: u64| (keyed_hash(1, &x.to_le_bytes()) % 7) as u32;
        let g = move |x: u64| {
            let base = (keyed_hash(1, &x.to_le_bytes()) % 7) as u32;
            if x < cut {
                base + 1
            } else {
                base
            }
        };
        (f, g)
    }

    #[test]
    fn identical_oracles_always_accept() {
        let (f, _) = planted_pair(0.0);
        let mut rng = Rng::new(3);
        for _ in 0..20 {
            assert!(distance_test(&f, &f, uniform_sampler, 30, 0.0, &mut rng));
        }
    }

    #[test]
    fn everywhere_different_always_rejects() {
        let (f, g) = planted_pair(1.0);
        let mut rng = Rng::new(4);
        for _ in 0..20 {
            assert!(!distance_test(&f, &g, uniform_sampler, 30, 0.5, &mut rng));
        }
    }

    #[test]
    fn chernoff_acceptance_rate() {
        // dist 0.1 against threshold 0.3 at the guarantee's own sample
        // count for alpha = 0.2, gamma = 0.01: accept in >= 99% of trials.
        let (f, g) = planted_pair(0.1);
        let gamma: f64 = 0.01;
        let p = (5.0 * (1.0 / gamma).ln() / (0.2 * 0.2)).ceil() as usize;
        let mut rng = Rng::new(5);
        let trials = 1000;
        let ok = (0..trials)
            .filter(|_| distance_test(&f, &g, uniform_sampler, p, 0.3, &mut rng))
            .count();
        assert!(ok as f64 / trials as f64 >= 0.99, "{ok}/{trials}");
    }

    #[test]
    fn list_test_keeps_self_and_drops_far() {
        let (f, g) = planted_pair(1.0);
        let h = |x: u64| (keyed_hash(9, &x.to_le_bytes()) % 5) as u32;
        let l: Vec<Box<dyn Fn(u64) -> u32>> = vec![Box::new(f), Box::new(h)];
        let mut rng = Rng::new(6);
        let full = list_distance_test(&l, &l, uniform_sampler, 60, 0.1, &mut rng);
        assert_eq!(full, vec![0, 1]);
        // An entry at distance 1 from the whole reference list, 2 delta < 1.
        let l2: Vec<Box<dyn Fn(u64) -> u32>> = vec![Box::new(g)];
        let l1: Vec<Box<dyn Fn(u64) -> u32>> = vec![Box::new({
            let (f2, _) = planted_pair(1.0);
            f2
        })];
        let kept = list_distance_test(&l1, &l2, uniform_sampler, 60, 0.3, &mut rng);
        assert!(kept.is_empty());
    }

    #[test]
    fn list_test_rates_match_the_claim() {
        // Soundness/completeness at planted distances delta and delta +
        // alpha around threshold 2 delta... the tester compares against
        // 2 delta, so plant at 2 delta - alpha (accept whp) and
        // 2 delta + alpha (reject whp).
        let delta = 0.1;
        let alpha = 0.08;
        let gamma: f64 = 0.01;
        let p = (5.0 * (1.0 / gamma).ln() / (alpha * alpha)).ceil() as usize;
        let mut rng = Rng::new(7);
        let trials = 1000;
        let (f_close, g_close) = planted_pair(2.0 * delta - alpha);
        let (f_far, g_far) = planted_pair(2.0 * delta + alpha);
        let mut accept_close = 0;
        let mut accept_far = 0;
        for _ in 0..trials {
            let l1: Vec<&dyn Fn(u64) -> u32> = vec![&f_close];
            let l2: Vec<&dyn Fn(u64) -> u32> = vec![&g_close];
            if !list_distance_test(&l1, &l2, uniform_sampler, p, delta, &mut rng).is_empty() {
                accept_close += 1;
            }
            let l1: Vec<&dyn Fn(u64) -> u32> = vec![&f_far];
            let l2: Vec<&dyn Fn(u64) -> u32> = vec![&g_far];
            if !list_distance_test(&l1, &l2, uniform_sampler, p, delta, &mut rng).is_empty() {
                accept_far += 1;
            }
        }
        let rate_close = accept_close as f64 / trials as f64;
        let rate_far = accept_far as f64 / trials as f64;
        assert!(rate_close >= 1.0 - 2.0 * gamma, "close accept rate {rate_close}");
        assert!(rate_far <= 2.0 * gamma, "far accept rate {rate_far}");
    }

    #[test]
    fn points_variant_empty_evidence_keeps_all() {
        let l1: Vec<&[u32]> = vec![&[1, 2, 3]];
        let l2 = vec![vec![9u32, 9, 9], vec![1, 2, 3]];
        assert_eq!(list_distance_test_points(&l1, &l2, &[], 0.1), vec![0, 1]);
        let points = [(0usize, 0usize), (1, 1), (2, 2)];
        assert_eq!(list_distance_test_points(&l1, &l2, &points, 0.1), vec![1]);
    }
}
