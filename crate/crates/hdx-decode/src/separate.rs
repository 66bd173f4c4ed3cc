//! List sparsification: iterated maximal-independent-set extraction in
//! distance graphs at geometrically growing scales delta_k = 8^k delta0.
//! A non-FAIL output at level j is delta'_j-dense in the input (every
//! input entry has a survivor within 1.16 * 8^j delta0) and strictly
//! separated at the next scale.

use hdx_algebra::Rng;

/// Scale at level k.
pub fn sep_scale(delta0: f64, k: usize) -> f64 {
    8f64.powi(k as i32) * delta0
}

/// Output density radius at level j.
pub fn sep_density(delta0: f64, j: usize) -> f64 {
    1.16 * sep_scale(delta0, j)
}

/// Empirical pairwise distances from one shared sample of p points.
pub fn pairwise_distances<F, S>(
    list: &[F],
    mut sampler: S,
    p: usize,
    rng: &mut Rng,
) -> Vec<Vec<f64>>
where
    F: Fn(u64) -> u32,
    S: FnMut(&mut Rng) -> u64,
{
    let points: Vec<u64> = (0..p).map(|_| sampler(rng)).collect();
    let evals: Vec<Vec<u32>> =
        list.iter().map(|f| points.iter().map(|&x| f(x)).collect()).collect();
    let n = list.len();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..i {
            let bad = evals[i].iter().zip(&evals[j]).filter(|(a, b)| a != b).count();
            let dist = bad as f64 / p.max(1) as f64;
            d[i][j] = dist;
            d[j][i] = dist;
        }
    }
    d
}

/// Greedy (ascending index) maximal independent set of the graph joining
/// members at distance <= scale.
fn greedy_mis(members: &[usize], dists: &[Vec<f64>], scale: f64) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for &i in members {
        if out.iter().all(|&k| dists[i][k] > scale) {
            out.push(i);
        }
    }
    out
}

/// Level-j sparsification over a fixed empirical distance matrix: indices
/// of the surviving sublist, or None (FAIL) when the level-j survivors are
/// not separated at the next scale.
pub fn well_separate_dists(dists: &[Vec<f64>], j: usize, delta0: f64) -> Option<Vec<usize>> {
    let n = dists.len();
    let mut members: Vec<usize> = (0..n).collect();
    for k in 1..j {
        members = greedy_mis(&members, dists, sep_scale(delta0, k));
    }
    let next = sep_scale(delta0, j + 1);
    let separated = members
        .iter()
        .all(|&i| members.iter().all(|&k| k == i || dists[i][k] > next));
    if separated {
        Some(members)
    } else {
        None
    }
}

/// Point-oracle front end: one shared sample, then the fixed-matrix
/// procedure.
pub fn well_separate<F, S>(
    list: &[F],
    j: usize,
    delta0: f64,
    sampler: S,
    p: usize,
    rng: &mut Rng,
) -> Option<Vec<usize>>
where
    F: Fn(u64) -> u32,
    S: FnMut(&mut Rng) -> u64,
{
    assert!(j >= 1, "level must be at least 1");
    well_separate_dists(&pairwise_distances(list, sampler, p, rng), j, delta0)
}
