//! Sampler-quality measurements on bipartite joint distributions.
//!
//! The exact mode computes the second singular value of the normalized walk
//! C[i][j] = mu(i,j) / sqrt(pi_L(i) pi_R(j)) by power iteration on C^T C
//! with the known top right-singular vector sqrt(pi_R) deflated away. The
//! Monte-Carlo mode probes the sampler definition directly with random
//! right-sets and reports the worst observed beta = (bad fraction) * delta^2.

use hdx_algebra::rng::keyed_hash;
use hdx_algebra::Rng;
use std::collections::HashMap;

pub const SIDE_CAP: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SamplerMode {
    ExactSpectral,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapEstimate {
    pub gap: f64,
    pub mode: SamplerMode,
    pub iterations: usize,
    /// False when the iteration budget ran out before the tolerance.
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SamplerError {
    TooLarge(usize),
    Empty,
    BadDistribution(f64),
}

impl std::fmt::Display for SamplerError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SamplerError::TooLarge(n) => write!(f, "side of size {n} exceeds {SIDE_CAP}"),
            SamplerError::Empty => write!(f, "empty joint distribution"),
            SamplerError::BadDistribution(s) => write!(f, "joint mass {s} != 1"),
        }
    }
}

impl std::error::Error for SamplerError {}

/// Indexed form of a (left, right, probability) joint.
pub struct Bipartite {
    pub n_left: usize,
    pub n_right: usize,
    /// (left, right, mass) with mass summing to 1.
    pub entries: Vec<(usize, usize, f64)>,
    pub pi_left: Vec<f64>,
    pub pi_right: Vec<f64>,
}

impl Bipartite {
    pub fn from_joint(joint: &[(String, String, f64)]) -> Result<Bipartite, SamplerError> {
        if joint.is_empty() {
            return Err(SamplerError::Empty);
        }
        let mass: f64 = joint.iter().map(|&(_, _, w)| w).sum();
        if (mass - 1.0).abs() > 1e-6 {
            return Err(SamplerError::BadDistribution(mass));
        }
        let mut left: HashMap<&str, usize> = HashMap::new();
        let mut right: HashMap<&str, usize> = HashMap::new();
        let mut entries = Vec::with_capacity(joint.len());
        for (l, r, w) in joint {
            let nl = left.len();
            let li = *left.entry(l.as_str()).or_insert(nl);
            let nr = right.len();
            let ri = *right.entry(r.as_str()).or_insert(nr);
            entries.push((li, ri, *w));
        }
        let (n_left, n_right) = (left.len(), right.len());
        if n_left > SIDE_CAP || n_right > SIDE_CAP {
            return Err(SamplerError::TooLarge(n_left.max(n_right)));
        }
        let mut pi_left = vec![0.0; n_left];
        let mut pi_right = vec![0.0; n_right];
        for &(l, r, w) in &entries {
            pi_left[l] += w;
            pi_right[r] += w;
        }
        Ok(Bipartite { n_left, n_right, entries, pi_left, pi_right })
    }
}

/// Second singular value of the normalized walk, by deflated power
/// iteration to the given tolerance within the iteration budget.
pub fn exact_spectral_gap(
    g: &Bipartite,
    tolerance: f64,
    budget: usize,
) -> GapEstimate {
    // C x and C^T y with C[i][j] = mu / sqrt(pi_L pi_R).
    let norm: Vec<f64> = g
        .entries
        .iter()
        .map(|&(l, r, w)| w / (g.pi_left[l] * g.pi_right[r]).sqrt())
        .collect();
    let apply = |x: &[f64]| -> Vec<f64> {
        let mut y = vec![0.0; g.n_left];
        for (k, &(l, r, _)) in g.entries.iter().enumerate() {
            y[l] += norm[k] * x[r];
        }
        let mut z = vec![0.0; g.n_right];
        for (k, &(l, r, _)) in g.entries.iter().enumerate() {
            z[r] += norm[k] * y[l];
        }
        z
    };
    // Top right-singular vector of C is sqrt(pi_R), singular value 1.
    let top: Vec<f64> = g.pi_right.iter().map(|&p| p.sqrt()).collect();
    let deflate = |x: &mut [f64]| {
        let dot: f64 = x.iter().zip(&top).map(|(a, b)| a * b).sum();
        for (xi, ti) in x.iter_mut().zip(&top) {
            *xi -= dot * ti;
        }
    };
    let mut rng = Rng::new(0x51ec7a1 ^ g.n_right as u64);
    let mut x: Vec<f64> = (0..g.n_right)
        .map(|_| rng.next_u64() as f64 / u64::MAX as f64 - 0.5)
        .collect();
    deflate(&mut x);
    let mut prev = 0.0;
    for it in 1..=budget {
        let mut y = apply(&x);
        deflate(&mut y);
        let norm2: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm2 < 1e-300 {
            return GapEstimate { gap: 0.0, mode: SamplerMode::ExactSpectral, iterations: it, converged: true };
        }
        for v in &mut y {
            *v /= norm2;
        }
        // Rayleigh quotient of C^T C is sigma_2^2.
        let lam: f64 = norm2;
        let sigma = lam.sqrt();
        x = y;
        if (sigma - prev).abs() <= tolerance {
            return GapEstimate { gap: sigma, mode: SamplerMode::ExactSpectral, iterations: it, converged: true };
        }
        prev = sigma;
    }
    GapEstimate { gap: prev, mode: SamplerMode::ExactSpectral, iterations: budget, converged: false }
}

/// Worst observed beta over `budget` random right-sets and a threshold
/// grid: for a set A, a left vertex is delta-bad when its conditional
/// estimate of mu(A) is off by more than delta; the sampler definition
/// bounds the pi_L-mass of bad vertices by beta / delta^2.
pub fn monte_carlo_beta(g: &Bipartite, budget: usize, rng: &mut Rng) -> GapEstimate {
    // Per-left conditional rows.
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); g.n_left];
    for &(l, r, w) in &g.entries {
        rows[l].push((r, w / g.pi_left[l]));
    }
    let deltas = [0.05, 0.1, 0.2, 0.3, 0.4];
    let mut worst: f64 = 0.0;
    for _ in 0..budget {
        let key = rng.next_u64();
        let density = 0.1 + 0.8 * (rng.below(1000) as f64 / 1000.0);
        let in_a = |r: usize| {
            (keyed_hash(key, &(r as u64).to_le_bytes()) as f64 / u64::MAX as f64) < density
        };
        let mu_a: f64 =
            (0..g.n_right).filter(|&r| in_a(r)).map(|r| g.pi_right[r]).sum();
        let devs: Vec<f64> = rows
            .iter()
            .map(|row| {
                let est: f64 =
                    row.iter().filter(|&&(r, _)| in_a(r)).map(|&(_, w)| w).sum();
                (est - mu_a).abs()
            })
            .collect();
        for &delta in &deltas {
            let bad: f64 = devs
                .iter()
                .zip(&g.pi_left)
                .filter(|&(&dev, _)| dev > delta)
                .map(|(_, &p)| p)
                .sum();
            worst = worst.max(bad * delta * delta);
        }
    }
    GapEstimate { gap: worst, mode: SamplerMode::MonteCarlo, iterations: budget, converged: true }
}

pub fn measure_sampler(
    joint: &[(String, String, f64)],
    mode: SamplerMode,
    budget: usize,
    rng: &mut Rng,
) -> Result<GapEstimate, SamplerError> {
    let g = Bipartite::from_joint(joint)?;
    Ok(match mode {
        SamplerMode::ExactSpectral => exact_spectral_gap(&g, 1e-6, budget),
        SamplerMode::MonteCarlo => monte_carlo_beta(&g, budget, rng),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_joint(pairs: &[(&str, &str)]) -> Vec<(String, String, f64)> {
        let w = 1.0 / pairs.len() as f64;
        pairs.iter().map(|&(a, b)| (a.to_string(), b.to_string(), w)).collect()
    }

    #[test]
    fn complete_bipartite_gap_is_zero() {
        let mut pairs = Vec::new();
        for i in 0..4 {
            for j in 0..5 {
                pairs.push((format!("l{i}"), format!("r{j}"), 1.0 / 20.0));
            }
        }
        let est = measure_sampler(&pairs, SamplerMode::ExactSpectral, 500, &mut Rng::new(1))
            .unwrap();
        assert!(est.converged);
        assert!(est.gap < 1e-5, "gap {}", est.gap);
    }

    #[test]
    fn disconnected_graph_gap_is_one() {
        let joint = uniform_joint(&[("a", "x"), ("b", "y")]);
        let est = measure_sampler(&joint, SamplerMode::ExactSpectral, 500, &mut Rng::new(2))
            .unwrap();
        assert!((est.gap - 1.0).abs() < 1e-5, "gap {}", est.gap);
    }

    #[test]
    fn cycle_gap_matches_the_closed_form() {
        // l_i ~ {r_i, r_{i+1}} on a 6-cycle: C = (I + S)/2 up to
        // normalization, singular values |1 + w^k|/2 = cos(pi k / 6),
        // second largest cos(pi/6) = sqrt(3)/2.
        let n = 6;
        let mut pairs = Vec::new();
        for i in 0..n {
            for d in [0, 1] {
                pairs.push((format!("l{i}"), format!("r{}", (i + d) % n), 1.0 / 12.0));
            }
        }
        let est = measure_sampler(&pairs, SamplerMode::ExactSpectral, 2000, &mut Rng::new(3))
            .unwrap();
        let expect = (3f64).sqrt() / 2.0;
        assert!((est.gap - expect).abs() < 1e-4, "gap {}", est.gap);
    }

    #[test]
    fn monte_carlo_beta_is_tiny_on_complete_bipartite() {
        let mut pairs = Vec::new();
        for i in 0..8 {
            for j in 0..8 {
                pairs.push((format!("l{i}"), format!("r{j}"), 1.0 / 64.0));
            }
        }
        let est =
            measure_sampler(&pairs, SamplerMode::MonteCarlo, 50, &mut Rng::new(4)).unwrap();
        // Every left vertex estimates every set exactly.
        assert_eq!(est.gap, 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(measure_sampler(&[], SamplerMode::ExactSpectral, 10, &mut Rng::new(5))
            .is_err());
        let bad = vec![("a".to_string(), "b".to_string(), 0.5)];
        assert!(measure_sampler(&bad, SamplerMode::ExactSpectral, 10, &mut Rng::new(6))
            .is_err());
    }
}
