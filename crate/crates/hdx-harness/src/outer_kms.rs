//! Concrete outer-decoder geometry on the d = 7 KMS swap graph: vertices
//! are one fixed-color coset class, internal routing is the subset-internal
//! scheme, and the per-node lists are synthetic point functions (far-apart
//! truth classes, optionally perturbed per node) over a shared u64 domain.

use hdx_algebra::rng::keyed_hash;
use hdx_algebra::Rng;
use hdx_decode::OuterLayer;
use hdx_kms::{
    route_subset_internal, uniform_sl, CanonicalCoset, ColorSet, KmsError, KmsParams,
};

pub struct KmsOuterLayer {
    pub params: KmsParams,
    vert_color: ColorSet,
    /// Synthetic point domain size.
    pub domain: u64,
    /// Truth classes; the list at every node carries one entry per class.
    pub classes: usize,
    pub truth_seed: u64,
    /// Per-node perturbation rate of each entry (0 = exact lists).
    pub perturb: f64,
    /// Routing retries before giving up on a pair.
    pub route_retries: usize,
}

impl KmsOuterLayer {
    pub fn new(
        params: KmsParams,
        domain: u64,
        classes: usize,
        truth_seed: u64,
        perturb: f64,
    ) -> Result<KmsOuterLayer, KmsError> {
        if params.d() % 7 != 0 {
            return Err(KmsError::ColorUnsupported);
        }
        let vert_color = params.color_shift(2);
        Ok(KmsOuterLayer {
            params,
            vert_color,
            domain,
            classes,
            truth_seed,
            perturb,
            route_retries: 8,
        })
    }

    /// The unperturbed class function every node's g-th entry approximates.
    pub fn truth(&self, class: usize, point: u64) -> u32 {
        (keyed_hash(self.truth_seed ^ (class as u64 + 1), &point.to_le_bytes()) % 16) as u32
    }

    /// A uniformly random vertex-coset name.
    pub fn random_vertex(&self, rng: &mut Rng) -> Result<String, KmsError> {
        let g = uniform_sl(&self.params, rng)?;
        Ok(CanonicalCoset::new(&self.params, &g, self.vert_color.clone())?
            .name(&self.params))
    }
}

impl OuterLayer for KmsOuterLayer {
    fn route_internal(
        &self,
        u0: &str,
        u1: &str,
        pred: &dyn Fn(&str) -> bool,
        rng: &mut Rng,
    ) -> Option<Vec<String>> {
        let a = CanonicalCoset::from_name(&self.params, u0).ok()?;
        let b = CanonicalCoset::from_name(&self.params, u1).ok()?;
        let t_pred = |c: &CanonicalCoset| pred(&c.name(&self.params));
        for _ in 0..self.route_retries {
            match route_subset_internal(&self.params, &a, &b, &t_pred, rng) {
                Ok(path) if !path.fail => return Some(path.nodes),
                Ok(_) => continue,
                Err(_) => return None,
            }
        }
        None
    }

    fn shared_point(&self, _u: &str, _u2: &str, rng: &mut Rng) -> u64 {
        rng.below(self.domain)
    }

    fn sample_point(&self, _u: &str, rng: &mut Rng) -> u64 {
        rng.below(self.domain)
    }

    fn list_len(&self, _u: &str) -> usize {
        self.classes
    }

    fn eval(&self, u: &str, g: usize, point: u64) -> u32 {
        let base = self.truth(g, point);
        if self.perturb > 0.0 {
            let node_key = keyed_hash(g as u64 + 17, u.as_bytes());
            let roll =
                keyed_hash(node_key, &point.to_le_bytes()) as f64 / u64::MAX as f64;
            if roll < self.perturb {
                return base + 1 + g as u32;
            }
        }
        base
    }

    fn locate(&self, _point: u64, rng: &mut Rng) -> String {
        // The synthetic domain is global; any vertex can answer, so the
        // query target is a uniform coset.
        self.random_vertex(rng).expect("vertex sampling")
    }
}
