//! Decoding algorithms for direct product codes: sampled distance testers,
//! list propagation along routed paths, composed-list decoding with output
//! pruning, a local inner decoder, list sparsification, and the outer
//! decoder that walks a subset-internal route matching one list entry per
//! step.
//!
//! Every decoder is a pure function of (word access, seed); FAIL is a value
//! (None), not an error. Misuse of the interfaces is an error.

pub mod gilist;
pub mod inner;
pub mod outer;
pub mod propagate;
pub mod separate;
pub mod tester;

pub use gilist::{decode_handle, gi_list_decode, prune_decoder_list};
pub use inner::inner_decode;
pub use outer::{outer_decode, outer_decode_trace, OuterLayer, OuterStep};
pub use propagate::{propagate_recover, propagate_recover_trace, SubList};
pub use separate::{pairwise_distances, well_separate, well_separate_dists};
pub use tester::{distance_test, list_distance_test, list_distance_test_points};

use hdx_dpcode::DpError;

#[derive(Debug, Clone, PartialEq)]
pub enum DecodeError {
    Format(String),
    System(DpError),
}

impl std::fmt::Display for DecodeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DecodeError::Format(m) => write!(f, "format error: {m}"),
            DecodeError::System(e) => write!(f, "system error: {e}"),
        }
    }
}

impl std::error::Error for DecodeError {}

impl From<DpError> for DecodeError {
    fn from(e: DpError) -> DecodeError {
        DecodeError::System(e)
    }
}

/// Knobs shared by the decoders. Fractions are in [0,1].
#[derive(Debug, Clone, PartialEq)]
pub struct DecoderParams {
    /// Input-list noise budget (degenerate cells are charged here).
    pub delta_in: f64,
    /// Output closeness target.
    pub delta_out: f64,
    /// Agreement parameter of the channel.
    pub eps: f64,
    /// Input and output list-size bounds.
    pub ell_in: usize,
    pub ell_out: usize,
    /// Path-length bound for propagation.
    pub t: usize,
    /// Distance-tester sample count.
    pub p: usize,
    /// Acceptance threshold of the step testers.
    pub tester_threshold: f64,
    /// Retry budget for rejection loops.
    pub retries: usize,
}

impl DecoderParams {
    pub fn validate(&self) -> Result<(), DecodeError> {
        let fractions = [
            ("delta_in", self.delta_in),
            ("delta_out", self.delta_out),
            ("eps", self.eps),
            ("tester_threshold", self.tester_threshold),
        ];
        for (name, v) in fractions {
            if !(0.0..=1.0).contains(&v) {
                return Err(DecodeError::Format(format!("{name} = {v} not in [0,1]")));
            }
        }
        if self.p < 1 {
            return Err(DecodeError::Format("p must be at least 1".into()));
        }
        Ok(())
    }
}

/// A local output circuit: start hyperedge, list index there, and a frozen
/// randomness seed, so any experiment can re-run a specific handle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoderHandle {
    pub s0: String,
    pub g: usize,
    pub seed: u64,
}

impl DecoderHandle {
    pub fn to_json(&self, system_id: &str) -> serde_json::Value {
        serde_json::json!({
            "system": system_id,
            "s0": self.s0,
            "g": self.g,
            "seed": self.seed,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<DecoderHandle, DecodeError> {
        let bad = |m: &str| DecodeError::Format(format!("handle json: {m}"));
        Ok(DecoderHandle {
            s0: v["s0"].as_str().ok_or(bad("missing s0"))?.to_string(),
            g: v["g"].as_u64().ok_or(bad("missing g"))? as usize,
            seed: v["seed"].as_u64().ok_or(bad("missing seed"))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> DecoderParams {
        DecoderParams {
            delta_in: 0.05,
            delta_out: 0.1,
            eps: 0.25,
            ell_in: 5,
            ell_out: 40,
            t: 8,
            p: 50,
            tester_threshold: 0.1,
            retries: 64,
        }
    }

    #[test]
    fn params_validation() {
        assert!(params().validate().is_ok());
        let mut bad = params();
        bad.eps = 1.5;
        assert!(bad.validate().is_err());
        let mut bad = params();
        bad.p = 0;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn handle_json_roundtrip() {
        let h = DecoderHandle { s0: "S:0110".into(), g: 3, seed: 99 };
        let j = h.to_json("subspace-q2-d2");
        assert_eq!(j["system"], "subspace-q2-d2");
        assert_eq!(DecoderHandle::from_json(&j).unwrap(), h);
        assert!(DecoderHandle::from_json(&serde_json::json!({})).is_err());
    }
}
