//! Flat key-value experiment configs. One `key = value` pair per line,
//! `#` comments, no sections and no includes, so a config diffs cleanly.

use hdx_decode::DecoderParams;
use hdx_dpcode::{CompleteSystem, DpError, HypergraphSystemAccess, KmsD3System, SubspaceSystem};
use hdx_kms::KmsParams;
use hdx_subspace::SubspaceParams;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    Parse(String),
    Missing(&'static str),
    Invalid(String),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Parse(m) => write!(f, "config parse error: {m}"),
            ConfigError::Missing(k) => write!(f, "config key missing: {k}"),
            ConfigError::Invalid(m) => write!(f, "config invalid: {m}"),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub enum SystemSpec {
    Subspace { q: u64, d: usize },
    Kms { q: u64, d: usize, kappa: u32 },
    Complete { n: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSpec {
    Clean,
    Random { eps: f64 },
    TwoPlanted { eps: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub system: SystemSpec,
    pub channel: ChannelSpec,
    pub decoder: DecoderParams,
    pub sigma: u64,
    pub trials: usize,
    pub seed: u64,
    pub out: Option<String>,
    /// Wall-clock fields are omitted from reports unless asked for, so
    /// identical (config, seed) runs stay byte-identical.
    pub record_timing: bool,
}

fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(ConfigError::Parse(format!("line {}: `{raw}`", lineno + 1)));
        };
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn get<T: std::str::FromStr>(
    map: &BTreeMap<String, String>,
    key: &'static str,
    default: Option<T>,
) -> Result<T, ConfigError> {
    match map.get(key) {
        Some(v) => v
            .parse()
            .map_err(|_| ConfigError::Invalid(format!("{key} = {v}"))),
        None => default.ok_or(ConfigError::Missing(key)),
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<ExperimentConfig, ConfigError> {
        let map = parse_pairs(text)?;
        let system = match map.get("system").map(String::as_str) {
            Some("subspace") => SystemSpec::Subspace {
                q: get(&map, "q", None)?,
                d: get(&map, "d", None)?,
            },
            Some("kms") => SystemSpec::Kms {
                q: get(&map, "q", None)?,
                d: get(&map, "d", None)?,
                kappa: get(&map, "kappa", None)?,
            },
            Some("complete") => SystemSpec::Complete {
                n: get(&map, "n", None)?,
                k: get(&map, "k", None)?,
            },
            Some(other) => {
                return Err(ConfigError::Invalid(format!("system = {other}")))
            }
            None => return Err(ConfigError::Missing("system")),
        };
        let eps: f64 = get(&map, "eps", Some(0.25))?;
        let channel = match map.get("channel").map(String::as_str) {
            None | Some("clean") => ChannelSpec::Clean,
            Some("random") => ChannelSpec::Random { eps },
            Some("two_planted") => ChannelSpec::TwoPlanted { eps },
            Some(other) => {
                return Err(ConfigError::Invalid(format!("channel = {other}")))
            }
        };
        let decoder = DecoderParams {
            delta_in: get(&map, "delta_in", Some(0.05))?,
            delta_out: get(&map, "delta_out", Some(0.1))?,
            eps,
            ell_in: get(&map, "ell_in", Some(4))?,
            ell_out: get(&map, "ell_out", Some(32))?,
            t: get(&map, "t", Some(8))?,
            p: get(&map, "p", Some(40))?,
            tester_threshold: get(&map, "tester_threshold", Some(0.1))?,
            retries: get(&map, "retries", Some(64))?,
        };
        decoder
            .validate()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let cfg = ExperimentConfig {
            system,
            channel,
            decoder,
            sigma: get(&map, "sigma", Some(8))?,
            trials: get(&map, "trials", Some(10))?,
            seed: get(&map, "seed", Some(1))?,
            out: map.get("out").cloned(),
            record_timing: get(&map, "record_timing", Some(false))?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &str) -> Result<ExperimentConfig, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Parse(format!("{path}: {e}")))?;
        ExperimentConfig::parse(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.trials < 1 {
            return Err(ConfigError::Invalid("trials must be at least 1".into()));
        }
        if let ChannelSpec::Random { eps } | ChannelSpec::TwoPlanted { eps } = self.channel {
            if !(0.0..=1.0).contains(&eps) {
                return Err(ConfigError::Invalid(format!("eps = {eps}")));
            }
        }
        if self.sigma < 2 {
            return Err(ConfigError::Invalid("sigma must be at least 2".into()));
        }
        Ok(())
    }

    /// A short stable identifier used in reports and file names.
    pub fn system_id(&self) -> String {
        match &self.system {
            SystemSpec::Subspace { q, d } => format!("subspace-q{q}-d{d}"),
            SystemSpec::Kms { q, d, kappa } => format!("kms-q{q}-d{d}-k{kappa}"),
            SystemSpec::Complete { n, k } => format!("complete-n{n}-k{k}"),
        }
    }

    pub fn subspace_params(&self) -> Option<SubspaceParams> {
        match self.system {
            SystemSpec::Subspace { q, d } => SubspaceParams::new(q, d).ok(),
            _ => None,
        }
    }

    pub fn kms_params(&self) -> Option<KmsParams> {
        match self.system {
            SystemSpec::Kms { q, d, kappa } => KmsParams::new(q, d, kappa).ok(),
            _ => None,
        }
    }

    /// Hypergraph access for the configured system. KMS access is the
    /// d = 3 fast-neighbor system; higher d only supports routing
    /// experiments.
    pub fn build_system(&self) -> Result<Box<dyn HypergraphSystemAccess>, DpError> {
        match self.system {
            SystemSpec::Subspace { q, d } => {
                let p = SubspaceParams::new(q, d)
                    .map_err(|e| DpError::Format(e.to_string()))?;
                Ok(Box::new(SubspaceSystem::new(p)))
            }
            SystemSpec::Kms { q, d, kappa } => {
                let p = KmsParams::new(q, d, kappa)
                    .map_err(|e| DpError::Format(e.to_string()))?;
                Ok(Box::new(KmsD3System::new(p)?))
            }
            SystemSpec::Complete { n, k } => Ok(Box::new(CompleteSystem::new(n, k)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# demo config
system = subspace
q = 4
d = 3
channel = two_planted
eps = 0.25
trials = 5
seed = 9
ell_in = 5
";

    #[test]
    fn parses_and_defaults() {
        let cfg = ExperimentConfig::parse(SAMPLE).unwrap();
        assert_eq!(cfg.system, SystemSpec::Subspace { q: 4, d: 3 });
        assert_eq!(cfg.channel, ChannelSpec::TwoPlanted { eps: 0.25 });
        assert_eq!(cfg.trials, 5);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.decoder.ell_in, 5);
        assert_eq!(cfg.decoder.t, 8, "default applies");
        assert_eq!(cfg.system_id(), "subspace-q4-d3");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(ExperimentConfig::parse("system subspace").is_err());
        assert!(ExperimentConfig::parse("q = 4").is_err());
        assert!(ExperimentConfig::parse("system = warp\n").is_err());
        assert!(
            ExperimentConfig::parse("system = subspace\nq = 2\nd = 2\ntrials = 0\n").is_err()
        );
    }

    #[test]
    fn builds_the_configured_system() {
        let cfg = ExperimentConfig::parse("system = complete\nn = 6\nk = 3\n").unwrap();
        let sys = cfg.build_system().unwrap();
        assert_eq!(sys.degree(), 3);
    }
}
