//! Experiment reports: ordered per-trial JSON-lines records followed by one
//! summary object whose aggregates can be recomputed from the records.

use serde::{Deserialize, Serialize};

pub const GENERATOR_NAME: &str = "keyed-counter-split";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub success: bool,
    pub list_size: usize,
    pub path_len: usize,
    pub degenerate: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_us: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub generator: String,
    pub seed: u64,
    pub system: String,
    pub trials: usize,
    pub success_rate: f64,
    /// Binomial standard error of the success rate.
    pub success_stderr: f64,
    pub mean_list_size: f64,
    pub mean_path_len: f64,
    pub total_degenerate: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

pub fn summarize(system: &str, seed: u64, records: &[TrialRecord]) -> Summary {
    let n = records.len().max(1) as f64;
    let p = records.iter().filter(|r| r.success).count() as f64 / n;
    Summary {
        generator: GENERATOR_NAME.to_string(),
        seed,
        system: system.to_string(),
        trials: records.len(),
        success_rate: p,
        success_stderr: (p * (1.0 - p) / n).sqrt(),
        mean_list_size: records.iter().map(|r| r.list_size as f64).sum::<f64>() / n,
        mean_path_len: records.iter().map(|r| r.path_len as f64).sum::<f64>() / n,
        total_degenerate: records.iter().map(|r| r.degenerate).sum(),
    }
}

impl ExperimentReport {
    /// JSON-lines: one record per line, then {"summary": ...}.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        out.push_str(
            &serde_json::to_string(&serde_json::json!({ "summary": self.summary }))
                .expect("summary serializes"),
        );
        out.push('\n');
        out
    }

    pub fn from_jsonl(text: &str) -> Result<ExperimentReport, String> {
        let mut records = Vec::new();
        let mut summary = None;
        for line in text.lines() {
            let v: serde_json::Value =
                serde_json::from_str(line).map_err(|e| e.to_string())?;
            if let Some(s) = v.get("summary") {
                summary =
                    Some(serde_json::from_value(s.clone()).map_err(|e| e.to_string())?);
            } else {
                records
                    .push(serde_json::from_value(v).map_err(|e| e.to_string())?);
            }
        }
        Ok(ExperimentReport {
            records,
            summary: summary.ok_or("missing summary line")?,
        })
    }
}
