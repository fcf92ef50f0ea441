//! Experiment report serialization: JSON report, JSONL trials, CSV summaries.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::eval::TrialResult;

/// One accuracy row: a variant on a test set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VariantSummary {
    pub variant: String,
    pub test_set: String,
    pub trials: usize,
    pub successes: usize,
    pub accuracy: f64,
}

/// Containment outcome for one test set. `fraction` is `None` when no trial
/// qualified (the statistic is undefined, not zero).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContainmentSummary {
    pub test_set: String,
    pub qualifying: usize,
    pub outside_beam: usize,
    pub fraction: Option<f64>,
}

/// Per-test-set block of the report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TestSetReport {
    pub name: String,
    pub clusters: usize,
    pub variants: Vec<VariantSummary>,
}

/// The full experiment report: accuracies per variant and test set, the
/// containment analysis, and the reproducibility trail (config snapshot,
/// seed, content hashes of the input datasets).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub seed: u64,
    pub config: serde_json::Value,
    pub dataset_hashes: BTreeMap<String, String>,
    pub test_sets: Vec<TestSetReport>,
    pub containment: Vec<ContainmentSummary>,
}

/// Long-format accuracy CSV: one row per (variant, test set).
pub fn summary_csv(rows: &[VariantSummary]) -> String {
    let mut out = String::from("variant,test_set,trials,successes,accuracy\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{:.4}\n",
            row.variant, row.test_set, row.trials, row.successes, row.accuracy
        ));
    }
    out
}

/// Pivoted accuracy CSV in the shape of a model-by-test-set table: one row
/// per variant, accuracies as percentages.
pub fn table1_csv(rows: &[VariantSummary], variant_order: &[&str]) -> String {
    let mut test_sets: Vec<&str> = Vec::new();
    for row in rows {
        if !test_sets.contains(&row.test_set.as_str()) {
            test_sets.push(&row.test_set);
        }
    }
    let mut out = String::from("model");
    for ts in &test_sets {
        out.push(',');
        out.push_str(ts);
    }
    out.push('\n');
    for variant in variant_order {
        let mut line = variant.to_string();
        let mut found = false;
        for ts in &test_sets {
            let cell = rows
                .iter()
                .find(|r| r.variant == *variant && r.test_set == *ts)
                .map(|r| format!("{:.1}", r.accuracy * 100.0));
            line.push(',');
            if let Some(c) = cell {
                line.push_str(&c);
                found = true;
            }
        }
        if found {
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

/// One JSON document per line.
pub fn trials_jsonl(results: &[TrialResult]) -> serde_json::Result<String> {
    let mut out = String::new();
    for r in results {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(variant: &str, test_set: &str, acc: f64) -> VariantSummary {
        VariantSummary {
            variant: variant.into(),
            test_set: test_set.into(),
            trials: 100,
            successes: (acc * 100.0) as usize,
            accuracy: acc,
        }
    }

    #[test]
    fn summary_csv_shape() {
        let csv = summary_csv(&[row("char-s0", "ts1", 0.25), row("char-s1", "ts1", 0.5)]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "variant,test_set,trials,successes,accuracy");
        assert_eq!(lines[1], "char-s0,ts1,100,25,0.2500");
    }

    #[test]
    fn table1_csv_pivots() {
        let rows = [
            row("char-s0", "ts1", 0.097),
            row("char-s0", "ts2", 0.155),
            row("char-s1", "ts1", 0.623),
            row("char-s1", "ts2", 0.356),
        ];
        let csv = table1_csv(&rows, &["char-s0", "char-s1"]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "model,ts1,ts2");
        assert_eq!(lines[1], "char-s0,9.7,15.5");
        assert_eq!(lines[2], "char-s1,62.3,35.6");
    }
}
