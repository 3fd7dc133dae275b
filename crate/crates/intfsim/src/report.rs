//! Result emission: flat CSV rows for plotting and a JSON document that
//! carries the full run manifest.
//!
//! The CSV schema is one row per (predictor, eta, target_error):
//!
//! ```text
//! predictor,eta,target_error,achieved_outage,mean_ru,ru_ratio_vs_genie,quantile_coverage,slots,seed
//! ```
//!
//! Numeric fields are written with 10 significant digits; the ratio column
//! is empty for rows without a genie companion run. CSV output carries no
//! timestamps, so re-running the same manifest reproduces it bit for bit.

use std::fmt::Display;
use std::io::{Read, Write};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::config::{PredictorKind, ScenarioConfig};
use crate::engine::RunMetrics;
use crate::error::{Error, Result};

/// One emitted result record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub predictor: String,
    pub eta: f64,
    pub target_error: f64,
    pub achieved_outage: f64,
    pub mean_ru: f64,
    /// Mean RU divided by the genie's mean RU at the same target, when a
    /// genie run shares the group.
    pub ru_ratio_vs_genie: Option<f64>,
    pub quantile_coverage: f64,
    pub slots: u64,
    pub seed: u64,
}

/// Provenance records carried by JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub artifact_version: String,
    /// Human-readable description of the invocation that produced the file.
    pub command: String,
    /// Full resolved base configuration.
    pub config: ScenarioConfig,
    pub created_unix_ms: u64,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: impl Into<String>, config: ScenarioConfig) -> Self {
        Self {
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            config,
            created_unix_ms: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis() as u64)
                .unwrap_or(0),
            outputs: Vec::new(),
        }
    }
}

/// JSON document shape: manifest plus the emitted rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub manifest: RunManifest,
    pub results: Vec<ResultRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::config(
                "format",
                format!("unknown format `{other}` (expected csv or json)"),
            )),
        }
    }
}

impl Display for OutputFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// Flatten a group of runs that share one realization into result rows.
/// When the group contains a genie run, every row gets an RU ratio against
/// it. `label` decorates the predictor name (`dtmc:correlated` style) so
/// rows from different groups can share a file.
pub fn result_rows(runs: &[RunMetrics], label: Option<&str>) -> Vec<ResultRow> {
    let genie = runs.iter().find(|r| r.predictor == PredictorKind::Genie);
    runs.iter()
        .flat_map(|run| {
            let predictor = match label {
                Some(tag) => format!("{}:{tag}", run.predictor),
                None => run.predictor.to_string(),
            };
            run.targets.iter().map(move |t| {
                let ratio = genie.and_then(|g| {
                    g.target(t.target_error)
                        .map(|gt| t.mean_ru / gt.mean_ru)
                });
                ResultRow {
                    predictor: predictor.clone(),
                    eta: run.eta,
                    target_error: t.target_error,
                    achieved_outage: t.achieved_outage,
                    mean_ru: t.mean_ru,
                    ru_ratio_vs_genie: ratio,
                    quantile_coverage: run.quantile_coverage,
                    slots: run.measured_slots,
                    seed: run.seed,
                }
            })
        })
        .collect()
}

const CSV_HEADER: [&str; 9] = [
    "predictor",
    "eta",
    "target_error",
    "achieved_outage",
    "mean_ru",
    "ru_ratio_vs_genie",
    "quantile_coverage",
    "slots",
    "seed",
];

fn sig10(x: f64) -> String {
    format!("{x:.9e}")
}

/// Write rows as CSV with the pinned schema.
pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.predictor.clone(),
            sig10(r.eta),
            sig10(r.target_error),
            sig10(r.achieved_outage),
            sig10(r.mean_ru),
            r.ru_ratio_vs_genie.map(sig10).unwrap_or_default(),
            sig10(r.quantile_coverage),
            r.slots.to_string(),
            r.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Write the JSON document (pretty-printed, exact f64 round-trip).
pub fn write_json<W: Write>(doc: &ReportDocument, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, doc)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Read back a JSON document produced by [`write_json`].
pub fn read_json<R: Read>(input: R) -> Result<ReportDocument> {
    Ok(serde_json::from_reader(input)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{compare_predictors, run_scenario};

    fn sample_runs() -> Vec<RunMetrics> {
        let cfg = ScenarioConfig {
            measured_slots: 5_000,
            target_errors: vec![1e-1, 1e-2, 1e-3],
            seed: 3,
            ..ScenarioConfig::default()
        };
        compare_predictors(&cfg, &[PredictorKind::Genie, PredictorKind::Iir]).unwrap()
    }

    #[test]
    fn csv_has_header_plus_one_row_per_predictor_target() {
        let rows = result_rows(&sample_runs(), None);
        assert_eq!(rows.len(), 6);
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], CSV_HEADER.join(","));
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), 9);
        }
    }

    #[test]
    fn genie_rows_match_their_target_and_ratio_one() {
        let rows = result_rows(&sample_runs(), None);
        for row in rows.iter().filter(|r| r.predictor == "genie") {
            let rel = (row.achieved_outage - row.target_error).abs() / row.target_error;
            assert!(rel < 1e-3, "{row:?}");
            assert!((row.ru_ratio_vs_genie.unwrap() - 1.0).abs() < 1e-12);
        }
        for row in rows.iter().filter(|r| r.predictor == "iir") {
            assert!(row.ru_ratio_vs_genie.unwrap() >= 0.9);
        }
    }

    #[test]
    fn ratio_column_is_empty_without_genie() {
        let cfg = ScenarioConfig {
            measured_slots: 2_000,
            seed: 4,
            ..ScenarioConfig::default()
        };
        let run = run_scenario(&cfg).unwrap();
        let rows = result_rows(&[run], None);
        assert!(rows.iter().all(|r| r.ru_ratio_vs_genie.is_none()));
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().nth(1).unwrap().contains(",,"));
    }

    #[test]
    fn labels_tag_the_predictor_column() {
        let rows = result_rows(&sample_runs(), Some("correlated"));
        assert!(rows.iter().any(|r| r.predictor == "genie:correlated"));
        assert!(rows.iter().any(|r| r.predictor == "iir:correlated"));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let rows = result_rows(&sample_runs(), None);
        let doc = ReportDocument {
            manifest: RunManifest::new("test", ScenarioConfig::default()),
            results: rows,
        };
        let mut buf = Vec::new();
        write_json(&doc, &mut buf).unwrap();
        let back = read_json(&buf[..]).unwrap();
        assert_eq!(back.results.len(), doc.results.len());
        for (a, b) in doc.results.iter().zip(&back.results) {
            assert_eq!(a.achieved_outage.to_bits(), b.achieved_outage.to_bits());
            assert_eq!(a.mean_ru.to_bits(), b.mean_ru.to_bits());
            assert_eq!(a.quantile_coverage.to_bits(), b.quantile_coverage.to_bits());
            assert_eq!(
                a.ru_ratio_vs_genie.map(f64::to_bits),
                b.ru_ratio_vs_genie.map(f64::to_bits)
            );
        }
        assert_eq!(back.manifest.config, doc.manifest.config);
    }

    #[test]
    fn csv_emission_is_deterministic() {
        let rows = result_rows(&sample_runs(), None);
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_csv(&rows, &mut a).unwrap();
        write_csv(&rows, &mut b).unwrap();
        assert_eq!(a, b);
    }
}
