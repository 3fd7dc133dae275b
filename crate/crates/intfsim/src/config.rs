//! Scenario configuration: defaults, presets, strict JSON parsing.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which predictor drives the allocation loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PredictorKind {
    /// Markov-chain quantile predictor.
    Dtmc,
    /// First-order moving-average baseline.
    Iir,
    /// Perfect a-priori knowledge of the next interference value.
    Genie,
}

impl fmt::Display for PredictorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PredictorKind::Dtmc => "dtmc",
            PredictorKind::Iir => "iir",
            PredictorKind::Genie => "genie",
        })
    }
}

impl FromStr for PredictorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dtmc" => Ok(PredictorKind::Dtmc),
            "iir" => Ok(PredictorKind::Iir),
            "genie" => Ok(PredictorKind::Genie),
            other => Err(Error::config(
                "predictor",
                format!("unknown predictor `{other}` (expected dtmc, iir or genie)"),
            )),
        }
    }
}

/// Full description of one simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    /// Mean SNR of the desired link, dB.
    pub mean_snr_db: f64,
    /// Range the per-interferer mean INRs are drawn from, dB.
    pub inr_range_db: (f64, f64),
    /// Number of interferers.
    pub n_interferers: usize,
    /// Packet payload, bits.
    pub payload_bits: u32,
    /// Number of discretized interference states.
    pub state_count: usize,
    /// Risk-sensitivity index eta of the quantile predictor.
    pub confidence: f64,
    /// Forgetting factor of the IIR baseline.
    pub iir_alpha: f64,
    /// Gauss-Markov fading correlation; 0 means i.i.d. per slot.
    pub correlation: f64,
    /// Slots observed before the measured phase.
    pub warmup_length: usize,
    /// Slots in the measured phase.
    pub measured_slots: u64,
    /// Outage targets the allocator serves each slot.
    pub target_errors: Vec<f64>,
    /// Master RNG seed; one seed fixes the whole realization.
    pub seed: u64,
    pub predictor: PredictorKind,
}

impl Default for ScenarioConfig {
    /// Baseline simulation parameters: 20 dB mean SNR, INR range
    /// [-10, 5] dB, 5 interferers, 50-bit packets, 20 states, eta 0.95,
    /// IIR forgetting factor 0.01.
    fn default() -> Self {
        Self {
            mean_snr_db: 20.0,
            inr_range_db: (-10.0, 5.0),
            n_interferers: 5,
            payload_bits: 50,
            state_count: 20,
            confidence: 0.95,
            iir_alpha: 0.01,
            correlation: 0.0,
            warmup_length: 1000,
            measured_slots: 1_000_000,
            target_errors: vec![1e-1, 1e-2, 1e-3],
            seed: 1,
            predictor: PredictorKind::Dtmc,
        }
    }
}

/// The three interference scenarios evaluated in the comparison figures.
pub const PRESETS: [&str; 3] = [
    "strong-snr-strong-interference",
    "strong-snr-weak-interference",
    "weak-snr-weak-interference",
];

impl ScenarioConfig {
    /// Apply a named SNR/INR preset on top of this config.
    pub fn with_preset(mut self, name: &str) -> Result<Self> {
        match name {
            "strong-snr-strong-interference" => {
                self.mean_snr_db = 20.0;
                self.inr_range_db = (0.0, 20.0);
            }
            "strong-snr-weak-interference" => {
                self.mean_snr_db = 20.0;
                self.inr_range_db = (-5.0, 5.0);
            }
            "weak-snr-weak-interference" => {
                self.mean_snr_db = 5.0;
                self.inr_range_db = (-5.0, 5.0);
            }
            other => {
                return Err(Error::config(
                    "preset",
                    format!("unknown preset `{other}` (expected one of {PRESETS:?})"),
                ))
            }
        }
        Ok(self)
    }

    /// Check every invariant; errors name the offending key.
    pub fn validate(&self) -> Result<()> {
        if self.inr_range_db.0 > self.inr_range_db.1 {
            return Err(Error::config(
                "inr_range_db",
                format!(
                    "inverted range [{}, {}]",
                    self.inr_range_db.0, self.inr_range_db.1
                ),
            ));
        }
        if self.mean_snr_db < self.inr_range_db.1 {
            return Err(Error::config(
                "mean_snr_db",
                "mean SNR must be at least the maximum mean INR (users attach to the strongest transmitter)",
            ));
        }
        if self.payload_bits < 1 {
            return Err(Error::config("payload_bits", "must be >= 1"));
        }
        if self.state_count < 2 {
            return Err(Error::config("state_count", "need at least 2 states"));
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(Error::config(
                "confidence",
                format!("must lie in (0, 1), got {}", self.confidence),
            ));
        }
        if !(self.iir_alpha > 0.0 && self.iir_alpha < 1.0) {
            return Err(Error::config(
                "iir_alpha",
                format!("must lie in (0, 1), got {}", self.iir_alpha),
            ));
        }
        if !(0.0..1.0).contains(&self.correlation) {
            return Err(Error::config(
                "correlation",
                format!("must lie in [0, 1), got {}", self.correlation),
            ));
        }
        if self.warmup_length < 2 {
            return Err(Error::config("warmup_length", "need at least 2 slots"));
        }
        if self.measured_slots < 1 {
            return Err(Error::config("measured_slots", "need at least 1 slot"));
        }
        if self.target_errors.is_empty() {
            return Err(Error::config("target_errors", "need at least one target"));
        }
        for &t in &self.target_errors {
            if !(t > 0.0 && t <= 0.5) {
                return Err(Error::config(
                    "target_errors",
                    format!("targets must lie in (0, 0.5], got {t}"),
                ));
            }
        }
        Ok(())
    }
}

/// On-disk form: every key optional, unknown keys rejected. Omitted keys
/// fall back to the defaults; a `preset` is applied before explicit keys.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    preset: Option<String>,
    mean_snr_db: Option<f64>,
    inr_range_db: Option<(f64, f64)>,
    n_interferers: Option<usize>,
    payload_bits: Option<u32>,
    state_count: Option<usize>,
    confidence: Option<f64>,
    iir_alpha: Option<f64>,
    correlation: Option<f64>,
    warmup_length: Option<usize>,
    measured_slots: Option<u64>,
    target_errors: Option<Vec<f64>>,
    seed: Option<u64>,
    predictor: Option<String>,
}

/// Parse a JSON config string into a validated [`ScenarioConfig`].
pub fn parse_config_str(text: &str) -> Result<ScenarioConfig> {
    let file: ConfigFile =
        serde_json::from_str(text).map_err(|e| Error::config("<config>", e.to_string()))?;
    let mut cfg = ScenarioConfig::default();
    if let Some(name) = &file.preset {
        cfg = cfg.with_preset(name)?;
    }
    if let Some(v) = file.mean_snr_db {
        cfg.mean_snr_db = v;
    }
    if let Some(v) = file.inr_range_db {
        cfg.inr_range_db = v;
    }
    if let Some(v) = file.n_interferers {
        cfg.n_interferers = v;
    }
    if let Some(v) = file.payload_bits {
        cfg.payload_bits = v;
    }
    if let Some(v) = file.state_count {
        cfg.state_count = v;
    }
    if let Some(v) = file.confidence {
        cfg.confidence = v;
    }
    if let Some(v) = file.iir_alpha {
        cfg.iir_alpha = v;
    }
    if let Some(v) = file.correlation {
        cfg.correlation = v;
    }
    if let Some(v) = file.warmup_length {
        cfg.warmup_length = v;
    }
    if let Some(v) = file.measured_slots {
        cfg.measured_slots = v;
    }
    if let Some(v) = file.target_errors {
        cfg.target_errors = v;
    }
    if let Some(v) = file.seed {
        cfg.seed = v;
    }
    if let Some(v) = &file.predictor {
        cfg.predictor = v.parse()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Read and parse a JSON config file.
pub fn parse_config(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path)?;
    parse_config_str(&text)
}
