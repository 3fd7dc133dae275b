//! Comparison predictors: first-order IIR moving average and the
//! genie-aided (perfect-knowledge) estimator.

use crate::error::{Error, Result};

/// First-order IIR interference estimator,
/// `est' = alpha * observed + (1 - alpha) * est`,
/// seeded with the first observed sample. `alpha` is the forgetting factor:
/// the weight of the newest observation.
#[derive(Debug, Clone, Copy)]
pub struct IirFilter {
    alpha: f64,
    estimate: Option<f64>,
}

impl IirFilter {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::invalid(
                "iir_alpha",
                format!("forgetting factor must lie in (0, 1), got {alpha}"),
            ));
        }
        Ok(Self {
            alpha,
            estimate: None,
        })
    }

    /// Feed one interference sample (the most recent value fed back at
    /// prediction time).
    pub fn observe(&mut self, interference: f64) {
        self.estimate = Some(match self.estimate {
            None => interference,
            Some(est) => self.alpha * interference + (1.0 - self.alpha) * est,
        });
    }

    /// Current estimate, used as the next-slot prediction. `None` until the
    /// first sample arrives.
    pub fn predict(&self) -> Option<f64> {
        self.estimate
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Genie-aided estimator: the exact next-slot interference is known a
/// priori, so the prediction is the actual value itself.
pub fn genie_predict(actual_next: f64) -> f64 {
    actual_next
}
