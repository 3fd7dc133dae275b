//! Interference and desired-link channel model.
//!
//! A fixed set of `N` interferers, each with a mean INR drawn once per run,
//! fades independently with a single-antenna Rayleigh block-fading model.
//! The receiver-side observable is the aggregate interference-plus-noise
//! level normalized by the noise power,
//!
//! ```text
//! I = 1 + sum_k inr_k * |g_k|^2
//! ```
//!
//! so `I >= 1` always (the `1` is the noise floor) and the ratio
//! `sinr = snr / I` is a genuine SINR. Time correlation is modeled by a
//! first-order Gauss-Markov recursion on the complex gains,
//! `g' = rho * g + sqrt(1 - rho^2) * w` with `w ~ CN(0, 1)`, which keeps
//! `|g|^2` unit-mean exponential in steady state; `rho = 0` gives i.i.d.
//! Rayleigh fading per slot.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{Error, Result};

/// Convert decibels to a linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Convert a linear power ratio to decibels.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Draw `n` mean INRs, uniform in dB over `inr_range_db`, returned in
/// linear scale. Deterministic given the RNG state.
pub fn sample_mean_inrs<R: Rng + ?Sized>(
    n: usize,
    inr_range_db: (f64, f64),
    rng: &mut R,
) -> Result<Vec<f64>> {
    let (lo, hi) = inr_range_db;
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(Error::invalid(
            "inr_range_db",
            format!("inverted range [{lo}, {hi}]"),
        ));
    }
    Ok((0..n)
        .map(|_| db_to_linear(rng.gen_range(lo..=hi)))
        .collect())
}

/// A fixed population of interferers with per-interferer fading state.
#[derive(Debug, Clone)]
pub struct InterfererSet {
    mean_inrs: Vec<f64>,
    correlation: f64,
    gains: Vec<Complex64>,
}

impl InterfererSet {
    /// Build from explicit mean INRs (linear scale). Gains are initialized
    /// from the stationary CN(0, 1) distribution so no burn-in is needed.
    pub fn new<R: Rng + ?Sized>(
        mean_inrs: Vec<f64>,
        correlation: f64,
        rng: &mut R,
    ) -> Result<Self> {
        if !(0.0..1.0).contains(&correlation) {
            return Err(Error::invalid(
                "correlation",
                format!("must lie in [0, 1), got {correlation}"),
            ));
        }
        if mean_inrs.iter().any(|&b| !b.is_finite() || b < 0.0) {
            return Err(Error::invalid("mean_inrs", "must be finite and >= 0"));
        }
        let gains = (0..mean_inrs.len()).map(|_| unit_cn(rng)).collect();
        Ok(Self {
            mean_inrs,
            correlation,
            gains,
        })
    }

    /// Draw a fresh topology: `n` mean INRs uniform in dB over `inr_range_db`.
    pub fn sample<R: Rng + ?Sized>(
        n: usize,
        inr_range_db: (f64, f64),
        correlation: f64,
        rng: &mut R,
    ) -> Result<Self> {
        let mean_inrs = sample_mean_inrs(n, inr_range_db, rng)?;
        Self::new(mean_inrs, correlation, rng)
    }

    /// Advance every complex gain one slot with the Gauss-Markov recursion.
    pub fn step_fading<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let rho = self.correlation;
        let innovation_scale = (1.0 - rho * rho).sqrt();
        for g in &mut self.gains {
            let w = unit_cn(rng);
            *g = rho * *g + innovation_scale * w;
        }
    }

    /// Aggregate interference-plus-noise over noise: `1 + sum inr_k |g_k|^2`.
    pub fn aggregate_interference(&self) -> f64 {
        1.0 + self
            .mean_inrs
            .iter()
            .zip(&self.gains)
            .map(|(inr, g)| inr * g.norm_sqr())
            .sum::<f64>()
    }

    pub fn mean_inrs(&self) -> &[f64] {
        &self.mean_inrs
    }

    pub fn correlation(&self) -> f64 {
        self.correlation
    }

    pub fn gains(&self) -> &[Complex64] {
        &self.gains
    }

    pub fn len(&self) -> usize {
        self.mean_inrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mean_inrs.is_empty()
    }
}

/// Desired link with known mean SNR; the per-slot SNR is exposed to the
/// allocator (perfect CSI assumption).
#[derive(Debug, Clone, Copy)]
pub struct DesiredLink {
    mean_snr: f64,
}

impl DesiredLink {
    /// Mean SNR as a linear power ratio (`>= 0`; zero is the degenerate
    /// no-signal case).
    pub fn new(mean_snr: f64) -> Result<Self> {
        if !mean_snr.is_finite() || mean_snr < 0.0 {
            return Err(Error::invalid(
                "mean_snr",
                format!("must be finite and >= 0, got {mean_snr}"),
            ));
        }
        Ok(Self { mean_snr })
    }

    pub fn from_db(mean_snr_db: f64) -> Self {
        Self {
            mean_snr: db_to_linear(mean_snr_db),
        }
    }

    pub fn mean_snr(&self) -> f64 {
        self.mean_snr
    }

    /// Rayleigh block fading: the instantaneous SNR is a unit-mean
    /// exponential scaled by the mean SNR.
    pub fn sample_snr<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let e: f64 = Exp1.sample(rng);
        self.mean_snr * e
    }
}

/// One draw of a circularly-symmetric complex Gaussian with unit variance
/// (`E|w|^2 = 1`), i.e. each component has variance 1/2.
fn unit_cn<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}
