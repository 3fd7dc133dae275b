//! Discrete-time Markov chain interference predictor.
//!
//! The continuous interference range observed during warm-up is discretized
//! into `L` states with risk-sensitive square-root spacing: the *square* of
//! the range is split into `L` equal parts and the state boundaries are the
//! square roots of those split points. State widths therefore shrink toward
//! high interference, so strong interference is resolved more finely than
//! weak interference. The bottom boundary is pinned at 0 and the top at
//! infinity so any future value maps to a state.
//!
//! Prediction at confidence `eta` walks the transition row of the current
//! state and returns the right endpoint of the smallest state `j` whose
//! cumulative probability reaches `eta`. The unbounded top state uses a
//! finite dummy endpoint `2 * I_{L-1} - I_{L-2}` instead of its infinite
//! boundary. After each observed transition `i -> j` the row is updated with
//! `p_ij += omega_i` and renormalized, where `omega_i` shrinks inversely
//! with the number of samples seen in state `i`.

use std::io::Write;

use crate::error::{Error, Result};

/// Hard cap on the per-row learning rate (`omega << 1`).
pub const MAX_LEARNING_RATE: f64 = 0.1;

/// Default proportionality constant for the visit-count learning rate.
pub const DEFAULT_LEARNING_SCALE: f64 = 1.0;

/// Discretized interference state space. States are indexed `0..L`; state
/// `l` covers the half-open interval `[boundaries[l], boundaries[l + 1])`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpace {
    boundaries: Vec<f64>,
}

impl StateSpace {
    /// Build the space from warm-up samples: with `m = max(samples)`, the
    /// interior boundaries are `m * sqrt(l / L)` for `l = 1..L-1`.
    pub fn from_warmup(samples: &[f64], state_count: usize) -> Result<Self> {
        if state_count < 2 {
            return Err(Error::invalid(
                "state_count",
                format!("need at least 2 states, got {state_count}"),
            ));
        }
        if samples.is_empty() {
            return Err(Error::DegenerateWarmup {
                reason: "no warm-up samples".into(),
            });
        }
        if samples.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::invalid(
                "warmup_samples",
                "samples must be finite and >= 0",
            ));
        }
        let first = samples[0];
        if samples.iter().all(|&x| x == first) {
            return Err(Error::DegenerateWarmup {
                reason: "all warm-up samples are identical".into(),
            });
        }
        let max = samples.iter().cloned().fold(f64::MIN, f64::max);
        let l = state_count;
        let mut boundaries = Vec::with_capacity(l + 1);
        boundaries.push(0.0);
        for k in 1..l {
            boundaries.push(max * (k as f64 / l as f64).sqrt());
        }
        boundaries.push(f64::INFINITY);
        Ok(Self { boundaries })
    }

    pub fn num_states(&self) -> usize {
        self.boundaries.len() - 1
    }

    /// All `L + 1` boundaries including the leading 0 and trailing infinity.
    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    /// Map an interference value to its state index. Values at or above the
    /// last finite boundary land in the top state.
    pub fn state_of(&self, interference: f64) -> Result<usize> {
        if interference.is_nan() || interference < 0.0 {
            return Err(Error::invalid(
                "interference",
                format!("must be >= 0, got {interference}"),
            ));
        }
        let interior = &self.boundaries[1..self.boundaries.len() - 1];
        Ok(interior.partition_point(|b| *b <= interference))
    }

    /// Right endpoint of a state; infinite for the top state.
    pub fn right_endpoint(&self, state: usize) -> f64 {
        self.boundaries[state + 1]
    }

    /// Finite surrogate for the top state's right endpoint.
    pub fn dummy_endpoint(&self) -> f64 {
        let l = self.num_states();
        2.0 * self.boundaries[l - 1] - self.boundaries[l - 2]
    }
}

/// Row-stochastic transition matrix with per-state visit counts.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionModel {
    state_count: usize,
    probs: Vec<f64>, // row-major L x L
    visits: Vec<u64>,
    learning_scale: f64,
}

impl TransitionModel {
    /// All rows uniform, no visits recorded.
    pub fn uniform(state_count: usize, learning_scale: f64) -> Result<Self> {
        if state_count < 2 {
            return Err(Error::invalid("state_count", "need at least 2 states"));
        }
        if learning_scale.is_nan() || learning_scale <= 0.0 {
            return Err(Error::invalid("learning_scale", "must be > 0"));
        }
        Ok(Self {
            state_count,
            probs: vec![1.0 / state_count as f64; state_count * state_count],
            visits: vec![0; state_count],
            learning_scale,
        })
    }

    /// Empirical transition frequencies of a state sequence: `p_ij` is the
    /// number of observed `i -> j` pairs over the number of visits to `i`
    /// among the first `T - 1` samples. Rows of never-visited states stay
    /// uniform.
    pub fn from_state_sequence(
        states: &[usize],
        state_count: usize,
        learning_scale: f64,
    ) -> Result<Self> {
        if states.len() < 2 {
            return Err(Error::TraceTooShort {
                need: 2,
                got: states.len(),
            });
        }
        if let Some(&bad) = states.iter().find(|&&s| s >= state_count) {
            return Err(Error::invalid(
                "states",
                format!("state index {bad} out of range 0..{state_count}"),
            ));
        }
        let mut model = Self::uniform(state_count, learning_scale)?;
        let mut counts = vec![0u64; state_count * state_count];
        for pair in states.windows(2) {
            counts[pair[0] * state_count + pair[1]] += 1;
            model.visits[pair[0]] += 1;
        }
        for i in 0..state_count {
            let n = model.visits[i];
            if n > 0 {
                for j in 0..state_count {
                    model.probs[i * state_count + j] = counts[i * state_count + j] as f64 / n as f64;
                }
            }
        }
        Ok(model)
    }

    /// Discretize a raw interference trace and estimate from the resulting
    /// state sequence.
    pub fn from_trace(trace: &[f64], space: &StateSpace, learning_scale: f64) -> Result<Self> {
        if trace.len() < 2 {
            return Err(Error::TraceTooShort {
                need: 2,
                got: trace.len(),
            });
        }
        let states = trace
            .iter()
            .map(|&x| space.state_of(x))
            .collect::<Result<Vec<_>>>()?;
        Self::from_state_sequence(&states, space.num_states(), learning_scale)
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.probs[i * self.state_count..(i + 1) * self.state_count]
    }

    pub fn probability(&self, i: usize, j: usize) -> f64 {
        self.probs[i * self.state_count + j]
    }

    pub fn visit_count(&self, i: usize) -> u64 {
        self.visits[i]
    }

    /// Smallest state `j` whose cumulative row probability reaches
    /// `confidence`. Ties resolve to the smaller index.
    pub fn predict_state(&self, from: usize, confidence: f64) -> usize {
        let row = self.row(from);
        let mut acc = 0.0;
        for (j, p) in row.iter().enumerate() {
            acc += p;
            if acc >= confidence {
                return j;
            }
        }
        // Rounding can leave acc marginally below confidence at the end.
        self.state_count - 1
    }

    /// Visit-count learning rate: `min(c / max(n_i, 1), MAX_LEARNING_RATE)`.
    pub fn learning_rate(&self, i: usize) -> f64 {
        (self.learning_scale / (self.visits[i].max(1) as f64)).min(MAX_LEARNING_RATE)
    }

    /// Online update for an observed transition `from -> to`: bump the entry
    /// by the state's learning rate, renormalize the row, count the visit.
    pub fn record_transition(&mut self, from: usize, to: usize) {
        let rate = self.learning_rate(from);
        self.record_transition_with_rate(from, to, rate);
    }

    /// Same as [`record_transition`](Self::record_transition) with an
    /// explicit rate.
    pub fn record_transition_with_rate(&mut self, from: usize, to: usize, rate: f64) {
        let l = self.state_count;
        self.probs[from * l + to] += rate;
        let inv = 1.0 / (1.0 + rate);
        for p in &mut self.probs[from * l..(from + 1) * l] {
            *p *= inv;
        }
        self.visits[from] += 1;
    }

    /// Dump the matrix as CSV, row-major, 15 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for i in 0..self.state_count {
            let row = self
                .row(i)
                .iter()
                .map(|p| format!("{p:.14e}"))
                .collect::<Vec<_>>()
                .join(",");
            writeln!(out, "{row}")?;
        }
        Ok(())
    }
}

/// Predicted next-slot interference from state `current` at confidence
/// `confidence`: the right endpoint of the predicted state, or the dummy
/// endpoint when the top state is predicted.
pub fn predict_next(
    model: &TransitionModel,
    current: usize,
    confidence: f64,
    space: &StateSpace,
) -> f64 {
    let j = model.predict_state(current, confidence);
    if j == space.num_states() - 1 {
        space.dummy_endpoint()
    } else {
        space.right_endpoint(j)
    }
}

/// Knobs of the DTMC predictor.
#[derive(Debug, Clone, Copy)]
pub struct PredictorConfig {
    pub state_count: usize,
    /// Confidence level in (0, 1); the predicted interference exceeds the
    /// actual with probability at least this.
    pub confidence: f64,
    pub learning_scale: f64,
}

impl PredictorConfig {
    pub fn new(state_count: usize, confidence: f64) -> Result<Self> {
        if !(confidence > 0.0 && confidence < 1.0) {
            return Err(Error::invalid(
                "confidence",
                format!("must lie in (0, 1), got {confidence}"),
            ));
        }
        if state_count < 2 {
            return Err(Error::invalid("state_count", "need at least 2 states"));
        }
        Ok(Self {
            state_count,
            confidence,
            learning_scale: DEFAULT_LEARNING_SCALE,
        })
    }
}

/// Stateful predictor: frozen state space, online-updated transition model,
/// and the state of the latest observed sample.
#[derive(Debug, Clone)]
pub struct DtmcPredictor {
    space: StateSpace,
    model: TransitionModel,
    current_state: usize,
    confidence: f64,
}

impl DtmcPredictor {
    /// Build the state space and batch-estimate the initial matrix from the
    /// warm-up trace; the predictor starts in the state of the last sample.
    pub fn from_warmup(warmup: &[f64], config: &PredictorConfig) -> Result<Self> {
        let space = StateSpace::from_warmup(warmup, config.state_count)?;
        let model = TransitionModel::from_trace(warmup, &space, config.learning_scale)?;
        let current_state = space.state_of(*warmup.last().unwrap())?;
        Ok(Self {
            space,
            model,
            current_state,
            confidence: config.confidence,
        })
    }

    /// Predicted interference level for the next slot.
    pub fn predict(&self) -> f64 {
        predict_next(&self.model, self.current_state, self.confidence, &self.space)
    }

    /// Feed back the actual interference of the slot just completed.
    pub fn observe(&mut self, interference: f64) -> Result<()> {
        let next = self.space.state_of(interference)?;
        self.model.record_transition(self.current_state, next);
        self.current_state = next;
        Ok(())
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn model(&self) -> &TransitionModel {
        &self.model
    }

    pub fn current_state(&self) -> usize {
        self.current_state
    }

    pub fn confidence(&self) -> f64 {
        self.confidence
    }
}
