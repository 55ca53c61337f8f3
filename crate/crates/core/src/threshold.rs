//! Entropy-of-PDF threshold selection.
//!
//! For a candidate split `t` with lower mass `Lo` and upper mass `U`, the
//! contrast ratio `r = (U - Lo + alpha) / (U + Lo + alpha)` is scored as
//! `r * ln(r + beta)`. The threshold is the admissible `t` with the highest
//! score; a candidate is admissible when both sides keep at least
//! `min_segment_mass` of the pixels.

use crate::error::{Error, Result};
use crate::histogram::Histogram;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyParams {
    /// Guard added to numerator and denominator of the ratio.
    pub alpha: f64,
    /// Offset inside the logarithm; `>= 1` keeps it finite for `r > -1`.
    pub beta: f64,
    /// Minimum mass each side of the split must hold.
    pub min_segment_mass: f64,
}

impl Default for EntropyParams {
    fn default() -> Self {
        Self {
            alpha: 1e-6,
            beta: 1.0,
            min_segment_mass: 0.01,
        }
    }
}

impl EntropyParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be positive, got {}",
                self.alpha
            )));
        }
        if !(self.beta >= 1.0 && self.beta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "beta must be at least 1, got {}",
                self.beta
            )));
        }
        if !(0.0..0.5).contains(&self.min_segment_mass) {
            return Err(Error::InvalidParameter(format!(
                "min_segment_mass must be in [0, 0.5), got {}",
                self.min_segment_mass
            )));
        }
        Ok(())
    }
}

/// Score of a split given its lower and upper probability masses.
pub fn split_score(lower_mass: f64, upper_mass: f64, params: &EntropyParams) -> f64 {
    let ratio = (upper_mass - lower_mass + params.alpha) / (upper_mass + lower_mass + params.alpha);
    ratio * (ratio + params.beta).ln()
}

/// Score of splitting `h` between levels `t` and `t + 1`.
pub fn entropy_score(h: &Histogram, t: usize, params: &EntropyParams) -> f64 {
    let (lower, upper) = masses(h, h.count_through(t));
    split_score(lower, upper, params)
}

fn masses(h: &Histogram, lower_count: u64) -> (f64, f64) {
    let n = h.total() as f64;
    (lower_count as f64 / n, (h.total() - lower_count) as f64 / n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdResult {
    /// Selected split level: the lower segment is `[0, t]`.
    pub t: usize,
    /// Admissible thresholds in increasing order.
    pub candidates: Vec<usize>,
    /// `scores[i]` is the score of `candidates[i]`.
    pub scores: Vec<f64>,
}

impl ThresholdResult {
    pub fn score_of(&self, t: usize) -> Option<f64> {
        self.candidates
            .binary_search(&t)
            .ok()
            .map(|i| self.scores[i])
    }

    pub fn best_score(&self) -> f64 {
        self.score_of(self.t).expect("selected threshold is a candidate")
    }
}

/// Exhaustive search over `[0, L - 2]`; ties resolve to the smallest `t`.
pub fn find_threshold(h: &Histogram, params: &EntropyParams) -> Result<ThresholdResult> {
    params.validate()?;
    if h.occupied_levels() < 2 {
        return Err(Error::NoValidThreshold);
    }

    let mut candidates = Vec::new();
    let mut scores = Vec::new();
    let mut lower_count = 0u64;
    for t in 0..h.levels() - 1 {
        lower_count += h.counts()[t];
        let (lower, upper) = masses(h, lower_count);
        if lower >= params.min_segment_mass && upper >= params.min_segment_mass {
            candidates.push(t);
            scores.push(split_score(lower, upper, params));
        }
    }

    let mut best: Option<usize> = None;
    for (i, &score) in scores.iter().enumerate() {
        if best.is_none_or(|b| score > scores[b]) {
            best = Some(i);
        }
    }
    let best = best.ok_or(Error::NoValidThreshold)?;
    Ok(ThresholdResult {
        t: candidates[best],
        candidates,
        scores,
    })
}
