//! Polysemy measurement and trajectory summaries.

use thiserror::Error;

use crate::config::VarianceMode;
use crate::types::Cell;

/// Absolute tolerance below which two consecutive samples count as equal.
pub const DECREASE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("sample variance is undefined for a single chromosome")]
    SampleVarianceUndefined,
    #[error("need at least 2 samples to summarize, got {found}")]
    TooFewSamples { found: usize },
}

/// Spread of a cell's chromosomes: the per-dimension variance of the gene
/// values, summed over all dimensions. Zero iff all chromosomes are
/// identical.
pub fn polysemy(cell: &Cell, mode: VarianceMode) -> Result<f64, MetricsError> {
    let g = cell.chromosome_count();
    let denominator = match mode {
        VarianceMode::Population => g as f64,
        VarianceMode::Sample => {
            if g < 2 {
                return Err(MetricsError::SampleVarianceUndefined);
            }
            (g - 1) as f64
        }
    };
    let mut total = 0.0;
    for k in 0..cell.dimension() {
        let mean = cell
            .chromosomes()
            .iter()
            .map(|ch| ch.genes()[k])
            .sum::<f64>()
            / g as f64;
        let squares = cell
            .chromosomes()
            .iter()
            .map(|ch| {
                let d = ch.genes()[k] - mean;
                d * d
            })
            .sum::<f64>();
        total += squares / denominator;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    /// 0 for the pre-run state, then the 1-based stream position.
    pub step: usize,
    pub polysemy: f64,
}

/// Polysemy of one tracked label over the steps of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    label: String,
    samples: Vec<TrajectorySample>,
}

impl Trajectory {
    pub fn new(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            samples: Vec::new(),
        }
    }

    pub fn push(&mut self, step: usize, polysemy: f64) {
        debug_assert!(
            self.samples.last().map_or(true, |s| s.step < step),
            "steps must increase"
        );
        self.samples.push(TrajectorySample { step, polysemy });
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn samples(&self) -> &[TrajectorySample] {
        &self.samples
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.polysemy)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Shape statistics of one trajectory. `last` maps to the `final` column of
/// the summary format.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySummary {
    pub initial: f64,
    pub last: f64,
    /// Consecutive pairs that drop by more than [`DECREASE_TOLERANCE`].
    pub decrease_count: usize,
    /// Non-decreasing consecutive pairs over all pairs.
    pub monotonicity_ratio: f64,
    /// Largest drop from a running peak to a later sample.
    pub max_drawdown: f64,
}

pub fn summarize(trajectory: &Trajectory) -> Result<TrajectorySummary, MetricsError> {
    summarize_values(&trajectory.values().collect::<Vec<_>>())
}

pub fn summarize_values(values: &[f64]) -> Result<TrajectorySummary, MetricsError> {
    if values.len() < 2 {
        return Err(MetricsError::TooFewSamples {
            found: values.len(),
        });
    }
    let pairs = values.len() - 1;
    let mut decrease_count = 0usize;
    for w in values.windows(2) {
        if w[1] < w[0] - DECREASE_TOLERANCE {
            decrease_count += 1;
        }
    }
    let mut peak = values[0];
    let mut max_drawdown = 0.0f64;
    for &v in &values[1..] {
        max_drawdown = max_drawdown.max(peak - v);
        peak = peak.max(v);
    }
    Ok(TrajectorySummary {
        initial: values[0],
        last: values[values.len() - 1],
        decrease_count,
        monotonicity_ratio: (pairs - decrease_count) as f64 / pairs as f64,
        max_drawdown,
    })
}
