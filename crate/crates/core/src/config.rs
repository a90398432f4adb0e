//! Run configuration and its validation.

use std::fmt;

use thiserror::Error;

/// How strongly the unit centroid pulls the selected chromosome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfluenceMode {
    /// Fixed interpolation weight `alpha`.
    Constant,
    /// Weight `min(1, alpha / r^2)` where `r` is the chromosome's distance to
    /// the centroid; full adoption when `r == 0`.
    InverseSquare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMetric {
    Euclidean,
    Cosine,
}

/// Denominator used by the per-dimension gene variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarianceMode {
    /// Divide by `g`.
    Population,
    /// Divide by `g - 1`; undefined for a single chromosome.
    Sample,
}

/// Sign of the off-segment perturbation applied at initialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OffSegmentSign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    /// Gene count per chromosome; must be a positive multiple of `chromosomes`.
    pub dimension: usize,
    /// Chromosomes per cell; at least 2.
    pub chromosomes: usize,
    /// Full passes over the corpus; at least 1.
    pub rounds: usize,
    /// Crossover weight in `[0, 1]`.
    pub alpha: f64,
    /// Initialization perturbation in `(0, 1)`.
    pub epsilon: f64,
    pub influence_mode: InfluenceMode,
    pub distance_metric: DistanceMetric,
    pub variance_mode: VarianceMode,
    pub off_segment_sign: OffSegmentSign,
    /// Seed for corpus reordering and synthetic fallback vectors.
    pub rng_seed: u64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            dimension: 50,
            chromosomes: 5,
            rounds: 1,
            alpha: 0.2,
            epsilon: 0.01,
            influence_mode: InfluenceMode::Constant,
            distance_metric: DistanceMetric::Euclidean,
            variance_mode: VarianceMode::Population,
            off_segment_sign: OffSegmentSign::Positive,
            rng_seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigViolation {
    #[error("dimension must be positive")]
    DimensionZero,
    #[error("need at least 2 chromosomes, got {0}")]
    TooFewChromosomes(usize),
    #[error("dimension {dimension} is not divisible by chromosome count {chromosomes}")]
    DimensionNotDivisible { dimension: usize, chromosomes: usize },
    #[error("rounds must be positive")]
    RoundsZero,
    #[error("alpha must lie in [0, 1], got {0}")]
    AlphaOutOfRange(f64),
    #[error("epsilon must lie in (0, 1), got {0}")]
    EpsilonOutOfRange(f64),
}

/// Every violated invariant of a [`ModelConfig`], not just the first.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct InvalidConfig {
    pub violations: Vec<ConfigViolation>,
}

impl fmt::Display for InvalidConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl ModelConfig {
    pub fn validate(&self) -> Result<(), InvalidConfig> {
        let mut violations = Vec::new();
        if self.dimension == 0 {
            violations.push(ConfigViolation::DimensionZero);
        }
        if self.chromosomes < 2 {
            violations.push(ConfigViolation::TooFewChromosomes(self.chromosomes));
        }
        if self.dimension > 0
            && self.chromosomes > 0
            && self.dimension % self.chromosomes != 0
        {
            violations.push(ConfigViolation::DimensionNotDivisible {
                dimension: self.dimension,
                chromosomes: self.chromosomes,
            });
        }
        if self.rounds == 0 {
            violations.push(ConfigViolation::RoundsZero);
        }
        if !(self.alpha >= 0.0 && self.alpha <= 1.0) {
            violations.push(ConfigViolation::AlphaOutOfRange(self.alpha));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            violations.push(ConfigViolation::EpsilonOutOfRange(self.epsilon));
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(InvalidConfig { violations })
        }
    }

    /// Genes per chromosome segment.
    pub fn segment_length(&self) -> usize {
        self.dimension / self.chromosomes
    }
}
