//! Full experiment runs: evolve a population over an ordered corpus while
//! sampling tracked polysemy, and compare orderings across seeds.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::config::ModelConfig;
use crate::embeddings::{mix_seeds, BaseVectors};
use crate::evolution::{CellPopulation, EvolveError};
use crate::harness::ordering::{apply_ordering, OrderingError, OrderingSpec};
use crate::metrics::{polysemy, summarize, MetricsError, Trajectory, TrajectorySummary};
use crate::types::{Corpus, ItemId};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("nothing to track: give at least one item")]
    NothingTracked,
    #[error("the corpus has no units")]
    EmptyCorpus,
    #[error("need at least 2 orderings to compare, got {0}")]
    TooFewOrderings(usize),
    #[error("need at least 1 sweep seed")]
    NoSeeds,
    #[error(transparent)]
    Ordering(#[from] OrderingError),
    #[error(transparent)]
    Evolve(#[from] EvolveError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// One run: the schedule it used, the sampled trajectory, and its summary.
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub ordering: OrderingSpec,
    pub trajectory: Trajectory,
    pub summary: TrajectorySummary,
}

fn tracked_polysemy(population: &CellPopulation, tracked: &[ItemId]) -> f64 {
    tracked
        .iter()
        .map(|item| {
            let cell = population
                .cell(item)
                .expect("tracked items are initialized with the population");
            polysemy(cell, population.config().variance_mode)
                .expect("validated configs have at least 2 chromosomes")
        })
        .sum()
}

/// Evolves a fresh population over `corpus` reordered by `ordering`, sampling
/// the summed polysemy of `tracked` before the run and after every unit.
///
/// Tracked items get cells even when the corpus never mentions them.
pub fn run_experiment(
    corpus: &Corpus,
    base: &BaseVectors,
    ordering: &OrderingSpec,
    config: &ModelConfig,
    tracked: &[ItemId],
) -> Result<ExperimentResult, ExperimentError> {
    if tracked.is_empty() {
        return Err(ExperimentError::NothingTracked);
    }
    if corpus.is_empty() {
        return Err(ExperimentError::EmptyCorpus);
    }
    let ordered = apply_ordering(corpus, ordering)?;

    let vocabulary: BTreeSet<ItemId> = corpus
        .vocabulary()
        .iter()
        .chain(tracked)
        .cloned()
        .collect();
    let mut population =
        CellPopulation::initialize(base.clone(), vocabulary, config.clone())?;

    let mut trajectory = Trajectory::new(tracked.join("+"));
    trajectory.push(0, tracked_polysemy(&population, tracked));
    population.run(&ordered, |step, pop| {
        trajectory.push(step.step, tracked_polysemy(pop, tracked));
    })?;

    let summary = summarize(&trajectory)?;
    Ok(ExperimentResult {
        ordering: ordering.clone(),
        trajectory,
        summary,
    })
}

/// Mean, minimum, and maximum of one statistic across seeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatRange {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl StatRange {
    fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let mut n = 0usize;
        let mut sum = 0.0;
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values {
            n += 1;
            sum += v;
            min = min.min(v);
            max = max.max(v);
        }
        assert!(n > 0, "StatRange over an empty set");
        Self {
            mean: sum / n as f64,
            min,
            max,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OrderingStats {
    pub label: String,
    pub decrease_count: StatRange,
    pub monotonicity_ratio: StatRange,
    pub max_drawdown: StatRange,
    pub final_polysemy: StatRange,
}

/// One run of a comparison: which ordering slot it came from and the sweep
/// seed it used.
#[derive(Debug, Clone)]
pub struct ComparisonRun {
    pub label: String,
    pub seed: u64,
    pub result: ExperimentResult,
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub runs: Vec<ComparisonRun>,
    pub per_ordering: Vec<OrderingStats>,
}

/// Runs every ordering with every sweep seed over the same corpus and
/// embeddings. Each run reorders with a seed mixed from the ordering's own
/// seed and the sweep seed, so seed sweeps never repeat a schedule across
/// ordering slots.
pub fn compare_orderings(
    corpus: &Corpus,
    base: &BaseVectors,
    orderings: &[OrderingSpec],
    config: &ModelConfig,
    tracked: &[ItemId],
    seeds: &[u64],
) -> Result<ComparisonReport, ExperimentError> {
    if orderings.len() < 2 {
        return Err(ExperimentError::TooFewOrderings(orderings.len()));
    }
    if seeds.is_empty() {
        return Err(ExperimentError::NoSeeds);
    }

    let mut runs = Vec::with_capacity(orderings.len() * seeds.len());
    let mut per_ordering = Vec::with_capacity(orderings.len());
    for spec in orderings {
        let mut summaries = Vec::with_capacity(seeds.len());
        for &seed in seeds {
            let effective = spec.with_seed(mix_seeds(spec.seed, seed));
            let result = run_experiment(corpus, base, &effective, config, tracked)?;
            summaries.push(result.summary);
            runs.push(ComparisonRun {
                label: spec.to_string(),
                seed,
                result,
            });
        }
        per_ordering.push(OrderingStats {
            label: spec.to_string(),
            decrease_count: StatRange::of(
                summaries.iter().map(|s| s.decrease_count as f64),
            ),
            monotonicity_ratio: StatRange::of(
                summaries.iter().map(|s| s.monotonicity_ratio),
            ),
            max_drawdown: StatRange::of(summaries.iter().map(|s| s.max_drawdown)),
            final_polysemy: StatRange::of(summaries.iter().map(|s| s.last)),
        });
    }
    Ok(ComparisonReport { runs, per_ordering })
}
