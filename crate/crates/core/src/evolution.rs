//! The evolution engine: segment-delta initialization and centroid-directed
//! crossover over a stream of co-existence units.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::config::{DistanceMetric, InfluenceMode, InvalidConfig, ModelConfig, OffSegmentSign};
use crate::embeddings::{BaseVectors, EmbeddingError};
use crate::types::{Cell, Chromosome, CoexistenceUnit, Corpus, ItemId};

#[derive(Debug, Error)]
pub enum EvolveError {
    #[error(transparent)]
    InvalidConfig(#[from] InvalidConfig),
    #[error("base vectors have dimension {base}, configuration expects {config}")]
    DimensionMismatch { config: usize, base: usize },
    #[error("co-existence unit {id} has no items")]
    EmptyUnit { id: usize },
    #[error("no cell for item {item:?}")]
    MissingCell { item: String },
    #[error("round {round}, unit {unit}: {source}")]
    Unit {
        round: usize,
        unit: usize,
        #[source]
        source: Box<EvolveError>,
    },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// Mean of all member chromosomes of one unit, frozen before any update.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitCentroid {
    pub vector: Vec<f64>,
}

/// Distance under the configured metric.
///
/// Cosine distance is `1 - cos(a, b)`, clamped to be non-negative; if exactly
/// one vector is zero the distance is 1, if both are zero it is 0.
pub fn distance(metric: DistanceMetric, a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    match metric {
        DistanceMetric::Euclidean => a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt(),
        DistanceMetric::Cosine => {
            let mut dot = 0.0;
            let mut na = 0.0;
            let mut nb = 0.0;
            for (x, y) in a.iter().zip(b) {
                dot += x * y;
                na += x * x;
                nb += y * y;
            }
            match (na == 0.0, nb == 0.0) {
                (true, true) => 0.0,
                (true, false) | (false, true) => 1.0,
                (false, false) => (1.0 - dot / (na.sqrt() * nb.sqrt())).max(0.0),
            }
        }
    }
}

/// Index of the chromosome nearest to the centroid; ties go to the lowest
/// index.
pub fn select_chromosome(cell: &Cell, centroid: &UnitCentroid, metric: DistanceMetric) -> usize {
    let mut best = 0;
    let mut best_dist = f64::INFINITY;
    for (j, ch) in cell.chromosomes().iter().enumerate() {
        let d = distance(metric, ch.genes(), &centroid.vector);
        if d < best_dist {
            best = j;
            best_dist = d;
        }
    }
    best
}

/// Moves the nearest chromosome toward the centroid by convex interpolation
/// `new = (1 - a) * old + a * centroid` and returns its index. Each gene is
/// evaluated as `old + a * (centroid - old)`; runs are only reproducible
/// bit for bit with this exact order.
///
/// `a` is `alpha` in constant mode and `min(1, alpha / r^2)` in inverse-square
/// mode, where `r` is the selected chromosome's distance to the centroid;
/// `r == 0` means full adoption unless `alpha == 0`, which always leaves the
/// population untouched. `a == 1` copies the centroid exactly.
pub fn crossover_step(cell: &mut Cell, centroid: &UnitCentroid, config: &ModelConfig) -> usize {
    let j = select_chromosome(cell, centroid, config.distance_metric);
    if config.alpha == 0.0 {
        return j;
    }
    let a = match config.influence_mode {
        InfluenceMode::Constant => config.alpha,
        InfluenceMode::InverseSquare => {
            let r = distance(
                config.distance_metric,
                cell.chromosomes()[j].genes(),
                &centroid.vector,
            );
            if r == 0.0 {
                1.0
            } else {
                (config.alpha / (r * r)).min(1.0)
            }
        }
    };
    let genes = cell.chromosomes_mut()[j].genes_mut();
    if a == 1.0 {
        genes.copy_from_slice(&centroid.vector);
    } else {
        for (g, c) in genes.iter_mut().zip(&centroid.vector) {
            *g += a * (*c - *g);
        }
    }
    j
}

/// Step coordinates passed to run observers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunStep {
    /// 1-based round.
    pub round: usize,
    /// Id of the unit just processed.
    pub unit_id: usize,
    /// 1-based position in the flattened stream:
    /// `(round - 1) * units + ordinal`.
    pub step: usize,
}

/// All evolving cells of one run, keyed by item.
#[derive(Debug, Clone)]
pub struct CellPopulation {
    config: ModelConfig,
    base: BaseVectors,
    cells: BTreeMap<ItemId, Cell>,
}

impl CellPopulation {
    /// Builds one cell per vocabulary item from its base vector plus the
    /// segment delta. Chromosome `i` gets `+epsilon` on genes
    /// `i * d/g .. (i+1) * d/g` and the signed `epsilon / (g - 1)` elsewhere.
    pub fn initialize(
        base: BaseVectors,
        vocabulary: impl IntoIterator<Item = ItemId>,
        config: ModelConfig,
    ) -> Result<Self, EvolveError> {
        config.validate()?;
        if base.dimension() != config.dimension {
            return Err(EvolveError::DimensionMismatch {
                config: config.dimension,
                base: base.dimension(),
            });
        }
        let mut population = Self {
            config,
            base,
            cells: BTreeMap::new(),
        };
        for item in vocabulary {
            population.ensure_cell(&item)?;
        }
        Ok(population)
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    pub fn base(&self) -> &BaseVectors {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell(&self, item: &str) -> Option<&Cell> {
        self.cells.get(item)
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.values()
    }

    fn delta(&self, chromosome: usize, gene: usize) -> f64 {
        let segment = self.config.segment_length();
        if gene / segment == chromosome {
            self.config.epsilon
        } else {
            let off = self.config.epsilon / (self.config.chromosomes - 1) as f64;
            match self.config.off_segment_sign {
                OffSegmentSign::Positive => off,
                OffSegmentSign::Negative => -off,
            }
        }
    }

    /// Creates the cell for `item` if it does not exist yet.
    pub fn ensure_cell(&mut self, item: &str) -> Result<(), EvolveError> {
        if self.cells.contains_key(item) {
            return Ok(());
        }
        let base = self.base.resolve(item)?.into_owned();
        let chromosomes = (0..self.config.chromosomes)
            .map(|i| {
                let genes = (0..self.config.dimension)
                    .map(|k| base[k] + self.delta(i, k))
                    .collect();
                Chromosome::new(genes).expect("finite base plus finite delta")
            })
            .collect();
        let cell = Cell::new(item.to_string(), chromosomes).expect("validated shape");
        self.cells.insert(item.to_string(), cell);
        Ok(())
    }

    /// Mean of all chromosomes of all unit members. Every member must
    /// already have a cell.
    pub fn unit_centroid(&self, unit: &CoexistenceUnit) -> Result<UnitCentroid, EvolveError> {
        if unit.items().is_empty() {
            return Err(EvolveError::EmptyUnit { id: unit.id() });
        }
        let mut vector = vec![0.0; self.config.dimension];
        let mut count = 0usize;
        for item in unit.items() {
            let cell = self.cells.get(item).ok_or_else(|| EvolveError::MissingCell {
                item: item.clone(),
            })?;
            for ch in cell.chromosomes() {
                for (v, g) in vector.iter_mut().zip(ch.genes()) {
                    *v += g;
                }
                count += 1;
            }
        }
        let n = count as f64;
        for v in &mut vector {
            *v /= n;
        }
        Ok(UnitCentroid { vector })
    }

    /// Processes one unit: creates missing member cells, freezes the
    /// centroid, then applies one crossover step to every member in unit
    /// item order.
    pub fn process_unit(&mut self, unit: &CoexistenceUnit) -> Result<(), EvolveError> {
        for item in unit.items() {
            self.ensure_cell(item)?;
        }
        let centroid = self.unit_centroid(unit)?;
        for item in unit.items() {
            let cell = self.cells.get_mut(item).expect("cell ensured above");
            crossover_step(cell, &centroid, &self.config);
        }
        Ok(())
    }

    /// Runs the configured number of rounds over the corpus in its order,
    /// calling `observer` after every processed unit.
    pub fn run(
        &mut self,
        corpus: &Corpus,
        mut observer: impl FnMut(RunStep, &CellPopulation),
    ) -> Result<(), EvolveError> {
        let units_per_round = corpus.len();
        for round in 1..=self.config.rounds {
            for (ordinal, unit) in corpus.units().iter().enumerate() {
                self.process_unit(unit).map_err(|e| EvolveError::Unit {
                    round,
                    unit: unit.id(),
                    source: Box::new(e),
                })?;
                let step = (round - 1) * units_per_round + ordinal + 1;
                observer(
                    RunStep {
                        round,
                        unit_id: unit.id(),
                        step,
                    },
                    self,
                );
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::VarianceMode;
    use crate::metrics::polysemy;

    fn config(dimension: usize, chromosomes: usize) -> ModelConfig {
        ModelConfig {
            dimension,
            chromosomes,
            ..ModelConfig::default()
        }
    }

    fn zero_base(dimension: usize) -> BaseVectors {
        // An empty table with synthetic fallback would give nonzero vectors;
        // pin exact zeros instead.
        let mut table = crate::embeddings::EmbeddingTable::new(dimension).unwrap();
        table.insert("x".into(), vec![0.0; dimension]).unwrap();
        table.insert("y".into(), vec![0.0; dimension]).unwrap();
        BaseVectors::new(table, crate::embeddings::UnknownItemPolicy::Error, 0)
    }

    fn cell(genes: &[&[f64]]) -> Cell {
        let chromosomes = genes
            .iter()
            .map(|g| Chromosome::new(g.to_vec()).unwrap())
            .collect();
        Cell::new("t".into(), chromosomes).unwrap()
    }

    #[test]
    fn delta_init_positive_sign_d4_g2() {
        let pop = CellPopulation::initialize(
            zero_base(4),
            ["x".to_string()],
            config(4, 2),
        )
        .unwrap();
        let cell = pop.cell("x").unwrap();
        // With g = 2 the off-segment delta epsilon/(g-1) equals epsilon, so
        // both chromosomes are identical.
        assert_eq!(cell.chromosomes()[0].genes(), [0.01, 0.01, 0.01, 0.01]);
        assert_eq!(cell.chromosomes()[1].genes(), [0.01, 0.01, 0.01, 0.01]);
        assert_eq!(polysemy(cell, VarianceMode::Population).unwrap(), 0.0);
    }

    #[test]
    fn delta_init_negative_sign_d4_g2() {
        let cfg = ModelConfig {
            off_segment_sign: OffSegmentSign::Negative,
            ..config(4, 2)
        };
        let pop = CellPopulation::initialize(zero_base(4), ["x".to_string()], cfg).unwrap();
        let cell = pop.cell("x").unwrap();
        assert_eq!(cell.chromosomes()[0].genes(), [0.01, 0.01, -0.01, -0.01]);
        assert_eq!(cell.chromosomes()[1].genes(), [-0.01, -0.01, 0.01, 0.01]);
    }

    #[test]
    fn delta_init_each_dimension_is_owned_by_exactly_one_chromosome() {
        let pop = CellPopulation::initialize(
            zero_base(50),
            ["x".to_string()],
            config(50, 5),
        )
        .unwrap();
        let cell = pop.cell("x").unwrap();
        let off = 0.01 / 4.0;
        for k in 0..50 {
            let owners: Vec<usize> = (0..5)
                .filter(|&i| cell.chromosomes()[i].genes()[k] == 0.01)
                .collect();
            assert_eq!(owners, [k / 10], "dimension {k}");
            for i in 0..5 {
                if i != k / 10 {
                    assert_eq!(cell.chromosomes()[i].genes()[k], off);
                }
            }
        }
        // Owner-versus-rest gap per dimension.
        assert_eq!(0.01 - off, 0.0075);
    }

    #[test]
    fn delta_init_adds_to_the_base_vector() {
        let mut table = crate::embeddings::EmbeddingTable::new(4).unwrap();
        table.insert("x".into(), vec![1.0, -2.0, 0.5, 3.0]).unwrap();
        let base = BaseVectors::new(table, crate::embeddings::UnknownItemPolicy::Error, 0);
        let pop = CellPopulation::initialize(base, ["x".to_string()], config(4, 2)).unwrap();
        let cell = pop.cell("x").unwrap();
        assert_eq!(cell.chromosomes()[0].genes(), [1.01, -1.99, 0.51, 3.01]);
    }

    #[test]
    fn initialize_rejects_invalid_config_and_mismatched_base() {
        let err = CellPopulation::initialize(zero_base(4), [], config(4, 3)).unwrap_err();
        assert!(matches!(err, EvolveError::InvalidConfig(_)));

        let err = CellPopulation::initialize(zero_base(6), [], config(4, 2)).unwrap_err();
        assert!(matches!(
            err,
            EvolveError::DimensionMismatch { config: 4, base: 6 }
        ));
    }

    #[test]
    fn initialize_with_strict_base_fails_on_missing_items() {
        let err = CellPopulation::initialize(
            zero_base(4),
            ["nowhere".to_string()],
            config(4, 2),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            EvolveError::Embedding(EmbeddingError::UnknownItem { .. })
        ));
    }

    #[test]
    fn euclidean_distance_examples() {
        assert_eq!(distance(DistanceMetric::Euclidean, &[0.0, 0.0], &[3.0, 4.0]), 5.0);
        assert_eq!(distance(DistanceMetric::Euclidean, &[1.0, 1.0], &[1.0, 1.0]), 0.0);
    }

    #[test]
    fn cosine_distance_examples() {
        let d = distance(DistanceMetric::Cosine, &[1.0, 0.0], &[0.0, 1.0]);
        assert!((d - 1.0).abs() < 1e-15);
        // Parallel vectors of different length have distance 0.
        let d = distance(DistanceMetric::Cosine, &[1.0, 2.0], &[2.0, 4.0]);
        assert!(d.abs() < 1e-15);
        assert_eq!(distance(DistanceMetric::Cosine, &[0.0, 0.0], &[0.0, 0.0]), 0.0);
        assert_eq!(distance(DistanceMetric::Cosine, &[0.0, 0.0], &[1.0, 0.0]), 1.0);
    }

    #[test]
    fn select_picks_the_nearest_chromosome() {
        let c = cell(&[&[0.0, 0.0], &[1.0, 1.0]]);
        let centroid = UnitCentroid {
            vector: vec![0.1, 0.1],
        };
        assert_eq!(select_chromosome(&c, &centroid, DistanceMetric::Euclidean), 0);
        let centroid = UnitCentroid {
            vector: vec![0.9, 0.9],
        };
        assert_eq!(select_chromosome(&c, &centroid, DistanceMetric::Euclidean), 1);
    }

    #[test]
    fn select_breaks_ties_toward_the_lowest_index() {
        let c = cell(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let centroid = UnitCentroid {
            vector: vec![0.5, 0.5],
        };
        assert_eq!(select_chromosome(&c, &centroid, DistanceMetric::Euclidean), 0);
    }

    #[test]
    fn crossover_constant_midpoint() {
        let mut c = cell(&[&[0.0, 0.0]]);
        let centroid = UnitCentroid {
            vector: vec![1.0, 1.0],
        };
        let cfg = ModelConfig {
            alpha: 0.5,
            ..config(2, 2)
        };
        let j = crossover_step(&mut c, &centroid, &cfg);
        assert_eq!(j, 0);
        assert_eq!(c.chromosomes()[0].genes(), [0.5, 0.5]);
    }

    #[test]
    fn crossover_alpha_zero_is_bit_identical() {
        let before = cell(&[&[0.3, -0.7], &[1.5, 2.5]]);
        let mut after = before.clone();
        let centroid = UnitCentroid {
            vector: vec![100.0, -3.0],
        };
        for influence in [InfluenceMode::Constant, InfluenceMode::InverseSquare] {
            let cfg = ModelConfig {
                alpha: 0.0,
                influence_mode: influence,
                ..config(2, 2)
            };
            crossover_step(&mut after, &centroid, &cfg);
            assert_eq!(after, before);
        }
    }

    #[test]
    fn crossover_alpha_one_copies_the_centroid_bit_exactly() {
        let mut c = cell(&[&[1e20, -1.0], &[9.0, 9.0]]);
        let centroid = UnitCentroid {
            vector: vec![0.1 + 0.2, -0.0],
        };
        let cfg = ModelConfig {
            alpha: 1.0,
            ..config(2, 2)
        };
        let j = crossover_step(&mut c, &centroid, &cfg);
        let got = c.chromosomes()[j].genes();
        assert_eq!(got, centroid.vector.as_slice());
        assert_eq!(got[1].to_bits(), (-0.0f64).to_bits());
    }

    #[test]
    fn crossover_inverse_square_weight() {
        let mut c = cell(&[&[3.0, 0.0]]);
        let centroid = UnitCentroid {
            vector: vec![0.0, 0.0],
        };
        let cfg = ModelConfig {
            alpha: 0.5,
            influence_mode: InfluenceMode::InverseSquare,
            ..config(2, 2)
        };
        crossover_step(&mut c, &centroid, &cfg);
        // r = 3, a = 0.5/9: the chromosome moves a small step.
        assert_eq!(c.chromosomes()[0].genes(), [2.8333333333333335, 0.0]);
    }

    #[test]
    fn crossover_inverse_square_caps_at_full_adoption() {
        // r = 0.1, alpha/r^2 = 50 caps at 1.
        let mut c = cell(&[&[0.1, 0.0]]);
        let centroid = UnitCentroid {
            vector: vec![0.0, 0.0],
        };
        let cfg = ModelConfig {
            alpha: 0.5,
            influence_mode: InfluenceMode::InverseSquare,
            ..config(2, 2)
        };
        crossover_step(&mut c, &centroid, &cfg);
        assert_eq!(c.chromosomes()[0].genes(), [0.0, 0.0]);

        // r = 0 adopts the centroid as well.
        let mut c = cell(&[&[0.0, 0.0]]);
        crossover_step(&mut c, &centroid, &cfg);
        assert_eq!(c.chromosomes()[0].genes(), [0.0, 0.0]);
    }

    #[test]
    fn crossover_contracts_distance_by_one_minus_alpha() {
        let mut c = cell(&[&[2.0, -1.0, 0.5]]);
        let centroid = UnitCentroid {
            vector: vec![-0.25, 0.75, 1.0],
        };
        let before = distance(
            DistanceMetric::Euclidean,
            c.chromosomes()[0].genes(),
            &centroid.vector,
        );
        let cfg = ModelConfig {
            alpha: 0.3,
            dimension: 3,
            chromosomes: 3,
            ..ModelConfig::default()
        };
        crossover_step(&mut c, &centroid, &cfg);
        let after = distance(
            DistanceMetric::Euclidean,
            c.chromosomes()[0].genes(),
            &centroid.vector,
        );
        assert!((after - 0.7 * before).abs() <= 1e-9 * before);
    }

    #[test]
    fn unit_centroid_averages_all_member_chromosomes() {
        let mut pop = CellPopulation::initialize(
            zero_base(4),
            ["x".to_string(), "y".to_string()],
            config(4, 2),
        )
        .unwrap();
        let unit = CoexistenceUnit::new(0, ["x", "y"].map(String::from)).unwrap();
        let centroid = pop.unit_centroid(&unit).unwrap();
        // All four chromosomes are [0.01; 4] under the positive sign.
        assert_eq!(centroid.vector, vec![0.01; 4]);

        let missing = CoexistenceUnit::new(1, ["z"].map(String::from)).unwrap();
        assert!(matches!(
            pop.unit_centroid(&missing),
            Err(EvolveError::MissingCell { .. })
        ));
        let _ = &mut pop;
    }

    #[test]
    fn process_unit_freezes_the_centroid_before_updating() {
        let mut table = crate::embeddings::EmbeddingTable::new(2).unwrap();
        table.insert("x".into(), vec![0.0, 0.0]).unwrap();
        table.insert("y".into(), vec![2.0, 2.0]).unwrap();
        let base = BaseVectors::new(table, crate::embeddings::UnknownItemPolicy::Error, 0);
        let cfg = ModelConfig {
            alpha: 1.0,
            epsilon: 0.5,
            ..config(2, 2)
        };
        let mut pop = CellPopulation::initialize(
            base,
            ["x".to_string(), "y".to_string()],
            cfg,
        )
        .unwrap();
        let unit = CoexistenceUnit::new(0, ["x", "y"].map(String::from)).unwrap();
        let frozen = pop.unit_centroid(&unit).unwrap();
        pop.process_unit(&unit).unwrap();
        // With alpha = 1 both cells adopt the same pre-update centroid; a
        // sequential centroid would have given y a different target.
        let x_sel = select_chromosome(pop.cell("x").unwrap(), &frozen, DistanceMetric::Euclidean);
        let y_sel = select_chromosome(pop.cell("y").unwrap(), &frozen, DistanceMetric::Euclidean);
        assert_eq!(
            pop.cell("x").unwrap().chromosomes()[x_sel].genes(),
            frozen.vector.as_slice()
        );
        assert_eq!(
            pop.cell("y").unwrap().chromosomes()[y_sel].genes(),
            frozen.vector.as_slice()
        );
    }

    #[test]
    fn process_unit_creates_missing_cells_on_demand() {
        let base = BaseVectors::synthetic(4, 0).unwrap();
        let mut pop = CellPopulation::initialize(base, [], config(4, 2)).unwrap();
        assert!(pop.is_empty());
        let unit = CoexistenceUnit::new(0, ["new"].map(String::from)).unwrap();
        pop.process_unit(&unit).unwrap();
        assert!(pop.cell("new").is_some());
    }

    #[test]
    fn process_unit_leaves_non_members_untouched() {
        let base = BaseVectors::synthetic(4, 1).unwrap();
        let mut pop = CellPopulation::initialize(
            base,
            ["a".to_string(), "b".to_string(), "spectator".to_string()],
            config(4, 2),
        )
        .unwrap();
        let before = pop.cell("spectator").unwrap().clone();
        let unit = CoexistenceUnit::new(0, ["a", "b"].map(String::from)).unwrap();
        pop.process_unit(&unit).unwrap();
        assert_eq!(pop.cell("spectator").unwrap(), &before);
    }

    #[test]
    fn run_reports_steps_in_stream_order() {
        let base = BaseVectors::synthetic(4, 0).unwrap();
        let cfg = ModelConfig {
            rounds: 2,
            ..config(4, 2)
        };
        let mut pop = CellPopulation::initialize(base, [], cfg).unwrap();
        let corpus = Corpus::from_units(vec![
            CoexistenceUnit::new(0, ["a", "b"].map(String::from)).unwrap(),
            CoexistenceUnit::new(1, ["b", "c"].map(String::from)).unwrap(),
            CoexistenceUnit::new(2, ["a", "c"].map(String::from)).unwrap(),
        ]);
        let mut seen = Vec::new();
        pop.run(&corpus, |step, _| seen.push((step.round, step.unit_id, step.step)))
            .unwrap();
        assert_eq!(
            seen,
            [
                (1, 0, 1),
                (1, 1, 2),
                (1, 2, 3),
                (2, 0, 4),
                (2, 1, 5),
                (2, 2, 6)
            ]
        );
    }

    #[test]
    fn run_with_alpha_zero_is_a_no_op() {
        let base = BaseVectors::synthetic(6, 3).unwrap();
        let cfg = ModelConfig {
            alpha: 0.0,
            dimension: 6,
            chromosomes: 2,
            rounds: 3,
            ..ModelConfig::default()
        };
        let corpus = Corpus::from_units(vec![
            CoexistenceUnit::new(0, ["a", "b"].map(String::from)).unwrap(),
            CoexistenceUnit::new(1, ["b", "c"].map(String::from)).unwrap(),
        ]);
        let mut pop =
            CellPopulation::initialize(base, corpus.vocabulary().iter().cloned(), cfg).unwrap();
        let before: Vec<Cell> = pop.cells().cloned().collect();
        pop.run(&corpus, |_, _| {}).unwrap();
        let after: Vec<Cell> = pop.cells().cloned().collect();
        assert_eq!(before, after);
    }

    #[test]
    fn two_rounds_equal_one_round_over_the_doubled_corpus() {
        let base = BaseVectors::synthetic(6, 9).unwrap();
        let units = vec![
            CoexistenceUnit::new(0, ["a", "b"].map(String::from)).unwrap(),
            CoexistenceUnit::new(1, ["b", "c"].map(String::from)).unwrap(),
        ];
        let corpus = Corpus::from_units(units.clone());
        let doubled = Corpus::from_units(
            units
                .iter()
                .cloned()
                .chain(units.iter().cloned())
                .collect(),
        );

        let cfg2 = ModelConfig {
            rounds: 2,
            dimension: 6,
            chromosomes: 3,
            ..ModelConfig::default()
        };
        let cfg1 = ModelConfig {
            rounds: 1,
            ..cfg2.clone()
        };
        let mut two_rounds =
            CellPopulation::initialize(base.clone(), corpus.vocabulary().iter().cloned(), cfg2)
                .unwrap();
        two_rounds.run(&corpus, |_, _| {}).unwrap();
        let mut folded =
            CellPopulation::initialize(base, doubled.vocabulary().iter().cloned(), cfg1).unwrap();
        folded.run(&doubled, |_, _| {}).unwrap();

        for cell in two_rounds.cells() {
            assert_eq!(folded.cell(cell.item()).unwrap(), cell);
        }
    }
}
