//! Evolutionary sense modeling over co-existence streams.
//!
//! Every item in a corpus owns a cell: a small population of chromosomes
//! cloned from the item's base embedding plus a segment-wise delta. Each
//! co-existence unit (a sentence, a basket) pulls the nearest chromosome of
//! every member toward the unit's frozen chromosome centroid. A cell's
//! polysemy is the spread of its chromosomes: the per-dimension gene
//! variance summed over all dimensions. The harness measures how that
//! spread evolves under different presentation orders of the same corpus.

pub mod config;
pub mod embeddings;
pub mod evolution;
pub mod harness;
pub mod metrics;
pub mod types;

pub use config::{
    ConfigViolation, DistanceMetric, InfluenceMode, InvalidConfig, ModelConfig, OffSegmentSign,
    VarianceMode,
};
pub use embeddings::{
    clustered_embeddings, mix_seeds, synthetic_embedding, BaseVectors, ClusterWarning,
    ClusteredEmbeddings, EmbeddingError, EmbeddingTable, UnknownItemPolicy,
};
pub use evolution::{
    crossover_step, distance, select_chromosome, CellPopulation, EvolveError, RunStep,
    UnitCentroid,
};
pub use metrics::{
    polysemy, summarize, summarize_values, MetricsError, Trajectory, TrajectorySample,
    TrajectorySummary, DECREASE_TOLERANCE,
};
pub use types::{Cell, Chromosome, CoexistenceUnit, CoreError, Corpus, ItemId};
