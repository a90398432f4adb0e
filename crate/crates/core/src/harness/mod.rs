//! Experiment harness: corpus ingestion and generation, presentation
//! schedules, experiment runs, and report emission.

pub mod experiment;
pub mod generate;
pub mod ingest;
pub mod ordering;
pub mod report;

pub use experiment::{
    compare_orderings, run_experiment, ComparisonReport, ComparisonRun, ExperimentError,
    ExperimentResult, OrderingStats, StatRange,
};
pub use generate::{
    generate_sense_corpus, GenerateError, GeneratedCorpus, SenseCorpusSpec, SenseSpec,
    BRIDGE_PROBABILITY,
};
pub use ingest::{
    ingest_baskets, ingest_jsonl, read_baskets, read_jsonl, tokenize, write_jsonl,
    write_jsonl_file, IngestError,
};
pub use ordering::{apply_ordering, OrderingError, OrderingKind, OrderingSpec};
pub use report::{
    write_summaries_csv, write_trajectories_csv, SUMMARY_HEADER, TRAJECTORY_HEADER,
};
