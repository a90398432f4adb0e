//! Deterministic input builders shared by the benchmarks.

use semantic_cells::harness::{generate_sense_corpus, GeneratedCorpus, SenseCorpusSpec, SenseSpec};
use semantic_cells::{BaseVectors, CellPopulation, Corpus, ModelConfig, UnknownItemPolicy};

/// A ready-to-run workload: corpus, base vectors, and a validated config.
pub struct Workload {
    pub corpus: Corpus,
    pub base: BaseVectors,
    pub config: ModelConfig,
}

impl Workload {
    pub fn population(&self) -> CellPopulation {
        CellPopulation::initialize(
            self.base.clone(),
            self.corpus.vocabulary().iter().cloned(),
            self.config.clone(),
        )
        .expect("benchmark workload must initialize")
    }
}

/// Builds a multi-sense corpus of `senses * sentences_per_sense` units with
/// matching clustered embeddings, mirroring the experiment defaults.
pub fn sense_workload(senses: i64, sentences_per_sense: usize, dimension: usize) -> Workload {
    let spec = SenseCorpusSpec {
        target_item: "target".to_string(),
        senses: (1..=senses)
            .map(|id| SenseSpec {
                id,
                context_vocabulary: (0..20).map(|j| format!("s{id}w{j}")).collect(),
                bridge_to_next: if id < senses {
                    (0..5).map(|j| format!("br{id}x{}w{j}", id + 1)).collect()
                } else {
                    Vec::new()
                },
            })
            .collect(),
        sentences_per_sense,
        sentence_length: 4..=9,
        embedding_dimension: dimension,
        embedding_spread: 0.1,
        seed: 0,
    };
    let GeneratedCorpus {
        corpus, embeddings, ..
    } = generate_sense_corpus(&spec).expect("benchmark corpus must generate");
    let base = BaseVectors::new(embeddings, UnknownItemPolicy::Error, 0);
    let config = ModelConfig {
        dimension,
        alpha: 0.05,
        ..ModelConfig::default()
    };
    Workload {
        corpus,
        base,
        config,
    }
}
