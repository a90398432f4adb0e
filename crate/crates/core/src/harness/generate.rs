//! Synthetic corpora with a single polysemous target item whose senses form
//! a chain.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::embeddings::{
    clustered_embeddings, mix_seeds, ClusterWarning, EmbeddingError, EmbeddingTable,
};
use crate::types::{CoexistenceUnit, Corpus, ItemId};

/// Chance that a sentence borrows one item from a bridge vocabulary shared
/// with a neighboring sense.
pub const BRIDGE_PROBABILITY: f64 = 0.2;

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("need at least 2 senses, got {0}")]
    TooFewSenses(usize),
    #[error("sentences_per_sense must be positive")]
    NoSentences,
    #[error("sentence_length range is empty")]
    EmptyLengthRange,
    #[error("sentence_length must start at 1 or more")]
    ZeroLengthSentences,
    #[error("sense {sense} has an empty context vocabulary")]
    EmptyVocabulary { sense: i64 },
    #[error("duplicate sense id {0}")]
    DuplicateSenseId(i64),
    #[error("the last sense cannot bridge to a next sense")]
    BridgeAfterLastSense,
    #[error("item {item:?} appears in more than one vocabulary role")]
    ItemReused { item: ItemId },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Debug, Clone)]
pub struct SenseSpec {
    pub id: i64,
    /// Items exclusive to this sense.
    pub context_vocabulary: Vec<ItemId>,
    /// Items shared with the next sense in the chain; empty for the last.
    pub bridge_to_next: Vec<ItemId>,
}

#[derive(Debug, Clone)]
pub struct SenseCorpusSpec {
    pub target_item: ItemId,
    pub senses: Vec<SenseSpec>,
    pub sentences_per_sense: usize,
    /// How many context items each sentence draws.
    pub sentence_length: RangeInclusive<usize>,
    pub embedding_dimension: usize,
    pub embedding_spread: f64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct GeneratedCorpus {
    pub corpus: Corpus,
    pub embeddings: EmbeddingTable,
    pub warnings: Vec<ClusterWarning>,
}

fn validate(spec: &SenseCorpusSpec) -> Result<(), GenerateError> {
    if spec.senses.len() < 2 {
        return Err(GenerateError::TooFewSenses(spec.senses.len()));
    }
    if spec.sentences_per_sense == 0 {
        return Err(GenerateError::NoSentences);
    }
    if spec.sentence_length.is_empty() {
        return Err(GenerateError::EmptyLengthRange);
    }
    if *spec.sentence_length.start() == 0 {
        return Err(GenerateError::ZeroLengthSentences);
    }
    let mut ids = BTreeSet::new();
    for sense in &spec.senses {
        if !ids.insert(sense.id) {
            return Err(GenerateError::DuplicateSenseId(sense.id));
        }
        if sense.context_vocabulary.is_empty() {
            return Err(GenerateError::EmptyVocabulary { sense: sense.id });
        }
    }
    if !spec.senses.last().unwrap().bridge_to_next.is_empty() {
        return Err(GenerateError::BridgeAfterLastSense);
    }
    // Every item has exactly one role: the target, one context vocabulary,
    // or one bridge.
    let mut seen = BTreeSet::new();
    seen.insert(spec.target_item.clone());
    for sense in &spec.senses {
        for item in sense
            .context_vocabulary
            .iter()
            .chain(&sense.bridge_to_next)
        {
            if !seen.insert(item.clone()) {
                return Err(GenerateError::ItemReused { item: item.clone() });
            }
        }
    }
    Ok(())
}

/// Generates `sentences_per_sense` units per sense, in sense list order.
/// Every unit contains the target, a seeded sample of the sense's context
/// vocabulary, and occasionally one bridge item shared with a neighboring
/// sense. Embeddings place each sense's vocabulary near its own center, with
/// consecutive senses adjacent and bridge items between them.
pub fn generate_sense_corpus(spec: &SenseCorpusSpec) -> Result<GeneratedCorpus, GenerateError> {
    validate(spec)?;

    let mut rng = ChaCha8Rng::seed_from_u64(mix_seeds(spec.seed, 1));
    let mut units = Vec::with_capacity(spec.senses.len() * spec.sentences_per_sense);
    for (si, sense) in spec.senses.iter().enumerate() {
        let mut bridges: Vec<&ItemId> = Vec::new();
        if si > 0 {
            bridges.extend(&spec.senses[si - 1].bridge_to_next);
        }
        bridges.extend(&sense.bridge_to_next);

        for _ in 0..spec.sentences_per_sense {
            let want = rng.gen_range(spec.sentence_length.clone());
            let mut items: Vec<ItemId> = vec![spec.target_item.clone()];
            items.extend(
                sense
                    .context_vocabulary
                    .choose_multiple(&mut rng, want)
                    .cloned(),
            );
            if !bridges.is_empty() && rng.gen_bool(BRIDGE_PROBABILITY) {
                items.push((*bridges.choose(&mut rng).unwrap()).clone());
            }
            let unit = CoexistenceUnit::new(units.len(), items)
                .expect("every sentence contains the target")
                .with_sense(sense.id);
            units.push(unit);
        }
    }

    let groups: Vec<Vec<ItemId>> = spec
        .senses
        .iter()
        .enumerate()
        .map(|(si, sense)| {
            let mut group = vec![spec.target_item.clone()];
            group.extend(sense.context_vocabulary.iter().cloned());
            if si > 0 {
                group.extend(spec.senses[si - 1].bridge_to_next.iter().cloned());
            }
            group.extend(sense.bridge_to_next.iter().cloned());
            group
        })
        .collect();
    let clustered = clustered_embeddings(
        &groups,
        spec.embedding_dimension,
        spec.embedding_spread,
        mix_seeds(spec.seed, 2),
    )?;

    Ok(GeneratedCorpus {
        corpus: Corpus::from_units(units),
        embeddings: clustered.table,
        warnings: clustered.warnings,
    })
}
