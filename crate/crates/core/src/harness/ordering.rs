//! Corpus reordering: the presentation schedules compared by experiments.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::types::{CoexistenceUnit, Corpus};

#[derive(Debug, Error, PartialEq)]
pub enum OrderingError {
    #[error("unit {unit} has no sense label, which this ordering requires")]
    MissingSenseLabels { unit: usize },
    #[error("block order names sense {0}, which the corpus does not contain")]
    UnknownSenseInBlockOrder(i64),
    #[error("block order names sense {0} twice")]
    DuplicateSenseInBlockOrder(i64),
    #[error("block order misses sense {0}, which the corpus contains")]
    IncompleteBlockOrder(i64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrderingKind {
    /// Keep the corpus order as ingested.
    File,
    /// One contiguous block per sense, blocks in the given order, units
    /// shuffled within each block.
    Blocked(Vec<i64>),
    /// One uniform shuffle of the whole corpus.
    Shuffled,
    /// Round-robin across the senses, each sense's units shuffled first.
    Interleaved,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderingSpec {
    pub kind: OrderingKind,
    pub seed: u64,
}

impl OrderingSpec {
    pub fn new(kind: OrderingKind, seed: u64) -> Self {
        Self { kind, seed }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            kind: self.kind.clone(),
            seed,
        }
    }
}

impl fmt::Display for OrderingSpec {
    /// Comma-free label used in report columns, e.g. `blocked:3-1-4-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            OrderingKind::File => write!(f, "file"),
            OrderingKind::Shuffled => write!(f, "shuffled"),
            OrderingKind::Interleaved => write!(f, "interleaved"),
            OrderingKind::Blocked(order) => {
                write!(f, "blocked:")?;
                for (i, sense) in order.iter().enumerate() {
                    if i > 0 {
                        write!(f, "-")?;
                    }
                    write!(f, "{sense}")?;
                }
                Ok(())
            }
        }
    }
}

fn sense_groups(
    corpus: &Corpus,
) -> Result<BTreeMap<i64, Vec<CoexistenceUnit>>, OrderingError> {
    let mut groups: BTreeMap<i64, Vec<CoexistenceUnit>> = BTreeMap::new();
    for unit in corpus.units() {
        let sense = unit
            .sense_label()
            .ok_or(OrderingError::MissingSenseLabels { unit: unit.id() })?;
        groups.entry(sense).or_default().push(unit.clone());
    }
    Ok(groups)
}

/// Returns a corpus with the same units in the schedule's order. Unit ids
/// are untouched, so the result is always a permutation of the input.
pub fn apply_ordering(corpus: &Corpus, spec: &OrderingSpec) -> Result<Corpus, OrderingError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let units = match &spec.kind {
        OrderingKind::File => corpus.units().to_vec(),
        OrderingKind::Shuffled => {
            let mut units = corpus.units().to_vec();
            units.shuffle(&mut rng);
            units
        }
        OrderingKind::Blocked(order) => {
            let mut groups = sense_groups(corpus)?;
            let mut named = std::collections::BTreeSet::new();
            for &sense in order {
                if !groups.contains_key(&sense) {
                    return Err(OrderingError::UnknownSenseInBlockOrder(sense));
                }
                if !named.insert(sense) {
                    return Err(OrderingError::DuplicateSenseInBlockOrder(sense));
                }
            }
            if let Some(missing) = groups.keys().find(|s| !named.contains(s)) {
                return Err(OrderingError::IncompleteBlockOrder(*missing));
            }
            let mut units = Vec::with_capacity(corpus.len());
            for sense in order {
                let mut block = groups.remove(sense).expect("checked above");
                block.shuffle(&mut rng);
                units.extend(block);
            }
            units
        }
        OrderingKind::Interleaved => {
            let groups = sense_groups(corpus)?;
            let mut queues: Vec<std::collections::VecDeque<CoexistenceUnit>> = groups
                .into_values()
                .map(|mut block| {
                    block.shuffle(&mut rng);
                    block.into()
                })
                .collect();
            let mut units = Vec::with_capacity(corpus.len());
            while units.len() < corpus.len() {
                for queue in &mut queues {
                    if let Some(unit) = queue.pop_front() {
                        units.push(unit);
                    }
                }
            }
            units
        }
    };
    Ok(Corpus::from_units(units))
}
