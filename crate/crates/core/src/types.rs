//! Shared domain types: chromosomes, cells, co-existence units, corpora.

use std::collections::BTreeSet;

use thiserror::Error;

/// Identifier of one item: a normalized token for text corpora, an opaque
/// string for basket corpora.
pub type ItemId = String;

#[derive(Debug, Error, PartialEq)]
pub enum CoreError {
    #[error("gene {index} is not finite")]
    NonFiniteGene { index: usize },
    #[error("expected {expected} genes per chromosome, found {found}")]
    GeneCount { expected: usize, found: usize },
    #[error("a cell needs at least one chromosome")]
    NoChromosomes,
    #[error("co-existence unit {id} has no items")]
    EmptyUnit { id: usize },
}

/// One candidate sense vector: a fixed-length list of finite gene values.
#[derive(Debug, Clone, PartialEq)]
pub struct Chromosome {
    genes: Vec<f64>,
}

impl Chromosome {
    pub fn new(genes: Vec<f64>) -> Result<Self, CoreError> {
        if let Some(index) = genes.iter().position(|g| !g.is_finite()) {
            return Err(CoreError::NonFiniteGene { index });
        }
        Ok(Self { genes })
    }

    pub fn genes(&self) -> &[f64] {
        &self.genes
    }

    pub(crate) fn genes_mut(&mut self) -> &mut [f64] {
        &mut self.genes
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }
}

/// The evolving population of one item: a fixed number of chromosomes, all of
/// the same dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    item: ItemId,
    chromosomes: Vec<Chromosome>,
}

impl Cell {
    pub fn new(item: ItemId, chromosomes: Vec<Chromosome>) -> Result<Self, CoreError> {
        let dimension = match chromosomes.first() {
            Some(first) => first.len(),
            None => return Err(CoreError::NoChromosomes),
        };
        for ch in &chromosomes {
            if ch.len() != dimension {
                return Err(CoreError::GeneCount {
                    expected: dimension,
                    found: ch.len(),
                });
            }
        }
        Ok(Self { item, chromosomes })
    }

    pub fn item(&self) -> &str {
        &self.item
    }

    pub fn chromosomes(&self) -> &[Chromosome] {
        &self.chromosomes
    }

    pub(crate) fn chromosomes_mut(&mut self) -> &mut [Chromosome] {
        &mut self.chromosomes
    }

    pub fn chromosome_count(&self) -> usize {
        self.chromosomes.len()
    }

    pub fn dimension(&self) -> usize {
        self.chromosomes[0].len()
    }
}

/// One observation of items occurring together: a sentence, a basket.
///
/// Items are deduplicated, keeping first-occurrence order.
#[derive(Debug, Clone, PartialEq)]
pub struct CoexistenceUnit {
    id: usize,
    items: Vec<ItemId>,
    sense_label: Option<i64>,
    raw_text: Option<String>,
}

impl CoexistenceUnit {
    pub fn new(id: usize, items: impl IntoIterator<Item = ItemId>) -> Result<Self, CoreError> {
        let mut seen = BTreeSet::new();
        let mut deduped = Vec::new();
        for item in items {
            if seen.insert(item.clone()) {
                deduped.push(item);
            }
        }
        if deduped.is_empty() {
            return Err(CoreError::EmptyUnit { id });
        }
        Ok(Self {
            id,
            items: deduped,
            sense_label: None,
            raw_text: None,
        })
    }

    pub fn with_sense(mut self, sense: i64) -> Self {
        self.sense_label = Some(sense);
        self
    }

    pub fn with_raw_text(mut self, raw: impl Into<String>) -> Self {
        self.raw_text = Some(raw.into());
        self
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn items(&self) -> &[ItemId] {
        &self.items
    }

    pub fn sense_label(&self) -> Option<i64> {
        self.sense_label
    }

    pub fn raw_text(&self) -> Option<&str> {
        self.raw_text.as_deref()
    }

    pub fn contains(&self, item: &str) -> bool {
        self.items.iter().any(|i| i == item)
    }
}

/// An ordered stream of co-existence units plus the vocabulary they cover.
///
/// The vocabulary is always the union of the unit item sets.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Corpus {
    units: Vec<CoexistenceUnit>,
    vocabulary: BTreeSet<ItemId>,
}

impl Corpus {
    pub fn from_units(units: Vec<CoexistenceUnit>) -> Self {
        let vocabulary = units
            .iter()
            .flat_map(|u| u.items().iter().cloned())
            .collect();
        Self { units, vocabulary }
    }

    pub fn units(&self) -> &[CoexistenceUnit] {
        &self.units
    }

    pub fn vocabulary(&self) -> &BTreeSet<ItemId> {
        &self.vocabulary
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    /// Distinct sense labels, or an error carrying the id of the first
    /// unlabeled unit.
    pub fn sense_ids(&self) -> Result<BTreeSet<i64>, usize> {
        let mut ids = BTreeSet::new();
        for unit in &self.units {
            match unit.sense_label() {
                Some(s) => {
                    ids.insert(s);
                }
                None => return Err(unit.id()),
            }
        }
        Ok(ids)
    }
}
