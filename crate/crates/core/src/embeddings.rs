//! Base embedding vectors: text-format tables, deterministic synthetic
//! fallbacks, and clustered tables for synthetic corpora.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::types::ItemId;

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("line {line}: malformed embedding line: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: expected {expected} vector components, found {found}")]
    InconsistentDimension {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("embedding input contains no vectors")]
    EmptyFile,
    #[error("vector for {item:?} has {found} components, table dimension is {expected}")]
    DimensionMismatch {
        item: String,
        expected: usize,
        found: usize,
    },
    #[error("vector for {item:?} has a non-finite component")]
    NonFinite { item: String },
    #[error("token {token:?} contains whitespace")]
    InvalidToken { token: String },
    #[error("no embedding for {item:?} and synthetic fallback is disabled")]
    UnknownItem { item: String },
    #[error("embedding dimension must be positive")]
    ZeroDimension,
    #[error("cluster spread must be positive, got {0}")]
    InvalidSpread(f64),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A fixed-dimension map from item to base vector.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dimension: usize,
    entries: BTreeMap<ItemId, Vec<f64>>,
}

impl EmbeddingTable {
    pub fn new(dimension: usize) -> Result<Self, EmbeddingError> {
        if dimension == 0 {
            return Err(EmbeddingError::ZeroDimension);
        }
        Ok(Self {
            dimension,
            entries: BTreeMap::new(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, item: &str) -> Option<&[f64]> {
        self.entries.get(item).map(Vec::as_slice)
    }

    pub fn items(&self) -> impl Iterator<Item = &ItemId> {
        self.entries.keys()
    }

    /// Inserts or replaces a vector. Tokens must be whitespace-free so the
    /// text format stays unambiguous.
    pub fn insert(&mut self, item: ItemId, vector: Vec<f64>) -> Result<(), EmbeddingError> {
        if item.is_empty() || item.chars().any(char::is_whitespace) {
            return Err(EmbeddingError::InvalidToken { token: item });
        }
        if vector.len() != self.dimension {
            return Err(EmbeddingError::DimensionMismatch {
                item,
                expected: self.dimension,
                found: vector.len(),
            });
        }
        if vector.iter().any(|c| !c.is_finite()) {
            return Err(EmbeddingError::NonFinite { item });
        }
        self.entries.insert(item, vector);
        Ok(())
    }

    /// Parses the whitespace-separated text format: an optional `<count>
    /// <dimension>` header line, then one `<token> <c1> ... <cd>` line per
    /// item. Later duplicates overwrite earlier ones. CRLF is tolerated.
    pub fn read_text(reader: impl Read) -> Result<Self, EmbeddingError> {
        let reader = BufReader::new(reader);
        let mut dimension: Option<usize> = None;
        let mut entries: BTreeMap<ItemId, Vec<f64>> = BTreeMap::new();
        let mut first_content_line = true;

        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let line = line.trim_end_matches('\r');
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                return Err(EmbeddingError::MalformedLine {
                    line: line_no,
                    reason: "empty line".into(),
                });
            }
            if first_content_line {
                first_content_line = false;
                // A header is exactly two integer fields.
                if fields.len() == 2 {
                    if let (Ok(_count), Ok(dim)) =
                        (fields[0].parse::<usize>(), fields[1].parse::<usize>())
                    {
                        if dim == 0 {
                            return Err(EmbeddingError::MalformedLine {
                                line: line_no,
                                reason: "header declares dimension 0".into(),
                            });
                        }
                        dimension = Some(dim);
                        continue;
                    }
                }
            }
            let token = fields[0];
            let components = &fields[1..];
            if components.is_empty() {
                return Err(EmbeddingError::MalformedLine {
                    line: line_no,
                    reason: format!("token {token:?} has no vector components"),
                });
            }
            if let Some(expected) = dimension {
                if components.len() != expected {
                    return Err(EmbeddingError::InconsistentDimension {
                        line: line_no,
                        expected,
                        found: components.len(),
                    });
                }
            } else {
                dimension = Some(components.len());
            }
            let mut vector = Vec::with_capacity(components.len());
            for raw in components {
                let value: f64 = raw.parse().map_err(|_| EmbeddingError::MalformedLine {
                    line: line_no,
                    reason: format!("{raw:?} is not a number"),
                })?;
                if !value.is_finite() {
                    return Err(EmbeddingError::MalformedLine {
                        line: line_no,
                        reason: format!("{raw:?} is not finite"),
                    });
                }
                vector.push(value);
            }
            entries.insert(token.to_string(), vector);
        }

        match dimension {
            Some(dimension) if !entries.is_empty() => Ok(Self { dimension, entries }),
            _ => Err(EmbeddingError::EmptyFile),
        }
    }

    pub fn read_text_file(path: impl AsRef<Path>) -> Result<Self, EmbeddingError> {
        Self::read_text(File::open(path)?)
    }

    /// Writes the text format with a header line, items in sorted order, LF
    /// line endings, and shortest round-trip float formatting.
    pub fn write_text(&self, writer: impl Write) -> io::Result<()> {
        let mut w = BufWriter::new(writer);
        writeln!(w, "{} {}", self.entries.len(), self.dimension)?;
        for (item, vector) in &self.entries {
            write!(w, "{item}")?;
            for c in vector {
                write!(w, " {c}")?;
            }
            writeln!(w)?;
        }
        w.flush()
    }

    pub fn write_text_file(&self, path: impl AsRef<Path>) -> io::Result<()> {
        self.write_text(File::create(path)?)
    }
}

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

fn fnv1a(seed: u64, domain: u8, item: &str, index: u64) -> u64 {
    let mut h = FNV_OFFSET;
    let mut eat = |byte: u8| {
        h ^= u64::from(byte);
        h = h.wrapping_mul(FNV_PRIME);
    };
    eat(domain);
    for b in seed.to_le_bytes() {
        eat(b);
    }
    for b in item.as_bytes() {
        eat(*b);
    }
    // 0xFF never occurs in UTF-8, so it cleanly separates item from index.
    eat(0xFF);
    for b in index.to_le_bytes() {
        eat(b);
    }
    h
}

pub(crate) fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Mixes two seeds into one; used to derive per-run seeds from a base seed.
pub fn mix_seeds(base: u64, salt: u64) -> u64 {
    splitmix64(base ^ splitmix64(salt ^ 0xa5a5_5a5a_c01d_beef))
}

fn unit_interval(hash: u64) -> f64 {
    // Top 53 bits give a uniform double in [0, 1).
    (hash >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

const DOMAIN_SYNTHETIC: u8 = 1;
const DOMAIN_CLUSTER_NOISE: u8 = 2;

/// Deterministic fallback vector with components in `[-0.5, 0.5)`, a pure
/// function of `(item, dimension index, seed)`. Stable across platforms.
pub fn synthetic_embedding(item: &str, dimension: usize, seed: u64) -> Vec<f64> {
    (0..dimension)
        .map(|k| unit_interval(splitmix64(fnv1a(seed, DOMAIN_SYNTHETIC, item, k as u64))) - 0.5)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClusterWarning {
    /// Fewer dimensions than sense groups; centers may not separate well.
    DimensionTooSmall { dimension: usize, groups: usize },
}

#[derive(Debug, Clone)]
pub struct ClusteredEmbeddings {
    pub table: EmbeddingTable,
    pub warnings: Vec<ClusterWarning>,
}

/// Builds a table where each vocabulary group sits near its own center and
/// items listed in several groups sit at the mean of their centers.
///
/// Centers form a seeded random walk, so consecutive groups are closer to
/// each other than distant ones. Per-item noise is uniform in
/// `[-spread, spread]` per coordinate and depends only on the item name and
/// seed, not on group order.
pub fn clustered_embeddings(
    groups: &[Vec<ItemId>],
    dimension: usize,
    spread: f64,
    seed: u64,
) -> Result<ClusteredEmbeddings, EmbeddingError> {
    if dimension == 0 {
        return Err(EmbeddingError::ZeroDimension);
    }
    if !(spread > 0.0) {
        return Err(EmbeddingError::InvalidSpread(spread));
    }

    let mut warnings = Vec::new();
    if dimension < groups.len() {
        warnings.push(ClusterWarning::DimensionTooSmall {
            dimension,
            groups: groups.len(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centers: Vec<Vec<f64>> = Vec::with_capacity(groups.len());
    for g in 0..groups.len() {
        let mut center: Vec<f64> = (0..dimension).map(|_| rng.gen_range(-0.5..0.5)).collect();
        if g > 0 {
            for (c, prev) in center.iter_mut().zip(&centers[g - 1]) {
                *c += prev;
            }
        }
        centers.push(center);
    }

    // BTreeMap keeps placement independent of listing order.
    let mut membership: BTreeMap<&ItemId, Vec<usize>> = BTreeMap::new();
    for (gi, group) in groups.iter().enumerate() {
        for item in group {
            let senses = membership.entry(item).or_default();
            if !senses.contains(&gi) {
                senses.push(gi);
            }
        }
    }

    let mut table = EmbeddingTable::new(dimension)?;
    for (item, group_indices) in membership {
        let mut vector = vec![0.0; dimension];
        for &gi in &group_indices {
            for (v, c) in vector.iter_mut().zip(&centers[gi]) {
                *v += c;
            }
        }
        let n = group_indices.len() as f64;
        for (k, v) in vector.iter_mut().enumerate() {
            let noise = unit_interval(splitmix64(fnv1a(
                seed,
                DOMAIN_CLUSTER_NOISE,
                item,
                k as u64,
            )));
            *v = *v / n + (noise * 2.0 - 1.0) * spread;
        }
        table.insert(item.clone(), vector)?;
    }

    Ok(ClusteredEmbeddings { table, warnings })
}

/// What to do when an item has no vector in the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnknownItemPolicy {
    /// Fall back to [`synthetic_embedding`].
    Synthetic,
    /// Fail with [`EmbeddingError::UnknownItem`].
    Error,
}

/// A lookup source for base vectors: a shared table plus a fallback policy.
#[derive(Debug, Clone)]
pub struct BaseVectors {
    table: Arc<EmbeddingTable>,
    policy: UnknownItemPolicy,
    seed: u64,
}

impl BaseVectors {
    pub fn new(table: EmbeddingTable, policy: UnknownItemPolicy, seed: u64) -> Self {
        Self {
            table: Arc::new(table),
            policy,
            seed,
        }
    }

    /// A source with no table at all: every item is synthesized.
    pub fn synthetic(dimension: usize, seed: u64) -> Result<Self, EmbeddingError> {
        Ok(Self::new(
            EmbeddingTable::new(dimension)?,
            UnknownItemPolicy::Synthetic,
            seed,
        ))
    }

    pub fn dimension(&self) -> usize {
        self.table.dimension()
    }

    pub fn table(&self) -> &EmbeddingTable {
        &self.table
    }

    pub fn resolve(&self, item: &str) -> Result<Cow<'_, [f64]>, EmbeddingError> {
        match self.table.get(item) {
            Some(v) => Ok(Cow::Borrowed(v)),
            None => match self.policy {
                UnknownItemPolicy::Synthetic => Ok(Cow::Owned(synthetic_embedding(
                    item,
                    self.table.dimension(),
                    self.seed,
                ))),
                UnknownItemPolicy::Error => Err(EmbeddingError::UnknownItem {
                    item: item.to_string(),
                }),
            },
        }
    }
}
