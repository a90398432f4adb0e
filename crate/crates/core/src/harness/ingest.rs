//! Corpus ingestion: JSONL sentence files and basket CSV files.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::types::{CoexistenceUnit, Corpus, ItemId};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: malformed JSON: {message}")]
    MalformedJson { line: usize, message: String },
    #[error("line {line}: text field yields no items")]
    EmptyTextField { line: usize },
    #[error("line {line}: basket line has no items")]
    EmptyBasketLine { line: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Serialize, Deserialize)]
struct SentenceRecord {
    text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    sense: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<String>,
}

/// Lowercases, splits on whitespace, strips non-alphanumeric characters from
/// token edges, and drops tokens that become empty. Interior punctuation is
/// kept.
pub fn tokenize(text: &str) -> Vec<ItemId> {
    text.split_whitespace()
        .map(|raw| {
            raw.trim_matches(|c: char| !c.is_alphanumeric())
                .to_lowercase()
        })
        .filter(|t| !t.is_empty())
        .collect()
}

/// Reads one JSON object per line: `{"text": "...", "sense": 3, "id": "..."}`
/// with `sense` and `id` optional. Blank lines are skipped. Unit ids are the
/// 0-based positions in the stream of kept lines.
pub fn read_jsonl(reader: impl Read) -> Result<Corpus, IngestError> {
    let reader = BufReader::new(reader);
    let mut units = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: SentenceRecord =
            serde_json::from_str(&line).map_err(|e| IngestError::MalformedJson {
                line: line_no,
                message: e.to_string(),
            })?;
        let items = tokenize(&record.text);
        if items.is_empty() {
            return Err(IngestError::EmptyTextField { line: line_no });
        }
        let mut unit = CoexistenceUnit::new(units.len(), items)
            .expect("tokenized items are non-empty")
            .with_raw_text(record.text);
        if let Some(sense) = record.sense {
            unit = unit.with_sense(sense);
        }
        units.push(unit);
    }
    Ok(Corpus::from_units(units))
}

pub fn ingest_jsonl(path: impl AsRef<Path>) -> Result<Corpus, IngestError> {
    read_jsonl(File::open(path)?)
}

/// Writes one JSON object per unit. Units carrying raw text round-trip it;
/// synthesized units emit their items joined by single spaces.
pub fn write_jsonl(corpus: &Corpus, writer: impl Write) -> io::Result<()> {
    let mut w = BufWriter::new(writer);
    for unit in corpus.units() {
        let record = SentenceRecord {
            text: unit
                .raw_text()
                .map(str::to_string)
                .unwrap_or_else(|| unit.items().join(" ")),
            sense: unit.sense_label(),
            id: None,
        };
        serde_json::to_writer(&mut w, &record)?;
        writeln!(w)?;
    }
    w.flush()
}

pub fn write_jsonl_file(corpus: &Corpus, path: impl AsRef<Path>) -> io::Result<()> {
    write_jsonl(corpus, File::create(path)?)
}

/// Reads one basket per line: comma-separated item names, taken verbatim
/// after trimming surrounding whitespace. A line without any item is an
/// error.
pub fn read_baskets(reader: impl Read) -> Result<Corpus, IngestError> {
    let reader = BufReader::new(reader);
    let mut units = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let items: Vec<ItemId> = line
            .split(',')
            .map(str::trim)
            .filter(|f| !f.is_empty())
            .map(str::to_string)
            .collect();
        if items.is_empty() {
            return Err(IngestError::EmptyBasketLine { line: line_no });
        }
        units.push(CoexistenceUnit::new(units.len(), items).expect("items are non-empty"));
    }
    Ok(Corpus::from_units(units))
}

pub fn ingest_baskets(path: impl AsRef<Path>) -> Result<Corpus, IngestError> {
    read_baskets(File::open(path)?)
}
