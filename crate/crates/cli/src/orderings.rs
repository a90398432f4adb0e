//! The ordering flag grammar.
//!
//! A single entry is `file`, `shuffled[:SEED]`, `interleaved[:SEED]`, or
//! `blocked:IDS[@SEED]` with ids separated by `-` or, in list position, by
//! commas. A list is comma separated; bare integers after a `blocked:` entry
//! extend its id list, so `blocked:3,1,4,2,shuffled:5` reads as one blocked
//! ordering followed by one shuffled ordering.

use semantic_cells::harness::{OrderingKind, OrderingSpec};

use crate::error::CliError;

fn bad(entry: &str, detail: &str) -> CliError {
    CliError::usage(format!("ordering {entry:?}: {detail}"))
}

fn parse_seed(entry: &str, raw: &str) -> Result<u64, CliError> {
    raw.parse::<u64>()
        .map_err(|_| bad(entry, &format!("{raw:?} is not a seed")))
}

fn parse_sense(entry: &str, raw: &str) -> Result<i64, CliError> {
    raw.parse::<i64>()
        .map_err(|_| bad(entry, &format!("{raw:?} is not a sense id")))
}

/// Ids in `blocked:` position: either one integer or a dash-separated list,
/// optionally followed by `@SEED`.
fn parse_blocked_head(entry: &str, rest: &str) -> Result<(Vec<i64>, Option<u64>), CliError> {
    let (ids_part, seed) = match rest.split_once('@') {
        Some((ids, seed)) => (ids, Some(parse_seed(entry, seed)?)),
        None => (rest, None),
    };
    if ids_part.is_empty() {
        return Err(bad(entry, "blocked needs at least one sense id"));
    }
    let ids = if let Ok(single) = ids_part.parse::<i64>() {
        vec![single]
    } else {
        ids_part
            .split('-')
            .map(|raw| parse_sense(entry, raw))
            .collect::<Result<Vec<i64>, CliError>>()?
    };
    Ok((ids, seed))
}

struct OpenBlocked {
    entry: String,
    ids: Vec<i64>,
    seed: Option<u64>,
    /// An explicit `@SEED` ends absorption.
    sealed: bool,
}

/// Parses a comma separated ordering list. Entries without an explicit seed
/// get `default_seed`.
pub fn parse_ordering_list(
    input: &str,
    default_seed: u64,
) -> Result<Vec<OrderingSpec>, CliError> {
    let mut specs: Vec<OrderingSpec> = Vec::new();
    let mut open: Option<OpenBlocked> = None;

    let close = |open: &mut Option<OpenBlocked>, specs: &mut Vec<OrderingSpec>| {
        if let Some(blocked) = open.take() {
            specs.push(OrderingSpec::new(
                OrderingKind::Blocked(blocked.ids),
                blocked.seed.unwrap_or(default_seed),
            ));
        }
    };

    for token in input.split(',') {
        let token = token.trim();
        if token.is_empty() {
            return Err(CliError::usage("ordering list has an empty entry"));
        }

        // Bare integers (optionally with @SEED) extend an open blocked list.
        if let Some(blocked) = open.as_mut() {
            if !blocked.sealed {
                let (id_part, seed_part) = match token.split_once('@') {
                    Some((id, seed)) => (id, Some(seed)),
                    None => (token, None),
                };
                if let Ok(id) = id_part.parse::<i64>() {
                    blocked.ids.push(id);
                    if let Some(seed) = seed_part {
                        blocked.seed = Some(parse_seed(&blocked.entry, seed)?);
                        blocked.sealed = true;
                    }
                    continue;
                }
            }
            close(&mut open, &mut specs);
        }

        let (head, rest) = match token.split_once(':') {
            Some((head, rest)) => (head, Some(rest)),
            None => (token, None),
        };
        match (head, rest) {
            ("file", None) => specs.push(OrderingSpec::new(OrderingKind::File, default_seed)),
            ("file", Some(_)) => return Err(bad(token, "file takes no seed")),
            ("shuffled", None) => {
                specs.push(OrderingSpec::new(OrderingKind::Shuffled, default_seed))
            }
            ("shuffled", Some(seed)) => specs.push(OrderingSpec::new(
                OrderingKind::Shuffled,
                parse_seed(token, seed)?,
            )),
            ("interleaved", None) => {
                specs.push(OrderingSpec::new(OrderingKind::Interleaved, default_seed))
            }
            ("interleaved", Some(seed)) => specs.push(OrderingSpec::new(
                OrderingKind::Interleaved,
                parse_seed(token, seed)?,
            )),
            ("blocked", Some(rest)) => {
                let (ids, seed) = parse_blocked_head(token, rest)?;
                open = Some(OpenBlocked {
                    entry: token.to_string(),
                    sealed: seed.is_some(),
                    ids,
                    seed,
                });
            }
            ("blocked", None) => return Err(bad(token, "blocked needs sense ids")),
            _ => {
                return Err(bad(
                    token,
                    "expected file, shuffled[:SEED], interleaved[:SEED], or blocked:IDS[@SEED]",
                ))
            }
        }
    }
    close(&mut open, &mut specs);

    if specs.is_empty() {
        return Err(CliError::usage("ordering list is empty"));
    }
    Ok(specs)
}

/// Parses a flag that must name exactly one ordering.
pub fn parse_single_ordering(input: &str, default_seed: u64) -> Result<OrderingSpec, CliError> {
    let mut specs = parse_ordering_list(input, default_seed)?;
    if specs.len() != 1 {
        return Err(CliError::usage(format!(
            "--ordering names {} orderings, expected one",
            specs.len()
        )));
    }
    Ok(specs.remove(0))
}

pub fn parse_seed_list(input: &str) -> Result<Vec<u64>, CliError> {
    input
        .split(',')
        .map(|raw| {
            let raw = raw.trim();
            raw.parse::<u64>()
                .map_err(|_| CliError::usage(format!("seed {raw:?} is not an integer")))
        })
        .collect()
}
