//! Subcommand implementations.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};

use semantic_cells::harness::{
    compare_orderings, generate_sense_corpus, ingest_baskets, ingest_jsonl, run_experiment,
    write_jsonl_file, write_summaries_csv, write_trajectories_csv, ComparisonRun, SenseCorpusSpec,
    SenseSpec,
};
use semantic_cells::{
    BaseVectors, Corpus, DistanceMetric, EmbeddingTable, InfluenceMode, ModelConfig,
    OffSegmentSign, UnknownItemPolicy, VarianceMode,
};

use crate::error::CliError;
use crate::orderings::{parse_ordering_list, parse_seed_list, parse_single_ordering};
use crate::plot::{read_series, render_svg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InfluenceArg {
    Constant,
    #[value(alias = "inverse_square")]
    InverseSquare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistanceArg {
    Euclidean,
    Cosine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VarianceArg {
    Population,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeltaSignArg {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnknownItemsArg {
    /// Derive a deterministic vector from the item name.
    Synthetic,
    /// Fail on items without an embedding.
    Error,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSONL sentence corpus; one {"text": ...} object per line.
    #[arg(long, value_name = "FILE")]
    pub corpus: Option<PathBuf>,

    /// Basket corpus; one comma-separated item list per line.
    #[arg(long, value_name = "FILE")]
    pub baskets: Option<PathBuf>,

    /// Base embeddings in text format; defines the dimension.
    #[arg(long, value_name = "FILE")]
    pub embeddings: Option<PathBuf>,

    /// Item whose polysemy is sampled; repeat to sum several items.
    #[arg(long = "track", value_name = "ITEM")]
    pub track: Vec<String>,

    /// Vector dimension (ignored when --embeddings sets it).
    #[arg(long, value_name = "N")]
    pub dim: Option<usize>,

    /// Chromosomes per cell.
    #[arg(long, value_name = "N")]
    pub chromosomes: Option<usize>,

    /// Passes over the corpus.
    #[arg(long, value_name = "N")]
    pub rounds: Option<usize>,

    /// Crossover weight in [0, 1].
    #[arg(long, value_name = "A", allow_negative_numbers = true)]
    pub alpha: Option<f64>,

    /// Initialization perturbation in (0, 1).
    #[arg(long, value_name = "E", allow_negative_numbers = true)]
    pub epsilon: Option<f64>,

    #[arg(long, value_enum, value_name = "MODE")]
    pub influence: Option<InfluenceArg>,

    #[arg(long, value_enum, value_name = "METRIC")]
    pub distance: Option<DistanceArg>,

    #[arg(long, value_enum, value_name = "MODE")]
    pub variance: Option<VarianceArg>,

    /// Sign of the off-segment initialization delta.
    #[arg(long = "delta-sign", value_enum, value_name = "SIGN")]
    pub delta_sign: Option<DeltaSignArg>,

    /// Base seed for shuffles and synthetic vectors.
    #[arg(long, value_name = "SEED")]
    pub seed: Option<u64>,

    /// What to do with items missing from --embeddings.
    #[arg(long = "unknown-items", value_enum, default_value = "synthetic")]
    pub unknown_items: UnknownItemsArg,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// file | shuffled[:SEED] | interleaved[:SEED] | blocked:IDS[@SEED]
    #[arg(long, value_name = "SPEC", default_value = "file")]
    pub ordering: String,

    /// Write the trajectory CSV here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Comma-separated ordering list; bare integers extend a blocked entry.
    #[arg(long, value_name = "LIST")]
    pub orderings: String,

    /// Comma-separated sweep seeds; every ordering runs once per seed.
    #[arg(long, value_name = "LIST", default_value = "0")]
    pub seeds: String,

    /// Write the summary CSV here instead of stdout.
    #[arg(long = "out-summary", value_name = "FILE")]
    pub out_summary: Option<PathBuf>,

    /// Also write the full trajectories of every run.
    #[arg(long = "out-trajectories", value_name = "FILE")]
    pub out_trajectories: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenCorpusArgs {
    /// Number of senses in the chain.
    #[arg(long, default_value_t = 4, value_name = "N")]
    pub senses: usize,

    /// Sentences generated per sense.
    #[arg(long = "per-sense", default_value_t = 100, value_name = "N")]
    pub per_sense: usize,

    /// The polysemous item present in every sentence.
    #[arg(long, default_value = "target", value_name = "ITEM")]
    pub target: String,

    /// Context vocabulary size per sense.
    #[arg(long = "vocab-per-sense", default_value_t = 20, value_name = "N")]
    pub vocab_per_sense: usize,

    /// Bridge vocabulary shared by each consecutive sense pair.
    #[arg(long = "bridge-per-sense", default_value_t = 5, value_name = "N")]
    pub bridge_per_sense: usize,

    /// Fewest context items per sentence.
    #[arg(long = "min-words", default_value_t = 4, value_name = "N")]
    pub min_words: usize,

    /// Most context items per sentence.
    #[arg(long = "max-words", default_value_t = 9, value_name = "N")]
    pub max_words: usize,

    /// Embedding dimension.
    #[arg(long, default_value_t = 50, value_name = "N")]
    pub dim: usize,

    /// Noise radius around each sense center.
    #[arg(long, default_value_t = 0.1, value_name = "S")]
    pub spread: f64,

    #[arg(long, default_value_t = 0, value_name = "SEED")]
    pub seed: u64,

    /// Where to write the JSONL corpus.
    #[arg(long = "out-corpus", value_name = "FILE")]
    pub out_corpus: PathBuf,

    /// Where to write the embedding table.
    #[arg(long = "out-embeddings", value_name = "FILE")]
    pub out_embeddings: PathBuf,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Trajectory CSV produced by run or compare.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,

    /// Where to write the SVG.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,

    #[arg(long, default_value_t = 960, value_name = "PX")]
    pub width: u32,

    #[arg(long, default_value_t = 600, value_name = "PX")]
    pub height: u32,
}

struct Setup {
    corpus: Corpus,
    base: BaseVectors,
    config: ModelConfig,
}

fn load_setup(common: &CommonArgs) -> Result<Setup, CliError> {
    let corpus = match (&common.corpus, &common.baskets) {
        (Some(path), None) => ingest_jsonl(path)
            .map_err(|e| CliError::data(format!("{}: {e}", path.display())))?,
        (None, Some(path)) => ingest_baskets(path)
            .map_err(|e| CliError::data(format!("{}: {e}", path.display())))?,
        _ => {
            return Err(CliError::usage(
                "give exactly one of --corpus or --baskets",
            ))
        }
    };
    if common.track.is_empty() {
        return Err(CliError::usage("give at least one --track item"));
    }

    let mut config = ModelConfig::default();
    if let Some(v) = common.chromosomes {
        config.chromosomes = v;
    }
    if let Some(v) = common.rounds {
        config.rounds = v;
    }
    if let Some(v) = common.alpha {
        config.alpha = v;
    }
    if let Some(v) = common.epsilon {
        config.epsilon = v;
    }
    if let Some(v) = common.influence {
        config.influence_mode = match v {
            InfluenceArg::Constant => InfluenceMode::Constant,
            InfluenceArg::InverseSquare => InfluenceMode::InverseSquare,
        };
    }
    if let Some(v) = common.distance {
        config.distance_metric = match v {
            DistanceArg::Euclidean => DistanceMetric::Euclidean,
            DistanceArg::Cosine => DistanceMetric::Cosine,
        };
    }
    if let Some(v) = common.variance {
        config.variance_mode = match v {
            VarianceArg::Population => VarianceMode::Population,
            VarianceArg::Sample => VarianceMode::Sample,
        };
    }
    if let Some(v) = common.delta_sign {
        config.off_segment_sign = match v {
            DeltaSignArg::Positive => OffSegmentSign::Positive,
            DeltaSignArg::Negative => OffSegmentSign::Negative,
        };
    }
    config.rng_seed = common.seed.unwrap_or(0);

    let table = match &common.embeddings {
        Some(path) => {
            let table = EmbeddingTable::read_text_file(path)
                .map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
            if let Some(dim) = common.dim {
                if dim != table.dimension() {
                    return Err(CliError::data(format!(
                        "--dim {dim} conflicts with the embedding dimension {}",
                        table.dimension()
                    )));
                }
            }
            config.dimension = table.dimension();
            Some(table)
        }
        None => {
            if common.unknown_items == UnknownItemsArg::Error {
                return Err(CliError::usage(
                    "--unknown-items error needs --embeddings",
                ));
            }
            if let Some(dim) = common.dim {
                config.dimension = dim;
            }
            None
        }
    };
    config.validate()?;

    let policy = match common.unknown_items {
        UnknownItemsArg::Synthetic => UnknownItemPolicy::Synthetic,
        UnknownItemsArg::Error => UnknownItemPolicy::Error,
    };
    let base = match table {
        Some(table) => BaseVectors::new(table, policy, config.rng_seed),
        None => BaseVectors::synthetic(config.dimension, config.rng_seed)?,
    };
    Ok(Setup {
        corpus,
        base,
        config,
    })
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(p) => {
            let file = File::create(p)
                .map_err(|e| CliError::data(format!("{}: {e}", p.display())))?;
            Ok(Box::new(file))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

pub fn cmd_run(args: &RunArgs) -> Result<(), CliError> {
    let setup = load_setup(&args.common)?;
    let ordering = parse_single_ordering(&args.ordering, setup.config.rng_seed)?;
    let result = run_experiment(
        &setup.corpus,
        &setup.base,
        &ordering,
        &setup.config,
        &args.common.track,
    )?;
    let run = ComparisonRun {
        label: ordering.to_string(),
        seed: ordering.seed,
        result,
    };
    let out = open_output(args.out.as_deref())?;
    write_trajectories_csv(std::slice::from_ref(&run), out)?;
    Ok(())
}

pub fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let setup = load_setup(&args.common)?;
    let orderings = parse_ordering_list(&args.orderings, setup.config.rng_seed)?;
    let seeds = parse_seed_list(&args.seeds)?;
    let report = compare_orderings(
        &setup.corpus,
        &setup.base,
        &orderings,
        &setup.config,
        &args.common.track,
        &seeds,
    )?;
    if let Some(path) = &args.out_trajectories {
        let out = open_output(Some(path))?;
        write_trajectories_csv(&report.runs, out)?;
    }
    let out = open_output(args.out_summary.as_deref())?;
    write_summaries_csv(&report.runs, out)?;
    Ok(())
}

pub fn cmd_gen_corpus(args: &GenCorpusArgs) -> Result<(), CliError> {
    let senses = (1..=args.senses as i64)
        .map(|id| SenseSpec {
            id,
            context_vocabulary: (0..args.vocab_per_sense)
                .map(|j| format!("s{id}w{j}"))
                .collect(),
            bridge_to_next: if (id as usize) < args.senses {
                (0..args.bridge_per_sense)
                    .map(|j| format!("br{id}x{}w{j}", id + 1))
                    .collect()
            } else {
                Vec::new()
            },
        })
        .collect();
    let spec = SenseCorpusSpec {
        target_item: args.target.clone(),
        senses,
        sentences_per_sense: args.per_sense,
        sentence_length: args.min_words..=args.max_words,
        embedding_dimension: args.dim,
        embedding_spread: args.spread,
        seed: args.seed,
    };
    let generated = generate_sense_corpus(&spec)?;
    for warning in &generated.warnings {
        eprintln!("warning: {warning:?}");
    }
    write_jsonl_file(&generated.corpus, &args.out_corpus)
        .map_err(|e| CliError::data(format!("{}: {e}", args.out_corpus.display())))?;
    generated
        .embeddings
        .write_text_file(&args.out_embeddings)
        .map_err(|e| CliError::data(format!("{}: {e}", args.out_embeddings.display())))?;
    eprintln!(
        "wrote {} units over {} senses to {}, {} vectors to {}",
        generated.corpus.len(),
        args.senses,
        args.out_corpus.display(),
        generated.embeddings.len(),
        args.out_embeddings.display()
    );
    Ok(())
}

pub fn cmd_plot(args: &PlotArgs) -> Result<(), CliError> {
    if !(64..=20000).contains(&args.width) || !(64..=20000).contains(&args.height) {
        return Err(CliError::usage("--width and --height must be in 64..=20000"));
    }
    let file = File::open(&args.input)
        .map_err(|e| CliError::data(format!("{}: {e}", args.input.display())))?;
    let series = read_series(file)?;
    let svg = render_svg(&series, args.width, args.height);
    std::fs::write(&args.out, svg)
        .map_err(|e| CliError::data(format!("{}: {e}", args.out.display())))?;
    Ok(())
}
