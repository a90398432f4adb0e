//! Command-line front end for the semantic-cells library.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

mod commands;
mod error;
mod orderings;
mod plot;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::{cmd_compare, cmd_gen_corpus, cmd_plot, cmd_run, CompareArgs, GenCorpusArgs, PlotArgs, RunArgs};

#[derive(Debug, Parser)]
#[command(
    name = "semantic-cells",
    version,
    about = "Evolve per-item chromosome populations over a co-existence corpus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve one corpus ordering and emit the polysemy trajectory as CSV.
    Run(RunArgs),
    /// Sweep several orderings and seeds, emitting summary statistics as CSV.
    Compare(CompareArgs),
    /// Generate a synthetic multi-sense corpus plus matching embeddings.
    GenCorpus(GenCorpusArgs),
    /// Render a trajectory CSV as an SVG line chart.
    Plot(PlotArgs),
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // clap writes help to stdout and errors to stderr on its own.
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Compare(args) => cmd_compare(args),
        Command::GenCorpus(args) => cmd_gen_corpus(args),
        Command::Plot(args) => cmd_plot(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code().into());
    }
}
