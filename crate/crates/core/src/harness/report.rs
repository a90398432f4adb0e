//! CSV emission for trajectories and summaries.
//!
//! Both formats use LF line endings and shortest round-trip float formatting,
//! so identical runs serialize to identical bytes.

use std::io::Write;

use crate::harness::experiment::ComparisonRun;

pub const TRAJECTORY_HEADER: [&str; 5] = ["ordering", "seed", "step", "item", "polysemy"];
pub const SUMMARY_HEADER: [&str; 7] = [
    "ordering",
    "seed",
    "initial",
    "final",
    "decrease_count",
    "monotonicity_ratio",
    "max_drawdown",
];

/// One row per sample of every run, runs in input order.
pub fn write_trajectories_csv(runs: &[ComparisonRun], writer: impl Write) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    w.write_record(TRAJECTORY_HEADER)?;
    for run in runs {
        let label = run.result.trajectory.label();
        let seed = run.seed.to_string();
        for sample in run.result.trajectory.samples() {
            w.write_record([
                run.label.as_str(),
                &seed,
                &sample.step.to_string(),
                label,
                &sample.polysemy.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// One row per run, runs in input order.
pub fn write_summaries_csv(runs: &[ComparisonRun], writer: impl Write) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    w.write_record(SUMMARY_HEADER)?;
    for run in runs {
        let s = &run.result.summary;
        w.write_record([
            run.label.as_str(),
            &run.seed.to_string(),
            &s.initial.to_string(),
            &s.last.to_string(),
            &s.decrease_count.to_string(),
            &s.monotonicity_ratio.to_string(),
            &s.max_drawdown.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
