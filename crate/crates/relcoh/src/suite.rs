//! Parallel verification runs and report files.

use std::io::Write;

use rayon::prelude::*;
use relcoh_core::{compare_state_with, point_options, GridSpec, Report};

use crate::error::Result;

/// Same output as [`relcoh_core::run_suite`], with grid points evaluated on
/// the rayon pool.
pub fn run_suite_parallel(grid: &GridSpec, seed: u64) -> Result<Report> {
    let records = grid
        .scenarios()?
        .par_iter()
        .enumerate()
        .map(|(i, s)| compare_state_with(s, &point_options(seed, i)))
        .collect::<relcoh_core::Result<Vec<_>>>()?;
    Ok(Report::from_records(records, seed))
}

pub fn write_report<W: Write>(report: &Report, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    out.write_all(b"\n")?;
    out.flush()
}
