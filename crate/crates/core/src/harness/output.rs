use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

use super::sweep::{CellSummary, RunRow, SweepOutput};

pub const RUNS_FILE: &str = "runs.csv";
pub const CELLS_FILE: &str = "cells.csv";

fn write_csv<T: Serialize>(path: &Path, records: &[T]) -> Result<()> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for r in records {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes rows to any writer, header first.
pub fn write_records<T: Serialize, W: Write>(out: W, records: &[T]) -> std::result::Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_runs_csv(path: &Path, rows: &[RunRow]) -> Result<()> {
    write_csv(path, rows)
}

pub fn write_cells_csv(path: &Path, cells: &[CellSummary]) -> Result<()> {
    write_csv(path, cells)
}

/// Writes `runs.csv` and `cells.csv` into `dir`, creating it if needed.
pub fn write_sweep(dir: &Path, output: &SweepOutput) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let runs = dir.join(RUNS_FILE);
    let cells = dir.join(CELLS_FILE);
    write_runs_csv(&runs, &output.rows)?;
    write_cells_csv(&cells, &output.cells)?;
    Ok((runs, cells))
}
