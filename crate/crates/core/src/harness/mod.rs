//! Seeded sweeps over the population size K, figure presets and CSV output.

mod grid;
mod output;
mod presets;
mod spec;
mod sweep;

pub use grid::paper_k_grid;
pub use output::{write_cells_csv, write_records, write_runs_csv, write_sweep, CELLS_FILE, RUNS_FILE};
pub use presets::{replicate, Preset, FIG1_LITE_KS, FIG3_LITE_KS};
pub use spec::{KValues, PbarSpec, SweepSpec, DEFAULT_MASTER_SEED};
pub use sweep::{run_sweep, summarize, CellSummary, RunRow, SweepOutput};
