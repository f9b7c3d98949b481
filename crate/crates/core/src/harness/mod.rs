//! Sweeps, metrics, file output and the validation suites behind the CLI.

pub mod config;
pub mod plot;
pub mod sweep;
pub mod validate;

pub use config::SweepConfig;
pub use plot::{emit_plot, render_svg};
pub use sweep::{
    emit_csv, error_metrics, read_csv, run_sweep, run_sweep_with, write_csv, ErrorSummary,
    SweepRow, CSV_HEADER,
};
pub use validate::{validate, ValidateOptions, ValidateReport};
