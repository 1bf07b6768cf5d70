//! Configuration-driven front end: JSON run configuration, sweep execution
//! and CSV / gnuplot emission. The binary in `main.rs` is a thin wrapper
//! around this module.

mod config;
mod output;
mod runner;

pub use config::{
    ConfigError, MirrorConfig, RunConfig, Scenario, Spacing, Sweep, SweepVariable, UnitSystem,
};
pub use output::{emit_csv, emit_plot_script};
pub use runner::{run, ResultRow, RunError, RunOutput};
