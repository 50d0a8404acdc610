//! Configuration, parameter sweeps, figure presets and tabular output for the
//! `qdiode-core` thermal diode model.

pub mod checks;
pub mod config;
pub mod emit;
pub mod presets;
pub mod run;

pub use config::{parse_config, ConfigError, Format, Mode, OutputSpec, Param, RunSpec, SweepAxis};
pub use emit::{emit, to_csv_string, to_json, to_json_string, EmitError};
pub use presets::{preset, Preset, DEFAULT_GRID, PRESET_NAMES};
pub use run::{run, run_point, ResultRow};
