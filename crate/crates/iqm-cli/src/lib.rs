//! Batch front end: JSON scenario files in, CSV tables out.

pub mod config;
pub mod csv_out;
pub mod dispatch;
pub mod parcel_io;
pub mod pipeline;

pub use config::{parse_config, ConfigError, Overrides, ScenarioConfig};
pub use dispatch::{dispatch, Outcome, RunError};
