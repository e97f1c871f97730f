//! Command-line driver: configs, the commands and their JSON artifacts.

mod config;
mod pretty;
mod run;

pub use config::{degree_cap_from, CommandKind, RunConfig};
pub use pretty::render_pretty;
pub use run::{build_nilpotent_setup, error_exit_code, exit_code, run, Artifact, ToolInfo, SCHEMA_VERSION};
