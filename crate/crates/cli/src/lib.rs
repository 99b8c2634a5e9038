//! Command-line front end for `jcpurity`: time scans, parameter sweeps,
//! one-shot quantification and oracle verification, with CSV/JSON output
//! and SVG line charts.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod plot;

pub use args::{parse_args, Cli, Command};
pub use commands::run;
pub use error::{CliError, Result};
pub use output::{format_number, render_csv, render_json, write_records, Format, Row, COLUMNS};
pub use plot::{render_svg, write_svg, PlotError};
