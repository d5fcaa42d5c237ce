//! Dotted-chart analysis of process-modeling sessions.
//!
//! A session log records every canvas operation a modeler performed while
//! building a process model, grouped into one trace per model element. This
//! crate parses such logs ([`eventlog`]), classifies and styles operations
//! ([`taxonomy`]), replays them into the model under construction
//! ([`replay`]), lays out one timeline per element ([`chart`]), draws the
//! result as SVG ([`render`]) and measures modeling-style patterns
//! ([`analytics`]). [`fixtures`] generates synthetic sessions.
//!
//! ```
//! use ppmchart::prelude::*;
//!
//! let log = ppmchart::fixtures::chain_log();
//! let graph = replay(&log).unwrap().graph;
//! let chart = build_chart(&log, Some(&graph), &ChartConfig::default());
//! let svg = render_svg(&chart, &RenderOptions::default()).unwrap();
//! assert!(svg.starts_with("<?xml"));
//! ```

pub mod analytics;
pub mod chart;
pub mod eventlog;
pub mod fixtures;
pub mod render;
pub mod replay;
pub mod taxonomy;

/// The names most programs need.
pub mod prelude {
    pub use crate::analytics::{profile, profiles_to_csv, DetectorConfig, SessionProfile};
    pub use crate::chart::{build_chart, ChartConfig, ChartModel, FilterSpec, SortBy, TimeInterval, TimeOption};
    pub use crate::eventlog::{parse_log, read_log_file, validate_log, write_log, EventLog, LogFormat, ParseOptions};
    pub use crate::render::{hit_test, render_svg, PixelRect, RenderOptions};
    pub use crate::replay::{replay, ModelGraph};
    pub use crate::taxonomy::{ElementKind, OperationCategory, OperationKind};
}
