//! Event-log data model: one trace per model element, each trace an ordered
//! list of timestamped operations.
//!
//! Two on-disk formats are supported, an XES subset ([`LogFormat::Xes`])
//! and a flat CSV layout ([`LogFormat::Csv`]). Both parse into the same
//! [`EventLog`] value.

mod csv;
mod validate;
mod xes;

use std::collections::BTreeMap;
use std::path::Path;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::taxonomy::{ClassifyError, OperationKind};

pub use validate::{validate_log, Severity, ValidationFinding};
pub use xes::format_timestamp;

/// Milliseconds since the Unix epoch (UTC).
pub type Millis = i64;

/// Canvas coordinates in pixels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogEvent {
    /// Operation name, normally one of [`OperationKind::ALL`].
    pub name: String,
    pub timestamp: Millis,
    pub element_id: String,
    pub position: Option<Point>,
    pub edge_source: Option<String>,
    pub edge_target: Option<String>,
    pub label_text: Option<String>,
    /// Attributes outside the recognized set, kept but otherwise unused.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub attributes: BTreeMap<String, String>,
}

impl LogEvent {
    pub fn new(name: impl Into<String>, element_id: impl Into<String>, timestamp: Millis) -> Self {
        LogEvent {
            name: name.into(),
            timestamp,
            element_id: element_id.into(),
            position: None,
            edge_source: None,
            edge_target: None,
            label_text: None,
            attributes: BTreeMap::new(),
        }
    }

    pub fn at(mut self, x: f64, y: f64) -> Self {
        self.position = Some(Point::new(x, y));
        self
    }

    pub fn connecting(mut self, source: impl Into<String>, target: impl Into<String>) -> Self {
        self.edge_source = Some(source.into());
        self.edge_target = Some(target.into());
        self
    }

    pub fn labeled(mut self, text: impl Into<String>) -> Self {
        self.label_text = Some(text.into());
        self
    }

    /// The operation this event records; unknown names map to `Unknown`.
    pub fn operation(&self) -> OperationKind {
        OperationKind::from_name(&self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementTrace {
    pub element_id: String,
    pub events: Vec<LogEvent>,
}

impl ElementTrace {
    pub fn new(element_id: impl Into<String>, events: Vec<LogEvent>) -> Self {
        ElementTrace {
            element_id: element_id.into(),
            events,
        }
    }

    pub fn first_timestamp(&self) -> Option<Millis> {
        self.events.first().map(|e| e.timestamp)
    }

    pub fn last_timestamp(&self) -> Option<Millis> {
        self.events.last().map(|e| e.timestamp)
    }
}

/// A single modeling session.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct EventLog {
    pub log_id: String,
    pub traces: Vec<ElementTrace>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub source_meta: BTreeMap<String, String>,
}

/// An event reference in session order: `(trace index, event index)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventRef {
    pub trace: usize,
    pub event: usize,
}

impl EventLog {
    pub fn new(log_id: impl Into<String>, traces: Vec<ElementTrace>) -> Self {
        EventLog {
            log_id: log_id.into(),
            traces,
            source_meta: BTreeMap::new(),
        }
    }

    /// Groups a flat event list into traces by element id. Traces appear in
    /// order of first occurrence and events are stably sorted by time.
    pub fn from_events(log_id: impl Into<String>, events: Vec<LogEvent>) -> Self {
        let mut log = EventLog::grouped(log_id, events);
        for trace in &mut log.traces {
            trace.events.sort_by_key(|e| e.timestamp);
        }
        log
    }

    /// Groups events into traces without reordering them.
    pub(crate) fn grouped(log_id: impl Into<String>, events: Vec<LogEvent>) -> Self {
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut traces: Vec<ElementTrace> = Vec::new();
        for event in events {
            let slot = *index.entry(event.element_id.clone()).or_insert_with(|| {
                traces.push(ElementTrace::new(event.element_id.clone(), Vec::new()));
                traces.len() - 1
            });
            traces[slot].events.push(event);
        }
        EventLog::new(log_id, traces)
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    pub fn event_count(&self) -> usize {
        self.traces.iter().map(|t| t.events.len()).sum()
    }

    pub fn event(&self, r: EventRef) -> &LogEvent {
        &self.traces[r.trace].events[r.event]
    }

    pub fn trace_index(&self, element_id: &str) -> Option<usize> {
        self.traces.iter().position(|t| t.element_id == element_id)
    }

    /// All events in session order: by timestamp, ties resolved by the
    /// position of the record in the log (trace order, then event order).
    pub fn session_order(&self) -> Vec<EventRef> {
        let mut refs: Vec<EventRef> = self
            .traces
            .iter()
            .enumerate()
            .flat_map(|(t, trace)| (0..trace.events.len()).map(move |e| EventRef { trace: t, event: e }))
            .collect();
        refs.sort_by_key(|r| self.event(*r).timestamp);
        refs
    }

    /// Checks the structural invariants of the data model.
    pub fn check_invariants(&self) -> Result<(), LogError> {
        let mut seen = std::collections::HashSet::new();
        for trace in &self.traces {
            let schema = |message: String| LogError::Schema {
                trace: trace.element_id.clone(),
                message,
            };
            if !seen.insert(trace.element_id.as_str()) {
                return Err(schema("duplicate element id".into()));
            }
            let mut previous = Millis::MIN;
            for event in &trace.events {
                if event.name.is_empty() {
                    return Err(schema("event with empty name".into()));
                }
                if event.element_id != trace.element_id {
                    return Err(schema(format!(
                        "event id `{}` does not match trace name",
                        event.element_id
                    )));
                }
                if event.timestamp < 0 {
                    return Err(schema(format!("negative timestamp {}", event.timestamp)));
                }
                if event.timestamp < previous {
                    return Err(schema("events not sorted by timestamp".into()));
                }
                if let Some(p) = event.position {
                    if !p.x.is_finite() || !p.y.is_finite() {
                        return Err(schema("non-finite position".into()));
                    }
                }
                previous = event.timestamp;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LogFormat {
    Xes,
    Csv,
}

impl LogFormat {
    /// Guesses the format from a file extension.
    pub fn from_path(path: &Path) -> Option<LogFormat> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "xes" | "xml" => Some(LogFormat::Xes),
            "csv" => Some(LogFormat::Csv),
            _ => None,
        }
    }

    /// Guesses the format from content: XML starts with `<`.
    pub fn sniff(raw: &[u8]) -> LogFormat {
        let first = raw
            .iter()
            .copied()
            .find(|b| !b.is_ascii_whitespace() && *b != 0xEF && *b != 0xBB && *b != 0xBF);
        if first == Some(b'<') {
            LogFormat::Xes
        } else {
            LogFormat::Csv
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            LogFormat::Xes => "xes",
            LogFormat::Csv => "csv",
        }
    }
}

impl std::str::FromStr for LogFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "xes" | "xes-xml" => Ok(LogFormat::Xes),
            "csv" | "flat-csv" => Ok(LogFormat::Csv),
            other => Err(format!("unsupported log format `{other}`")),
        }
    }
}

#[derive(Debug, Error)]
pub enum LogError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error in trace `{trace}`: {message}")]
    Schema { trace: String, message: String },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("cannot write log: {0}")]
    Write(String),
}

impl LogError {
    pub(crate) fn parse_at(raw: &[u8], offset: usize, message: impl Into<String>) -> LogError {
        let upto = &raw[..offset.min(raw.len())];
        let line = upto.iter().filter(|b| **b == b'\n').count() + 1;
        let column = upto.iter().rev().take_while(|b| **b != b'\n').count() + 1;
        LogError::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseWarning {
    pub code: String,
    pub element_id: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct ParseOptions {
    /// Reject unknown operation names. When false they are dropped with a
    /// warning instead.
    pub strict_operations: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            strict_operations: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ParsedLog {
    pub log: EventLog,
    pub warnings: Vec<ParseWarning>,
}

pub fn parse_log(raw: &[u8], format: LogFormat, options: &ParseOptions) -> Result<ParsedLog, LogError> {
    let mut warnings = Vec::new();
    let mut log = match format {
        LogFormat::Xes => xes::read(raw, &mut warnings)?,
        LogFormat::Csv => csv::read(raw, &mut warnings)?,
    };
    normalize(&mut log, options, &mut warnings)?;
    log.check_invariants()?;
    Ok(ParsedLog { log, warnings })
}

/// Reads and parses a log file, picking the format from its extension
/// (falling back to content sniffing).
pub fn read_log_file(path: &Path, options: &ParseOptions) -> Result<ParsedLog, ReadError> {
    let raw = std::fs::read(path).map_err(|source| ReadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let format = LogFormat::from_path(path).unwrap_or_else(|| LogFormat::sniff(&raw));
    let mut parsed = parse_log(&raw, format, options)?;
    if parsed.log.log_id.is_empty() {
        if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
            parsed.log.log_id = stem.to_string();
        }
    }
    Ok(parsed)
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Log(#[from] LogError),
}

pub fn write_log(log: &EventLog, format: LogFormat) -> Result<Vec<u8>, LogError> {
    log.check_invariants()?;
    match format {
        LogFormat::Xes => Ok(xes::write(log)),
        LogFormat::Csv => csv::write(log),
    }
}

/// Enforces operation vocabulary and per-trace time order.
fn normalize(log: &mut EventLog, options: &ParseOptions, warnings: &mut Vec<ParseWarning>) -> Result<(), LogError> {
    for trace in &mut log.traces {
        let mut dropped = Vec::new();
        trace.events.retain(|event| {
            if OperationKind::from_name(&event.name).is_known() {
                return true;
            }
            dropped.push(event.name.clone());
            false
        });
        if let Some(name) = dropped.first() {
            if options.strict_operations {
                return Err(LogError::Schema {
                    trace: trace.element_id.clone(),
                    message: ClassifyError(name.clone()).to_string(),
                });
            }
            for name in dropped {
                warnings.push(ParseWarning {
                    code: "unknown-operation".into(),
                    element_id: Some(trace.element_id.clone()),
                    message: format!("dropped event with unknown operation `{name}`"),
                });
            }
        }
        if trace.events.windows(2).any(|w| w[1].timestamp < w[0].timestamp) {
            trace.events.sort_by_key(|e| e.timestamp);
            warnings.push(ParseWarning {
                code: "events-reordered".into(),
                element_id: Some(trace.element_id.clone()),
                message: "events were not in timestamp order and have been re-sorted".into(),
            });
        }
    }
    Ok(())
}
