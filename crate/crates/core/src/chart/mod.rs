//! From a session log to a chart model: one timeline per model element,
//! one styled dot per operation.
//!
//! [`build_chart`] runs the whole pipeline: style each dot, transform its
//! time, order the timelines, then apply visibility filters. Filters only
//! hide dots; the number of timelines always equals the number of traces.

pub mod config;
mod time;

use std::cmp::Ordering;
use std::fmt;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::eventlog::{EventLog, Millis};
use crate::replay::{
    create_order_from_start, distance_from_start, ElementOrder, ModelGraph, OrderingError, OrderingOptions,
};
use crate::taxonomy::{default_style, palette, DotStyle, ElementKind, OperationKind, Shape};

pub use config::{
    ChartConfig, ColorBy, ConfigError, FilterSpec, ShapeBy, SortBy, TimeInterval, TimeOption, DEFAULT_WINDOW_MS,
};
pub use time::{gridlines, transform_times, MAX_GRIDLINES};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Dot {
    pub element_id: String,
    pub operation: OperationKind,
    pub t_actual: Millis,
    /// Time after the time-option transform; relative modes count from 0.
    pub t_display: Millis,
    pub style: DotStyle,
    /// False when suppressed by a filter.
    pub visible: bool,
    /// False when `t_display` falls outside the chart window.
    pub in_window: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Timeline {
    pub element_id: String,
    pub kind: Option<ElementKind>,
    pub dots: Vec<Dot>,
}

impl Timeline {
    pub fn visible_dots(&self) -> impl Iterator<Item = &Dot> {
        self.dots.iter().filter(|d| d.visible)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub enum NoticeKind {
    /// The requested graph-based sort could not be computed.
    #[serde(rename = "fallback: first-operation")]
    FallbackFirstOperation,
    /// Positions were missing, arcs were measured in hops.
    #[serde(rename = "fallback: unit-length")]
    UnitLengthFallback,
    #[serde(rename = "skipped: unknown-operation")]
    SkippedUnknownOperation,
}

impl fmt::Display for NoticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoticeKind::FallbackFirstOperation => "fallback: first-operation",
            NoticeKind::UnitLengthFallback => "fallback: unit-length",
            NoticeKind::SkippedUnknownOperation => "skipped: unknown-operation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct ChartNotice {
    pub kind: NoticeKind,
    pub message: String,
}

impl fmt::Display for ChartNotice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.kind, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct LegendEntry {
    pub operation: OperationKind,
    pub style: DotStyle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct ChartModel {
    pub timelines: Vec<Timeline>,
    /// Window start: the earliest event (actual time) or 0 (relative modes).
    pub t0: Millis,
    pub window_ms: i64,
    pub time_interval: TimeInterval,
    pub gridline_times: Vec<Millis>,
    pub legend: Vec<LegendEntry>,
    pub notices: Vec<ChartNotice>,
}

impl ChartModel {
    pub fn visible_dot_count(&self) -> usize {
        self.timelines.iter().map(|t| t.visible_dots().count()).sum()
    }

    pub fn dot_count(&self) -> usize {
        self.timelines.iter().map(|t| t.dots.len()).sum()
    }
}

/// Final dot style for an operation under a config.
pub fn resolve_style(operation: &OperationKind, config: &ChartConfig) -> Option<DotStyle> {
    let mut style = config
        .style_overrides
        .get(operation)
        .copied()
        .or_else(|| default_style(operation).ok())?;
    if config.color_by == ColorBy::None {
        style.color = palette::MID_GREY;
    }
    if config.shape_by == ShapeBy::None {
        style.shape = Shape::Circle;
    }
    Some(style)
}

/// Builds the chart model. `graph` is only consulted by the graph-based
/// sorts; without it they fall back to first-operation order.
pub fn build_chart(log: &EventLog, graph: Option<&ModelGraph>, config: &ChartConfig) -> ChartModel {
    let mut notices = Vec::new();
    let mut skipped = 0usize;

    let mut timelines: Vec<Timeline> = log
        .traces
        .iter()
        .map(|trace| {
            let mut dots: Vec<Dot> = Vec::with_capacity(trace.events.len());
            for event in &trace.events {
                let operation = event.operation();
                let Some(style) = resolve_style(&operation, config) else {
                    skipped += 1;
                    continue;
                };
                dots.push(Dot {
                    element_id: trace.element_id.clone(),
                    operation,
                    t_actual: event.timestamp,
                    t_display: event.timestamp,
                    style,
                    visible: true,
                    in_window: true,
                });
            }
            dots.sort_by_key(|d| d.t_actual);
            transform_times(&mut dots, config.time_option, config.window_ms);
            Timeline {
                element_id: trace.element_id.clone(),
                kind: dots.iter().find_map(|d| d.operation.element_kind()),
                dots,
            }
        })
        .collect();
    if skipped > 0 {
        notices.push(ChartNotice {
            kind: NoticeKind::SkippedUnknownOperation,
            message: format!("{skipped} event(s) with unknown operation names"),
        });
    }

    let t0 = match config.time_option {
        TimeOption::Actual => log.traces.iter().filter_map(|t| t.first_timestamp()).min().unwrap_or(0),
        TimeOption::RelativeTime | TimeOption::RelativeRatio => 0,
    };
    let end = t0.saturating_add(config.window_ms);
    for dot in timelines.iter_mut().flat_map(|t| t.dots.iter_mut()) {
        dot.in_window = (t0..=end).contains(&dot.t_display);
    }

    notices.extend(sort_timelines(&mut timelines, config.sort_by, config.descending, graph));
    apply_filters(&mut timelines, &config.filters);

    let legend = OperationKind::ALL
        .iter()
        .map(|op| LegendEntry {
            operation: op.clone(),
            style: resolve_style(op, config).expect("known operation"),
        })
        .collect();

    ChartModel {
        timelines,
        t0,
        window_ms: config.window_ms,
        time_interval: config.time_interval,
        gridline_times: gridlines(t0, config.window_ms, config.time_interval),
        legend,
        notices,
    }
}

#[derive(Debug, Clone, PartialEq)]
enum SortKey {
    Number(f64, u8),
    Text(String),
}

impl SortKey {
    fn compare(&self, other: &SortKey) -> Ordering {
        match (self, other) {
            (SortKey::Number(a, ta), SortKey::Number(b, tb)) => a.total_cmp(b).then(ta.cmp(tb)),
            (SortKey::Text(a), SortKey::Text(b)) => a.cmp(b),
            _ => Ordering::Equal,
        }
    }
}

fn graph_order(sort_by: SortBy, graph: Option<&ModelGraph>) -> Result<ElementOrder, OrderingError> {
    let graph = graph.ok_or_else(|| OrderingError::Unavailable("no model graph".into()))?;
    let options = OrderingOptions::default();
    match sort_by {
        SortBy::DistanceFromStart => distance_from_start(graph, &options),
        _ => create_order_from_start(graph, &options),
    }
}

/// Orders timelines in place. All sorts are stable; `descending` reverses
/// the comparison, so equal keys keep their log order either way.
pub fn sort_timelines(
    timelines: &mut [Timeline],
    sort_by: SortBy,
    descending: bool,
    graph: Option<&ModelGraph>,
) -> Vec<ChartNotice> {
    let mut notices = Vec::new();
    let mut sort_by = sort_by;
    let mut order = None;
    if sort_by.needs_graph() {
        match graph_order(sort_by, graph) {
            Ok(o) => {
                if o.used_unit_fallback() {
                    notices.push(ChartNotice {
                        kind: NoticeKind::UnitLengthFallback,
                        message: "arc lengths counted in hops; some elements lack positions".into(),
                    });
                }
                order = Some(o);
            }
            Err(e) => {
                notices.push(ChartNotice {
                    kind: NoticeKind::FallbackFirstOperation,
                    message: e.to_string(),
                });
                sort_by = SortBy::FirstOperation;
            }
        }
    }

    let edge = |t: &Timeline, first: bool| {
        let dot = if first { t.dots.first() } else { t.dots.last() };
        dot.map_or(SortKey::Number(f64::INFINITY, 0), |d| {
            SortKey::Number(d.t_actual as f64, 0)
        })
    };
    let key = |index: usize, t: &Timeline| -> SortKey {
        match sort_by {
            SortBy::None => SortKey::Number(index as f64, 0),
            SortBy::ModelElement => SortKey::Text(t.element_id.clone()),
            SortBy::NumberOfOperations => SortKey::Number(t.dots.len() as f64, 0),
            SortBy::Duration => {
                let span = match (t.dots.first(), t.dots.last()) {
                    (Some(a), Some(b)) => (b.t_actual - a.t_actual) as f64,
                    _ => 0.0,
                };
                SortKey::Number(span, 0)
            }
            SortBy::FirstOperation => edge(t, true),
            SortBy::LastOperation => edge(t, false),
            SortBy::DistanceFromStart | SortBy::CreateOrderFromStart => {
                let (rank, tier) = order
                    .as_ref()
                    .and_then(|o| o.key_of(&t.element_id))
                    .unwrap_or((f64::INFINITY, 0));
                SortKey::Number(rank, tier)
            }
        }
    };

    let mut keyed: Vec<(SortKey, Timeline)> = timelines
        .iter()
        .enumerate()
        .map(|(i, t)| (key(i, t), t.clone()))
        .collect();
    keyed.sort_by(|(a, _), (b, _)| {
        let ordering = a.compare(b);
        if descending {
            ordering.reverse()
        } else {
            ordering
        }
    });
    for (slot, (_, t)) in timelines.iter_mut().zip(keyed) {
        *slot = t;
    }
    notices
}

/// Sets dot visibility from a filter spec. Never removes timelines.
pub fn apply_filters(timelines: &mut [Timeline], filters: &FilterSpec) {
    for timeline in timelines.iter_mut() {
        let whole_line = timeline
            .dots
            .iter()
            .any(|d| filters.hide_elements_with_operation.contains(&d.operation));
        let line_kind = timeline.kind;
        for dot in &mut timeline.dots {
            let kind = dot.operation.element_kind().or(line_kind);
            dot.visible = !(whole_line
                || kind.is_some_and(|k| filters.hide_element_kinds.contains(&k))
                || filters.hide_operation_kinds.contains(&dot.operation));
        }
    }
}
