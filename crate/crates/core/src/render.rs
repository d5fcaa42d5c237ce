//! SVG output for a [`ChartModel`] and pixel hit-testing against it.
//!
//! The document uses only `rect`, `circle`, `polygon`, `line` and `text`.
//! Every dot glyph carries `class="dot op-<NAME> el-<kind>"` together with
//! `data-element-id` and `data-t-actual`, so a viewer can restyle or query
//! dots with CSS selectors. Legend swatches use `class="legend-glyph"`.
//! All coordinates are written with six decimals; the same chart and options
//! always produce the same bytes.

use std::fmt::Write as _;

use quick_xml::escape::escape;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::chart::{ChartModel, ConfigError, Dot};
use crate::eventlog::{format_timestamp, Millis};
use crate::taxonomy::{OperationKind, Rgb, Shape};

const TOP: f64 = 16.0;
const RIGHT: f64 = 16.0;
const BOTTOM: f64 = 16.0;
const LABEL_GUTTER: f64 = 140.0;
const BARE_GUTTER: f64 = 8.0;
const LEGEND_COLUMN: f64 = 200.0;
const LEGEND_ROW: f64 = 18.0;
const FONT_SIZE: f64 = 11.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(default, deny_unknown_fields)]
pub struct RenderOptions {
    pub canvas_width: u32,
    pub canvas_height: u32,
    /// Glyph edge length (squares) or diameter (circles) in pixels.
    pub dot_size: f64,
    /// Element ids at the start of each line.
    pub show_labels: bool,
    pub show_legend: bool,
    pub zoom_x: f64,
    pub zoom_y: f64,
    pub background: Rgb,
    pub gridline_color: Rgb,
    pub text_color: Rgb,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            canvas_width: 1200,
            canvas_height: 800,
            dot_size: 6.0,
            show_labels: true,
            show_legend: true,
            zoom_x: 1.0,
            zoom_y: 1.0,
            background: Rgb(16, 16, 16),
            gridline_color: Rgb(255, 255, 255),
            text_color: Rgb(220, 220, 220),
        }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |field: &str, message: String| {
            Err(ConfigError {
                field: field.into(),
                message,
            })
        };
        if self.canvas_width == 0 {
            return bad("canvas_width", "must be positive".into());
        }
        if self.canvas_height == 0 {
            return bad("canvas_height", "must be positive".into());
        }
        for (field, value) in [
            ("dot_size", self.dot_size),
            ("zoom_x", self.zoom_x),
            ("zoom_y", self.zoom_y),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return bad(field, format!("must be a positive number, got {value}"));
            }
        }
        Ok(())
    }
}

/// Pixel rectangle in document coordinates. Corners may be given in any
/// order; edges are inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct PixelRect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl PixelRect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        PixelRect { x0, y0, x1, y1 }
    }

    fn normalized(self) -> (f64, f64, f64, f64) {
        (
            self.x0.min(self.x1),
            self.y0.min(self.y1),
            self.x0.max(self.x1),
            self.y0.max(self.y1),
        )
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        let (x0, y0, x1, y1) = self.normalized();
        (x0..=x1).contains(&x) && (y0..=y1).contains(&y)
    }
}

/// One dot found by [`hit_test`], with the fields a tooltip shows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct DotHit {
    /// Index into `chart.timelines`.
    pub timeline: usize,
    /// Index into that timeline's `dots`.
    pub dot: usize,
    pub element_id: String,
    pub operation: OperationKind,
    pub t_actual: Millis,
    pub timestamp: String,
    pub x: f64,
    pub y: f64,
}

/// Pixel geometry shared by the renderer and the hit-tester.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub left: f64,
    pub top: f64,
    /// Plot width at zoom 1.
    pub plot_width: f64,
    pub band_height: f64,
    pub plot_bottom: f64,
    pub legend_top: f64,
    pub legend_columns: usize,
    pub width: f64,
    pub height: f64,
    t0: Millis,
    window_ms: f64,
    zoom_x: f64,
}

impl Layout {
    pub fn new(chart: &ChartModel, opts: &RenderOptions) -> Layout {
        let canvas_w = f64::from(opts.canvas_width);
        let canvas_h = f64::from(opts.canvas_height);
        let left = if opts.show_labels { LABEL_GUTTER } else { BARE_GUTTER };
        let plot_width = (canvas_w - left - RIGHT).max(1.0);

        let legend_columns = ((canvas_w - 2.0 * BARE_GUTTER) / LEGEND_COLUMN).floor().max(1.0) as usize;
        let legend_rows = chart.legend.len().div_ceil(legend_columns);
        let legend_height = if opts.show_legend {
            legend_rows as f64 * LEGEND_ROW + BOTTOM
        } else {
            0.0
        };

        let lines = chart.timelines.len().max(1) as f64;
        let fit = ((canvas_h - TOP - BOTTOM - legend_height) / lines).max(opts.dot_size);
        let band_height = fit * opts.zoom_y;
        let plot_bottom = TOP + band_height * chart.timelines.len() as f64;
        let legend_top = plot_bottom + BOTTOM;

        let mut layout = Layout {
            left,
            top: TOP,
            plot_width,
            band_height,
            plot_bottom,
            legend_top,
            legend_columns,
            width: canvas_w.max(left + plot_width * opts.zoom_x + RIGHT),
            height: canvas_h.max(legend_top + legend_height),
            t0: chart.t0,
            window_ms: chart.window_ms.max(1) as f64,
            zoom_x: opts.zoom_x,
        };
        let rightmost = chart
            .timelines
            .iter()
            .flat_map(|t| t.visible_dots())
            .map(|d| layout.x_of(d.t_display))
            .fold(f64::NEG_INFINITY, f64::max);
        layout.width = layout.width.max(rightmost + opts.dot_size + RIGHT).ceil();
        layout.height = layout.height.ceil();
        layout
    }

    pub fn x_of(&self, t_display: Millis) -> f64 {
        self.left + (t_display - self.t0) as f64 / self.window_ms * self.plot_width * self.zoom_x
    }

    pub fn band_center(&self, timeline: usize) -> f64 {
        self.top + (timeline as f64 + 0.5) * self.band_height
    }

    pub fn dot_center(&self, timeline: usize, dot: &Dot) -> (f64, f64) {
        (self.x_of(dot.t_display), self.band_center(timeline))
    }
}

fn num(v: f64) -> String {
    // Adding zero turns -0.0 into 0.0.
    format!("{:.6}", v + 0.0)
}

fn glyph(out: &mut String, shape: Shape, cx: f64, cy: f64, size: f64, attrs: &str) {
    let r = size / 2.0;
    match shape {
        Shape::Square => {
            let _ = writeln!(
                out,
                r#"<rect {attrs} x="{}" y="{}" width="{}" height="{}"/>"#,
                num(cx - r),
                num(cy - r),
                num(size),
                num(size)
            );
        }
        Shape::Circle => {
            let _ = writeln!(
                out,
                r#"<circle {attrs} cx="{}" cy="{}" r="{}"/>"#,
                num(cx),
                num(cy),
                num(r)
            );
        }
        Shape::Diamond => {
            // A square of the same edge length turned by 45 degrees.
            let d = r * std::f64::consts::SQRT_2;
            let _ = writeln!(
                out,
                r#"<polygon {attrs} points="{},{} {},{} {},{} {},{}"/>"#,
                num(cx),
                num(cy - d),
                num(cx + d),
                num(cy),
                num(cx),
                num(cy + d),
                num(cx - d),
                num(cy)
            );
        }
        Shape::Triangle => {
            let _ = writeln!(
                out,
                r#"<polygon {attrs} points="{},{} {},{} {},{}"/>"#,
                num(cx - r),
                num(cy - r),
                num(cx + r),
                num(cy - r),
                num(cx),
                num(cy + r)
            );
        }
    }
}

/// Renders the chart as a standalone SVG document.
pub fn render_svg(chart: &ChartModel, opts: &RenderOptions) -> Result<String, ConfigError> {
    opts.validate()?;
    let layout = Layout::new(chart, opts);
    let plot_right = layout.left + layout.plot_width * opts.zoom_x;
    let text = opts.text_color;
    let mut out = String::new();

    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="{}">"#,
        num(FONT_SIZE),
        w = num(layout.width),
        h = num(layout.height),
    );
    let _ = writeln!(
        out,
        r#"<rect class="background" x="0.000000" y="0.000000" width="{}" height="{}" fill="{}"/>"#,
        num(layout.width),
        num(layout.height),
        opts.background
    );

    for &t in &chart.gridline_times {
        let x = num(layout.x_of(t));
        let _ = writeln!(
            out,
            r#"<line class="gridline" x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="{}" stroke-opacity="0.25" stroke-width="1"/>"#,
            num(layout.top),
            num(layout.plot_bottom),
            opts.gridline_color
        );
    }

    for (i, timeline) in chart.timelines.iter().enumerate() {
        let y = num(layout.band_center(i));
        let _ = writeln!(
            out,
            r#"<line class="timeline" x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-opacity="0.12" stroke-width="1"/>"#,
            num(layout.left),
            num(plot_right),
            opts.gridline_color
        );
        if opts.show_labels {
            let _ = writeln!(
                out,
                r#"<text class="label" x="{}" y="{}" text-anchor="end" fill="{text}">{}</text>"#,
                num(layout.left - 6.0),
                num(layout.band_center(i) + FONT_SIZE / 3.0),
                escape(timeline.element_id.as_str())
            );
        }
    }

    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{l}" y1="{t}" x2="{l}" y2="{b}" stroke="{text}" stroke-width="1"/>"#,
        l = num(layout.left),
        t = num(layout.top),
        b = num(layout.plot_bottom),
    );
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{}" y1="{b}" x2="{}" y2="{b}" stroke="{text}" stroke-width="1"/>"#,
        num(layout.left),
        num(plot_right),
        b = num(layout.plot_bottom),
    );

    // Later dots paint over earlier ones across the whole chart.
    let mut order: Vec<(Millis, usize, usize)> = chart
        .timelines
        .iter()
        .enumerate()
        .flat_map(|(i, t)| {
            t.dots
                .iter()
                .enumerate()
                .filter(|(_, d)| d.visible)
                .map(move |(j, d)| (d.t_display, i, j))
        })
        .collect();
    order.sort_unstable();
    for (_, i, j) in order {
        let dot = &chart.timelines[i].dots[j];
        let (cx, cy) = layout.dot_center(i, dot);
        let kind = dot.operation.element_kind().map_or("unknown", |k| k.as_str());
        let attrs = format!(
            r#"class="dot op-{} el-{kind}" data-element-id="{}" data-t-actual="{}" fill="{}""#,
            escape(dot.operation.name()),
            escape(dot.element_id.as_str()),
            dot.t_actual,
            dot.style.color
        );
        glyph(&mut out, dot.style.shape, cx, cy, opts.dot_size, &attrs);
    }

    if opts.show_legend {
        for (k, entry) in chart.legend.iter().enumerate() {
            let col = (k % layout.legend_columns) as f64;
            let row = (k / layout.legend_columns) as f64;
            let x = BARE_GUTTER + col * LEGEND_COLUMN + opts.dot_size;
            let y = layout.legend_top + row * LEGEND_ROW + LEGEND_ROW / 2.0;
            let attrs = format!(
                r#"class="legend-glyph op-{}" fill="{}""#,
                escape(entry.operation.name()),
                entry.style.color
            );
            glyph(&mut out, entry.style.shape, x, y, opts.dot_size, &attrs);
            let _ = writeln!(
                out,
                r#"<text class="legend-label" x="{}" y="{}" fill="{text}">{}</text>"#,
                num(x + opts.dot_size + 4.0),
                num(y + FONT_SIZE / 3.0),
                escape(entry.operation.name())
            );
        }
    }

    out.push_str("</svg>\n");
    Ok(out)
}

fn hit(chart: &ChartModel, layout: &Layout, timeline: usize, dot: usize) -> DotHit {
    let d = &chart.timelines[timeline].dots[dot];
    let (x, y) = layout.dot_center(timeline, d);
    DotHit {
        timeline,
        dot,
        element_id: d.element_id.clone(),
        operation: d.operation.clone(),
        t_actual: d.t_actual,
        timestamp: format_timestamp(d.t_actual),
        x,
        y,
    }
}

/// Visible dots whose centers lie inside `rect`, in timeline order and
/// then time order. Relies on each timeline's dots being sorted by
/// `t_display`, which [`crate::chart::build_chart`] guarantees.
pub fn hit_test(chart: &ChartModel, opts: &RenderOptions, rect: PixelRect) -> Vec<DotHit> {
    let layout = Layout::new(chart, opts);
    let (x0, y0, x1, y1) = rect.normalized();
    let mut hits = Vec::new();
    if chart.timelines.is_empty() || layout.band_height <= 0.0 {
        return hits;
    }
    // Bands whose centers fall within [y0, y1].
    let first = ((y0 - layout.top) / layout.band_height - 0.5).ceil().max(0.0);
    let last = ((y1 - layout.top) / layout.band_height - 0.5).floor();
    if !(first.is_finite() && last.is_finite()) || last < first {
        return hits;
    }
    let end = (last as usize).min(chart.timelines.len() - 1);
    for i in first as usize..=end {
        // Re-check with the exact center to avoid edge rounding.
        if !(y0..=y1).contains(&layout.band_center(i)) {
            continue;
        }
        let dots = &chart.timelines[i].dots;
        let start = dots.partition_point(|d| layout.x_of(d.t_display) < x0);
        for (j, d) in dots.iter().enumerate().skip(start) {
            if layout.x_of(d.t_display) > x1 {
                break;
            }
            if d.visible {
                hits.push(hit(chart, &layout, i, j));
            }
        }
    }
    hits
}
