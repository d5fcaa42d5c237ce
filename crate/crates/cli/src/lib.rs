//! The `ppmchart` command.
//!
//! ```text
//! ppmchart render <log> [--config chart.json] [--sort …] [--hide-element …]
//!                 [--hide-op …] [--hide-with-op …] [--time-option …]
//!                 [--interval …] [-o out.svg]
//! ppmchart analyze <log>... [--json | --csv] [--thresholds t.json] [-o out]
//! ppmchart validate <log>
//! ppmchart serve [--port 8080] [--logs dir]
//! ```
//!
//! Exit status is 0 on success, 1 on a usage error and 2 when an input
//! cannot be read, parsed or configured. Diagnostics go to stderr, one line
//! each, prefixed `error:` or `warn:`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use ppmchart::analytics::{profile, profiles_to_csv, DetectorConfig, SessionProfile};
use ppmchart::chart::{ChartConfig, ColorBy, ShapeBy, SortBy, TimeInterval, TimeOption};
use ppmchart::eventlog::{read_log_file, validate_log, EventLog, ParseOptions, ReadError};
use ppmchart::render::RenderOptions;
use ppmchart::taxonomy::{ElementKind, OperationKind};
use rayon::prelude::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ppmchart", version, about = "Dotted charts of process-modeling sessions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render a log as an SVG chart.
    Render(RenderArgs),
    /// Profile one or more logs.
    Analyze(AnalyzeArgs),
    /// Check a log for content problems.
    Validate(ValidateArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Drop unknown operation names with a warning instead of failing.
    #[arg(long)]
    pub lenient: bool,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Log file, .xes or .csv.
    pub log: PathBuf,
    /// Chart options as JSON; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Render options as JSON; flags override its fields.
    #[arg(long)]
    pub render_config: Option<PathBuf>,
    /// Timeline order, e.g. distance-from-start or number-of-operations.
    #[arg(long, value_name = "SORT")]
    pub sort: Option<SortBy>,
    /// Reverse the timeline order.
    #[arg(long)]
    pub descending: bool,
    /// actual, relative-time or relative-ratio.
    #[arg(long, value_name = "OPTION")]
    pub time_option: Option<TimeOption>,
    /// Gridline spacing, e.g. minutes, hours or l100.
    #[arg(long)]
    pub interval: Option<TimeInterval>,
    /// Width of the chart window in milliseconds.
    #[arg(long)]
    pub window_ms: Option<i64>,
    /// operation or none.
    #[arg(long)]
    pub color_by: Option<ColorBy>,
    /// model-element or none.
    #[arg(long)]
    pub shape_by: Option<ShapeBy>,
    /// Hide dots of this element kind (repeatable).
    #[arg(long, value_name = "KIND", value_parser = parse_element_kind)]
    pub hide_element: Vec<ElementKind>,
    /// Hide dots of this operation (repeatable).
    #[arg(long, value_name = "OP", value_parser = parse_operation)]
    pub hide_op: Vec<OperationKind>,
    /// Hide every dot of elements having this operation (repeatable).
    #[arg(long, value_name = "OP", value_parser = parse_operation)]
    pub hide_with_op: Vec<OperationKind>,
    /// Canvas width in pixels.
    #[arg(long)]
    pub width: Option<u32>,
    /// Canvas height in pixels.
    #[arg(long)]
    pub height: Option<u32>,
    /// Horizontal zoom factor.
    #[arg(long)]
    pub zoom_x: Option<f64>,
    /// Vertical zoom factor.
    #[arg(long)]
    pub zoom_y: Option<f64>,
    /// Leave out element labels.
    #[arg(long)]
    pub no_labels: bool,
    /// Leave out the legend.
    #[arg(long)]
    pub no_legend: bool,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Log files, .xes or .csv.
    #[arg(required = true)]
    pub logs: Vec<PathBuf>,
    /// JSON array of profiles (the default).
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    /// One CSV row per log.
    #[arg(long)]
    pub csv: bool,
    /// Detector thresholds as JSON.
    #[arg(long)]
    pub thresholds: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Log file, .xes or .csv.
    pub log: PathBuf,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    /// Port to listen on; 0 picks a free one.
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    /// Address to bind.
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    /// Directory of logs to serve; uploads are saved there too.
    #[arg(long)]
    pub logs: Option<PathBuf>,
}

fn parse_element_kind(s: &str) -> Result<ElementKind, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

fn parse_operation(s: &str) -> Result<OperationKind, String> {
    s.parse().map_err(|e: ppmchart::taxonomy::ClassifyError| e.to_string())
}

/// A failure that ends the command with [`EXIT_DATA`].
#[derive(Debug)]
pub struct DataError(pub String);

impl<E: std::fmt::Display> From<E> for DataError {
    fn from(e: E) -> Self {
        DataError(e.to_string())
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let text = e.to_string();
                let first = text.lines().next().unwrap_or_default();
                let _ = writeln!(stderr, "error: {}", first.trim_start_matches("error: "));
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{e}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Render(args) => render(&args, stdout, stderr),
        Command::Analyze(args) => analyze(&args, stdout, stderr),
        Command::Validate(args) => validate(&args, stdout, stderr),
        Command::Serve(args) => serve(&args, stdout, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(DataError(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            EXIT_DATA
        }
    }
}

fn read_log(path: &Path, input: &InputArgs, stderr: &mut dyn Write) -> Result<EventLog, DataError> {
    let options = ParseOptions {
        strict_operations: !input.lenient,
    };
    let parsed = read_log_file(path, &options).map_err(|e| located(path, e))?;
    for w in &parsed.warnings {
        let _ = writeln!(stderr, "warn: {}: {}", path.display(), w.message);
    }
    Ok(parsed.log)
}

fn located(path: &Path, e: ReadError) -> DataError {
    match e {
        ReadError::Io { .. } => DataError(e.to_string()),
        ReadError::Log(e) => DataError(format!("{}: {e}", path.display())),
    }
}

/// Reads a JSON options file, naming the offending field on failure.
fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, DataError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| DataError(format!("cannot read `{}`: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de)
        .map_err(|e| DataError(format!("{}: invalid `{}`: {}", path.display(), e.path(), e.inner())))
}

fn write_output(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), DataError> {
    match path {
        Some(path) => {
            std::fs::write(path, bytes).map_err(|e| DataError(format!("cannot write `{}`: {e}", path.display())))
        }
        None => Ok(stdout.write_all(bytes)?),
    }
}

/// The chart options a `render` invocation stands for: defaults, then the
/// config file, then flags.
pub fn chart_config(args: &RenderArgs) -> Result<ChartConfig, DataError> {
    let mut config: ChartConfig = match &args.config {
        Some(path) => read_json(path)?,
        None => ChartConfig::default(),
    };
    if let Some(v) = args.sort {
        config.sort_by = v;
    }
    if args.descending {
        config.descending = true;
    }
    if let Some(v) = args.time_option {
        config.time_option = v;
    }
    if let Some(v) = args.interval {
        config.time_interval = v;
    }
    if let Some(v) = args.window_ms {
        config.window_ms = v;
    }
    if let Some(v) = args.color_by {
        config.color_by = v;
    }
    if let Some(v) = args.shape_by {
        config.shape_by = v;
    }
    if !args.hide_element.is_empty() {
        config.filters.hide_element_kinds = args.hide_element.iter().copied().collect();
    }
    if !args.hide_op.is_empty() {
        config.filters.hide_operation_kinds = args.hide_op.iter().cloned().collect();
    }
    if !args.hide_with_op.is_empty() {
        config.filters.hide_elements_with_operation = args.hide_with_op.iter().cloned().collect();
    }
    Ok(config)
}

/// The render options a `render` invocation stands for.
pub fn render_options(args: &RenderArgs) -> Result<RenderOptions, DataError> {
    let mut options: RenderOptions = match &args.render_config {
        Some(path) => read_json(path)?,
        None => RenderOptions::default(),
    };
    if let Some(v) = args.width {
        options.canvas_width = v;
    }
    if let Some(v) = args.height {
        options.canvas_height = v;
    }
    if let Some(v) = args.zoom_x {
        options.zoom_x = v;
    }
    if let Some(v) = args.zoom_y {
        options.zoom_y = v;
    }
    if args.no_labels {
        options.show_labels = false;
    }
    if args.no_legend {
        options.show_legend = false;
    }
    Ok(options)
}

fn render(args: &RenderArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), DataError> {
    let config = chart_config(args)?;
    let options = render_options(args)?;
    let log = read_log(&args.log, &args.input, stderr)?;
    options.validate()?;
    let chart = ppmchart_service::pipeline::chart(&log, &config)?;
    for notice in &chart.notices {
        let _ = writeln!(stderr, "warn: {}: {}", notice.kind, notice.message);
    }
    let svg = ppmchart::render::render_svg(&chart, &options)?;
    write_output(args.output.as_deref(), svg.as_bytes(), stdout)
}

fn analyze(args: &AnalyzeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), DataError> {
    let thresholds: DetectorConfig = match &args.thresholds {
        Some(path) => read_json(path)?,
        None => DetectorConfig::default(),
    };
    let options = ParseOptions {
        strict_operations: !args.input.lenient,
    };
    // Parsed and profiled in parallel, reported in input order.
    let results: Vec<_> = args
        .logs
        .par_iter()
        .map(|path| {
            read_log_file(path, &options)
                .map(|parsed| (parsed.warnings, profile(&parsed.log, &thresholds)))
                .map_err(|e| located(path, e))
        })
        .collect();
    let mut profiles: Vec<SessionProfile> = Vec::with_capacity(results.len());
    for (path, result) in args.logs.iter().zip(results) {
        let (warnings, p) = result?;
        for w in warnings {
            let _ = writeln!(stderr, "warn: {}: {}", path.display(), w.message);
        }
        profiles.push(p);
    }
    let text = if args.csv {
        profiles_to_csv(&profiles)
    } else {
        let mut json = serde_json::to_string_pretty(&profiles)?;
        json.push('\n');
        json
    };
    write_output(args.output.as_deref(), text.as_bytes(), stdout)
}

fn validate(args: &ValidateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), DataError> {
    let log = read_log(&args.log, &args.input, stderr)?;
    let findings = validate_log(&log);
    for f in &findings {
        let element = f.element_id.as_deref().unwrap_or("-");
        writeln!(stdout, "{} {element}: {}", f.code, f.message)?;
    }
    writeln!(stdout, "{} findings", findings.len())?;
    Ok(())
}

fn serve(args: &ServeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), DataError> {
    let store = match &args.logs {
        Some(dir) => {
            let (store, skipped) = ppmchart_service::LogStore::with_dir(dir)?;
            for (path, e) in skipped {
                let _ = writeln!(stderr, "warn: skipped {}: {e}", path.display());
            }
            store
        }
        None => ppmchart_service::LogStore::new(),
    };
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((args.host.as_str(), args.port)).await?;
        writeln!(stdout, "listening on http://{}", listener.local_addr()?)?;
        stdout.flush()?;
        ppmchart_service::serve(listener, store).await
    })?;
    Ok(())
}
