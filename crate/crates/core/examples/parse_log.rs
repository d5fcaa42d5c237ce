// Reads a session log, lists its traces and runs the content checks.
//
// ```bash
// cargo run -p ppmchart --example parse_log -- crates/core/data/mortgage.xes
// ```

use std::error::Error;
use std::fmt::Write;
use std::path::{Path, PathBuf};

use ppmchart::eventlog::{read_log_file, validate_log, ParseOptions};

pub fn run_example(path: &Path) -> Result<String, Box<dyn Error>> {
    let parsed = read_log_file(path, &ParseOptions::default())?;
    let log = &parsed.log;
    let mut out = String::new();
    writeln!(
        out,
        "log `{}`: {} traces, {} events",
        log.log_id,
        log.traces.len(),
        log.event_count()
    )?;
    for trace in &log.traces {
        let ops: Vec<&str> = trace.events.iter().map(|e| e.name.as_str()).collect();
        writeln!(out, "  {:<12} {}", trace.element_id, ops.join(" "))?;
    }
    for warning in &parsed.warnings {
        writeln!(out, "warn: {}", warning.message)?;
    }
    let findings = validate_log(log);
    writeln!(out, "{} findings", findings.len())?;
    for f in findings {
        writeln!(out, "  {}: {}", f.code, f.message)?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("data/chain.xes"));
    print!("{}", run_example(&path)?);
    Ok(())
}
