// Writes the bundled sample logs.
//
// ```bash
// cargo run -p ppmchart --example generate_fixtures -- crates/core/data
// ```

use std::error::Error;
use std::path::{Path, PathBuf};

use ppmchart::eventlog::{write_log, EventLog, LogFormat};
use ppmchart::fixtures::{chain_log, mortgage_log, preflight_log};

/// Writes every sample into `dir` and returns the paths written.
pub fn run_example(dir: &Path) -> Result<Vec<PathBuf>, Box<dyn Error>> {
    std::fs::create_dir_all(dir)?;
    let samples: [(&str, EventLog, &[LogFormat]); 3] = [
        ("chain", chain_log(), &[LogFormat::Xes, LogFormat::Csv]),
        ("preflight", preflight_log(1).0, &[LogFormat::Xes]),
        ("mortgage", mortgage_log(1).0, &[LogFormat::Xes]),
    ];
    let mut written = Vec::new();
    for (name, log, formats) in samples {
        for &format in formats {
            let path = dir.join(format!("{name}.{}", format.extension()));
            std::fs::write(&path, write_log(&log, format)?)?;
            written.push(path);
        }
    }
    Ok(written)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("data"));
    for path in run_example(&dir)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
