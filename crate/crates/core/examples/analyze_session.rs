// Profiles generated sessions and prints the modeling-style findings.
//
// ```bash
// cargo run -p ppmchart --example analyze_session
// ```

use std::fmt::Write;

use ppmchart::analytics::{profile, profiles_to_csv, DetectorConfig};
use ppmchart::fixtures::{mortgage_log, preflight_log, Pattern};

pub fn run_example() -> String {
    let config = DetectorConfig::default();
    let mut out = String::new();
    let profiles: Vec<_> = [preflight_log(1).0, mortgage_log(1).0]
        .iter()
        .map(|log| profile(log, &config))
        .collect();
    for p in &profiles {
        let _ = writeln!(
            out,
            "{}: {} ops over {} s, {} pauses, {} chunks, moves {:?}, creation {:?}",
            p.log_id,
            p.total_operations,
            p.duration_ms / 1000,
            p.pause_intervals.len(),
            p.chunks.len(),
            p.move_timing_class,
            p.orientation,
        );
    }
    out.push_str(&profiles_to_csv(&profiles));
    for pattern in Pattern::ALL {
        let shown = profile(&pattern.generate(7, true), &config);
        let _ = writeln!(
            out,
            "{:<18} detected: {}",
            pattern.name(),
            pattern.detected(&shown, &config)
        );
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
