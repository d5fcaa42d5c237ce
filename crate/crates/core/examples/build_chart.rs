// Lays out the timelines of a session under each sort and time option.
//
// ```bash
// cargo run -p ppmchart --example build_chart
// ```

use std::fmt::Write;

use ppmchart::chart::{build_chart, ChartConfig, SortBy, TimeOption};
use ppmchart::fixtures::chain_log;
use ppmchart::replay::replay;
use ppmchart::taxonomy::OperationKind;

pub fn run_example() -> String {
    let log = chain_log();
    let graph = replay(&log).expect("chain replays").graph;
    let mut out = String::new();
    for sort_by in SortBy::ALL {
        let chart = build_chart(
            &log,
            Some(&graph),
            &ChartConfig {
                sort_by,
                ..ChartConfig::default()
            },
        );
        let order: Vec<&str> = chart.timelines.iter().map(|t| t.element_id.as_str()).collect();
        let _ = writeln!(out, "{:<24} {}", sort_by.to_string(), order.join(" "));
    }
    for time_option in [TimeOption::Actual, TimeOption::RelativeTime, TimeOption::RelativeRatio] {
        let chart = build_chart(
            &log,
            Some(&graph),
            &ChartConfig {
                time_option,
                ..ChartConfig::default()
            },
        );
        let check = chart
            .timelines
            .iter()
            .find(|t| t.element_id == "check")
            .expect("check timeline");
        let times: Vec<String> = check.dots.iter().map(|d| d.t_display.to_string()).collect();
        let _ = writeln!(out, "{:<24} check at {}", time_option.to_string(), times.join(", "));
    }
    let mut config = ChartConfig::default();
    config.filters.hide_operation_kinds.insert(OperationKind::NameActivity);
    config.filters.hide_operation_kinds.insert(OperationKind::NameEdge);
    let chart = build_chart(&log, Some(&graph), &config);
    let _ = writeln!(
        out,
        "without naming: {} of {} dots visible",
        chart.visible_dot_count(),
        chart.dot_count()
    );
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
