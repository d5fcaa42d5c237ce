// Renders a generated modeling session to SVG and looks up the dots under
// a selection rectangle.
//
// ```bash
// cargo run -p ppmchart --example render_svg -- mortgage.svg
// ```

use std::error::Error;
use std::path::{Path, PathBuf};

use ppmchart::chart::{build_chart, ChartConfig, SortBy};
use ppmchart::fixtures::mortgage_log;
use ppmchart::render::{hit_test, render_svg, Layout, PixelRect, RenderOptions};
use ppmchart::replay::replay;

/// Writes the chart to `path` and returns how many dots the top-left
/// quarter of the plot selects.
pub fn run_example(path: &Path) -> Result<usize, Box<dyn Error>> {
    let (log, _) = mortgage_log(1);
    let graph = replay(&log)?.graph;
    let config = ChartConfig {
        sort_by: SortBy::CreateOrderFromStart,
        ..ChartConfig::default()
    };
    let chart = build_chart(&log, Some(&graph), &config);
    let options = RenderOptions::default();
    std::fs::write(path, render_svg(&chart, &options)?)?;

    let layout = Layout::new(&chart, &options);
    let quarter = PixelRect::new(
        layout.left,
        layout.top,
        layout.left + layout.plot_width / 2.0,
        (layout.top + layout.plot_bottom) / 2.0,
    );
    Ok(hit_test(&chart, &options, quarter).len())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let path = std::env::args()
        .nth(1)
        .map_or_else(|| PathBuf::from("mortgage.svg"), PathBuf::from);
    let selected = run_example(&path)?;
    println!("wrote {}; {selected} dots in the top-left quarter", path.display());
    Ok(())
}
