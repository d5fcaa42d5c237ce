// Replays a log into the model it builds and ranks the elements by their
// distance from the start event.
//
// ```bash
// cargo run -p ppmchart --example replay_and_order
// ```

use std::error::Error;
use std::fmt::Write;

use ppmchart::fixtures::chain_log;
use ppmchart::replay::{create_order_from_start, distance_from_start, replay, OrderingOptions};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let log = chain_log();
    let replayed = replay(&log)?;
    let mut out = String::new();
    out.push_str(&replayed.graph.dump());
    for w in &replayed.warnings {
        writeln!(out, "warn: {} {}", w.code, w.message)?;
    }
    let options = OrderingOptions::default();
    for (title, order) in [
        ("distance from start", distance_from_start(&replayed.graph, &options)?),
        (
            "create order from start",
            create_order_from_start(&replayed.graph, &options)?,
        ),
    ] {
        writeln!(out, "{title} ({:?} lengths)", order.length_mode)?;
        for entry in &order.entries {
            writeln!(out, "  {:>8.2}  {}", entry.rank, entry.element_id)?;
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
