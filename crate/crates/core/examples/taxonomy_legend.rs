// Prints the default dot coding of every operation.
//
// ```bash
// cargo run -p ppmchart --example taxonomy_legend
// ```

use std::fmt::Write;

use ppmchart::taxonomy::{legend_table, OperationCategory};

pub fn run_example() -> String {
    let mut out = String::new();
    for category in OperationCategory::ALL {
        let _ = writeln!(out, "{}", category.as_str());
        for row in legend_table().iter().filter(|r| r.category == category) {
            let _ = writeln!(
                out,
                "  {:<24} {:<12} {:<9} {}",
                row.name.name(),
                row.element.as_str(),
                row.shape.as_str(),
                row.color
            );
        }
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
