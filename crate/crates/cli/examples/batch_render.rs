// Renders every bundled sample log with the command-line entry point,
// in-process, once per graph-based sort.
//
// ```bash
// cargo run -p ppmchart-cli --example batch_render -- /tmp/charts
// ```

use std::path::{Path, PathBuf};

fn main() {
    let out = std::env::args()
        .nth(1)
        .map_or_else(|| std::env::temp_dir().join("ppmchart-charts"), PathBuf::from);
    std::fs::create_dir_all(&out).expect("output directory");
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data");
    for log in ["chain.xes", "preflight.xes", "mortgage.xes"] {
        for sort in ["distance-from-start", "create-order-from-start"] {
            let target = out.join(format!("{}-{sort}.svg", log.trim_end_matches(".xes")));
            let input = data.join(log);
            let args = [
                "ppmchart",
                "render",
                input.to_str().expect("utf-8 path"),
                "--sort",
                sort,
                "-o",
                target.to_str().expect("utf-8 path"),
            ];
            let code = ppmchart_cli::run(args, &mut std::io::stdout(), &mut std::io::stderr());
            println!("{} -> exit {code}", target.display());
        }
    }
}
