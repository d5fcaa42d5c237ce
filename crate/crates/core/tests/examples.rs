use std::path::Path;

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/examples/",
                stringify!($name),
                ".rs"
            ));
        }
    };
}

example!(generate_fixtures);
example!(parse_log);
example!(taxonomy_legend);
example!(replay_and_order);
example!(build_chart);
example!(render_svg);
example!(analyze_session);

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ppmchart-examples-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn generated_fixtures_match_the_bundled_data() {
    let dir = scratch("data");
    let bundled = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for path in generate_fixtures::run_example(&dir).unwrap() {
        let name = path.file_name().unwrap();
        assert_eq!(
            std::fs::read(&path).unwrap(),
            std::fs::read(bundled.join(name)).unwrap(),
            "{name:?} is stale; rerun the generate_fixtures example"
        );
    }
}

#[test]
fn parse_log_reports_the_chain() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/chain.csv");
    let out = parse_log::run_example(&path).unwrap();
    assert!(out.contains("5 traces, 10 events"), "{out}");
    assert!(out.ends_with("0 findings\n"));
}

#[test]
fn taxonomy_legend_lists_every_operation() {
    let out = taxonomy_legend::run_example();
    assert_eq!(out.lines().filter(|l| l.starts_with("  ")).count(), 26);
    assert!(out.contains("DELETE_XOR               xor-gateway  diamond   #500b0b"));
}

#[test]
fn replay_and_order_ranks_the_chain() {
    let out = replay_and_order::run_example().unwrap();
    assert!(out.contains("distance from start (Euclidean lengths)"));
    assert!(out.contains("  0.00  start"));
}

#[test]
fn build_chart_shows_every_sort() {
    let out = build_chart::run_example();
    assert!(out.contains("distance-from-start      start flow1 check flow2 end"));
    assert!(out.contains("relative-ratio           check at 0, 32432, 3600000"));
    assert!(out.contains("8 of 10 dots visible"));
}

#[test]
fn render_svg_writes_a_document() {
    let path = scratch("svg").join("mortgage.svg");
    let selected = render_svg::run_example(&path).unwrap();
    assert!(selected > 0);
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("<?xml"));
}

#[test]
fn analyze_session_detects_every_pattern() {
    let out = analyze_session::run_example();
    assert_eq!(out.matches("detected: true").count(), 12);
    assert!(out.contains("pre-flight,"));
}
