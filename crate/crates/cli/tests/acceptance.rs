//! End-to-end acceptance suite. Each criterion runs under its time limit
//! and prints one PASS or FAIL line; any failure makes the target fail.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::Request;
use http_body_util::BodyExt;
use quick_xml::events::Event;
use quick_xml::Reader;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tower::ServiceExt;

use ppmchart::analytics::{profile, DetectorConfig};
use ppmchart::chart::{build_chart, transform_times, ChartConfig, Dot, FilterSpec, SortBy, TimeOption};
use ppmchart::eventlog::{parse_log, write_log, EventLog, LogFormat, ParseOptions};
use ppmchart::fixtures::{chain_log, mortgage_log, preflight_log, random_graph, random_log, Pattern, RandomGraph};
use ppmchart::render::{render_svg, RenderOptions};
use ppmchart::replay::shortest::shortest_distances;
use ppmchart::replay::{create_order_from_start_with, distance_from_start_with, replay, ModelArc};
use ppmchart::taxonomy::{classify, default_style, ElementKind, OperationKind, Rgb, Shape};

type Check = Result<(), String>;

/// Name, time limit and check of one criterion.
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

// ---------------------------------------------------------------- taxonomy

const TABLE: [(&str, &str); 26] = [
    ("CREATE_START_EVENT", "Very light green circle"),
    ("CREATE_END_EVENT", "Very light green circle"),
    ("CREATE_ACTIVITY", "Green square"),
    ("CREATE_XOR", "Dark green diamond"),
    ("CREATE_AND", "Dark green diamond"),
    ("CREATE_EDGE", "Light green triangle"),
    ("MOVE_START_EVENT", "Very light blue circle"),
    ("MOVE_END_EVENT", "Very light blue circle"),
    ("MOVE_ACTIVITY", "Blue square"),
    ("MOVE_XOR", "Dark blue diamond"),
    ("MOVE_AND", "Dark blue diamond"),
    ("MOVE_EDGE_LABEL", "Grey triangle"),
    ("RECONNECT_EDGE", "Light purple triangle"),
    ("DELETE_START_EVENT", "Very light red circle"),
    ("DELETE_END_EVENT", "Very light red circle"),
    ("DELETE_ACTIVITY", "Red square"),
    ("DELETE_XOR", "Dark red diamond"),
    ("DELETE_AND", "Dark red diamond"),
    ("DELETE_EDGE", "Light red triangle"),
    ("NAME_ACTIVITY", "Orange square"),
    ("RENAME_ACTIVITY", "Orange square"),
    ("NAME_EDGE", "Orange triangle"),
    ("RENAME_EDGE", "Orange triangle"),
    ("CREATE_EDGE_BENDPOINT", "Dark grey triangle"),
    ("MOVE_EDGE_BENDPOINT", "Dark grey triangle"),
    ("DELETE_EDGE_BENDPOINT", "Dark grey triangle"),
];

/// (hue degrees, saturation %, lightness %).
fn hsl(c: Rgb) -> (f64, f64, f64) {
    let (r, g, b) = (c.0 as f64 / 255.0, c.1 as f64 / 255.0, c.2 as f64 / 255.0);
    let (max, min) = (r.max(g).max(b), r.min(g).min(b));
    let (l, d) = ((max + min) / 2.0, max - min);
    if d == 0.0 {
        return (0.0, 0.0, l * 100.0);
    }
    let s = d / (1.0 - (2.0 * l - 1.0).abs());
    let h = if max == r {
        60.0 * ((g - b) / d).rem_euclid(6.0)
    } else if max == g {
        60.0 * ((b - r) / d + 2.0)
    } else {
        60.0 * ((r - g) / d + 4.0)
    };
    (h, s * 100.0, l * 100.0)
}

/// Whether `c` and `shape` fit a description like "Very light green circle".
fn fits(description: &str, c: Rgb, shape: Shape) -> bool {
    let words: Vec<String> = description
        .to_lowercase()
        .split_whitespace()
        .map(String::from)
        .collect();
    let n = words.len();
    let (shade, hue, shape_word) = (words[..n - 2].join(" "), words[n - 2].as_str(), words[n - 1].as_str());
    let (h, s, l) = hsl(c);
    let near = |centre: f64, width: f64| (h - centre).abs().min(360.0 - (h - centre).abs()) <= width;
    let hue_ok = match hue {
        "green" => s > 40.0 && near(120.0, 20.0),
        "blue" => s > 40.0 && near(215.0, 25.0),
        "red" => s > 40.0 && near(0.0, 15.0),
        "orange" => s > 60.0 && near(33.0, 12.0),
        "purple" => s > 20.0 && near(280.0, 30.0),
        "grey" => s < 1.0,
        _ => false,
    };
    let shade_ok = match (hue, shade.as_str()) {
        ("grey", "dark") => (30.0..45.0).contains(&l),
        ("grey", "") => (55.0..75.0).contains(&l),
        ("purple", "light") => (65.0..85.0).contains(&l),
        (_, "dark") => l < 30.0,
        (_, "") => (35.0..60.0).contains(&l),
        (_, "light") => (60.0..80.0).contains(&l),
        (_, "very light") => l > 90.0,
        _ => false,
    };
    let shape_ok = shape.as_str() == shape_word;
    hue_ok && shade_ok && shape_ok
}

fn taxonomy_totality() -> Check {
    for (name, description) in TABLE {
        let (kind, element, category) = classify(name).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            kind.element_kind() == Some(element) && kind.category() == Some(category),
            || format!("{name}: inconsistent classification"),
        )?;
        let style = default_style(&kind).map_err(|e| e.to_string())?;
        ensure(fits(description, style.color, style.shape), || {
            format!(
                "{name}: {} {} is not \"{description}\"",
                style.color,
                style.shape.as_str()
            )
        })?;
    }
    let names: BTreeSet<&str> = TABLE.iter().map(|r| r.0).collect();
    let all: BTreeSet<&str> = OperationKind::ALL.iter().map(|k| k.name()).collect();
    ensure(names == all, || "vocabulary differs from the table".into())?;
    for (a, da) in TABLE {
        for (b, db) in TABLE {
            let same = default_style(&OperationKind::from_name(a)) == default_style(&OperationKind::from_name(b));
            ensure(same == (da == db), || {
                format!("{a}/{b}: styles and descriptions disagree")
            })?;
        }
    }
    for (name, description) in [
        ("DELETE_XOR", "Dark red diamond"),
        ("CREATE_END_EVENT", "Very light green circle"),
        ("RECONNECT_EDGE", "Light purple triangle"),
    ] {
        let s = default_style(&OperationKind::from_name(name)).unwrap();
        ensure(fits(description, s.color, s.shape), || format!("anchor {name}"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------- orderings

const GRAPHS: u64 = 200;

/// Minimum length over every simple path from node 0, enumerated exhaustively.
fn brute_force(g: &RandomGraph) -> Vec<Option<u64>> {
    fn walk(g: &RandomGraph, at: usize, dist: u64, seen: &mut [bool], best: &mut [Option<u64>]) {
        if best[at].is_none_or(|b| dist < b) {
            best[at] = Some(dist);
        }
        for &(s, t, len) in &g.arcs {
            if s == at && !seen[t] {
                seen[t] = true;
                walk(g, t, dist + len, seen, best);
                seen[t] = false;
            }
        }
    }
    let mut best = vec![None; g.node_count];
    let mut seen = vec![false; g.node_count];
    seen[0] = true;
    walk(g, 0, 0, &mut seen, &mut best);
    best
}

fn length_fn(g: &RandomGraph) -> impl Fn(&ModelArc) -> Option<f64> {
    let lengths = g.lengths();
    move |arc: &ModelArc| lengths.get(&arc.element_id).map(|&l| l as f64)
}

fn shortest_path_oracle() -> Check {
    for seed in 0..GRAPHS {
        let g = random_graph(seed, 8, 14);
        ensure(
            g.node_count <= 8 && g.arcs.len() <= 14 && g.arcs.iter().all(|a| a.2 > 0),
            || format!("seed {seed}: graph out of range"),
        )?;
        let expected = brute_force(&g);
        ensure(shortest_distances(g.node_count, &g.arcs, &[0]) == expected, || {
            format!("seed {seed}: integer distances differ")
        })?;
        let order = distance_from_start_with(&g.model(), length_fn(&g)).map_err(|e| e.to_string())?;
        for (i, want) in expected.iter().enumerate() {
            let rank = order.rank_of(&RandomGraph::node_id(i));
            let want = Some(want.map_or(f64::INFINITY, |d| d as f64));
            ensure(rank == want, || format!("seed {seed}, node {i}: {rank:?} != {want:?}"))?;
        }
    }
    Ok(())
}

fn stable_sort_reference(ids: &[String], key: impl Fn(&str) -> (f64, u8)) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for id in ids {
        let k = key(id);
        let at = out
            .iter()
            .position(|o| {
                let ko = key(o);
                k.0 < ko.0 || (k.0 == ko.0 && k.1 < ko.1)
            })
            .unwrap_or(out.len());
        out.insert(at, id.clone());
    }
    out
}

fn create_order_property() -> Check {
    for seed in 0..GRAPHS {
        let g = random_graph(seed, 8, 14);
        let model = g.model();
        let order = create_order_from_start_with(&model, length_fn(&g)).map_err(|e| e.to_string())?;
        let ids = order.ids();
        let position: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
        for (k, &(s, t, _)) in g.arcs.iter().enumerate() {
            let arc = position[RandomGraph::arc_id(k).as_str()];
            for end in [s, t] {
                ensure(arc > position[RandomGraph::node_id(end).as_str()], || {
                    format!("seed {seed}: arc {k} not after node {end}")
                })?;
            }
        }
        let reference = stable_sort_reference(&model.element_ids, |id| {
            let r = order.rank_of(id).unwrap();
            (r, u8::from(r.is_infinite() && id.starts_with('e')))
        });
        ensure(ids == reference, || format!("seed {seed}: not the stable order"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------- transforms

fn timeline(rng: &mut ChaCha8Rng) -> Vec<Dot> {
    let len = rng.gen_range(1..40);
    let mut times: Vec<i64> = (0..len).map(|_| rng.gen_range(0..4_000_000_000_000)).collect();
    if rng.gen_bool(0.1) {
        times.truncate(1);
    }
    times.sort_unstable();
    let style = default_style(&OperationKind::MoveActivity).unwrap();
    times
        .into_iter()
        .map(|t| Dot {
            element_id: "x".into(),
            operation: OperationKind::MoveActivity,
            t_actual: t,
            t_display: t,
            style,
            visible: true,
            in_window: true,
        })
        .collect()
}

fn transform_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..1000 {
        let dots = timeline(&mut rng);
        let window = rng.gen_range(1..100_000_000);

        let mut relative = dots.clone();
        transform_times(&mut relative, TimeOption::RelativeTime, window);
        ensure(relative[0].t_display == 0, || {
            format!("case {case}: relative time start")
        })?;
        for w in relative.windows(2) {
            ensure(w[1].t_display - w[0].t_display == w[1].t_actual - w[0].t_actual, || {
                format!("case {case}: gap changed")
            })?;
        }

        let mut ratio = dots.clone();
        transform_times(&mut ratio, TimeOption::RelativeRatio, window);
        let (first, last) = (&ratio[0], &ratio[ratio.len() - 1]);
        ensure(first.t_display == 0, || format!("case {case}: ratio start"))?;
        if first.t_actual == last.t_actual {
            ensure(ratio.iter().all(|d| d.t_display == 0), || {
                format!("case {case}: single dot")
            })?;
        } else {
            ensure((last.t_display - window).abs() <= 1, || {
                format!("case {case}: ratio end")
            })?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- filters

fn random_spec(rng: &mut ChaCha8Rng) -> FilterSpec {
    let mut spec = FilterSpec::default();
    for kind in ElementKind::ALL {
        if rng.gen_bool(0.2) {
            spec.hide_element_kinds.insert(kind);
        }
    }
    for op in OperationKind::ALL {
        if rng.gen_bool(0.1) {
            spec.hide_operation_kinds.insert(op.clone());
        }
        if rng.gen_bool(0.05) {
            spec.hide_elements_with_operation.insert(op);
        }
    }
    spec
}

/// (element, time, operation) → visible, for one filter spec.
fn visibility(log: &EventLog, filters: &FilterSpec) -> (usize, BTreeMap<(String, i64, String), bool>) {
    let config = ChartConfig {
        sort_by: SortBy::None,
        filters: filters.clone(),
        ..ChartConfig::default()
    };
    let chart = build_chart(log, None, &config);
    let mut out = BTreeMap::new();
    for t in &chart.timelines {
        for d in &t.dots {
            out.insert(
                (d.element_id.clone(), d.t_actual, d.operation.name().to_string()),
                d.visible,
            );
        }
    }
    (chart.timelines.len(), out)
}

fn filter_invariants() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..150 {
        let log = random_log(seed);
        let a = random_spec(&mut rng);
        let b = random_spec(&mut rng);
        let mut both = a.clone();
        both.hide_element_kinds.extend(b.hide_element_kinds.iter().copied());
        both.hide_operation_kinds.extend(b.hide_operation_kinds.iter().cloned());
        both.hide_elements_with_operation
            .extend(b.hide_elements_with_operation.iter().cloned());

        let (lines_a, vis_a) = visibility(&log, &a);
        let (lines_both, vis_both) = visibility(&log, &both);
        ensure(lines_a == log.traces.len() && lines_both == log.traces.len(), || {
            format!("seed {seed}: timeline count changed")
        })?;
        for (key, &shown) in &vis_both {
            ensure(!shown || vis_a[key], || {
                format!("seed {seed}: {key:?} shown only under more filters")
            })?;
        }

        // One hide-with-op filter hides exactly the lines holding that op.
        let op = OperationKind::ALL[rng.gen_range(0..26)].clone();
        let mut only = FilterSpec::default();
        only.hide_elements_with_operation.insert(op.clone());
        let (_, vis) = visibility(&log, &only);
        for trace in &log.traces {
            let tainted = trace.events.iter().any(|e| e.operation() == op);
            for e in &trace.events {
                let key = (trace.element_id.clone(), e.timestamp, e.name.clone());
                ensure(vis[&key] != tainted, || format!("seed {seed}: {key:?} with {op}"))?;
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- render

fn core_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core")
}

fn svg_glyphs(svg: &str) -> Result<usize, String> {
    let mut reader = Reader::from_str(svg);
    let mut count = 0;
    loop {
        match reader.read_event().map_err(|e| e.to_string())? {
            Event::Eof => return Ok(count),
            Event::Start(e) | Event::Empty(e) => {
                let class = e
                    .try_get_attribute("class")
                    .map_err(|e| e.to_string())?
                    .map(|a| String::from_utf8_lossy(&a.value).into_owned())
                    .unwrap_or_default();
                if class.split_whitespace().next() == Some("dot") {
                    count += 1;
                }
            }
            _ => {}
        }
    }
}

fn render_determinism() -> Check {
    let options = RenderOptions::default();
    let chain = chain_log();
    let graph = replay(&chain).map_err(|e| e.to_string())?.graph;
    let svg =
        render_svg(&build_chart(&chain, Some(&graph), &ChartConfig::default()), &options).map_err(|e| e.to_string())?;
    let golden = std::fs::read_to_string(core_dir().join("tests/golden/chain.svg")).map_err(|e| e.to_string())?;
    ensure(svg == golden, || "chain render differs from the golden file".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..40 {
        let log = random_log(seed);
        let graph = replay(&log).ok().map(|r| r.graph);
        let config = ChartConfig {
            sort_by: SortBy::ALL[seed as usize % 8],
            filters: random_spec(&mut rng),
            ..ChartConfig::default()
        };
        let first = render_svg(&build_chart(&log, graph.as_ref(), &config), &options).map_err(|e| e.to_string())?;
        let chart = build_chart(&log, graph.as_ref(), &config);
        let second = render_svg(&chart, &options).map_err(|e| e.to_string())?;
        ensure(first == second, || format!("seed {seed}: renders differ"))?;
        let glyphs = svg_glyphs(&first)?;
        ensure(glyphs == chart.visible_dot_count(), || {
            format!(
                "seed {seed}: {glyphs} glyphs for {} visible dots",
                chart.visible_dot_count()
            )
        })?;
    }
    Ok(())
}

// ---------------------------------------------------------------- fixtures

fn fixture_scale() -> Check {
    for (label, (log, truth), activities, ops) in [
        ("pre-flight", preflight_log(42), 13, 120),
        ("mortgage", mortgage_log(42), 27, 276),
    ] {
        ensure(truth.activities == activities && truth.total_operations == ops, || {
            format!(
                "{label}: generator scale {} activities, {} ops",
                truth.activities, truth.total_operations
            )
        })?;
        let bytes = write_log(&log, LogFormat::Xes).map_err(|e| e.to_string())?;
        let started = Instant::now();
        let parsed = parse_log(&bytes, LogFormat::Xes, &ParseOptions::default()).map_err(|e| e.to_string())?;
        let graph = replay(&parsed.log).map_err(|e| e.to_string())?.graph;
        let chart = build_chart(&parsed.log, Some(&graph), &ChartConfig::default());
        let svg = render_svg(&chart, &RenderOptions::default()).map_err(|e| e.to_string())?;
        let elapsed = started.elapsed();
        ensure(elapsed < Duration::from_secs(1), || {
            format!("{label}: end to end took {elapsed:?}")
        })?;
        ensure(svg_glyphs(&svg)? == ops, || format!("{label}: glyph count"))?;

        let p = profile(&parsed.log, &DetectorConfig::default());
        ensure(p.total_operations == truth.total_operations, || {
            format!("{label}: total")
        })?;
        ensure(p.category_counts == truth.counts, || {
            format!("{label}: {:?} != {:?}", p.category_counts, truth.counts)
        })?;
        ensure(p.element_count == truth.elements, || format!("{label}: elements"))?;
        ensure(p.duration_ms == truth.duration_ms, || format!("{label}: duration"))?;
    }
    Ok(())
}

fn pattern_detectors() -> Check {
    let config = DetectorConfig::default();
    ensure(Pattern::ALL.len() == 12, || "expected 12 patterns".into())?;
    for pattern in Pattern::ALL {
        for seed in 0..3 {
            let with = profile(&pattern.generate(seed, true), &config);
            let without = profile(&pattern.generate(seed, false), &config);
            ensure(pattern.detected(&with, &config), || {
                format!("{}: missed (seed {seed})", pattern.name())
            })?;
            ensure(!pattern.detected(&without, &config), || {
                format!("{}: fired on the negated fixture (seed {seed})", pattern.name())
            })?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- parity

fn cli_render(args: &[&str]) -> Result<Vec<u8>, String> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["ppmchart", "render"];
    argv.extend_from_slice(args);
    let code = ppmchart_cli::run(argv, &mut out, &mut err);
    ensure(code == 0, || {
        format!("render exited {code}: {}", String::from_utf8_lossy(&err))
    })?;
    Ok(out)
}

fn service_chart(log_bytes: &[u8], body: serde_json::Value) -> Result<Vec<u8>, String> {
    let runtime = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
    runtime.block_on(async {
        let app = ppmchart_service::router(ppmchart_service::LogStore::new());
        let send = |method: &str, uri: String, body: Vec<u8>| {
            let app = app.clone();
            let request = Request::builder()
                .method(method)
                .uri(uri)
                .body(Body::from(body))
                .unwrap();
            async move {
                let response = app.oneshot(request).await.map_err(|e| e.to_string())?;
                let status = response.status();
                let bytes = response
                    .into_body()
                    .collect()
                    .await
                    .map_err(|e| e.to_string())?
                    .to_bytes()
                    .to_vec();
                ensure(status.is_success(), || {
                    format!("{status}: {}", String::from_utf8_lossy(&bytes))
                })?;
                Ok::<_, String>(bytes)
            }
        };
        let handle = send("POST", "/api/logs".into(), log_bytes.to_vec()).await?;
        let handle: serde_json::Value = serde_json::from_slice(&handle).map_err(|e| e.to_string())?;
        let id = handle["id"].as_str().ok_or("no id")?;
        send("POST", format!("/api/logs/{id}/chart"), body.to_string().into_bytes()).await
    })
}

fn cli_service_parity() -> Check {
    let data = core_dir().join("data");
    let cases: [(&str, &[&str], serde_json::Value); 4] = [
        ("chain.xes", &[], serde_json::json!({})),
        ("chain.csv", &[], serde_json::json!({"config": {}})),
        (
            "mortgage.xes",
            &[
                "--sort",
                "create-order-from-start",
                "--hide-op",
                "NAME_EDGE",
                "--time-option",
                "relative-ratio",
                "--interval",
                "minutes",
            ],
            serde_json::json!({"config": {
                "sort_by": "create-order-from-start",
                "time_option": "relative-ratio",
                "time_interval": "minutes",
                "filters": {"hide_operation_kinds": ["NAME_EDGE"]}
            }}),
        ),
        (
            "preflight.xes",
            &[
                "--hide-element",
                "edge",
                "--hide-with-op",
                "DELETE_ACTIVITY",
                "--descending",
                "--zoom-y",
                "2",
            ],
            serde_json::json!({
                "config": {"descending": true, "filters": {
                    "hide_element_kinds": ["edge"],
                    "hide_elements_with_operation": ["DELETE_ACTIVITY"]
                }},
                "render": {"zoom_y": 2.0}
            }),
        ),
    ];
    for (file, flags, body) in cases {
        let path = data.join(file);
        let path_text = path.to_str().ok_or("path")?;
        let mut args = vec![path_text];
        args.extend_from_slice(flags);
        let from_cli = cli_render(&args)?;
        let bytes = std::fs::read(&path).map_err(|e| e.to_string())?;
        let from_service = service_chart(&bytes, body)?;
        ensure(from_cli == from_service, || {
            format!("{file} {flags:?}: CLI and service SVG differ")
        })?;
    }
    Ok(())
}

// ---------------------------------------------------------------- runner

fn main() {
    let criteria: [Criterion; 9] = [
        ("taxonomy totality", Duration::from_secs(1), taxonomy_totality),
        ("shortest-path oracle", Duration::from_secs(10), shortest_path_oracle),
        ("create-order property", Duration::from_secs(5), create_order_property),
        ("transform properties", Duration::from_secs(5), transform_properties),
        ("filter invariants", Duration::from_secs(5), filter_invariants),
        (
            "render determinism and conservation",
            Duration::from_secs(2),
            render_determinism,
        ),
        ("fixture scale", Duration::from_secs(2), fixture_scale),
        ("pattern-detector fixtures", Duration::from_secs(5), pattern_detectors),
        ("CLI/service parity", Duration::from_secs(10), cli_service_parity),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let started = Instant::now();
        let outcome = check();
        let elapsed = started.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= limit, || {
                format!("took {:.3}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs())
            })
        });
        match outcome {
            Ok(()) => println!(
                "PASS {name} ({:.3}s, limit {}s)",
                elapsed.as_secs_f64(),
                limit.as_secs()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "FAIL {name} ({:.3}s, limit {}s): {why}",
                    elapsed.as_secs_f64(),
                    limit.as_secs()
                );
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
