use std::collections::BTreeSet;

use proptest::prelude::*;

use ppmchart::chart::{build_chart, transform_times, ChartConfig, Dot, FilterSpec, SortBy, TimeOption};
use ppmchart::eventlog::{ElementTrace, EventLog, LogEvent};
use ppmchart::fixtures::random_log;
use ppmchart::taxonomy::{palette, DotStyle, ElementKind, OperationKind, Shape};

fn line(times: &[i64]) -> Vec<Dot> {
    let mut times = times.to_vec();
    times.sort_unstable();
    times
        .into_iter()
        .map(|t| Dot {
            element_id: "x".into(),
            operation: OperationKind::MoveActivity,
            t_actual: t,
            t_display: t,
            style: DotStyle {
                color: palette::BLUE_BRIGHT,
                shape: Shape::Square,
            },
            visible: true,
            in_window: true,
        })
        .collect()
}

fn shown(dots: &[Dot]) -> Vec<i64> {
    dots.iter().map(|d| d.t_display).collect()
}

fn timeline() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..4_000_000_000_000, 1..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn relative_time_keeps_gaps(times in timeline(), window in 1i64..100_000_000) {
        let mut dots = line(&times);
        transform_times(&mut dots, TimeOption::RelativeTime, window);
        prop_assert_eq!(dots[0].t_display, 0);
        for w in dots.windows(2) {
            prop_assert_eq!(w[1].t_display - w[0].t_display, w[1].t_actual - w[0].t_actual);
        }
    }

    #[test]
    fn relative_ratio_spans_the_window(times in timeline(), window in 1i64..100_000_000) {
        let mut dots = line(&times);
        transform_times(&mut dots, TimeOption::RelativeRatio, window);
        let out = shown(&dots);
        prop_assert_eq!(out[0], 0);
        let single = dots.first().unwrap().t_actual == dots.last().unwrap().t_actual;
        if single {
            prop_assert!(out.iter().all(|&t| t == 0));
        } else {
            prop_assert!((out[out.len() - 1] - window).abs() <= 1);
        }
        prop_assert!(out.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(out.iter().all(|&t| (0..=window).contains(&t)));
        // Each dot within one millisecond of its exact proportional place.
        let (first, last) = (dots[0].t_actual as f64, dots[dots.len() - 1].t_actual as f64);
        if last > first {
            for d in &dots {
                let exact = (d.t_actual as f64 - first) / (last - first) * window as f64;
                prop_assert!((d.t_display as f64 - exact).abs() <= 1.0);
            }
        }
    }

    #[test]
    fn single_dot_lines_start_the_window(t in 0i64..4_000_000_000_000, window in 1i64..100_000_000) {
        for option in [TimeOption::RelativeTime, TimeOption::RelativeRatio] {
            let mut dots = line(&[t]);
            transform_times(&mut dots, option, window);
            prop_assert_eq!(dots[0].t_display, 0);
        }
        let mut dots = line(&[t]);
        transform_times(&mut dots, TimeOption::Actual, window);
        prop_assert_eq!(dots[0].t_display, t);
    }
}

fn subset<T: Clone + Ord + std::fmt::Debug>(items: &'static [T]) -> impl Strategy<Value = BTreeSet<T>> {
    prop::collection::vec(any::<bool>(), items.len()).prop_map(move |mask| {
        items
            .iter()
            .zip(mask)
            .filter(|(_, m)| *m)
            .map(|(i, _)| i.clone())
            .collect()
    })
}

fn spec() -> impl Strategy<Value = FilterSpec> {
    static OPS: [OperationKind; 26] = OperationKind::ALL;
    (subset(&ElementKind::ALL), subset(&OPS), subset(&OPS)).prop_map(|(kinds, ops, with)| FilterSpec {
        hide_element_kinds: kinds,
        hide_operation_kinds: ops,
        hide_elements_with_operation: with,
    })
}

fn union(a: &FilterSpec, b: &FilterSpec) -> FilterSpec {
    FilterSpec {
        hide_element_kinds: a.hide_element_kinds.union(&b.hide_element_kinds).cloned().collect(),
        hide_operation_kinds: a.hide_operation_kinds.union(&b.hide_operation_kinds).cloned().collect(),
        hide_elements_with_operation: a
            .hide_elements_with_operation
            .union(&b.hide_elements_with_operation)
            .cloned()
            .collect(),
    }
}

/// Visibility flags in (element id, time) order, so sort order does not matter.
fn visibility(log: &EventLog, filters: &FilterSpec) -> Vec<(String, i64, String, bool)> {
    let config = ChartConfig {
        sort_by: SortBy::None,
        filters: filters.clone(),
        ..ChartConfig::default()
    };
    let chart = build_chart(log, None, &config);
    assert_eq!(chart.timelines.len(), log.traces.len());
    let mut out: Vec<_> = chart
        .timelines
        .iter()
        .flat_map(|t| t.dots.iter())
        .map(|d| {
            (
                d.element_id.clone(),
                d.t_actual,
                d.operation.name().to_string(),
                d.visible,
            )
        })
        .collect();
    out.sort();
    out
}

/// Visibility computed straight from the filter definitions.
fn expected_visibility(log: &EventLog, filters: &FilterSpec) -> Vec<(String, i64, String, bool)> {
    let mut out = Vec::new();
    for trace in &log.traces {
        let ops: Vec<OperationKind> = trace.events.iter().map(|e| e.operation()).collect();
        let line_kind = ops.iter().find_map(|o| o.element_kind());
        let tainted = ops.iter().any(|o| filters.hide_elements_with_operation.contains(o));
        for (e, op) in trace.events.iter().zip(&ops) {
            let kind = op.element_kind().or(line_kind);
            let hidden = tainted
                || kind.is_some_and(|k| filters.hide_element_kinds.contains(&k))
                || filters.hide_operation_kinds.contains(op);
            out.push((trace.element_id.clone(), e.timestamp, op.name().to_string(), !hidden));
        }
    }
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn filters_match_their_definition(seed in any::<u64>(), filters in spec()) {
        let log = random_log(seed);
        prop_assert_eq!(visibility(&log, &filters), expected_visibility(&log, &filters));
    }

    #[test]
    fn more_filters_never_show_more(seed in any::<u64>(), a in spec(), b in spec()) {
        let log = random_log(seed);
        let small = visibility(&log, &a);
        let large = visibility(&log, &union(&a, &b));
        prop_assert_eq!(small.len(), large.len());
        for (s, l) in small.iter().zip(&large) {
            prop_assert!(!l.3 || s.3, "{:?} visible only under the larger filter", l);
        }
    }

    #[test]
    fn timeline_count_is_conserved(seed in any::<u64>(), filters in spec(), sort in 0usize..8, descending in any::<bool>()) {
        let log = random_log(seed);
        let config = ChartConfig {
            sort_by: SortBy::ALL[sort],
            descending,
            filters,
            ..ChartConfig::default()
        };
        let chart = build_chart(&log, None, &config);
        prop_assert_eq!(chart.timelines.len(), log.traces.len());
        let ids: BTreeSet<_> = chart.timelines.iter().map(|t| t.element_id.clone()).collect();
        let want: BTreeSet<_> = log.traces.iter().map(|t| t.element_id.clone()).collect();
        prop_assert_eq!(ids, want);
        prop_assert_eq!(chart.dot_count(), log.event_count());
    }
}

#[test]
fn hide_elements_with_operation_hides_whole_lines() {
    let log = EventLog::new(
        "t",
        vec![
            ElementTrace::new(
                "gone",
                vec![
                    LogEvent::new("CREATE_ACTIVITY", "gone", 0),
                    LogEvent::new("MOVE_ACTIVITY", "gone", 1),
                    LogEvent::new("DELETE_ACTIVITY", "gone", 2),
                ],
            ),
            ElementTrace::new("kept", vec![LogEvent::new("CREATE_ACTIVITY", "kept", 3)]),
        ],
    );
    let mut config = ChartConfig::default();
    config
        .filters
        .hide_elements_with_operation
        .insert(OperationKind::DeleteActivity);
    let chart = build_chart(&log, None, &config);
    for t in &chart.timelines {
        let hidden = t.dots.iter().filter(|d| !d.visible).count();
        match t.element_id.as_str() {
            "gone" => assert_eq!(hidden, 3),
            _ => assert_eq!(hidden, 0),
        }
    }
}
