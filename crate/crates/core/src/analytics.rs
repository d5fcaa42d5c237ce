//! Measures of modeling behavior computed from a session log.
//!
//! Every detector is a pure function of the log and a [`DetectorConfig`].
//! All times are taken from the session order of the log (timestamp, then
//! trace, then position in trace). [`profile`] runs them all and collects
//! the results in a [`SessionProfile`].

use std::collections::{BTreeMap, BTreeSet};

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::eventlog::{EventLog, LogEvent, Millis};
use crate::taxonomy::{ElementKind, OperationCategory};

/// Thresholds for every detector. All of them are tunable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(default, deny_unknown_fields)]
pub struct DetectorConfig {
    /// Smallest gap between consecutive events that counts as a pause.
    pub min_gap_ms: i64,
    /// Largest gap between consecutive deletes inside one burst.
    pub burst_window_ms: i64,
    pub burst_min_size: usize,
    /// Below this share of moves per create the class is `Few`.
    pub few_moves_ratio: f64,
    /// A move is early when its lag after creation is at most this share of the session.
    pub early_lag_share: f64,
    /// Share of early moves needed for `EarlyBound`.
    pub early_bound_share: f64,
    /// A move is late when its session phase is at least this.
    pub end_phase_start: f64,
    /// Share of late moves needed for `EndPhase`.
    pub end_phase_share: f64,
    /// Distinct session quartiles needed for `Scattered`.
    pub scattered_min_quartiles: usize,
    pub aspect_max_interleaving: f64,
    /// Share of node creations that must precede the first edge creation.
    pub aspect_min_nodes_first: f64,
    pub flow_min_interleaving: f64,
    /// Pairing score at or above which gateways count as created in pairs.
    pub paired_min_score: f64,
    /// Lower bound (inclusive) on move ratio plus delete ratio for the chaos flag.
    pub chaos_min_rework: f64,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            min_gap_ms: 60_000,
            burst_window_ms: 10_000,
            burst_min_size: 3,
            few_moves_ratio: 0.10,
            early_lag_share: 0.10,
            early_bound_share: 0.70,
            end_phase_start: 0.8,
            end_phase_share: 0.50,
            scattered_min_quartiles: 3,
            aspect_max_interleaving: 0.2,
            aspect_min_nodes_first: 0.8,
            flow_min_interleaving: 0.4,
            paired_min_score: 0.5,
            chaos_min_rework: 0.4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, JsonSchema)]
pub struct CategoryCounts {
    pub create: usize,
    #[serde(rename = "move")]
    pub moves: usize,
    pub delete: usize,
    pub rename: usize,
    pub reconnect: usize,
    pub bend_point: usize,
    /// Events whose operation name is not in the vocabulary.
    pub unknown: usize,
}

impl CategoryCounts {
    pub fn add(&mut self, category: Option<OperationCategory>) {
        match category {
            Some(OperationCategory::Create) => self.create += 1,
            Some(OperationCategory::Move) => self.moves += 1,
            Some(OperationCategory::Delete) => self.delete += 1,
            Some(OperationCategory::Rename) => self.rename += 1,
            Some(OperationCategory::Reconnect) => self.reconnect += 1,
            Some(OperationCategory::BendPoint) => self.bend_point += 1,
            None => self.unknown += 1,
        }
    }

    pub fn get(&self, category: OperationCategory) -> usize {
        match category {
            OperationCategory::Create => self.create,
            OperationCategory::Move => self.moves,
            OperationCategory::Delete => self.delete,
            OperationCategory::Rename => self.rename,
            OperationCategory::Reconnect => self.reconnect,
            OperationCategory::BendPoint => self.bend_point,
        }
    }

    pub fn total(&self) -> usize {
        self.create + self.moves + self.delete + self.rename + self.reconnect + self.bend_point + self.unknown
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct BasicMetrics {
    pub duration_ms: i64,
    pub element_count: usize,
    pub total_operations: usize,
    pub category_counts: CategoryCounts,
    pub move_ratio: f64,
    pub delete_ratio: f64,
    pub rename_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Interval {
    pub start: Millis,
    pub end: Millis,
}

impl Interval {
    pub fn length(&self) -> i64 {
        self.end - self.start
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct DeleteBurst {
    pub start: Millis,
    pub end: Millis,
    pub size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum MoveTimingClass {
    Few,
    EarlyBound,
    EndPhase,
    Scattered,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct MoveTimingEvidence {
    pub moves: usize,
    pub creates: usize,
    /// Share of moves with lag at most `early_lag_share` of the session.
    pub early_share: f64,
    /// Share of moves at phase `end_phase_start` or later.
    pub end_share: f64,
    /// Number of session quartiles containing at least one move.
    pub quartiles_covered: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    AspectOriented,
    FlowOriented,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Chunk {
    pub start: Millis,
    pub end: Millis,
    pub creates: usize,
    /// Create events in the chunk per element kind.
    pub by_kind: BTreeMap<ElementKind, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct SessionProfile {
    pub log_id: String,
    pub duration_ms: i64,
    pub pause_intervals: Vec<Interval>,
    pub element_count: usize,
    pub total_operations: usize,
    pub category_counts: CategoryCounts,
    pub move_ratio: f64,
    pub delete_ratio: f64,
    pub rename_ratio: f64,
    pub delete_bursts: Vec<DeleteBurst>,
    pub move_timing_class: MoveTimingClass,
    pub move_timing: MoveTimingEvidence,
    pub orientation: Orientation,
    pub interleaving_score: f64,
    /// Absent when fewer than two gateways were created.
    pub gateway_pairing_score: Option<f64>,
    pub chunks: Vec<Chunk>,
    pub chaos_flag: bool,
}

fn session_events(log: &EventLog) -> Vec<&LogEvent> {
    log.session_order().into_iter().map(|r| log.event(r)).collect()
}

fn ratio(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        part as f64 / whole as f64
    }
}

fn span(events: &[&LogEvent]) -> i64 {
    match (events.first(), events.last()) {
        (Some(a), Some(b)) => b.timestamp - a.timestamp,
        _ => 0,
    }
}

pub fn basic_metrics(log: &EventLog) -> BasicMetrics {
    let events = session_events(log);
    let mut counts = CategoryCounts::default();
    for e in &events {
        counts.add(e.operation().category());
    }
    let total = counts.total();
    BasicMetrics {
        duration_ms: span(&events),
        element_count: log.traces.len(),
        total_operations: total,
        category_counts: counts,
        move_ratio: ratio(counts.moves, total),
        delete_ratio: ratio(counts.delete, total),
        rename_ratio: ratio(counts.rename, total),
    }
}

/// Gaps of at least `min_gap_ms` between consecutive sorted times.
pub fn gaps(times: &[Millis], min_gap_ms: i64) -> Vec<Interval> {
    times
        .windows(2)
        .filter(|w| w[1] - w[0] >= min_gap_ms)
        .map(|w| Interval { start: w[0], end: w[1] })
        .collect()
}

/// Pauses between consecutive events across all timelines.
pub fn detect_pauses(log: &EventLog, min_gap_ms: i64) -> Vec<Interval> {
    let times: Vec<Millis> = session_events(log).iter().map(|e| e.timestamp).collect();
    gaps(&times, min_gap_ms)
}

fn in_category(log: &EventLog, category: OperationCategory) -> Vec<&LogEvent> {
    session_events(log)
        .into_iter()
        .filter(|e| e.operation().category() == Some(category))
        .collect()
}

/// Maximal runs of at least `min_size` deletes, consecutive ones at most
/// `window_ms` apart.
pub fn detect_delete_bursts(log: &EventLog, window_ms: i64, min_size: usize) -> Vec<DeleteBurst> {
    let times: Vec<Millis> = in_category(log, OperationCategory::Delete)
        .iter()
        .map(|e| e.timestamp)
        .collect();
    let mut bursts = Vec::new();
    let mut start = 0;
    for i in 1..=times.len() {
        if i == times.len() || times[i] - times[i - 1] > window_ms {
            let size = i - start;
            if size >= min_size.max(1) {
                bursts.push(DeleteBurst {
                    start: times[start],
                    end: times[i - 1],
                    size,
                });
            }
            start = i;
        }
    }
    bursts
}

pub fn classify_move_timing(log: &EventLog, config: &DetectorConfig) -> (MoveTimingClass, MoveTimingEvidence) {
    let events = session_events(log);
    let first = events.first().map_or(0, |e| e.timestamp);
    let duration = span(&events);

    let mut created_at: BTreeMap<&str, Millis> = BTreeMap::new();
    for trace in &log.traces {
        let created = trace
            .events
            .iter()
            .find(|e| e.operation().category() == Some(OperationCategory::Create))
            .or(trace.events.first());
        if let Some(e) = created {
            created_at.insert(&trace.element_id, e.timestamp);
        }
    }

    let creates = events
        .iter()
        .filter(|e| e.operation().category() == Some(OperationCategory::Create))
        .count();
    let moves: Vec<&&LogEvent> = events
        .iter()
        .filter(|e| e.operation().category() == Some(OperationCategory::Move))
        .collect();

    let phase = |t: Millis| {
        if duration == 0 {
            0.0
        } else {
            (t - first) as f64 / duration as f64
        }
    };
    let early = moves
        .iter()
        .filter(|e| {
            let created = created_at.get(e.element_id.as_str()).copied().unwrap_or(first);
            (e.timestamp - created) as f64 <= config.early_lag_share * duration as f64
        })
        .count();
    let late = moves
        .iter()
        .filter(|e| phase(e.timestamp) >= config.end_phase_start)
        .count();
    let quartiles: BTreeSet<usize> = moves
        .iter()
        .map(|e| ((phase(e.timestamp) * 4.0).floor() as usize).min(3))
        .collect();

    let evidence = MoveTimingEvidence {
        moves: moves.len(),
        creates,
        early_share: ratio(early, moves.len()),
        end_share: ratio(late, moves.len()),
        quartiles_covered: quartiles.len(),
    };
    let class = if moves.is_empty() || (moves.len() as f64) < config.few_moves_ratio * creates as f64 {
        MoveTimingClass::Few
    } else if evidence.early_share >= config.early_bound_share {
        MoveTimingClass::EarlyBound
    } else if evidence.end_share >= config.end_phase_share {
        MoveTimingClass::EndPhase
    } else if evidence.quartiles_covered >= config.scattered_min_quartiles {
        MoveTimingClass::Scattered
    } else {
        MoveTimingClass::Mixed
    };
    (class, evidence)
}

/// Node (`false`) or edge (`true`) flag of every create event, in session order.
pub fn creation_sequence(log: &EventLog) -> Vec<(bool, Option<ElementKind>)> {
    in_category(log, OperationCategory::Create)
        .iter()
        .map(|e| {
            let kind = e.operation().element_kind();
            (kind.is_some_and(ElementKind::is_edge), kind)
        })
        .collect()
}

/// Style of creation: nodes first, then edges, or both together.
pub fn creation_orientation(log: &EventLog, config: &DetectorConfig) -> (Orientation, f64) {
    let edges: Vec<bool> = creation_sequence(log).into_iter().map(|(edge, _)| edge).collect();
    orientation_of(&edges, config)
}

/// Orientation of a node/edge sequence where `true` marks an edge.
pub fn orientation_of(edges: &[bool], config: &DetectorConfig) -> (Orientation, f64) {
    let nodes = edges.iter().filter(|&&e| !e).count();
    if nodes == 0 || nodes == edges.len() {
        return (Orientation::Indeterminate, 0.0);
    }
    let alternations = edges.windows(2).filter(|w| w[0] != w[1]).count();
    let score = alternations as f64 / (edges.len() - 1) as f64;
    let first_edge = edges.iter().position(|&e| e).unwrap_or(edges.len());
    let nodes_first = ratio(first_edge, nodes);
    let orientation = if score <= config.aspect_max_interleaving && nodes_first >= config.aspect_min_nodes_first {
        Orientation::AspectOriented
    } else if score >= config.flow_min_interleaving {
        Orientation::FlowOriented
    } else {
        Orientation::Indeterminate
    };
    (orientation, score)
}

/// Share of gateway creations immediately followed by another gateway
/// creation, over node creations only. `None` below two gateways.
pub fn gateway_pairing_score(log: &EventLog) -> Option<f64> {
    let gateways: Vec<bool> = creation_sequence(log)
        .into_iter()
        .filter(|(edge, _)| !edge)
        .map(|(_, kind)| kind.is_some_and(ElementKind::is_gateway))
        .collect();
    pairing_of(&gateways)
}

/// Pairing score of a sequence where `true` marks a gateway.
pub fn pairing_of(gateways: &[bool]) -> Option<f64> {
    if gateways.iter().filter(|&&g| g).count() < 2 {
        return None;
    }
    let with_successor = gateways[..gateways.len() - 1].iter().filter(|&&g| g).count();
    let paired = gateways.windows(2).filter(|w| w[0] && w[1]).count();
    Some(ratio(paired, with_successor))
}

/// Create events split at pauses of at least `pause_threshold_ms`.
pub fn detect_chunks(log: &EventLog, pause_threshold_ms: i64) -> Vec<Chunk> {
    let creates = in_category(log, OperationCategory::Create);
    let mut chunks: Vec<Chunk> = Vec::new();
    let mut previous: Option<Millis> = None;
    for e in creates {
        let split = previous.is_none_or(|p| e.timestamp - p >= pause_threshold_ms);
        if split {
            chunks.push(Chunk {
                start: e.timestamp,
                end: e.timestamp,
                creates: 0,
                by_kind: BTreeMap::new(),
            });
        }
        let chunk = chunks.last_mut().expect("chunk started");
        chunk.end = e.timestamp;
        chunk.creates += 1;
        if let Some(kind) = e.operation().element_kind() {
            *chunk.by_kind.entry(kind).or_default() += 1;
        }
        previous = Some(e.timestamp);
    }
    chunks
}

pub fn chaos_flag(profile: &SessionProfile, config: &DetectorConfig) -> bool {
    profile.move_timing_class == MoveTimingClass::Scattered
        && profile.orientation == Orientation::Indeterminate
        && profile.move_ratio + profile.delete_ratio >= config.chaos_min_rework
}

pub fn profile(log: &EventLog, config: &DetectorConfig) -> SessionProfile {
    let basic = basic_metrics(log);
    let (move_timing_class, move_timing) = classify_move_timing(log, config);
    let (orientation, interleaving_score) = creation_orientation(log, config);
    let mut profile = SessionProfile {
        log_id: log.log_id.clone(),
        duration_ms: basic.duration_ms,
        pause_intervals: detect_pauses(log, config.min_gap_ms),
        element_count: basic.element_count,
        total_operations: basic.total_operations,
        category_counts: basic.category_counts,
        move_ratio: basic.move_ratio,
        delete_ratio: basic.delete_ratio,
        rename_ratio: basic.rename_ratio,
        delete_bursts: detect_delete_bursts(log, config.burst_window_ms, config.burst_min_size),
        move_timing_class,
        move_timing,
        orientation,
        interleaving_score,
        gateway_pairing_score: gateway_pairing_score(log),
        chunks: detect_chunks(log, config.min_gap_ms),
        chaos_flag: false,
    };
    profile.chaos_flag = chaos_flag(&profile, config);
    profile
}

fn kebab<T: Serialize>(value: T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(name)) => name,
        _ => String::new(),
    }
}

impl SessionProfile {
    pub const CSV_HEADER: [&'static str; 22] = [
        "log_id",
        "duration_ms",
        "element_count",
        "total_operations",
        "create",
        "move",
        "delete",
        "rename",
        "reconnect",
        "bend_point",
        "unknown",
        "move_ratio",
        "delete_ratio",
        "rename_ratio",
        "pauses",
        "delete_bursts",
        "move_timing_class",
        "orientation",
        "interleaving_score",
        "gateway_pairing_score",
        "chunks",
        "chaos_flag",
    ];

    /// One flat record per session, matching [`Self::CSV_HEADER`].
    pub fn csv_record(&self) -> Vec<String> {
        let c = &self.category_counts;
        let f = |v: f64| format!("{v:.6}");
        vec![
            self.log_id.clone(),
            self.duration_ms.to_string(),
            self.element_count.to_string(),
            self.total_operations.to_string(),
            c.create.to_string(),
            c.moves.to_string(),
            c.delete.to_string(),
            c.rename.to_string(),
            c.reconnect.to_string(),
            c.bend_point.to_string(),
            c.unknown.to_string(),
            f(self.move_ratio),
            f(self.delete_ratio),
            f(self.rename_ratio),
            self.pause_intervals.len().to_string(),
            self.delete_bursts.len().to_string(),
            kebab(self.move_timing_class),
            kebab(self.orientation),
            f(self.interleaving_score),
            self.gateway_pairing_score.map(f).unwrap_or_default(),
            self.chunks.len().to_string(),
            self.chaos_flag.to_string(),
        ]
    }
}

/// A CSV table with a header and one row per profile.
pub fn profiles_to_csv(profiles: &[SessionProfile]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(SessionProfile::CSV_HEADER)
        .expect("write to memory");
    for p in profiles {
        writer.write_record(p.csv_record()).expect("write to memory");
    }
    String::from_utf8(writer.into_inner().expect("flush to memory")).expect("csv is utf-8")
}
