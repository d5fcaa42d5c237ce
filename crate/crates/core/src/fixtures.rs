//! Synthetic sessions for tests, examples and benchmarks.
//!
//! * [`chain_log`]: a fixed three-node session (start, activity, end).
//! * [`preflight_log`] and [`mortgage_log`]: seeded sessions at the sizes of
//!   two observed modeling tasks, returned with their [`GroundTruth`].
//! * [`Pattern`]: one generator pair per modeling-style pattern, a log that
//!   shows the pattern by construction and one that does not.
//! * [`random_log`] and [`random_graph`]: inputs for property tests.
//!
//! All generators are deterministic in their seed.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytics::{CategoryCounts, DetectorConfig, MoveTimingClass, Orientation, SessionProfile};
use crate::eventlog::{ElementTrace, EventLog, LogEvent, Millis};
use crate::replay::{replay, ModelGraph};
use crate::taxonomy::{ElementKind, OperationCategory, OperationKind};

/// 2012-12-03T10:00:00Z.
pub const SESSION_START: Millis = 1_354_528_800_000;

const SECOND: i64 = 1_000;
const MINUTE: i64 = 60 * SECOND;
const HOUR: i64 = 60 * MINUTE;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Start event, one named activity and an end event joined by two edges,
/// followed by some layout work. Timestamps lie within one hour.
pub fn chain_log() -> EventLog {
    let t = |min: i64, sec: i64| SESSION_START + min * MINUTE + sec * SECOND;
    EventLog::from_events(
        "chain",
        vec![
            LogEvent::new("CREATE_START_EVENT", "start", t(0, 0)).at(100.0, 200.0),
            LogEvent::new("CREATE_ACTIVITY", "check", t(0, 12)).at(300.0, 200.0),
            LogEvent::new("NAME_ACTIVITY", "check", t(0, 20)).labeled("Check application"),
            LogEvent::new("CREATE_EDGE", "flow1", t(0, 31)).connecting("start", "check"),
            LogEvent::new("CREATE_END_EVENT", "end", t(0, 45)).at(500.0, 200.0),
            LogEvent::new("CREATE_EDGE", "flow2", t(0, 58)).connecting("check", "end"),
            LogEvent::new("MOVE_ACTIVITY", "check", t(15, 0)).at(300.0, 220.0),
            LogEvent::new("CREATE_EDGE_BENDPOINT", "flow1", t(16, 30)),
            LogEvent::new("MOVE_END_EVENT", "end", t(40, 0)).at(520.0, 220.0),
            LogEvent::new("NAME_EDGE", "flow2", t(50, 0)).labeled("done"),
        ],
    )
}

/// What a generator put into a session, counted while generating.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroundTruth {
    /// Elements of each kind still in the model at the end of the session.
    pub activities: usize,
    pub gateways: usize,
    pub edges: usize,
    /// Number of traces.
    pub elements: usize,
    pub total_operations: usize,
    pub counts: CategoryCounts,
    pub duration_ms: i64,
}

/// Appends events at a running clock and tracks what was emitted.
#[derive(Debug, Clone)]
pub struct SessionBuilder {
    log_id: String,
    now: Millis,
    first: Option<Millis>,
    events: Vec<LogEvent>,
    kinds: BTreeMap<String, ElementKind>,
    deleted: BTreeSet<String>,
    positions: BTreeMap<String, (f64, f64)>,
    counters: BTreeMap<&'static str, usize>,
    truth: GroundTruth,
}

impl SessionBuilder {
    pub fn new(log_id: impl Into<String>, start: Millis) -> Self {
        SessionBuilder {
            log_id: log_id.into(),
            now: start,
            first: None,
            events: Vec::new(),
            kinds: BTreeMap::new(),
            deleted: BTreeSet::new(),
            positions: BTreeMap::new(),
            counters: BTreeMap::new(),
            truth: GroundTruth::default(),
        }
    }

    pub fn now(&self) -> Millis {
        self.now
    }

    pub fn wait(&mut self, ms: i64) -> &mut Self {
        self.now += ms.max(0);
        self
    }

    /// Moves the clock forward to `t`; never backwards.
    pub fn until(&mut self, t: Millis) -> &mut Self {
        self.now = self.now.max(t);
        self
    }

    pub fn kind_of(&self, id: &str) -> Option<ElementKind> {
        self.kinds.get(id).copied()
    }

    /// Ids of live elements of one kind, in creation order.
    pub fn ids_of(&self, kind: ElementKind) -> Vec<String> {
        let mut ids: Vec<(usize, String)> = self
            .events
            .iter()
            .enumerate()
            .filter(|(_, e)| e.operation().category() == Some(OperationCategory::Create))
            .filter(|(_, e)| self.kinds.get(&e.element_id) == Some(&kind))
            .filter(|(_, e)| !self.deleted.contains(&e.element_id))
            .map(|(i, e)| (i, e.element_id.clone()))
            .collect();
        ids.sort();
        ids.into_iter().map(|(_, id)| id).collect()
    }

    fn emit(&mut self, mut event: LogEvent, category: OperationCategory) {
        event.timestamp = self.now;
        self.first.get_or_insert(self.now);
        self.truth.duration_ms = self.now - self.first.unwrap_or(self.now);
        self.truth.total_operations += 1;
        let c = &mut self.truth.counts;
        match category {
            OperationCategory::Create => c.create += 1,
            OperationCategory::Move => c.moves += 1,
            OperationCategory::Delete => c.delete += 1,
            OperationCategory::Rename => c.rename += 1,
            OperationCategory::Reconnect => c.reconnect += 1,
            OperationCategory::BendPoint => c.bend_point += 1,
        }
        self.events.push(event);
        // Strictly increasing times keep the session order unambiguous.
        self.now += 1;
    }

    fn fresh_id(&mut self, prefix: &'static str) -> String {
        let n = self.counters.entry(prefix).or_default();
        *n += 1;
        format!("{prefix}{n}")
    }

    /// Creates a node of `kind` and returns its id.
    pub fn node(&mut self, kind: ElementKind) -> String {
        let (prefix, op) = match kind {
            ElementKind::StartEvent => ("start", OperationKind::CreateStartEvent),
            ElementKind::EndEvent => ("end", OperationKind::CreateEndEvent),
            ElementKind::Activity => ("a", OperationKind::CreateActivity),
            ElementKind::XorGateway => ("xor", OperationKind::CreateXor),
            ElementKind::AndGateway => ("and", OperationKind::CreateAnd),
            ElementKind::Edge => panic!("use SessionBuilder::edge for edges"),
        };
        let id = self.fresh_id(prefix);
        let slot = self.kinds.len() as f64;
        let pos = (100.0 + 150.0 * slot, 200.0 + 40.0 * (slot % 3.0));
        self.emit(
            LogEvent::new(op.name(), id.as_str(), 0).at(pos.0, pos.1),
            OperationCategory::Create,
        );
        self.kinds.insert(id.clone(), kind);
        self.positions.insert(id.clone(), pos);
        self.truth.elements += 1;
        match kind {
            ElementKind::Activity => self.truth.activities += 1,
            ElementKind::XorGateway | ElementKind::AndGateway => self.truth.gateways += 1,
            _ => {}
        }
        id
    }

    pub fn edge(&mut self, source: &str, target: &str) -> String {
        let id = self.fresh_id("e");
        self.emit(
            LogEvent::new("CREATE_EDGE", id.as_str(), 0).connecting(source, target),
            OperationCategory::Create,
        );
        self.kinds.insert(id.clone(), ElementKind::Edge);
        self.truth.elements += 1;
        self.truth.edges += 1;
        id
    }

    /// Moves a node by `(dx, dy)`, or the label of an edge.
    pub fn move_element(&mut self, id: &str, dx: f64, dy: f64) {
        let kind = self.kinds[id];
        let op = match kind {
            ElementKind::StartEvent => OperationKind::MoveStartEvent,
            ElementKind::EndEvent => OperationKind::MoveEndEvent,
            ElementKind::Activity => OperationKind::MoveActivity,
            ElementKind::XorGateway => OperationKind::MoveXor,
            ElementKind::AndGateway => OperationKind::MoveAnd,
            ElementKind::Edge => OperationKind::MoveEdgeLabel,
        };
        let mut event = LogEvent::new(op.name(), id, 0);
        if let Some(p) = self.positions.get_mut(id) {
            p.0 += dx;
            p.1 += dy;
            event = event.at(p.0, p.1);
        }
        self.emit(event, OperationCategory::Move);
    }

    pub fn delete(&mut self, id: &str) {
        let op = match self.kinds[id] {
            ElementKind::StartEvent => OperationKind::DeleteStartEvent,
            ElementKind::EndEvent => OperationKind::DeleteEndEvent,
            ElementKind::Activity => OperationKind::DeleteActivity,
            ElementKind::XorGateway => OperationKind::DeleteXor,
            ElementKind::AndGateway => OperationKind::DeleteAnd,
            ElementKind::Edge => OperationKind::DeleteEdge,
        };
        self.emit(LogEvent::new(op.name(), id, 0), OperationCategory::Delete);
        if self.deleted.insert(id.to_string()) {
            match self.kinds[id] {
                ElementKind::Activity => self.truth.activities -= 1,
                ElementKind::XorGateway | ElementKind::AndGateway => self.truth.gateways -= 1,
                ElementKind::Edge => self.truth.edges -= 1,
                ElementKind::StartEvent | ElementKind::EndEvent => {}
            }
        }
    }

    /// Names an activity or edge for the first time (`rename = false`) or again.
    pub fn name(&mut self, id: &str, text: &str, rename: bool) {
        let op = match (self.kinds[id].is_edge(), rename) {
            (false, false) => OperationKind::NameActivity,
            (false, true) => OperationKind::RenameActivity,
            (true, false) => OperationKind::NameEdge,
            (true, true) => OperationKind::RenameEdge,
        };
        self.emit(LogEvent::new(op.name(), id, 0).labeled(text), OperationCategory::Rename);
    }

    pub fn bendpoint(&mut self, edge: &str, op: OperationKind) {
        debug_assert_eq!(op.category(), Some(OperationCategory::BendPoint));
        self.emit(LogEvent::new(op.name(), edge, 0), OperationCategory::BendPoint);
    }

    pub fn reconnect(&mut self, edge: &str, source: &str, target: &str) {
        self.emit(
            LogEvent::new("RECONNECT_EDGE", edge, 0).connecting(source, target),
            OperationCategory::Reconnect,
        );
    }

    pub fn build(self) -> EventLog {
        self.build_with_truth().0
    }

    pub fn build_with_truth(self) -> (EventLog, GroundTruth) {
        (EventLog::from_events(self.log_id, self.events), self.truth)
    }
}

/// Size of a generated session.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionScale {
    pub activities: usize,
    /// Split/join gateway pairs; each adds a skip edge from split to join.
    pub gateway_pairs: usize,
    pub total_operations: usize,
}

/// 13 activities, 120 operations.
pub const PREFLIGHT: SessionScale = SessionScale {
    activities: 13,
    gateway_pairs: 1,
    total_operations: 120,
};

/// 27 activities, 276 operations.
pub const MORTGAGE: SessionScale = SessionScale {
    activities: 27,
    gateway_pairs: 2,
    total_operations: 276,
};

#[derive(Debug, Clone, Copy)]
enum Extra {
    MoveNode,
    MoveLabel,
    Bendpoint,
    RenameActivity,
    NameEdge,
    Reconnect,
    /// A throw-away activity, created and later deleted (two operations).
    Scratch,
}

/// The flow as a node sequence: start, activities with gateway blocks
/// spread among them, end.
fn flow_plan(scale: SessionScale) -> Vec<ElementKind> {
    let mut plan = vec![ElementKind::StartEvent];
    let blocks = scale.gateway_pairs;
    let stride = scale.activities / (blocks + 1);
    let mut opened = 0;
    for i in 0..scale.activities {
        if blocks > 0 && opened < blocks && i > 0 && i % stride.max(1) == 0 {
            let gateway = if opened % 2 == 0 {
                ElementKind::XorGateway
            } else {
                ElementKind::AndGateway
            };
            // Split, two activities in the block, join.
            plan.push(gateway);
            plan.push(ElementKind::Activity);
            plan.push(ElementKind::Activity);
            plan.push(gateway);
            opened += 1;
            continue;
        }
        plan.push(ElementKind::Activity);
    }
    // Each block swallowed one activity slot and added two.
    let extra_activities = opened;
    for _ in 0..extra_activities {
        let last = plan
            .iter()
            .rposition(|k| *k == ElementKind::Activity)
            .expect("activity");
        plan.remove(last);
    }
    plan.push(ElementKind::EndEvent);
    plan
}

/// Generates a well-formed session of the given scale. The flow is built
/// front to back, node then connecting edge; extra layout and naming
/// operations are interleaved at random steps until the operation total
/// is reached exactly.
pub fn session_log(log_id: &str, scale: SessionScale, seed: u64) -> (EventLog, GroundTruth) {
    let mut rng = rng(seed);
    let plan = flow_plan(scale);
    let nodes = plan.len();
    let gateway_count = plan.iter().filter(|k| k.is_gateway()).count();
    let edges = nodes - 1 + gateway_count / 2;
    let names = scale.activities;
    let fixed = nodes + edges + names;
    assert!(fixed <= scale.total_operations, "scale too small for its flow");

    let mut budget = scale.total_operations - fixed;
    let mut extras = Vec::new();
    while budget > 0 {
        let pick = rng.gen_range(0..100);
        let extra = match pick {
            0..=44 => Extra::MoveNode,
            45..=54 => Extra::MoveLabel,
            55..=69 => Extra::Bendpoint,
            70..=77 => Extra::RenameActivity,
            78..=84 => Extra::NameEdge,
            85..=89 => Extra::Reconnect,
            _ if budget >= 2 => Extra::Scratch,
            _ => Extra::MoveNode,
        };
        budget -= if matches!(extra, Extra::Scratch) { 2 } else { 1 };
        extras.push(extra);
    }
    // Assign extras to flow steps (after step 0 so something exists).
    let mut by_step: Vec<Vec<Extra>> = vec![Vec::new(); nodes];
    for extra in extras {
        by_step[rng.gen_range(1..nodes)].push(extra);
    }

    let mut b = SessionBuilder::new(log_id, SESSION_START);
    let step_wait = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.08) {
            rng.gen_range(70..180) * SECOND
        } else {
            rng.gen_range(2..25) * SECOND
        }
    };
    let mut previous: Option<String> = None;
    let mut open_split: Option<String> = None;
    let mut activity_no = 0;
    let mut label_no = 0;
    for (step, kind) in plan.iter().enumerate() {
        let id = b.node(*kind);
        if *kind == ElementKind::Activity {
            activity_no += 1;
            b.wait(step_wait(&mut rng));
            b.name(&id, &format!("Task {activity_no}"), false);
        }
        if let Some(prev) = &previous {
            b.wait(step_wait(&mut rng));
            b.edge(prev, &id);
        }
        if kind.is_gateway() {
            match open_split.take() {
                Some(split) => {
                    b.wait(step_wait(&mut rng));
                    b.edge(&split, &id);
                }
                None => open_split = Some(id.clone()),
            }
        }
        previous = Some(id);

        for extra in std::mem::take(&mut by_step[step]) {
            b.wait(step_wait(&mut rng));
            let edges = b.ids_of(ElementKind::Edge);
            let activities = b.ids_of(ElementKind::Activity);
            let all_nodes: Vec<String> = [
                ElementKind::StartEvent,
                ElementKind::Activity,
                ElementKind::XorGateway,
                ElementKind::AndGateway,
                ElementKind::EndEvent,
            ]
            .iter()
            .flat_map(|k| b.ids_of(*k))
            .collect();
            let nudge = |rng: &mut ChaCha8Rng| f64::from(rng.gen_range(-3i32..=3)) * 10.0;
            match extra {
                Extra::MoveLabel | Extra::Bendpoint | Extra::NameEdge | Extra::Reconnect if edges.is_empty() => {
                    let target = all_nodes.choose(&mut rng).expect("a node exists").clone();
                    let (dx, dy) = (nudge(&mut rng), nudge(&mut rng));
                    b.move_element(&target, dx, dy);
                }
                Extra::MoveNode => {
                    let target = all_nodes.choose(&mut rng).expect("a node exists").clone();
                    let (dx, dy) = (nudge(&mut rng), nudge(&mut rng));
                    b.move_element(&target, dx, dy);
                }
                Extra::MoveLabel => {
                    let e = edges.choose(&mut rng).expect("edge").clone();
                    b.move_element(&e, 0.0, 0.0);
                }
                Extra::Bendpoint => {
                    let e = edges.choose(&mut rng).expect("edge").clone();
                    let op = [
                        OperationKind::CreateEdgeBendpoint,
                        OperationKind::MoveEdgeBendpoint,
                        OperationKind::DeleteEdgeBendpoint,
                    ]
                    .choose(&mut rng)
                    .expect("non-empty")
                    .clone();
                    b.bendpoint(&e, op);
                }
                Extra::RenameActivity => {
                    let a = activities.choose(&mut rng).expect("activity").clone();
                    label_no += 1;
                    b.name(&a, &format!("Task {label_no}b"), true);
                }
                Extra::NameEdge => {
                    let e = edges.choose(&mut rng).expect("edge").clone();
                    label_no += 1;
                    b.name(&e, &format!("case {label_no}"), false);
                }
                Extra::Reconnect => {
                    // Reattach an edge to the endpoints it already has, as
                    // when a modeler drags an end and drops it back.
                    let e = edges.choose(&mut rng).expect("edge").clone();
                    let (source, target) = b
                        .events
                        .iter()
                        .rev()
                        .find(|ev| ev.element_id == e && ev.edge_source.is_some())
                        .map(|ev| (ev.edge_source.clone().unwrap(), ev.edge_target.clone().unwrap()))
                        .expect("edge has endpoints");
                    b.reconnect(&e, &source, &target);
                }
                Extra::Scratch => {
                    let scratch = b.node(ElementKind::Activity);
                    b.wait(rng.gen_range(3..20) * SECOND);
                    b.delete(&scratch);
                }
            }
        }
    }
    b.build_with_truth()
}

pub fn preflight_log(seed: u64) -> (EventLog, GroundTruth) {
    session_log("pre-flight", PREFLIGHT, seed)
}

pub fn mortgage_log(seed: u64) -> (EventLog, GroundTruth) {
    session_log("mortgage", MORTGAGE, seed)
}

/// Modeling-style patterns with a generator pair each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    DeleteBurst,
    EarlyBoundMoves,
    EndPhaseMoves,
    ScatteredMoves,
    FewMoves,
    AspectOriented,
    FlowOriented,
    GatewaysPaired,
    GatewaysUnpaired,
    OneChunk,
    ManyChunks,
    Chaos,
}

impl Pattern {
    pub const ALL: [Pattern; 12] = [
        Pattern::DeleteBurst,
        Pattern::EarlyBoundMoves,
        Pattern::EndPhaseMoves,
        Pattern::ScatteredMoves,
        Pattern::FewMoves,
        Pattern::AspectOriented,
        Pattern::FlowOriented,
        Pattern::GatewaysPaired,
        Pattern::GatewaysUnpaired,
        Pattern::OneChunk,
        Pattern::ManyChunks,
        Pattern::Chaos,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::DeleteBurst => "delete-burst",
            Pattern::EarlyBoundMoves => "early-bound-moves",
            Pattern::EndPhaseMoves => "end-phase-moves",
            Pattern::ScatteredMoves => "scattered-moves",
            Pattern::FewMoves => "few-moves",
            Pattern::AspectOriented => "aspect-oriented",
            Pattern::FlowOriented => "flow-oriented",
            Pattern::GatewaysPaired => "gateways-paired",
            Pattern::GatewaysUnpaired => "gateways-unpaired",
            Pattern::OneChunk => "one-chunk",
            Pattern::ManyChunks => "many-chunks",
            Pattern::Chaos => "chaos",
        }
    }

    /// Whether the profile shows this pattern.
    pub fn detected(self, profile: &SessionProfile, config: &DetectorConfig) -> bool {
        let paired = |want: bool| {
            profile
                .gateway_pairing_score
                .is_some_and(|s| (s >= config.paired_min_score) == want)
        };
        match self {
            Pattern::DeleteBurst => !profile.delete_bursts.is_empty(),
            Pattern::EarlyBoundMoves => profile.move_timing_class == MoveTimingClass::EarlyBound,
            Pattern::EndPhaseMoves => profile.move_timing_class == MoveTimingClass::EndPhase,
            Pattern::ScatteredMoves => profile.move_timing_class == MoveTimingClass::Scattered,
            Pattern::FewMoves => profile.move_timing_class == MoveTimingClass::Few,
            Pattern::AspectOriented => profile.orientation == Orientation::AspectOriented,
            Pattern::FlowOriented => profile.orientation == Orientation::FlowOriented,
            Pattern::GatewaysPaired => paired(true),
            Pattern::GatewaysUnpaired => paired(false),
            Pattern::OneChunk => profile.chunks.len() == 1,
            Pattern::ManyChunks => profile.chunks.len() >= 2,
            Pattern::Chaos => profile.chaos_flag,
        }
    }

    /// A log showing the pattern (`present = true`) or one that does not.
    pub fn generate(self, seed: u64, present: bool) -> EventLog {
        let mut rng = rng(seed ^ (self as u64) << 32);
        let id = format!("{}-{}", self.name(), if present { "yes" } else { "no" });
        let mut b = SessionBuilder::new(id, SESSION_START);
        match (self, present) {
            (Pattern::DeleteBurst, _) => {
                let ids: Vec<String> = (0..rng.gen_range(6..10))
                    .map(|_| {
                        b.wait(rng.gen_range(5..15) * SECOND);
                        b.node(ElementKind::Activity)
                    })
                    .collect();
                let n = rng.gen_range(3..=5);
                for id in ids.iter().take(n) {
                    // Inside the burst window, or far outside it.
                    let gap = if present {
                        rng.gen_range(1..4) * SECOND
                    } else {
                        rng.gen_range(60..120) * SECOND
                    };
                    b.wait(gap);
                    b.delete(id);
                }
            }
            (Pattern::EarlyBoundMoves, true) | (Pattern::EndPhaseMoves, false) => early_moves(&mut b, &mut rng),
            (Pattern::EndPhaseMoves, true) | (Pattern::EarlyBoundMoves, false) => late_moves(&mut b, &mut rng),
            (Pattern::ScatteredMoves, true) => scattered_moves(&mut b, &mut rng, true),
            (Pattern::ScatteredMoves, false) => scattered_moves(&mut b, &mut rng, false),
            (Pattern::FewMoves, true) => {
                let ids: Vec<String> = (0..20)
                    .map(|_| {
                        b.wait(rng.gen_range(5..30) * SECOND);
                        b.node(ElementKind::Activity)
                    })
                    .collect();
                // Fewer moves than a tenth of the creates.
                if rng.gen_bool(0.5) {
                    b.wait(MINUTE);
                    b.move_element(ids.choose(&mut rng).expect("ids"), 10.0, 0.0);
                }
            }
            (Pattern::FewMoves, false) => early_moves(&mut b, &mut rng),
            (Pattern::AspectOriented, true) | (Pattern::FlowOriented, false) => {
                let n = rng.gen_range(5..9);
                creation_layout(&mut b, &mut rng, n, false);
            }
            (Pattern::FlowOriented, true) | (Pattern::AspectOriented, false) => {
                let n = rng.gen_range(5..9);
                creation_layout(&mut b, &mut rng, n, true);
            }
            (Pattern::GatewaysPaired, true) | (Pattern::GatewaysUnpaired, false) => {
                gateway_layout(&mut b, &mut rng, true)
            }
            (Pattern::GatewaysPaired, false) | (Pattern::GatewaysUnpaired, true) => {
                gateway_layout(&mut b, &mut rng, false)
            }
            (Pattern::OneChunk, true) | (Pattern::ManyChunks, false) => chunked(&mut b, &mut rng, 1),
            (Pattern::OneChunk, false) | (Pattern::ManyChunks, true) => {
                let k = rng.gen_range(2..=4);
                chunked(&mut b, &mut rng, k)
            }
            (Pattern::Chaos, _) => chaos(&mut b, &mut rng, present),
        }
        b.build()
    }
}

/// Ten activities over an hour, each moved within half a minute of creation.
fn early_moves(b: &mut SessionBuilder, rng: &mut ChaCha8Rng) {
    for i in 0..10 {
        b.until(SESSION_START + i * 6 * MINUTE);
        let id = b.node(ElementKind::Activity);
        for _ in 0..rng.gen_range(1..=3) {
            b.wait(rng.gen_range(1..10) * SECOND);
            b.move_element(&id, 10.0, 0.0);
        }
    }
    b.until(SESSION_START + HOUR);
    b.node(ElementKind::EndEvent);
}

/// Activities created in the first 45 minutes, all moves in the last five.
fn late_moves(b: &mut SessionBuilder, rng: &mut ChaCha8Rng) {
    let ids: Vec<String> = (0..10)
        .map(|i| {
            b.until(SESSION_START + i * 5 * MINUTE);
            b.node(ElementKind::Activity)
        })
        .collect();
    b.until(SESSION_START + 55 * MINUTE);
    for id in &ids {
        b.wait(rng.gen_range(5..25) * SECOND);
        b.move_element(id, 0.0, 10.0);
    }
    b.until(SESSION_START + HOUR);
    b.node(ElementKind::EndEvent);
}

/// All creates in the first two minutes, then moves at the given session
/// phases, then a closing event at one hour.
fn moves_at_phases(b: &mut SessionBuilder, rng: &mut ChaCha8Rng, phases: &[f64]) {
    let ids: Vec<String> = (0..8)
        .map(|_| {
            b.wait(rng.gen_range(5..14) * SECOND);
            b.node(ElementKind::Activity)
        })
        .collect();
    for phase in phases {
        b.until(SESSION_START + (phase * HOUR as f64) as i64);
        let id = ids.choose(rng).expect("ids").clone();
        b.move_element(&id, 10.0, 10.0);
    }
    b.until(SESSION_START + HOUR);
    b.node(ElementKind::EndEvent);
}

fn scattered_moves(b: &mut SessionBuilder, rng: &mut ChaCha8Rng, present: bool) {
    let mut phases: Vec<f64> = if present {
        // Every quartile, and under half of them late.
        vec![
            rng.gen_range(0.15..0.24),
            rng.gen_range(0.26..0.49),
            rng.gen_range(0.51..0.74),
            rng.gen_range(0.76..0.79),
            rng.gen_range(0.85..0.95),
        ]
    } else {
        // Only the middle of the session.
        (0..5).map(|_| rng.gen_range(0.30..0.70)).collect()
    };
    phases.sort_by(f64::total_cmp);
    moves_at_phases(b, rng, &phases);
}

/// `n` nodes and `n - 1` edges, either all nodes first or alternating.
fn creation_layout(b: &mut SessionBuilder, rng: &mut ChaCha8Rng, n: usize, interleave: bool) {
    let mut ids: Vec<String> = Vec::new();
    if interleave {
        for _ in 0..n {
            b.wait(rng.gen_range(5..20) * SECOND);
            let id = b.node(ElementKind::Activity);
            if let Some(prev) = ids.last() {
                b.wait(rng.gen_range(5..20) * SECOND);
                b.edge(prev, &id);
            }
            ids.push(id);
        }
    } else {
        for _ in 0..n {
            b.wait(rng.gen_range(5..20) * SECOND);
            ids.push(b.node(ElementKind::Activity));
        }
        for w in ids.windows(2) {
            b.wait(rng.gen_range(5..20) * SECOND);
            b.edge(&w[0], &w[1]);
        }
    }
}

/// Three gateway blocks. Paired: split and join created back to back
/// before the branch activities. Unpaired: an activity between them.
fn gateway_layout(b: &mut SessionBuilder, rng: &mut ChaCha8Rng, paired: bool) {
    b.node(ElementKind::StartEvent);
    for block in 0..3 {
        let kind = if block % 2 == 0 {
            ElementKind::XorGateway
        } else {
            ElementKind::AndGateway
        };
        b.wait(rng.gen_range(5..20) * SECOND);
        b.node(ElementKind::Activity);
        b.wait(rng.gen_range(5..20) * SECOND);
        b.node(kind);
        if !paired {
            b.wait(rng.gen_range(5..20) * SECOND);
            b.node(ElementKind::Activity);
        }
        b.wait(rng.gen_range(5..20) * SECOND);
        b.node(kind);
        b.wait(rng.gen_range(5..20) * SECOND);
        b.node(ElementKind::Activity);
    }
    b.wait(rng.gen_range(5..20) * SECOND);
    b.node(ElementKind::EndEvent);
}

/// `k` groups of creates separated by pauses of two to five minutes.
/// Moves happen inside the pauses, which split chunks but not activity.
fn chunked(b: &mut SessionBuilder, rng: &mut ChaCha8Rng, k: usize) {
    for chunk in 0..k {
        if chunk > 0 {
            let pause = rng.gen_range(2..=5) * MINUTE;
            let resume = b.now() + pause;
            if let Some(id) = b.ids_of(ElementKind::Activity).last().cloned() {
                b.wait(pause / 2);
                b.move_element(&id, 5.0, 0.0);
            }
            b.until(resume);
        }
        for _ in 0..rng.gen_range(3..7) {
            b.node(ElementKind::Activity);
            b.wait(rng.gen_range(5..40) * SECOND);
        }
    }
}

/// Scattered moves, lots of rework, and node/edge creation in two halves
/// (no clear orientation). Without the pattern, creation is aspect-oriented
/// and there is no throw-away work.
fn chaos(b: &mut SessionBuilder, rng: &mut ChaCha8Rng, present: bool) {
    let mut nodes = Vec::new();
    let halves = if present { 2 } else { 1 };
    let per_half = 10 / halves;
    for _ in 0..halves {
        let start = nodes.len();
        for _ in 0..per_half {
            b.wait(rng.gen_range(3..8) * SECOND);
            nodes.push(b.node(ElementKind::Activity));
        }
        for i in start..nodes.len() - 1 {
            b.wait(rng.gen_range(3..8) * SECOND);
            b.edge(&nodes[i], &nodes[i + 1]);
        }
    }
    let phases = [0.15, 0.2, 0.35, 0.4, 0.55, 0.6, 0.7, 0.85, 0.9];
    for (i, phase) in phases.iter().enumerate() {
        b.until(SESSION_START + (phase * HOUR as f64) as i64);
        for k in 0..2 {
            b.wait(rng.gen_range(2..6) * SECOND);
            let id = nodes[(2 * i + k) % nodes.len()].clone();
            b.move_element(&id, 10.0, -10.0);
        }
        if present {
            let scratch = b.node(ElementKind::Activity);
            b.wait(rng.gen_range(20..40) * SECOND);
            b.delete(&scratch);
        }
    }
    b.until(SESSION_START + HOUR);
    b.node(ElementKind::EndEvent);
}

/// A log of arbitrary well-formed events for round-trip tests. Ids,
/// labels and attribute values include characters that need escaping.
pub fn random_log(seed: u64) -> EventLog {
    let mut rng = rng(seed);
    let awkward = [
        "plain",
        "with space",
        "a,b",
        "quote\"d",
        "<tag>",
        "amp&er",
        "tab\there",
        "ünï",
    ];
    let trace_count = rng.gen_range(0..6);
    let mut traces = Vec::new();
    for t in 0..trace_count {
        let id = format!("{}-{t}", awkward.choose(&mut rng).expect("non-empty"));
        let mut times: Vec<Millis> = (0..rng.gen_range(1..6))
            .map(|_| rng.gen_range(0..4_000_000_000_000i64))
            .collect();
        times.sort_unstable();
        let events = times
            .into_iter()
            .map(|ts| {
                let op = OperationKind::ALL.choose(&mut rng).expect("non-empty");
                let mut e = LogEvent::new(op.name(), id.as_str(), ts);
                if rng.gen_bool(0.5) {
                    e = e.at(rng.gen_range(-1e4..1e4), f64::from(rng.gen_range(-500i32..500)));
                }
                if op.element_kind() == Some(ElementKind::Edge) && rng.gen_bool(0.7) {
                    e = e.connecting(
                        *awkward.choose(&mut rng).expect("non-empty"),
                        *awkward.choose(&mut rng).expect("non-empty"),
                    );
                }
                if rng.gen_bool(0.3) {
                    e = e.labeled(*awkward.choose(&mut rng).expect("non-empty"));
                }
                if rng.gen_bool(0.3) {
                    let key = ["org:resource", "lifecycle:transition", "note"]
                        .choose(&mut rng)
                        .expect("non-empty");
                    e.attributes.insert(
                        key.to_string(),
                        awkward.choose(&mut rng).expect("non-empty").to_string(),
                    );
                }
                e
            })
            .collect();
        traces.push(ElementTrace::new(id, events));
    }
    let mut log = EventLog::new(format!("random-{seed}"), traces);
    if rng.gen_bool(0.5) {
        log.source_meta.insert("source".into(), "generator <random>".into());
    }
    log
}

/// A directed graph with integer arc lengths. Node 0 is the start event.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomGraph {
    pub node_count: usize,
    /// `(source, target, length)`, lengths in `1..=20`.
    pub arcs: Vec<(usize, usize, u64)>,
}

impl RandomGraph {
    pub fn node_id(i: usize) -> String {
        format!("n{i}")
    }

    pub fn arc_id(i: usize) -> String {
        format!("e{i}")
    }

    /// The log that builds this graph: all nodes, then all arcs, in index
    /// order. Nodes carry no positions; use the integer lengths instead.
    pub fn to_log(&self) -> EventLog {
        let mut traces = Vec::new();
        for i in 0..self.node_count {
            let op = if i == 0 {
                "CREATE_START_EVENT"
            } else {
                "CREATE_ACTIVITY"
            };
            traces.push(ElementTrace::new(
                Self::node_id(i),
                vec![LogEvent::new(op, Self::node_id(i), i as Millis)],
            ));
        }
        for (k, (s, t, _)) in self.arcs.iter().enumerate() {
            let ts = (self.node_count + k) as Millis;
            traces.push(ElementTrace::new(
                Self::arc_id(k),
                vec![LogEvent::new("CREATE_EDGE", Self::arc_id(k), ts).connecting(Self::node_id(*s), Self::node_id(*t))],
            ));
        }
        EventLog::new("graph", traces)
    }

    pub fn model(&self) -> ModelGraph {
        replay(&self.to_log()).expect("generated log replays").graph
    }

    /// Arc length keyed by arc element id.
    pub fn lengths(&self) -> BTreeMap<String, u64> {
        self.arcs
            .iter()
            .enumerate()
            .map(|(k, (_, _, len))| (Self::arc_id(k), *len))
            .collect()
    }
}

/// Up to `max_nodes` nodes and `max_arcs` arcs, self-loops and parallel
/// arcs allowed.
pub fn random_graph(seed: u64, max_nodes: usize, max_arcs: usize) -> RandomGraph {
    let mut rng = rng(seed);
    let node_count = rng.gen_range(1..=max_nodes.max(1));
    let arc_count = rng.gen_range(0..=max_arcs);
    let arcs = (0..arc_count)
        .map(|_| {
            (
                rng.gen_range(0..node_count),
                rng.gen_range(0..node_count),
                rng.gen_range(1..=20),
            )
        })
        .collect();
    RandomGraph { node_count, arcs }
}
