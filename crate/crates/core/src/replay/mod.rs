//! Replays a session log into the process model it built.
//!
//! Events are applied in session order (see [`EventLog::session_order`]).
//! The resulting [`ModelGraph`] keeps deleted elements with their last
//! known position and endpoints, so every element that ever existed can be
//! placed in the graph-based timeline orderings of [`order`].

pub mod order;
pub mod shortest;

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eventlog::{EventLog, LogEvent, Millis, Point};
use crate::taxonomy::{ElementKind, OperationCategory, OperationKind};

pub use order::{
    arc_length, create_order_from_start, create_order_from_start_with, distance_from_start, distance_from_start_with,
    ElementOrder, LengthMode, OrderingError, OrderingOptions, RankedElement,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelNode {
    pub element_id: String,
    pub kind: ElementKind,
    pub last_position: Option<Point>,
    pub created_at: Option<Millis>,
    pub deleted_at: Option<Millis>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelArc {
    pub element_id: String,
    pub source: Option<String>,
    pub target: Option<String>,
    pub created_at: Option<Millis>,
    pub deleted_at: Option<Millis>,
    /// An endpoint is missing or does not name a node of the model.
    pub dangling: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphElement {
    Node(usize),
    Arc(usize),
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ModelGraph {
    pub nodes: Vec<ModelNode>,
    pub arcs: Vec<ModelArc>,
    /// Every element id of the source log, in trace order.
    pub element_ids: Vec<String>,
    index: HashMap<String, GraphElement>,
}

impl ModelGraph {
    pub fn lookup(&self, element_id: &str) -> Option<GraphElement> {
        self.index.get(element_id).copied()
    }

    pub fn node(&self, element_id: &str) -> Option<&ModelNode> {
        match self.lookup(element_id)? {
            GraphElement::Node(i) => Some(&self.nodes[i]),
            GraphElement::Arc(_) => None,
        }
    }

    pub fn arc(&self, element_id: &str) -> Option<&ModelArc> {
        match self.lookup(element_id)? {
            GraphElement::Arc(i) => Some(&self.arcs[i]),
            GraphElement::Node(_) => None,
        }
    }

    pub fn surviving_nodes(&self) -> impl Iterator<Item = &ModelNode> {
        self.nodes.iter().filter(|n| n.deleted_at.is_none())
    }

    /// Arcs that are not deleted and whose endpoints both survive.
    pub fn surviving_arcs(&self) -> impl Iterator<Item = &ModelArc> {
        self.arcs.iter().filter(move |a| {
            a.deleted_at.is_none()
                && !a.dangling
                && [&a.source, &a.target].into_iter().all(|end| {
                    end.as_deref()
                        .and_then(|id| self.node(id))
                        .is_some_and(|n| n.deleted_at.is_none())
                })
        })
    }

    /// Ids of all elements present in the final model.
    pub fn surviving_ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self
            .surviving_nodes()
            .map(|n| n.element_id.as_str())
            .chain(self.surviving_arcs().map(|a| a.element_id.as_str()))
            .collect();
        ids.sort_unstable();
        ids
    }

    /// An undeleted arc whose endpoints are missing or no longer exist.
    pub fn is_dangling_at_end(&self, arc: &ModelArc) -> bool {
        arc.deleted_at.is_none() && !self.surviving_arcs().any(|a| a.element_id == arc.element_id)
    }

    /// Line-oriented debug dump, stable across runs.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let stamp = |t: Option<Millis>| t.map_or("-".to_string(), |t| t.to_string());
        for n in &self.nodes {
            let pos = n
                .last_position
                .map_or("-".to_string(), |p| format!("({},{})", p.x, p.y));
            let _ = writeln!(
                out,
                "node {} {} pos={} created={} deleted={}",
                n.element_id,
                n.kind,
                pos,
                stamp(n.created_at),
                stamp(n.deleted_at)
            );
        }
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "arc {} {}->{} created={} deleted={}{}",
                a.element_id,
                a.source.as_deref().unwrap_or("?"),
                a.target.as_deref().unwrap_or("?"),
                stamp(a.created_at),
                stamp(a.deleted_at),
                if a.dangling { " dangling" } else { "" }
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayWarning {
    pub code: String,
    pub element_id: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("element `{element_id}` created twice (second at t={at})")]
    DuplicateCreate { element_id: String, at: Millis },
}

#[derive(Debug, Clone)]
pub struct Replay {
    pub graph: ModelGraph,
    pub warnings: Vec<ReplayWarning>,
}

struct Replayer {
    graph: ModelGraph,
    warnings: Vec<ReplayWarning>,
}

impl Replayer {
    fn warn(&mut self, code: &str, element_id: &str, message: String) {
        self.warnings.push(ReplayWarning {
            code: code.into(),
            element_id: element_id.into(),
            message,
        });
    }

    /// Finds the entity an event refers to, creating it best-effort when no
    /// creation has been seen.
    fn entity(&mut self, event: &LogEvent, kind: ElementKind, creating: bool) -> Option<GraphElement> {
        let id = event.element_id.as_str();
        if let Some(found) = self.graph.lookup(id) {
            let matches = matches!(found, GraphElement::Arc(_)) == kind.is_edge();
            if !matches {
                self.warn(
                    "kind-mismatch",
                    id,
                    format!("{} does not apply to this element", event.name),
                );
                return None;
            }
            return Some(found);
        }
        if !creating {
            self.warn(
                "no-prior-create",
                id,
                format!("{} at t={} precedes any creation", event.name, event.timestamp),
            );
        }
        let entry = if kind.is_edge() {
            self.graph.arcs.push(ModelArc {
                element_id: id.to_string(),
                source: None,
                target: None,
                created_at: None,
                deleted_at: None,
                dangling: false,
            });
            GraphElement::Arc(self.graph.arcs.len() - 1)
        } else {
            self.graph.nodes.push(ModelNode {
                element_id: id.to_string(),
                kind,
                last_position: None,
                created_at: None,
                deleted_at: None,
            });
            GraphElement::Node(self.graph.nodes.len() - 1)
        };
        self.graph.index.insert(id.to_string(), entry);
        Some(entry)
    }

    fn apply(&mut self, event: &LogEvent) -> Result<(), ReplayError> {
        let op = event.operation();
        let (Some(kind), Some(category)) = (op.element_kind(), op.category()) else {
            self.warn(
                "unknown-operation",
                &event.element_id,
                format!("skipped `{}`", event.name),
            );
            return Ok(());
        };
        let creating = category == OperationCategory::Create;
        let Some(entity) = self.entity(event, kind, creating) else {
            return Ok(());
        };

        match entity {
            GraphElement::Node(i) => {
                let node = &mut self.graph.nodes[i];
                match category {
                    OperationCategory::Create => {
                        if node.created_at.is_some() {
                            return Err(ReplayError::DuplicateCreate {
                                element_id: event.element_id.clone(),
                                at: event.timestamp,
                            });
                        }
                        node.created_at = Some(event.timestamp);
                        node.kind = kind;
                    }
                    OperationCategory::Delete => node.deleted_at = Some(event.timestamp),
                    _ => {}
                }
                if matches!(category, OperationCategory::Create | OperationCategory::Move) {
                    if let Some(p) = event.position {
                        node.last_position = Some(p);
                    }
                }
            }
            GraphElement::Arc(i) => {
                let arc = &mut self.graph.arcs[i];
                match op {
                    OperationKind::CreateEdge => {
                        if arc.created_at.is_some() {
                            return Err(ReplayError::DuplicateCreate {
                                element_id: event.element_id.clone(),
                                at: event.timestamp,
                            });
                        }
                        arc.created_at = Some(event.timestamp);
                        arc.source = event.edge_source.clone().or(arc.source.take());
                        arc.target = event.edge_target.clone().or(arc.target.take());
                        let ends = [arc.source.clone(), arc.target.clone()];
                        let missing: Vec<String> = ends
                            .iter()
                            .flatten()
                            .filter(|end| self.graph.node(end).is_none_or(|n| n.created_at.is_none()))
                            .cloned()
                            .collect();
                        for end in missing {
                            self.warn(
                                "endpoint-not-created",
                                &event.element_id,
                                format!("endpoint `{end}` does not exist yet"),
                            );
                        }
                    }
                    OperationKind::ReconnectEdge => {
                        if let Some(s) = &event.edge_source {
                            arc.source = Some(s.clone());
                        }
                        if let Some(t) = &event.edge_target {
                            arc.target = Some(t.clone());
                        }
                    }
                    OperationKind::DeleteEdge => arc.deleted_at = Some(event.timestamp),
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

/// Rebuilds the process model by applying every event in session order.
pub fn replay(log: &EventLog) -> Result<Replay, ReplayError> {
    let mut replayer = Replayer {
        graph: ModelGraph {
            element_ids: log.traces.iter().map(|t| t.element_id.clone()).collect(),
            ..ModelGraph::default()
        },
        warnings: Vec::new(),
    };
    for r in log.session_order() {
        replayer.apply(log.event(r))?;
    }

    let Replayer {
        mut graph,
        mut warnings,
    } = replayer;
    let node_ids: HashMap<String, ()> = graph.nodes.iter().map(|n| (n.element_id.clone(), ())).collect();
    for arc in &mut graph.arcs {
        arc.dangling = [&arc.source, &arc.target]
            .into_iter()
            .any(|end| end.as_ref().is_none_or(|id| !node_ids.contains_key(id)));
        if arc.dangling {
            warnings.push(ReplayWarning {
                code: "dangling-edge".into(),
                element_id: arc.element_id.clone(),
                message: "edge endpoints missing or unresolved".into(),
            });
        }
    }
    Ok(Replay { graph, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eventlog::ElementTrace;

    fn chain() -> EventLog {
        EventLog::new(
            "chain",
            vec![
                ElementTrace::new("s", vec![LogEvent::new("CREATE_START_EVENT", "s", 0).at(0.0, 0.0)]),
                ElementTrace::new("a", vec![LogEvent::new("CREATE_ACTIVITY", "a", 10).at(3.0, 4.0)]),
                ElementTrace::new("e", vec![LogEvent::new("CREATE_EDGE", "e", 20).connecting("s", "a")]),
            ],
        )
    }

    #[test]
    fn minimal_construction() {
        let replay = replay(&chain()).unwrap();
        let g = &replay.graph;
        assert!(replay.warnings.is_empty(), "{:?}", replay.warnings);
        assert_eq!(g.nodes.len(), 2);
        assert_eq!(g.arcs.len(), 1);
        assert_eq!(g.arcs[0].source.as_deref(), Some("s"));
        assert_eq!(g.arcs[0].target.as_deref(), Some("a"));
        assert_eq!(g.surviving_ids(), vec!["a", "e", "s"]);
    }

    #[test]
    fn deleting_an_endpoint_leaves_a_dangling_arc() {
        let mut log = chain();
        log.traces[1].events.push(LogEvent::new("DELETE_ACTIVITY", "a", 30));
        let g = replay(&log).unwrap().graph;
        assert_eq!(g.surviving_ids(), vec!["s"]);
        assert!(g.is_dangling_at_end(g.arc("e").unwrap()));
    }

    #[test]
    fn moves_update_position_and_reconnect_updates_endpoints() {
        let mut log = chain();
        log.traces[1]
            .events
            .push(LogEvent::new("MOVE_ACTIVITY", "a", 40).at(9.0, 9.0));
        log.traces[1]
            .events
            .push(LogEvent::new("NAME_ACTIVITY", "a", 41).labeled("Check"));
        log.traces.push(ElementTrace::new(
            "t",
            vec![LogEvent::new("CREATE_END_EVENT", "t", 50).at(20.0, 0.0)],
        ));
        let mut reconnect = LogEvent::new("RECONNECT_EDGE", "e", 60);
        reconnect.edge_target = Some("t".into());
        log.traces[2].events.push(reconnect);
        let g = replay(&log).unwrap().graph;
        assert_eq!(g.node("a").unwrap().last_position, Some(Point::new(9.0, 9.0)));
        let e = g.arc("e").unwrap();
        assert_eq!((e.source.as_deref(), e.target.as_deref()), (Some("s"), Some("t")));
    }

    #[test]
    fn duplicate_create_is_an_error() {
        let mut log = chain();
        log.traces[1].events.push(LogEvent::new("CREATE_ACTIVITY", "a", 30));
        assert!(matches!(replay(&log), Err(ReplayError::DuplicateCreate { .. })));
    }

    #[test]
    fn operation_without_create_warns_and_applies() {
        let log = EventLog::new(
            "x",
            vec![ElementTrace::new(
                "a",
                vec![LogEvent::new("MOVE_ACTIVITY", "a", 0).at(1.0, 2.0)],
            )],
        );
        let replay = replay(&log).unwrap();
        assert_eq!(replay.warnings[0].code, "no-prior-create");
        assert_eq!(
            replay.graph.node("a").unwrap().last_position,
            Some(Point::new(1.0, 2.0))
        );
    }

    #[test]
    fn edge_without_endpoints_is_dangling() {
        let log = EventLog::new(
            "x",
            vec![ElementTrace::new("e", vec![LogEvent::new("CREATE_EDGE", "e", 0)])],
        );
        let replay = replay(&log).unwrap();
        assert!(replay.graph.arcs[0].dangling);
        assert_eq!(replay.warnings[0].code, "dangling-edge");
    }

    #[test]
    fn dump_lists_every_element() {
        let g = replay(&chain()).unwrap().graph;
        assert_eq!(
            g.dump(),
            "node s start-event pos=(0,0) created=0 deleted=-\n\
             node a activity pos=(3,4) created=10 deleted=-\n\
             arc e s->a created=20 deleted=-\n"
        );
    }
}
