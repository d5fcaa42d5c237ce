//! Graph-based timeline orderings.
//!
//! Both orderings rank nodes by their shortest path distance from the start
//! of the model, where a path's distance is the sum of its arc lengths and
//! an arc's length is the straight-line distance between its endpoints.
//!
//! - *Distance from start*: an arc ranks at the mean of its endpoint ranks.
//!   Along a shortest path this equals counting half the arc's own length.
//! - *Create order from start*: an arc ranks at the larger endpoint rank
//!   plus one, so it always follows both nodes it connects.
//!
//! Elements the start cannot reach (and dangling arcs) rank at +inf and go
//! last. Equal ranks keep the order of the traces in the log.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::shortest::shortest_distances;
use super::{GraphElement, ModelArc, ModelGraph};
use crate::taxonomy::ElementKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("ordering unavailable: {0}")]
    Unavailable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LengthMode {
    /// Straight-line distance between endpoint positions.
    Euclidean,
    /// Every arc has length 1 (hop count).
    Unit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderingOptions {
    /// Use unit lengths for the whole graph when any arc lacks endpoint
    /// positions, instead of failing.
    pub unit_length_fallback: bool,
}

impl Default for OrderingOptions {
    fn default() -> Self {
        OrderingOptions {
            unit_length_fallback: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedElement {
    pub element_id: String,
    /// `f64::INFINITY` for unranked elements.
    pub rank: f64,
    /// Secondary key among equal ranks, ahead of log order.
    #[serde(skip)]
    pub(crate) tier: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementOrder {
    pub entries: Vec<RankedElement>,
    pub length_mode: LengthMode,
}

impl ElementOrder {
    /// True when unit lengths replaced missing positions.
    pub fn used_unit_fallback(&self) -> bool {
        self.length_mode == LengthMode::Unit
    }

    pub fn ids(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.element_id.as_str()).collect()
    }

    pub fn rank_of(&self, element_id: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.element_id == element_id).map(|e| e.rank)
    }

    /// Sort key for an element: `(rank, tier)`.
    pub(crate) fn key_of(&self, element_id: &str) -> Option<(f64, u8)> {
        self.entries
            .iter()
            .find(|e| e.element_id == element_id)
            .map(|e| (e.rank, e.tier))
    }
}

/// Length of an arc in pixels.
pub fn arc_length(arc: &ModelArc, graph: &ModelGraph, mode: LengthMode) -> Result<f64, OrderingError> {
    if mode == LengthMode::Unit {
        return Ok(1.0);
    }
    let position = |end: &Option<String>| {
        end.as_deref()
            .and_then(|id| graph.node(id))
            .and_then(|n| n.last_position)
    };
    match (position(&arc.source), position(&arc.target)) {
        (Some(a), Some(b)) => Ok(a.distance(b)),
        _ => Err(OrderingError::Unavailable(format!(
            "arc `{}` has an endpoint without position",
            arc.element_id
        ))),
    }
}

fn pick_length_mode(graph: &ModelGraph, options: &OrderingOptions) -> Result<LengthMode, OrderingError> {
    for arc in routable_arcs(graph) {
        if let Err(e) = arc_length(arc, graph, LengthMode::Euclidean) {
            return if options.unit_length_fallback {
                Ok(LengthMode::Unit)
            } else {
                Err(e)
            };
        }
    }
    Ok(LengthMode::Euclidean)
}

fn routable_arcs(graph: &ModelGraph) -> impl Iterator<Item = &ModelArc> {
    graph.arcs.iter().filter(|a| !a.dangling)
}

pub fn distance_from_start(graph: &ModelGraph, options: &OrderingOptions) -> Result<ElementOrder, OrderingError> {
    let mode = pick_length_mode(graph, options)?;
    let mut order = distance_from_start_with(graph, |arc| arc_length(arc, graph, mode).ok())?;
    order.length_mode = mode;
    Ok(order)
}

pub fn create_order_from_start(graph: &ModelGraph, options: &OrderingOptions) -> Result<ElementOrder, OrderingError> {
    let mode = pick_length_mode(graph, options)?;
    let mut order = create_order_from_start_with(graph, |arc| arc_length(arc, graph, mode).ok())?;
    order.length_mode = mode;
    Ok(order)
}

/// Distance-from-start ordering with caller-supplied arc lengths.
pub fn distance_from_start_with(
    graph: &ModelGraph,
    lengths: impl Fn(&ModelArc) -> Option<f64>,
) -> Result<ElementOrder, OrderingError> {
    rank_elements(graph, lengths, |a, b| (a + b) / 2.0, false)
}

/// Create-order-from-start ordering with caller-supplied arc lengths.
pub fn create_order_from_start_with(
    graph: &ModelGraph,
    lengths: impl Fn(&ModelArc) -> Option<f64>,
) -> Result<ElementOrder, OrderingError> {
    rank_elements(graph, lengths, |a, b| a.max(b) + 1.0, true)
}

fn rank_elements(
    graph: &ModelGraph,
    lengths: impl Fn(&ModelArc) -> Option<f64>,
    arc_rank: fn(f64, f64) -> f64,
    arcs_after_nodes: bool,
) -> Result<ElementOrder, OrderingError> {
    let node_index = |id: &Option<String>| match id.as_deref().and_then(|id| graph.lookup(id)) {
        Some(GraphElement::Node(i)) => Some(i),
        _ => None,
    };

    let mut weighted = Vec::new();
    for arc in routable_arcs(graph) {
        let (Some(from), Some(to)) = (node_index(&arc.source), node_index(&arc.target)) else {
            continue;
        };
        let length = lengths(arc)
            .filter(|l| l.is_finite() && *l >= 0.0)
            .ok_or_else(|| OrderingError::Unavailable(format!("no length for arc `{}`", arc.element_id)))?;
        weighted.push((from, to, length));
    }

    let sources = start_set(graph);
    if sources.is_empty() && !graph.nodes.is_empty() {
        return Err(OrderingError::Unavailable("no start node in the model".into()));
    }
    let distances = shortest_distances(graph.nodes.len(), &weighted, &sources);
    let node_rank = |i: usize| distances[i].unwrap_or(f64::INFINITY);

    let mut entries: Vec<RankedElement> = graph
        .element_ids
        .iter()
        .map(|id| {
            let (rank, is_arc) = match graph.lookup(id) {
                Some(GraphElement::Node(i)) => (node_rank(i), false),
                Some(GraphElement::Arc(i)) => {
                    let arc = &graph.arcs[i];
                    let rank = match (node_index(&arc.source), node_index(&arc.target)) {
                        (Some(s), Some(t)) if !arc.dangling => arc_rank(node_rank(s), node_rank(t)),
                        _ => f64::INFINITY,
                    };
                    (rank, true)
                }
                None => (f64::INFINITY, false),
            };
            let tier = u8::from(arcs_after_nodes && is_arc && rank.is_infinite());
            RankedElement {
                element_id: id.clone(),
                rank,
                tier,
            }
        })
        .collect();
    entries.sort_by(|a, b| a.rank.total_cmp(&b.rank).then(a.tier.cmp(&b.tier)));

    Ok(ElementOrder {
        entries,
        length_mode: LengthMode::Euclidean,
    })
}

/// Surviving start events; failing that, surviving nodes without incoming
/// surviving arcs.
fn start_set(graph: &ModelGraph) -> Vec<usize> {
    let starts: Vec<usize> = graph
        .nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| n.kind == ElementKind::StartEvent && n.deleted_at.is_none())
        .map(|(i, _)| i)
        .collect();
    if !starts.is_empty() {
        return starts;
    }
    let targets: Vec<&str> = graph.surviving_arcs().filter_map(|a| a.target.as_deref()).collect();
    graph
        .nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| n.deleted_at.is_none() && !targets.contains(&n.element_id.as_str()))
        .map(|(i, _)| i)
        .collect()
}
