//! Multi-source shortest paths over non-negative weighted digraphs.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::Add;

/// Arc weight. Implemented for unsigned integers and `f64` (which must be
/// finite and non-negative).
pub trait Weight: Copy + PartialOrd + Add<Output = Self> {
    fn zero() -> Self;
}

impl Weight for u64 {
    fn zero() -> Self {
        0
    }
}

impl Weight for f64 {
    fn zero() -> Self {
        0.0
    }
}

struct Entry<W> {
    dist: W,
    node: usize,
}

impl<W: PartialOrd> PartialEq for Entry<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: PartialOrd> Eq for Entry<W> {}

impl<W: PartialOrd> PartialOrd for Entry<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: PartialOrd> Ord for Entry<W> {
    // Reversed so the max-heap pops the smallest distance first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Dijkstra from a set of sources. `arcs` are `(from, to, weight)` over
/// nodes `0..node_count`. Unreachable nodes get `None`.
pub fn shortest_distances<W: Weight>(
    node_count: usize,
    arcs: &[(usize, usize, W)],
    sources: &[usize],
) -> Vec<Option<W>> {
    let mut adjacency: Vec<Vec<(usize, W)>> = vec![Vec::new(); node_count];
    for &(from, to, w) in arcs {
        adjacency[from].push((to, w));
    }

    let mut dist: Vec<Option<W>> = vec![None; node_count];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        dist[s] = Some(W::zero());
        heap.push(Entry {
            dist: W::zero(),
            node: s,
        });
    }

    while let Some(Entry { dist: d, node }) = heap.pop() {
        match dist[node] {
            Some(best) if d > best => continue,
            _ => {}
        }
        for &(next, w) in &adjacency[node] {
            let candidate = d + w;
            let better = match dist[next] {
                None => true,
                Some(current) => candidate < current,
            };
            if better {
                dist[next] = Some(candidate);
                heap.push(Entry {
                    dist: candidate,
                    node: next,
                });
            }
        }
    }
    dist
}
