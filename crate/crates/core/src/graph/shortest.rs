use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::GraphError;
use crate::graph::{Roadmap, VertexId};
use crate::scalar::Scalar;

/// Marker for vertices a breadth-first search did not reach.
pub const UNREACHABLE_HOPS: u32 = u32::MAX;

struct Entry<S> {
    dist: S,
    vertex: VertexId,
}

impl<S: Scalar> PartialEq for Entry<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<S: Scalar> Eq for Entry<S> {}

impl<S: Scalar> PartialOrd for Entry<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> Ord for Entry<S> {
    // min-heap on distance
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

/// Single-source shortest path lengths with Euclidean edge weights.
/// Unreachable vertices get `S::infinity()`.
pub fn dijkstra_distances<S: Scalar>(
    source: VertexId,
    map: &Roadmap<S>,
) -> Result<Vec<S>, GraphError> {
    if !map.contains(source) {
        return Err(GraphError::UnknownVertex(source));
    }
    let mut dist = vec![S::infinity(); map.vertex_count()];
    let mut heap = BinaryHeap::new();
    dist[source] = S::zero();
    heap.push(Entry {
        dist: S::zero(),
        vertex: source,
    });
    while let Some(Entry { dist: d, vertex }) = heap.pop() {
        if d > dist[vertex] {
            continue;
        }
        for &next in map.neighbors(vertex) {
            let candidate = d + map.length(vertex, next);
            if candidate < dist[next] {
                dist[next] = candidate;
                heap.push(Entry {
                    dist: candidate,
                    vertex: next,
                });
            }
        }
    }
    Ok(dist)
}

/// Edge-count distances from `source`.
pub fn hop_distances<S: Scalar>(
    source: VertexId,
    map: &Roadmap<S>,
) -> Result<Vec<u32>, GraphError> {
    if !map.contains(source) {
        return Err(GraphError::UnknownVertex(source));
    }
    let mut dist = vec![UNREACHABLE_HOPS; map.vertex_count()];
    let mut queue = VecDeque::from([source]);
    dist[source] = 0;
    while let Some(v) = queue.pop_front() {
        for &w in map.neighbors(v) {
            if dist[w] == UNREACHABLE_HOPS {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Point;

    #[test]
    fn corridor() {
        let map = Roadmap::new(
            (0..3).map(|i| Point::new(i as f64, 0.0)).collect(),
            [(0, 1), (1, 2)],
        )
        .unwrap();
        let d = dijkstra_distances(0, &map).unwrap();
        assert_eq!(d, vec![0.0, 1.0, 2.0]);
        assert_eq!(hop_distances(2, &map).unwrap(), vec![2, 1, 0]);
        assert!(dijkstra_distances(5, &map).is_err());
    }

    #[test]
    fn unreachable_is_infinite() {
        let map = Roadmap::new(
            vec![Point::new(0.0f32, 0.0), Point::new(1.0, 0.0)],
            [],
        )
        .unwrap();
        let d = dijkstra_distances(0, &map).unwrap();
        assert!(d[1].is_infinite());
        assert_eq!(hop_distances(0, &map).unwrap()[1], UNREACHABLE_HOPS);
    }
}
