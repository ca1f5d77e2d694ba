use std::collections::HashSet;

use crate::error::GraphError;
use crate::scalar::Scalar;

pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Self) -> S {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Undirected roadmap embedded in the plane.
///
/// Vertex ids are dense indices into `points`. Edges are stored once as
/// `(min, max)` pairs in sorted order, adjacency lists are sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct Roadmap<S> {
    points: Vec<Point<S>>,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<VertexId>>,
}

impl<S: Scalar> Roadmap<S> {
    pub fn new(
        points: Vec<Point<S>>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        for (id, p) in points.iter().enumerate() {
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(GraphError::NonFiniteCoordinate(id));
            }
        }
        let n = points.len();
        let mut seen = HashSet::new();
        let mut adjacency = vec![Vec::new(); n];
        let mut normalized = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::UnknownVertex(v));
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            normalized.push(key);
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        normalized.sort_unstable();
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            points,
            edges: normalized,
            adjacency,
        })
    }

    /// Builds a roadmap from `(id, x, y)` triples, checking that ids are dense.
    pub fn from_vertex_records(
        vertices: impl IntoIterator<Item = (VertexId, S, S)>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut records: Vec<_> = vertices.into_iter().collect();
        records.sort_by_key(|r| r.0);
        let mut points = Vec::with_capacity(records.len());
        for (position, (id, x, y)) in records.into_iter().enumerate() {
            if id != position {
                return Err(GraphError::NonDenseIds {
                    position,
                    found: id,
                });
            }
            points.push(Point::new(x, y));
        }
        Self::new(points, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn points(&self) -> &[Point<S>] {
        &self.points
    }

    pub fn point(&self, v: VertexId) -> Result<Point<S>, GraphError> {
        self.points
            .get(v)
            .copied()
            .ok_or(GraphError::UnknownVertex(v))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.points.len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a < self.adjacency.len() && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Euclidean distance between the coordinates of two vertices.
    pub fn euclidean_distance(&self, a: VertexId, b: VertexId) -> Result<S, GraphError> {
        Ok(self.point(a)?.distance(&self.point(b)?))
    }

    /// Unchecked variant for hot loops; panics on unknown ids.
    #[inline]
    pub(crate) fn length(&self, a: VertexId, b: VertexId) -> S {
        if a == b {
            return S::zero();
        }
        self.points[a].distance(&self.points[b])
    }

    pub fn is_connected(&self) -> bool {
        if self.points.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.points.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.points.len()
    }

    /// Converts coordinates into another scalar type.
    pub fn cast<T: Scalar>(&self) -> Roadmap<T> {
        Roadmap {
            points: self
                .points
                .iter()
                .map(|p| Point::new(T::of(p.x.to_f64_lossy()), T::of(p.y.to_f64_lossy())))
                .collect(),
            edges: self.edges.clone(),
            adjacency: self.adjacency.clone(),
        }
    }
}
