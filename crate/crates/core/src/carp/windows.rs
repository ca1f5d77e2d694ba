use std::collections::HashMap;

use thiserror::Error;

use crate::graph::VertexId;

/// Discrete time step.
pub type Time = u64;

/// Open end of a window that never closes.
pub const FOREVER: Time = Time::MAX;

/// Half-open interval `[start, end)` of integer time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub start: Time,
    pub end: Time,
}

impl Interval {
    pub const fn new(start: Time, end: Time) -> Self {
        Self { start, end }
    }

    pub fn contains(&self, t: Time) -> bool {
        self.start <= t && t < self.end
    }

    pub fn covers(&self, other: &Interval) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.start < other.end && other.start < self.end
    }
}

/// One stay of an agent: it occupies `vertex` during `[entry, exit)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathEntry {
    pub vertex: VertexId,
    pub entry: Time,
    pub exit: Time,
}

impl PathEntry {
    pub fn interval(&self) -> Interval {
        Interval::new(self.entry, self.exit)
    }
}

/// Sequence of vertex stays; the final stay lasts forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeWindowPath {
    entries: Vec<PathEntry>,
}

impl TimeWindowPath {
    pub fn new(entries: Vec<PathEntry>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].exit == w[1].entry));
        debug_assert!(entries.last().is_none_or(|e| e.exit == FOREVER));
        Self { entries }
    }

    pub fn entries(&self) -> &[PathEntry] {
        &self.entries
    }

    /// Time at which the agent reaches its final vertex.
    pub fn arrival(&self) -> Time {
        self.entries.last().map_or(0, |e| e.entry)
    }

    pub fn start_time(&self) -> Time {
        self.entries.first().map_or(0, |e| e.entry)
    }

    pub fn goal(&self) -> Option<VertexId> {
        self.entries.last().map(|e| e.vertex)
    }

    /// Number of steps the agent spends waiting in place.
    pub fn wait_steps(&self) -> Time {
        self.entries.split_last().map_or(0, |(_, rest)| {
            rest.iter().map(|e| e.exit - e.entry - 1).sum()
        })
    }

    /// Vertex occupied at time `t`, or `None` before the path starts.
    pub fn position_at(&self, t: Time) -> Option<VertexId> {
        self.entries
            .iter()
            .find(|e| e.interval().contains(t))
            .map(|e| e.vertex)
    }

    /// Directed unit-time traversals `(from, to, departure)`.
    pub fn traversals(&self) -> impl Iterator<Item = (VertexId, VertexId, Time)> + '_ {
        self.entries
            .windows(2)
            .map(|w| (w[0].vertex, w[1].vertex, w[0].exit - 1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReservationConflict {
    #[error("vertex {vertex} is not free during [{}, {})", interval.start, interval.end)]
    Vertex { vertex: VertexId, interval: Interval },
    #[error("edge {from} -> {to} at time {departure} crosses an opposite traversal")]
    HeadOn {
        from: VertexId,
        to: VertexId,
        departure: Time,
    },
}

/// Free time windows per vertex plus directed edge traversals.
///
/// Every vertex starts with the single window `[0, FOREVER)`. Traversals take
/// one time unit; a traversal `u -> v` departing at `d` occupies `[d, d + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeTimeWindowGraph {
    free: Vec<Vec<Interval>>,
    traversals: HashMap<(VertexId, VertexId), Vec<Time>>,
}

impl FreeTimeWindowGraph {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            free: vec![vec![Interval::new(0, FOREVER)]; vertex_count],
            traversals: HashMap::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.free.len()
    }

    pub fn windows(&self, v: VertexId) -> &[Interval] {
        &self.free[v]
    }

    pub fn window_containing(&self, v: VertexId, t: Time) -> Option<usize> {
        let list = &self.free[v];
        let idx = list.partition_point(|w| w.end <= t);
        (idx < list.len() && list[idx].contains(t)).then_some(idx)
    }

    pub fn is_free(&self, v: VertexId, t: Time) -> bool {
        self.window_containing(v, t).is_some()
    }

    /// True when some reserved agent traverses `to -> from` departing at `departure`.
    pub fn head_on_blocked(&self, from: VertexId, to: VertexId, departure: Time) -> bool {
        self.traversals
            .get(&(to, from))
            .is_some_and(|times| times.binary_search(&departure).is_ok())
    }

    fn covering_window(&self, v: VertexId, interval: &Interval) -> Option<usize> {
        self.window_containing(v, interval.start)
            .filter(|&i| self.free[v][i].covers(interval))
    }

    /// Removes `interval` from the free windows of `v` without a traversal record.
    pub fn block_vertex(&mut self, v: VertexId, interval: Interval) -> Result<(), ReservationConflict> {
        let idx = self
            .covering_window(v, &interval)
            .ok_or(ReservationConflict::Vertex { vertex: v, interval })?;
        self.carve(v, idx, interval);
        Ok(())
    }

    fn carve(&mut self, v: VertexId, idx: usize, interval: Interval) {
        let window = self.free[v][idx];
        let mut pieces = Vec::with_capacity(2);
        if window.start < interval.start {
            pieces.push(Interval::new(window.start, interval.start));
        }
        if interval.end < window.end {
            pieces.push(Interval::new(interval.end, window.end));
        }
        self.free[v].splice(idx..=idx, pieces);
    }

    /// Removes the path's occupancy from the free windows and records its
    /// traversals. Leaves `self` untouched on conflict.
    pub fn reserve(&mut self, path: &TimeWindowPath) -> Result<(), ReservationConflict> {
        for e in path.entries() {
            if e.vertex >= self.free.len() || self.covering_window(e.vertex, &e.interval()).is_none()
            {
                return Err(ReservationConflict::Vertex {
                    vertex: e.vertex,
                    interval: e.interval(),
                });
            }
        }
        // revisits of one vertex must not overlap each other either
        let mut by_vertex: HashMap<VertexId, Vec<Interval>> = HashMap::new();
        for e in path.entries() {
            let list = by_vertex.entry(e.vertex).or_default();
            if list.iter().any(|i| i.overlaps(&e.interval())) {
                return Err(ReservationConflict::Vertex {
                    vertex: e.vertex,
                    interval: e.interval(),
                });
            }
            list.push(e.interval());
        }
        for (from, to, departure) in path.traversals() {
            if self.head_on_blocked(from, to, departure) {
                return Err(ReservationConflict::HeadOn {
                    from,
                    to,
                    departure,
                });
            }
        }

        for e in path.entries() {
            let interval = e.interval();
            let idx = self
                .covering_window(e.vertex, &interval)
                .expect("checked above");
            self.carve(e.vertex, idx, interval);
        }
        for (from, to, departure) in path.traversals() {
            let times = self.traversals.entry((from, to)).or_default();
            let pos = times.partition_point(|&t| t < departure);
            times.insert(pos, departure);
        }
        Ok(())
    }
}
