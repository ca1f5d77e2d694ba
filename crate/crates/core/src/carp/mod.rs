//! Prioritized planning through free time windows.
//!
//! Agents are planned one at a time. Each agent runs an earliest-arrival A*
//! through the free windows left by the agents planned before it, then its
//! path is reserved. The driver retries with random priority orderings.

mod search;
mod windows;

pub use search::plan_single_with;
pub use windows::{
    FreeTimeWindowGraph, Interval, PathEntry, ReservationConflict, Time, TimeWindowPath, FOREVER,
};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{hop_distances, Assignment, Configuration, Plan, Roadmap, VertexId};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CarpError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("start vertex {vertex} is not free at time {time}")]
    StartNotFree { vertex: VertexId, time: Time },
    #[error("no window sequence reaches the goal")]
    NoPath,
    #[error(transparent)]
    Conflict(#[from] ReservationConflict),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CarpParams {
    /// Number of priority orderings to try; the first is the input order.
    pub max_shuffles: usize,
    pub start_time: Time,
    pub seed: u64,
}

impl Default for CarpParams {
    fn default() -> Self {
        Self {
            max_shuffles: 1,
            start_time: 0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarpSolution {
    pub plan: Plan,
    pub paths: Vec<TimeWindowPath>,
    /// Priority order that succeeded, highest priority first.
    pub ordering: Vec<usize>,
    pub shuffles_used: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no ordering succeeded after {shuffles_used} shuffles")]
pub struct CarpFailure {
    pub shuffles_used: usize,
}

/// Hop-distance tables keyed by goal vertex, computed on demand.
#[derive(Debug, Clone, Default)]
pub struct HeuristicCache {
    tables: Vec<Option<Vec<u32>>>,
}

impl HeuristicCache {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            tables: vec![None; vertex_count],
        }
    }

    pub fn get<S: Scalar>(&mut self, goal: VertexId, map: &Roadmap<S>) -> &[u32] {
        if self.tables.len() < map.vertex_count() {
            self.tables.resize(map.vertex_count(), None);
        }
        self.tables[goal]
            .get_or_insert_with(|| hop_distances(goal, map).expect("goal exists"))
            .as_slice()
    }
}

/// Single-agent earliest-arrival path through `windows`.
pub fn plan_single<S: Scalar>(
    start: VertexId,
    goal: VertexId,
    windows: &FreeTimeWindowGraph,
    map: &Roadmap<S>,
    start_time: Time,
) -> Result<TimeWindowPath, CarpError> {
    if !map.contains(goal) {
        return Err(CarpError::UnknownVertex(goal));
    }
    let heuristic = hop_distances(goal, map).expect("goal exists");
    plan_single_with(start, goal, windows, map, start_time, &heuristic)
}

/// Prioritized planner bound to one roadmap. Reuses heuristic tables across calls.
#[derive(Debug, Clone)]
pub struct CarpPlanner<'a, S> {
    map: &'a Roadmap<S>,
    heuristics: HeuristicCache,
}

impl<'a, S: Scalar> CarpPlanner<'a, S> {
    pub fn new(map: &'a Roadmap<S>) -> Self {
        Self {
            map,
            heuristics: HeuristicCache::new(map.vertex_count()),
        }
    }

    pub fn map(&self) -> &'a Roadmap<S> {
        self.map
    }

    /// Plans every agent in `order` on a fresh window graph. On failure
    /// returns the agent that could not be planned.
    pub fn plan_ordered(
        &mut self,
        assignment: &Assignment,
        order: &[usize],
        start_time: Time,
    ) -> Result<Vec<TimeWindowPath>, (usize, CarpError)> {
        let mut windows = FreeTimeWindowGraph::new(self.map.vertex_count());
        let mut paths: Vec<Option<TimeWindowPath>> = vec![None; assignment.agent_count()];
        for &agent in order {
            let start = assignment.starts()[agent];
            let goal = assignment.goals()[agent];
            let heuristic = self.heuristics.get(goal, self.map);
            let path = plan_single_with(start, goal, &windows, self.map, start_time, heuristic)
                .map_err(|e| (agent, e))?;
            windows.reserve(&path).map_err(|e| (agent, e.into()))?;
            paths[agent] = Some(path);
        }
        Ok(paths
            .into_iter()
            .map(|p| p.expect("order covers every agent"))
            .collect())
    }

    pub fn plan_all(
        &mut self,
        assignment: &Assignment,
        params: &CarpParams,
    ) -> Result<CarpSolution, CarpFailure> {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        self.plan_all_with_rng(assignment, params.max_shuffles, params.start_time, &mut rng)
    }

    /// Tries the input order first, then up to `max_shuffles - 1` random
    /// orderings drawn from `rng`.
    pub fn plan_all_with_rng<R: Rng + ?Sized>(
        &mut self,
        assignment: &Assignment,
        max_shuffles: usize,
        start_time: Time,
        rng: &mut R,
    ) -> Result<CarpSolution, CarpFailure> {
        self.attempt_orderings(assignment, max_shuffles, start_time, rng, false)
    }

    /// Like [`Self::plan_all_with_rng`], but every attempt, including the
    /// first, uses a fresh random ordering.
    pub fn plan_random_orderings<R: Rng + ?Sized>(
        &mut self,
        assignment: &Assignment,
        attempts: usize,
        start_time: Time,
        rng: &mut R,
    ) -> Result<CarpSolution, CarpFailure> {
        self.attempt_orderings(assignment, attempts, start_time, rng, true)
    }

    fn attempt_orderings<R: Rng + ?Sized>(
        &mut self,
        assignment: &Assignment,
        max_shuffles: usize,
        start_time: Time,
        rng: &mut R,
        shuffle_first: bool,
    ) -> Result<CarpSolution, CarpFailure> {
        let mut ordering: Vec<usize> = (0..assignment.agent_count()).collect();
        for attempt in 1..=max_shuffles.max(1) {
            if attempt > 1 || shuffle_first {
                ordering.shuffle(rng);
            }
            if let Ok(paths) = self.plan_ordered(assignment, &ordering, start_time) {
                return Ok(CarpSolution {
                    plan: paths_to_plan(&paths, start_time),
                    paths,
                    ordering,
                    shuffles_used: attempt,
                });
            }
        }
        Err(CarpFailure {
            shuffles_used: max_shuffles.max(1),
        })
    }
}

/// Convenience wrapper that builds a throwaway [`CarpPlanner`].
pub fn plan_all<S: Scalar>(
    assignment: &Assignment,
    map: &Roadmap<S>,
    params: &CarpParams,
) -> Result<CarpSolution, CarpFailure> {
    CarpPlanner::new(map).plan_all(assignment, params)
}

/// Samples the reserved paths at every integer time from `start_time` until
/// the last agent parks.
pub fn paths_to_plan(paths: &[TimeWindowPath], start_time: Time) -> Plan {
    let horizon = paths
        .iter()
        .map(TimeWindowPath::arrival)
        .max()
        .unwrap_or(start_time)
        .max(start_time);
    let mut cursor = vec![0usize; paths.len()];
    let steps = (start_time..=horizon)
        .map(|t| {
            let positions = paths
                .iter()
                .zip(cursor.iter_mut())
                .map(|(path, idx)| {
                    let entries = path.entries();
                    while entries[*idx].exit <= t {
                        *idx += 1;
                    }
                    entries[*idx].vertex
                })
                .collect();
            Configuration::from_vec_unchecked(positions)
        })
        .collect();
    Plan::new(steps)
}
