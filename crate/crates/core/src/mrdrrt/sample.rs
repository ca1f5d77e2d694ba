use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::GraphError;
use crate::graph::{dijkstra_distances, Assignment, Roadmap, VertexId};
use crate::scalar::Scalar;

/// Per-agent sets of vertices lying on near-shortest start-goal routes.
///
/// A vertex `q` is admissible for agent `i` when
/// `dist(s_i, q) + dist(q, t_i) <= dist(s_i, t_i) + delta`.
#[derive(Debug, Clone)]
pub struct SampleSpace<S> {
    delta: S,
    from_start: Vec<Vec<S>>,
    from_goal: Vec<Vec<S>>,
    admissible: Vec<Vec<VertexId>>,
    member: Vec<Vec<bool>>,
}

impl<S: Scalar> SampleSpace<S> {
    pub fn build(
        assignment: &Assignment,
        map: &Roadmap<S>,
        delta: S,
    ) -> Result<Self, GraphError> {
        assignment.check_against(map)?;
        let k = assignment.agent_count();
        let mut space = Self {
            delta,
            from_start: Vec::with_capacity(k),
            from_goal: Vec::with_capacity(k),
            admissible: Vec::with_capacity(k),
            member: Vec::with_capacity(k),
        };
        for agent in 0..k {
            let start = assignment.starts()[agent];
            let goal = assignment.goals()[agent];
            let ds = dijkstra_distances(start, map)?;
            let dt = dijkstra_distances(goal, map)?;
            let direct = ds[goal];
            if !direct.is_finite() {
                return Err(GraphError::Unreachable { agent, start, goal });
            }
            let bound = direct + delta;
            let tolerance = S::tolerance(direct);
            let mut member = vec![false; map.vertex_count()];
            let mut admissible = Vec::new();
            for q in 0..map.vertex_count() {
                let through = ds[q] + dt[q];
                if through.is_finite() && through <= bound + tolerance {
                    member[q] = true;
                    admissible.push(q);
                }
            }
            space.from_start.push(ds);
            space.from_goal.push(dt);
            space.admissible.push(admissible);
            space.member.push(member);
        }
        Ok(space)
    }

    pub fn agent_count(&self) -> usize {
        self.admissible.len()
    }

    pub fn delta(&self) -> S {
        self.delta
    }

    pub fn admissible(&self, agent: usize) -> &[VertexId] {
        &self.admissible[agent]
    }

    pub fn is_admissible(&self, agent: usize, v: VertexId) -> bool {
        self.member[agent].get(v).copied().unwrap_or(false)
    }

    pub fn distance_from_start(&self, agent: usize) -> &[S] {
        &self.from_start[agent]
    }

    pub fn distance_to_goal(&self, agent: usize) -> &[S] {
        &self.from_goal[agent]
    }

    /// Uniform independent draw per agent. Entries may repeat across agents.
    pub fn random_sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<VertexId> {
        self.admissible
            .iter()
            .map(|set| *set.choose(rng).expect("admissible sets are non-empty"))
            .collect()
    }
}
