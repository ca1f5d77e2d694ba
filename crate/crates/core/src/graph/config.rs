use std::collections::HashMap;
use std::ops::Deref;

use crate::error::GraphError;
use crate::graph::{Roadmap, VertexId};
use crate::scalar::Scalar;

fn check_distinct(positions: &[VertexId]) -> Result<(), GraphError> {
    let mut seen = HashMap::with_capacity(positions.len());
    for (agent, &v) in positions.iter().enumerate() {
        if let Some(first) = seen.insert(v, agent) {
            return Err(GraphError::DuplicatePosition {
                vertex: v,
                first,
                second: agent,
            });
        }
    }
    Ok(())
}

/// Placement of every agent on a distinct vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration(Vec<VertexId>);

impl Configuration {
    pub fn new(positions: Vec<VertexId>) -> Result<Self, GraphError> {
        check_distinct(&positions)?;
        Ok(Self(positions))
    }

    /// Caller guarantees the positions are pairwise distinct.
    pub(crate) fn from_vec_unchecked(positions: Vec<VertexId>) -> Self {
        debug_assert!(check_distinct(&positions).is_ok());
        Self(positions)
    }

    pub fn agent_count(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<VertexId> {
        self.0
    }
}

impl Deref for Configuration {
    type Target = [VertexId];

    fn deref(&self) -> &[VertexId] {
        &self.0
    }
}

/// Start and goal vertex of every agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    starts: Configuration,
    goals: Configuration,
}

impl Assignment {
    pub fn new(starts: Vec<VertexId>, goals: Vec<VertexId>) -> Result<Self, GraphError> {
        if starts.len() != goals.len() {
            return Err(GraphError::AgentCountMismatch(starts.len(), goals.len()));
        }
        if starts.is_empty() {
            return Err(GraphError::NoAgents);
        }
        Ok(Self {
            starts: Configuration::new(starts)?,
            goals: Configuration::new(goals)?,
        })
    }

    pub fn from_configurations(
        starts: Configuration,
        goals: Configuration,
    ) -> Result<Self, GraphError> {
        if starts.agent_count() != goals.agent_count() {
            return Err(GraphError::AgentCountMismatch(
                starts.agent_count(),
                goals.agent_count(),
            ));
        }
        if starts.agent_count() == 0 {
            return Err(GraphError::NoAgents);
        }
        Ok(Self { starts, goals })
    }

    /// Checks that every id exists in `map`.
    pub fn check_against<S: Scalar>(&self, map: &Roadmap<S>) -> Result<(), GraphError> {
        for &v in self.starts.iter().chain(self.goals.iter()) {
            if !map.contains(v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        Ok(())
    }

    pub fn agent_count(&self) -> usize {
        self.starts.agent_count()
    }

    pub fn starts(&self) -> &Configuration {
        &self.starts
    }

    pub fn goals(&self) -> &Configuration {
        &self.goals
    }

    /// Swaps the roles of starts and goals.
    pub fn reversed(&self) -> Self {
        Self {
            starts: self.goals.clone(),
            goals: self.starts.clone(),
        }
    }
}

/// Sum over agents of the Euclidean distance between their positions.
///
/// Works on raw position slices so sampled composite points (which may repeat
/// vertices) can be measured against configurations.
pub fn composite_distance<S: Scalar>(
    a: &[VertexId],
    b: &[VertexId],
    map: &Roadmap<S>,
) -> Result<S, GraphError> {
    if a.len() != b.len() {
        return Err(GraphError::AgentCountMismatch(a.len(), b.len()));
    }
    let mut total = S::zero();
    for (&u, &v) in a.iter().zip(b) {
        total = total + map.euclidean_distance(u, v)?;
    }
    Ok(total)
}

/// Unchecked composite distance for hot loops.
#[inline]
pub(crate) fn composite_length<S: Scalar>(a: &[VertexId], b: &[VertexId], map: &Roadmap<S>) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (&u, &v)| acc + map.length(u, v))
}

/// Synchronous multi-agent plan: one configuration per time step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    steps: Vec<Configuration>,
}

impl Plan {
    pub fn new(steps: Vec<Configuration>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[Configuration] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Configuration> {
        self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn agent_count(&self) -> usize {
        self.steps.first().map_or(0, Configuration::agent_count)
    }

    /// Number of time steps, T.
    pub fn makespan(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    /// Per agent, the first time step after which the agent never moves again.
    pub fn arrival_times(&self) -> Vec<usize> {
        let k = self.agent_count();
        let mut arrival = vec![0; k];
        for (t, pair) in self.steps.windows(2).enumerate() {
            for (agent, slot) in arrival.iter_mut().enumerate() {
                if pair[0][agent] != pair[1][agent] {
                    *slot = t + 1;
                }
            }
        }
        arrival
    }

    /// Total travelled Euclidean length; waiting is free.
    pub fn sum_of_costs<S: Scalar>(&self, map: &Roadmap<S>) -> S {
        self.steps
            .windows(2)
            .map(|pair| composite_length(&pair[0], &pair[1], map))
            .fold(S::zero(), |a, b| a + b)
    }

    /// The same plan traversed backwards in time.
    pub fn reversed(&self) -> Self {
        let mut steps = self.steps.clone();
        steps.reverse();
        Self { steps }
    }

    /// Drops trailing steps in which nobody moves.
    pub fn trimmed(mut self) -> Self {
        while self.steps.len() >= 2 {
            let n = self.steps.len();
            if self.steps[n - 1] == self.steps[n - 2] {
                self.steps.pop();
            } else {
                break;
            }
        }
        self
    }
}
