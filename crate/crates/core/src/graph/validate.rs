use std::collections::HashMap;
use std::fmt;

use crate::graph::{Assignment, Plan, Roadmap, VertexId};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveViolation {
    AgentCountMismatch {
        before: usize,
        after: usize,
    },
    UnknownVertex {
        agent: usize,
        vertex: VertexId,
    },
    /// Agent jumped between two vertices that are not adjacent.
    NotAdjacent {
        agent: usize,
        from: VertexId,
        to: VertexId,
    },
    VertexCollision {
        agents: (usize, usize),
        vertex: VertexId,
    },
    /// Two agents exchanged the endpoints of one edge.
    Swap {
        agents: (usize, usize),
        edge: (VertexId, VertexId),
    },
}

impl fmt::Display for MoveViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AgentCountMismatch { before, after } => {
                write!(f, "agent count changed from {before} to {after}")
            }
            Self::UnknownVertex { agent, vertex } => {
                write!(f, "agent {agent} on unknown vertex {vertex}")
            }
            Self::NotAdjacent { agent, from, to } => {
                write!(f, "agent {agent} jumps {from} -> {to} without an edge")
            }
            Self::VertexCollision { agents, vertex } => write!(
                f,
                "agents {} and {} both on vertex {vertex}",
                agents.0, agents.1
            ),
            Self::Swap { agents, edge } => write!(
                f,
                "agents {} and {} swap along edge ({}, {})",
                agents.0, agents.1, edge.0, edge.1
            ),
        }
    }
}

/// Checks one synchronous composite move. Returns the first violation found.
pub fn validate_move<S: Scalar>(
    before: &[VertexId],
    after: &[VertexId],
    map: &Roadmap<S>,
) -> Result<(), MoveViolation> {
    if before.len() != after.len() {
        return Err(MoveViolation::AgentCountMismatch {
            before: before.len(),
            after: after.len(),
        });
    }
    for (agent, (&from, &to)) in before.iter().zip(after).enumerate() {
        for vertex in [from, to] {
            if !map.contains(vertex) {
                return Err(MoveViolation::UnknownVertex { agent, vertex });
            }
        }
        if from != to && !map.has_edge(from, to) {
            return Err(MoveViolation::NotAdjacent { agent, from, to });
        }
    }
    let mut occupied: HashMap<VertexId, usize> = HashMap::with_capacity(after.len());
    for (agent, &v) in after.iter().enumerate() {
        if let Some(other) = occupied.insert(v, agent) {
            return Err(MoveViolation::VertexCollision {
                agents: (other, agent),
                vertex: v,
            });
        }
    }
    let origin: HashMap<VertexId, usize> =
        before.iter().enumerate().map(|(agent, &v)| (v, agent)).collect();
    for (agent, (&from, &to)) in before.iter().zip(after).enumerate() {
        if from == to {
            continue;
        }
        if let Some(&other) = origin.get(&to) {
            if other != agent && after[other] == from {
                let agents = (agent.min(other), agent.max(other));
                return Err(MoveViolation::Swap {
                    agents,
                    edge: (from.min(to), from.max(to)),
                });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanViolation {
    Empty,
    WrongStart { agent: usize },
    WrongGoal { agent: usize },
    /// Invalid move between step `step` and `step + 1`.
    Move { step: usize, violation: MoveViolation },
}

impl fmt::Display for PlanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => write!(f, "plan has no steps"),
            Self::WrongStart { agent } => write!(f, "agent {agent} does not begin at its start"),
            Self::WrongGoal { agent } => write!(f, "agent {agent} does not end at its goal"),
            Self::Move { step, violation } => write!(f, "step {step}: {violation}"),
        }
    }
}

impl std::error::Error for PlanViolation {}

pub fn validate_plan<S: Scalar>(
    plan: &Plan,
    assignment: &Assignment,
    map: &Roadmap<S>,
) -> Result<(), PlanViolation> {
    let steps = plan.steps();
    let (first, last) = match (steps.first(), steps.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(PlanViolation::Empty),
    };
    let starts = assignment.starts();
    let goals = assignment.goals();
    for agent in 0..assignment.agent_count().max(first.agent_count()) {
        if first.get(agent) != starts.get(agent) {
            return Err(PlanViolation::WrongStart { agent });
        }
    }
    for agent in 0..assignment.agent_count().max(last.agent_count()) {
        if last.get(agent) != goals.get(agent) {
            return Err(PlanViolation::WrongGoal { agent });
        }
    }
    for (step, pair) in steps.windows(2).enumerate() {
        validate_move(&pair[0], &pair[1], map)
            .map_err(|violation| PlanViolation::Move { step, violation })?;
    }
    Ok(())
}
