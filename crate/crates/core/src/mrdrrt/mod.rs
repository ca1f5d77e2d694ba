//! Discrete multi-robot RRT over the composite configuration space.
//!
//! Each iteration samples a composite point from the per-agent admissible
//! sets, steers the best of the `nn_count` nearest tree nodes towards it,
//! optionally rewires the neighbourhood of the new node through the local
//! connector, and finally tries to connect the new node to the goal
//! configuration with the same connector.

mod oracle;
mod sample;
mod tree;

pub use oracle::{oracle_extend, steering_angle};
pub use sample::SampleSpace;
pub use tree::{NodeId, SearchTree, TreeNode};

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carp::CarpPlanner;
use crate::error::GraphError;
use crate::graph::{composite_length, Assignment, Configuration, Plan, Roadmap};
use crate::scalar::Scalar;

pub const DEFAULT_MAX_ITERATIONS: usize = 500_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PlannerParams<S> {
    /// Nearest neighbours considered by expansion and rewiring.
    pub nn_count: usize,
    /// Slack over the shortest start-goal distance for admissible samples.
    pub delta: S,
    pub max_iterations: usize,
    /// Priority orderings the local connector tries per call.
    pub connector_orderings: usize,
    /// Best-of-`nn_count` expansion; off means single nearest neighbour.
    pub improved_expansion: bool,
    pub rewiring: bool,
    pub seed: u64,
}

impl<S: Scalar> Default for PlannerParams<S> {
    fn default() -> Self {
        Self {
            nn_count: 5,
            delta: S::of(4.0),
            max_iterations: DEFAULT_MAX_ITERATIONS,
            connector_orderings: 1,
            improved_expansion: true,
            rewiring: true,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlannerStats {
    pub iterations: usize,
    pub runtime_ms: f64,
    pub tree_size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanOutcome {
    pub plan: Plan,
    pub stats: PlannerStats,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("iteration budget exhausted after {} iterations", stats.iterations)]
    Exhausted { stats: PlannerStats },
}

/// Result of one rewiring pass.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RewireReport {
    pub attempted: usize,
    pub connected: usize,
    pub reparented: Vec<NodeId>,
}

/// Joins two configurations with a prioritized plan on an empty window
/// graph, trying `orderings` random priority orderings. Returns the configurations from `from` to `to`, inclusive; a
/// single entry when they are equal.
pub fn local_connector<S: Scalar, R: Rng + ?Sized>(
    from: &Configuration,
    to: &Configuration,
    carp: &mut CarpPlanner<'_, S>,
    orderings: usize,
    rng: &mut R,
) -> Option<Vec<Configuration>> {
    if from == to {
        return Some(vec![from.clone()]);
    }
    let assignment = Assignment::from_configurations(from.clone(), to.clone()).ok()?;
    carp.plan_random_orderings(&assignment, orderings, 0, rng)
        .ok()
        .map(|solution| solution.plan.into_steps())
}

/// Single planning session: tree, sample space and random state.
#[derive(Debug, Clone)]
pub struct Mrdrrt<'a, S> {
    map: &'a Roadmap<S>,
    goal: Configuration,
    space: SampleSpace<S>,
    tree: SearchTree<S>,
    carp: CarpPlanner<'a, S>,
    params: PlannerParams<S>,
    rng: ChaCha8Rng,
    iterations: usize,
}

impl<'a, S: Scalar> Mrdrrt<'a, S> {
    pub fn new(
        assignment: &Assignment,
        map: &'a Roadmap<S>,
        params: PlannerParams<S>,
    ) -> Result<Self, GraphError> {
        let space = SampleSpace::build(assignment, map, params.delta)?;
        Ok(Self {
            map,
            goal: assignment.goals().clone(),
            space,
            tree: SearchTree::new(assignment.starts().clone()),
            carp: CarpPlanner::new(map),
            params,
            rng: ChaCha8Rng::seed_from_u64(params.seed),
            iterations: 0,
        })
    }

    pub fn tree(&self) -> &SearchTree<S> {
        &self.tree
    }

    pub fn sample_space(&self) -> &SampleSpace<S> {
        &self.space
    }

    pub fn params(&self) -> &PlannerParams<S> {
        &self.params
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Candidate children of `nearest` for sample `u`, as `(parent, child, cost)`.
    fn candidates(
        &mut self,
        sample: &[usize],
        nearest: &[NodeId],
    ) -> Vec<(NodeId, Configuration, S)> {
        let mut out = Vec::with_capacity(nearest.len());
        for &c in nearest {
            let from = &self.tree.node(c).config;
            let Some(next) =
                oracle_extend(from, sample, self.map, Some(&self.space), &mut self.rng)
            else {
                continue;
            };
            if self.tree.find(&next).is_some() {
                continue;
            }
            let cost = self.tree.cost(c) + composite_length(from, &next, self.map);
            out.push((c, next, cost));
        }
        out
    }

    /// Grows the tree by at most one node.
    pub fn expand(&mut self) -> Option<NodeId> {
        let sample = self.space.random_sample(&mut self.rng);
        self.expand_towards(&sample)
    }

    /// Expansion step for a given sample.
    pub fn expand_towards(&mut self, sample: &[usize]) -> Option<NodeId> {
        let count = if self.params.improved_expansion {
            self.params.nn_count.max(1)
        } else {
            1
        };
        let nearest = self.tree.nearest(sample, count, self.map, |_| false);
        let candidates = self.candidates(sample, &nearest);
        let (parent, child, _) = candidates.into_iter().reduce(|best, cand| {
            if cand.2 < best.2 {
                cand
            } else {
                best
            }
        })?;
        self.tree.add(parent, vec![child], self.map)
    }

    /// Tries to shorten the tree paths of `node`'s nearest neighbours by
    /// routing them through `node`.
    pub fn rewire(&mut self, node: NodeId) -> RewireReport {
        let mut report = RewireReport::default();
        let ancestors = self.tree.ancestor_mask(node);
        let origin = self.tree.node(node).config.clone();
        let neighbours = self.tree.nearest(&origin, self.params.nn_count, self.map, |id| {
            ancestors[id]
        });
        for c in neighbours {
            report.attempted += 1;
            let target = self.tree.node(c).config.clone();
            let Some(path) = local_connector(
                &origin,
                &target,
                &mut self.carp,
                self.params.connector_orderings,
                &mut self.rng,
            ) else {
                continue;
            };
            report.connected += 1;
            let through = self.tree.cost(node)
                + path
                    .windows(2)
                    .fold(S::zero(), |acc, w| acc + composite_length(&w[0], &w[1], self.map));
            let current = self.tree.cost(c);
            if through + S::tolerance(current) < current {
                let segment = path[1..].to_vec();
                self.tree.reparent(c, node, segment, self.map);
                report.reparented.push(c);
            }
        }
        report
    }

    /// Connector path from `node` to the goal, excluding `node` itself.
    pub fn connect_to_target(&mut self, node: NodeId) -> Option<Vec<Configuration>> {
        let from = self.tree.node(node).config.clone();
        let path = local_connector(
            &from,
            &self.goal,
            &mut self.carp,
            self.params.connector_orderings,
            &mut self.rng,
        )?;
        Some(path[1..].to_vec())
    }

    /// Expansion plus rewiring, without the goal connection.
    pub fn grow(&mut self) -> Option<(NodeId, RewireReport)> {
        let sample = self.space.random_sample(&mut self.rng);
        self.grow_towards(&sample)
    }

    fn grow_towards(&mut self, sample: &[usize]) -> Option<(NodeId, RewireReport)> {
        let node = self.expand_towards(sample)?;
        let report = if self.params.rewiring {
            self.rewire(node)
        } else {
            RewireReport::default()
        };
        Some((node, report))
    }

    /// One full iteration; returns the plan once the goal is connected.
    ///
    /// When expansion adds nothing (typically once the admissible space
    /// around the sample is exhausted), the connection is attempted from the
    /// tree node nearest the sample instead, so a saturated tree keeps
    /// drawing fresh connector orderings.
    pub fn step(&mut self) -> Option<Plan> {
        self.iterations += 1;
        let sample = self.space.random_sample(&mut self.rng);
        let node = match self.grow_towards(&sample) {
            Some((node, _)) => node,
            None => *self.tree.nearest(&sample, 1, self.map, |_| false).first()?,
        };
        let suffix = self.connect_to_target(node)?;
        let mut steps = self.tree.path_from_root(node);
        steps.extend(suffix);
        Some(Plan::new(steps))
    }

    pub fn run(&mut self) -> Result<PlanOutcome, PlanError> {
        self.run_since(Instant::now())
    }

    fn run_since(&mut self, started: Instant) -> Result<PlanOutcome, PlanError> {
        let stats = |this: &Self| PlannerStats {
            iterations: this.iterations,
            runtime_ms: started.elapsed().as_secs_f64() * 1e3,
            tree_size: this.tree.len(),
        };
        if self.tree.root().config == self.goal {
            return Ok(PlanOutcome {
                plan: Plan::new(vec![self.goal.clone()]),
                stats: stats(self),
            });
        }
        while self.iterations < self.params.max_iterations {
            if let Some(plan) = self.step() {
                return Ok(PlanOutcome {
                    plan,
                    stats: stats(self),
                });
            }
        }
        Err(PlanError::Exhausted { stats: stats(self) })
    }
}

/// Plans `assignment` on `map` with a fresh session.
pub fn plan<S: Scalar>(
    assignment: &Assignment,
    map: &Roadmap<S>,
    params: &PlannerParams<S>,
) -> Result<PlanOutcome, PlanError> {
    let started = Instant::now();
    Mrdrrt::new(assignment, map, *params)?.run_since(started)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate_plan, Point};

    fn corridor(n: usize) -> Roadmap<f64> {
        Roadmap::new(
            (0..n).map(|i| Point::new(i as f64, 0.0)).collect(),
            (1..n).map(|i| (i - 1, i)),
        )
        .unwrap()
    }

    #[test]
    fn start_equals_goal() {
        let map = corridor(3);
        let a = Assignment::new(vec![0, 2], vec![0, 2]).unwrap();
        let out = plan(&a, &map, &PlannerParams::default()).unwrap();
        assert_eq!(out.plan.makespan(), 0);
        assert_eq!(out.stats.iterations, 0);
    }

    #[test]
    fn single_agent_corridor() {
        let map = corridor(5);
        let a = Assignment::new(vec![0], vec![4]).unwrap();
        let out = plan(&a, &map, &PlannerParams::default()).unwrap();
        assert_eq!(validate_plan(&out.plan, &a, &map), Ok(()));
        assert_eq!(out.plan.makespan(), 4);
    }

    #[test]
    fn connector_identity_and_failure() {
        let map = corridor(3);
        let mut carp = CarpPlanner::new(&map);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let c = Configuration::new(vec![0, 2]).unwrap();
        assert_eq!(
            local_connector(&c, &c, &mut carp, 1, &mut rng),
            Some(vec![c.clone()])
        );
        let swapped = Configuration::new(vec![2, 0]).unwrap();
        assert_eq!(local_connector(&c, &swapped, &mut carp, 5, &mut rng), None);
    }

    #[test]
    fn one_move_suffix() {
        let map = corridor(3);
        let a = Assignment::new(vec![1], vec![2]).unwrap();
        let mut session = Mrdrrt::new(&a, &map, PlannerParams::default()).unwrap();
        let suffix = session.connect_to_target(0).unwrap();
        assert_eq!(suffix, vec![Configuration::new(vec![2]).unwrap()]);
    }

    #[test]
    fn exhaustion_reports_budget() {
        let map = corridor(3);
        let a = Assignment::new(vec![0, 2], vec![2, 0]).unwrap();
        let params = PlannerParams {
            max_iterations: 50,
            ..PlannerParams::default()
        };
        match plan(&a, &map, &params) {
            Err(PlanError::Exhausted { stats }) => assert_eq!(stats.iterations, 50),
            other => panic!("unexpected {other:?}"),
        }
    }
}
