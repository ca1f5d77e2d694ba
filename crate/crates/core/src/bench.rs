//! Experiment harness: planner variants, per-run records, failure
//! conventions, aggregation and CSV reporting.

use std::collections::HashMap;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carp::{CarpParams, CarpPlanner};
use crate::error::{FormatError, GraphError};
use crate::graph::{validate_plan, Assignment, Plan, Roadmap};
use crate::mapgen::{self, AdversarialSpec, Connectivity, GridSpec};
use crate::mrdrrt::{self, PlanError, PlannerParams, DEFAULT_MAX_ITERATIONS};

/// Value substituted for every failed run of a group in which nothing succeeded.
pub const ALL_FAILED_SENTINEL: f64 = 100_000.0;

/// Shuffle limits of the prioritized planner variants.
pub const CARP_SHUFFLE_LIMITS: [usize; 4] = [1, 10, 100, 1000];

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("empty aggregation group")]
    EmptyGroup,
    #[error("unknown variant `{0}`")]
    UnknownVariant(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("adversarial agent counts must be even and at least 2, got {0}")]
    OddAgentCount(usize),
    #[error(transparent)]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

/// Planner configuration under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Variant {
    Carp { shuffles: usize },
    Mrdrrt {
        improved_expansion: bool,
        rewiring: bool,
    },
}

impl Variant {
    pub fn carp(shuffles: usize) -> Result<Self, BenchError> {
        if CARP_SHUFFLE_LIMITS.contains(&shuffles) {
            Ok(Self::Carp { shuffles })
        } else {
            Err(BenchError::UnknownVariant(format!("carp-{shuffles}")))
        }
    }

    pub fn all_carp() -> Vec<Self> {
        CARP_SHUFFLE_LIMITS
            .iter()
            .map(|&shuffles| Self::Carp { shuffles })
            .collect()
    }

    /// The four expansion/rewiring ablations.
    pub fn all_mrdrrt() -> Vec<Self> {
        [(true, true), (true, false), (false, true), (false, false)]
            .into_iter()
            .map(|(improved_expansion, rewiring)| Self::Mrdrrt {
                improved_expansion,
                rewiring,
            })
            .collect()
    }

    pub fn full_mrdrrt() -> Self {
        Self::Mrdrrt {
            improved_expansion: true,
            rewiring: true,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Carp { shuffles } => write!(f, "carp-{shuffles}"),
            Self::Mrdrrt {
                improved_expansion,
                rewiring,
            } => {
                write!(f, "mrdrrt")?;
                if !improved_expansion {
                    write!(f, "-no-expansion")?;
                }
                if !rewiring {
                    write!(f, "-no-rewire")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Variant {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        let unknown = || BenchError::UnknownVariant(s.to_string());
        if let Some(n) = s.strip_prefix("carp-") {
            return Self::carp(n.parse().map_err(|_| unknown())?);
        }
        let rest = s.strip_prefix("mrdrrt").ok_or_else(unknown)?;
        let (improved_expansion, rest) = match rest.strip_prefix("-no-expansion") {
            Some(r) => (false, r),
            None => (true, rest),
        };
        let rewiring = match rest {
            "" => true,
            "-no-rewire" => false,
            _ => return Err(unknown()),
        };
        Ok(Self::Mrdrrt {
            improved_expansion,
            rewiring,
        })
    }
}

impl TryFrom<String> for Variant {
    type Error = BenchError;

    fn try_from(s: String) -> Result<Self, BenchError> {
        s.parse()
    }
}

impl From<Variant> for String {
    fn from(v: Variant) -> String {
        v.to_string()
    }
}

/// Shared planner settings for every cell of a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budget {
    pub max_iterations: usize,
    pub nn_count: usize,
    pub delta: f64,
    pub connector_orderings: usize,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
}

impl Default for Budget {
    fn default() -> Self {
        let p = PlannerParams::<f64>::default();
        Self {
            max_iterations: DEFAULT_MAX_ITERATIONS,
            nn_count: p.nn_count,
            delta: p.delta,
            connector_orderings: p.connector_orderings,
            workers: 0,
        }
    }
}

/// One map with one assignment.
#[derive(Debug, Clone)]
pub struct Instance {
    pub map_id: String,
    pub assignment_id: usize,
    pub map: Arc<Roadmap<f64>>,
    pub assignment: Assignment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub map_id: String,
    pub assignment_id: usize,
    pub variant: Variant,
    pub success: bool,
    /// Makespan of the plan; empty on failure.
    pub steps: Option<usize>,
    pub sum_of_costs: Option<f64>,
    pub iterations: usize,
    pub runtime_ms: f64,
    pub seed: u64,
}

impl RunRecord {
    /// Record with the wall-clock field cleared, for reproducibility checks.
    pub fn without_runtime(&self) -> Self {
        Self {
            runtime_ms: 0.0,
            ..self.clone()
        }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn mix_bytes(mut h: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        h = splitmix(h ^ u64::from(b));
    }
    h
}

/// Per-run seed derived from the master seed and the cell key.
pub fn cell_seed(master: u64, map_id: &str, assignment_id: usize, variant: &Variant) -> u64 {
    let mut h = splitmix(master);
    h = mix_bytes(h, map_id.as_bytes());
    h = splitmix(h ^ assignment_id as u64);
    mix_bytes(h, variant.to_string().as_bytes())
}

/// Runs one planner on one instance. Failed runs carry the iteration
/// conventions: the shuffle limit for CARP, the iteration cap for MRdRRT.
pub fn run_cell(
    instance: &Instance,
    variant: Variant,
    budget: &Budget,
    seed: u64,
) -> (RunRecord, Option<Plan>) {
    let map = instance.map.as_ref();
    let started = Instant::now();
    let (plan, iterations) = match variant {
        Variant::Carp { shuffles } => {
            let params = CarpParams {
                max_shuffles: shuffles,
                start_time: 0,
                seed,
            };
            match CarpPlanner::new(map).plan_all(&instance.assignment, &params) {
                Ok(sol) => (Some(sol.plan), sol.shuffles_used),
                Err(fail) => (None, fail.shuffles_used),
            }
        }
        Variant::Mrdrrt {
            improved_expansion,
            rewiring,
        } => {
            let params = PlannerParams {
                nn_count: budget.nn_count,
                delta: budget.delta,
                max_iterations: budget.max_iterations,
                connector_orderings: budget.connector_orderings,
                improved_expansion,
                rewiring,
                seed,
            };
            match mrdrrt::plan(&instance.assignment, map, &params) {
                Ok(out) => (Some(out.plan), out.stats.iterations),
                Err(PlanError::Exhausted { .. }) => (None, budget.max_iterations),
                Err(PlanError::Graph(e)) => {
                    log::warn!("{}#{}: {e}", instance.map_id, instance.assignment_id);
                    (None, budget.max_iterations)
                }
            }
        }
    };
    let runtime_ms = started.elapsed().as_secs_f64() * 1e3;
    let plan = plan.filter(|p| match validate_plan(p, &instance.assignment, map) {
        Ok(()) => true,
        Err(v) => {
            log::error!(
                "{} produced an invalid plan on {}#{}: {v}",
                variant,
                instance.map_id,
                instance.assignment_id
            );
            false
        }
    });
    let record = RunRecord {
        map_id: instance.map_id.clone(),
        assignment_id: instance.assignment_id,
        variant,
        success: plan.is_some(),
        steps: plan.as_ref().map(Plan::makespan),
        sum_of_costs: plan.as_ref().map(|p| p.sum_of_costs(map)),
        iterations,
        runtime_ms,
        seed,
    };
    (record, plan)
}

/// Runs every (instance, variant) cell. Output order follows the input
/// order regardless of parallelism.
pub fn run_matrix(
    instances: &[Instance],
    variants: &[Variant],
    budget: &Budget,
    master_seed: u64,
) -> Result<Vec<RunRecord>, BenchError> {
    let cells: Vec<(&Instance, Variant)> = instances
        .iter()
        .flat_map(|i| variants.iter().map(move |&v| (i, v)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(budget.workers)
        .build()?;
    Ok(pool.install(|| {
        cells
            .par_iter()
            .map(|&(instance, variant)| {
                let seed = cell_seed(
                    master_seed,
                    &instance.map_id,
                    instance.assignment_id,
                    &variant,
                );
                run_cell(instance, variant, budget, seed).0
            })
            .collect()
    }))
}

/// Key under which runs are aggregated, alongside the variant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupKey {
    pub grid: String,
    pub edge_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub grid: String,
    pub edge_count: usize,
    pub variant: Variant,
    pub success_rate: f64,
    pub median_steps: f64,
    pub median_iterations: f64,
    pub median_runtime_ms: f64,
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    })
}

/// Replaces failed entries: twice the worst success when any run succeeded,
/// otherwise [`ALL_FAILED_SENTINEL`].
pub fn substitute_failures(values: &[Option<f64>]) -> Vec<f64> {
    let worst = values
        .iter()
        .flatten()
        .copied()
        .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))));
    let fill = worst.map_or(ALL_FAILED_SENTINEL, |w| 2.0 * w);
    values.iter().map(|v| v.unwrap_or(fill)).collect()
}

/// Summarizes one `(key, variant)` group after failure substitution.
pub fn aggregate_group(
    key: &GroupKey,
    variant: Variant,
    group: &[&RunRecord],
) -> Result<AggregateRow, BenchError> {
    if group.is_empty() {
        return Err(BenchError::EmptyGroup);
    }
    let successes = group.iter().filter(|r| r.success).count();
    let steps: Vec<Option<f64>> = group
        .iter()
        .map(|r| r.steps.filter(|_| r.success).map(|s| s as f64))
        .collect();
    let iterations: Vec<f64> = group.iter().map(|r| r.iterations as f64).collect();
    let runtimes: Vec<f64> = group.iter().map(|r| r.runtime_ms).collect();
    Ok(AggregateRow {
        grid: key.grid.clone(),
        edge_count: key.edge_count,
        variant,
        success_rate: successes as f64 / group.len() as f64,
        median_steps: median(&substitute_failures(&steps)).expect("non-empty"),
        median_iterations: median(&iterations).expect("non-empty"),
        median_runtime_ms: median(&runtimes).expect("non-empty"),
    })
}

/// Groups records by `(key(record), variant)` in order of first appearance
/// and summarizes each group.
pub fn aggregate(
    records: &[RunRecord],
    key: impl Fn(&RunRecord) -> GroupKey,
) -> Result<Vec<AggregateRow>, BenchError> {
    let mut order: Vec<(GroupKey, Variant)> = Vec::new();
    let mut groups: HashMap<(GroupKey, Variant), Vec<&RunRecord>> = HashMap::new();
    for r in records {
        let k = (key(r), r.variant);
        groups
            .entry(k.clone())
            .or_insert_with(|| {
                order.push(k);
                Vec::new()
            })
            .push(r);
    }
    order
        .iter()
        .map(|k| aggregate_group(&k.0, k.1, &groups[k]))
        .collect()
}

fn write_rows<T: Serialize, W: Write>(rows: &[T], header: &[&str], writer: W) -> Result<(), FormatError> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    out.write_record(header)?;
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}

fn read_rows<T: for<'de> Deserialize<'de>, R: Read>(reader: R) -> Result<Vec<T>, FormatError> {
    let mut input = csv::Reader::from_reader(reader);
    input
        .deserialize()
        .map(|r| r.map_err(FormatError::from))
        .collect()
}

pub const RUNS_HEADER: [&str; 9] = [
    "map_id",
    "assignment_id",
    "variant",
    "success",
    "steps",
    "sum_of_costs",
    "iterations",
    "runtime_ms",
    "seed",
];

pub const AGGREGATE_HEADER: [&str; 7] = [
    "grid",
    "edge_count",
    "variant",
    "success_rate",
    "median_steps",
    "median_iterations",
    "median_runtime_ms",
];

pub fn write_runs<W: Write>(records: &[RunRecord], writer: W) -> Result<(), FormatError> {
    write_rows(records, &RUNS_HEADER, writer)
}

pub fn read_runs<R: Read>(reader: R) -> Result<Vec<RunRecord>, FormatError> {
    read_rows(reader)
}

pub fn write_aggregate<W: Write>(rows: &[AggregateRow], writer: W) -> Result<(), FormatError> {
    write_rows(rows, &AGGREGATE_HEADER, writer)
}

pub fn read_aggregate<R: Read>(reader: R) -> Result<Vec<AggregateRow>, FormatError> {
    read_rows(reader)
}

/// Raw records plus aggregated rows of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub runs: Vec<RunRecord>,
    pub rows: Vec<AggregateRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DensityConfig {
    pub sides: Vec<usize>,
    pub connectivity: Connectivity,
    pub step_count: usize,
    pub assignments: usize,
    pub agents: usize,
    pub variants: Vec<Variant>,
    pub seed: u64,
    pub budget: Budget,
}

impl Default for DensityConfig {
    fn default() -> Self {
        let mut variants = Variant::all_carp();
        variants.extend(Variant::all_mrdrrt());
        Self {
            sides: vec![10, 15, 20],
            connectivity: Connectivity::Eight,
            step_count: 9,
            assignments: 20,
            agents: 20,
            variants,
            seed: 0,
            budget: Budget::default(),
        }
    }
}

impl DensityConfig {
    /// Grid sizes, fleet and assignment count of the original study.
    pub fn full_scale() -> Self {
        Self {
            sides: vec![20, 30, 40],
            assignments: 100,
            agents: 100,
            ..Self::default()
        }
    }
}

/// Density sweep instances: for each grid side, `1 + step_count` maps from a
/// random spanning tree to the full grid, all sharing one set of assignments.
pub fn density_instances(config: &DensityConfig) -> Result<Vec<(Instance, GroupKey)>, BenchError> {
    let mut out = Vec::new();
    for &side in &config.sides {
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix(config.seed ^ side as u64));
        let full: Roadmap<f64> = mapgen::grid(&GridSpec::new(side, config.connectivity));
        let base = mapgen::mst_base(&full, &mut rng)?;
        let sweep = mapgen::density_sweep(&full, &base, config.step_count, &mut rng);
        let assignments = (0..config.assignments)
            .map(|_| mapgen::random_assignment(&full, config.agents, &mut rng))
            .collect::<Result<Vec<_>, _>>()?;
        for (j, map) in sweep.into_iter().enumerate() {
            let key = GroupKey {
                grid: format!("{side}x{side}"),
                edge_count: map.edge_count(),
            };
            let map = Arc::new(map);
            for (a, assignment) in assignments.iter().enumerate() {
                out.push((
                    Instance {
                        map_id: format!("g{side}-m{j}"),
                        assignment_id: a,
                        map: Arc::clone(&map),
                        assignment: assignment.clone(),
                    },
                    key.clone(),
                ));
            }
        }
    }
    Ok(out)
}

fn run_keyed(
    keyed: Vec<(Instance, GroupKey)>,
    variants: &[Variant],
    budget: &Budget,
    seed: u64,
) -> Result<ExperimentOutput, BenchError> {
    let keys: HashMap<String, GroupKey> = keyed
        .iter()
        .map(|(i, k)| (i.map_id.clone(), k.clone()))
        .collect();
    let instances: Vec<Instance> = keyed.into_iter().map(|(i, _)| i).collect();
    let runs = run_matrix(&instances, variants, budget, seed)?;
    let rows = aggregate(&runs, |r| keys[&r.map_id].clone())?;
    Ok(ExperimentOutput { runs, rows })
}

pub fn experiment_density(config: &DensityConfig) -> Result<ExperimentOutput, BenchError> {
    run_keyed(
        density_instances(config)?,
        &config.variants,
        &config.budget,
        config.seed,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AdversarialConfig {
    pub agent_counts: Vec<usize>,
    pub instances: usize,
    pub variants: Vec<Variant>,
    pub seed: u64,
    pub budget: Budget,
}

impl Default for AdversarialConfig {
    fn default() -> Self {
        let mut variants = Variant::all_mrdrrt();
        variants.push(Variant::Carp { shuffles: 1000 });
        Self {
            agent_counts: vec![4, 8, 12, 16],
            instances: 25,
            variants,
            seed: 0,
            budget: Budget::default(),
        }
    }
}

impl AdversarialConfig {
    pub fn full_scale() -> Self {
        Self {
            agent_counts: vec![10, 20, 30, 40],
            instances: 100,
            ..Self::default()
        }
    }
}

/// Generated adversarial instances, grouped per agent count. The group's
/// edge count is the median over its instances.
pub fn adversarial_instances(
    config: &AdversarialConfig,
) -> Result<Vec<(Instance, GroupKey)>, BenchError> {
    let mut out = Vec::new();
    for &k in &config.agent_counts {
        if k < 2 || k % 2 != 0 {
            return Err(BenchError::OddAgentCount(k));
        }
        let generated: Vec<_> = (0..config.instances)
            .map(|i| {
                let seed = splitmix(config.seed ^ splitmix(k as u64) ^ i as u64);
                mapgen::adversarial::<f64>(&AdversarialSpec { agents: k, seed })
            })
            .collect();
        let edges: Vec<f64> = generated.iter().map(|(m, _)| m.edge_count() as f64).collect();
        let key = GroupKey {
            grid: format!("adv-k{k}"),
            edge_count: median(&edges).map_or(0, |m| m.round() as usize),
        };
        for (i, (map, assignment)) in generated.into_iter().enumerate() {
            out.push((
                Instance {
                    map_id: format!("adv-k{k}-i{i}"),
                    assignment_id: 0,
                    map: Arc::new(map),
                    assignment,
                },
                key.clone(),
            ));
        }
    }
    Ok(out)
}

pub fn experiment_adversarial(config: &AdversarialConfig) -> Result<ExperimentOutput, BenchError> {
    run_keyed(
        adversarial_instances(config)?,
        &config.variants,
        &config.budget,
        config.seed,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(variant: Variant, steps: Option<usize>, iterations: usize) -> RunRecord {
        RunRecord {
            map_id: "m".into(),
            assignment_id: 0,
            variant,
            success: steps.is_some(),
            steps,
            sum_of_costs: steps.map(|s| s as f64),
            iterations,
            runtime_ms: 1.0,
            seed: 0,
        }
    }

    fn key(_: &RunRecord) -> GroupKey {
        GroupKey {
            grid: "g".into(),
            edge_count: 1,
        }
    }

    #[test]
    fn variant_names_round_trip() {
        let mut all = Variant::all_carp();
        all.extend(Variant::all_mrdrrt());
        let names: Vec<_> = all.iter().map(Variant::to_string).collect();
        assert_eq!(
            names,
            [
                "carp-1",
                "carp-10",
                "carp-100",
                "carp-1000",
                "mrdrrt",
                "mrdrrt-no-rewire",
                "mrdrrt-no-expansion",
                "mrdrrt-no-expansion-no-rewire"
            ]
        );
        for (v, n) in all.iter().zip(&names) {
            assert_eq!(&n.parse::<Variant>().unwrap(), v);
        }
        assert!("carp-5".parse::<Variant>().is_err());
        assert!("mrdrrt-fast".parse::<Variant>().is_err());
    }

    #[test]
    fn all_success_uses_raw_values() {
        let v = Variant::full_mrdrrt();
        let rows = aggregate(
            &[record(v, Some(10), 3), record(v, Some(30), 5), record(v, Some(20), 4)],
            key,
        )
        .unwrap();
        assert_eq!(rows[0].median_steps, 20.0);
        assert_eq!(rows[0].median_iterations, 4.0);
        assert_eq!(rows[0].success_rate, 1.0);
    }

    #[test]
    fn failure_becomes_twice_worst() {
        assert_eq!(
            substitute_failures(&[Some(10.0), Some(20.0), None]),
            vec![10.0, 20.0, 40.0]
        );
        let v = Variant::full_mrdrrt();
        let rows = aggregate(
            &[record(v, Some(10), 1), record(v, Some(20), 1), record(v, None, 500_000)],
            key,
        )
        .unwrap();
        assert_eq!(rows[0].median_steps, 20.0);
        assert!((rows[0].success_rate - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn all_failed_sentinel() {
        let v = Variant::Carp { shuffles: 10 };
        let rows = aggregate(&[record(v, None, 10), record(v, None, 10)], key).unwrap();
        assert_eq!(rows[0].median_steps, 100_000.0);
        assert_eq!(rows[0].success_rate, 0.0);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[]), None);
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
    }

    #[test]
    fn csv_headers() {
        let mut buf = Vec::new();
        write_runs(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "map_id,assignment_id,variant,success,steps,sum_of_costs,iterations,runtime_ms,seed\n"
        );
        let mut buf = Vec::new();
        write_aggregate(&[], &mut buf).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .eq("grid,edge_count,variant,success_rate,median_steps,median_iterations,median_runtime_ms\n"));
    }

    #[test]
    fn csv_round_trip() {
        let records = vec![
            record(Variant::full_mrdrrt(), Some(7), 12),
            record(Variant::Carp { shuffles: 1000 }, None, 1000),
        ];
        let mut buf = Vec::new();
        write_runs(&records, &mut buf).unwrap();
        assert_eq!(read_runs(buf.as_slice()).unwrap(), records);
        let rows = aggregate(&records, key).unwrap();
        let mut buf = Vec::new();
        write_aggregate(&rows, &mut buf).unwrap();
        assert_eq!(read_aggregate(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn seeds_depend_on_cell() {
        let v = Variant::full_mrdrrt();
        let a = cell_seed(1, "m", 0, &v);
        assert_eq!(a, cell_seed(1, "m", 0, &v));
        assert_ne!(a, cell_seed(1, "m", 1, &v));
        assert_ne!(a, cell_seed(2, "m", 0, &v));
        assert_ne!(a, cell_seed(1, "m", 0, &Variant::Carp { shuffles: 1 }));
    }
}
