//! `mrplan` command-line front end.
//!
//! Exit codes: 0 success, 1 planning failure or invalid plan, 2 usage error,
//! 3 file error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use mrplan::bench::{
    self, AdversarialConfig, Budget, DensityConfig, ExperimentOutput, Variant,
};
use mrplan::carp::{CarpParams, CarpPlanner};
use mrplan::graph::io::{
    map_from_json, map_to_json, read_plan, scenario_from_json, scenario_to_json, write_plan,
};
use mrplan::graph::{validate_plan, Assignment, Plan};
use mrplan::mapgen::{self, AdversarialSpec, Connectivity, GridSpec};
use mrplan::mrdrrt::{self, PlanError, PlannerParams};
use mrplan::Roadmap64;

#[derive(Debug)]
enum Failure {
    /// Planner or validator said no; already reported.
    Planning(String),
    Usage(String),
    File(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Planning(_) => 1,
            Self::Usage(_) => 2,
            Self::File(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Planning(m) | Self::Usage(m) | Self::File(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn file_err(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::File(format!("{}: {e}", path.display()))
}

#[derive(Parser)]
#[command(name = "mrplan", version, about = "Multi-robot roadmap planning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// Overwrite existing output files.
    #[arg(long, global = true)]
    force: bool,
    /// Also print the primary output to stdout.
    #[arg(long, global = true)]
    stdout: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Write a full grid map.
    GenGrid {
        #[arg(long)]
        side: usize,
        #[arg(long, value_enum, default_value_t = Degree::Eight)]
        connectivity: Degree,
        #[arg(long, default_value_t = 1.0)]
        spacing: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Write a density sweep from a random spanning tree to the full grid.
    GenSweep {
        #[arg(long)]
        side: usize,
        #[arg(long, value_enum, default_value_t = Degree::Eight)]
        connectivity: Degree,
        #[arg(long, default_value_t = 9)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory receiving map_00.json, map_01.json, ...
        #[arg(long)]
        out_dir: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Write an adversarial tree map and its scenario.
    GenAdversarial {
        #[arg(long)]
        agents: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        map_out: PathBuf,
        #[arg(long)]
        scenario_out: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Write a random start/goal assignment for a map.
    GenAssignment {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        agents: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Plan a scenario and write the plan and run statistics.
    Plan(PlanArgs),
    /// Check a plan; exits 0 iff it is valid.
    Validate {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        plan: PathBuf,
    },
    /// Run the density experiment.
    BenchDensity(DensityArgs),
    /// Run the adversarial experiment.
    BenchAdversarial(AdversarialArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Degree {
    #[value(name = "4")]
    Four,
    #[value(name = "8")]
    Eight,
}

impl From<Degree> for Connectivity {
    fn from(d: Degree) -> Self {
        match d {
            Degree::Four => Connectivity::Four,
            Degree::Eight => Connectivity::Eight,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Carp,
    Mrdrrt,
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long)]
    map: PathBuf,
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Priority orderings tried by CARP.
    #[arg(long, default_value_t = 1000)]
    shuffles: usize,
    #[arg(long, default_value_t = 5)]
    nn: usize,
    #[arg(long, default_value_t = 4.0)]
    delta: f64,
    #[arg(long, default_value_t = mrdrrt::DEFAULT_MAX_ITERATIONS)]
    max_iter: usize,
    /// Orderings the local connector tries per call.
    #[arg(long, default_value_t = 1)]
    connector_orderings: usize,
    #[arg(long)]
    no_rewire: bool,
    #[arg(long)]
    no_improved_expansion: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Statistics file; defaults to the plan path with a `.stats.json` suffix.
    #[arg(long)]
    stats: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BenchCommon {
    /// JSON experiment config; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Start from the full-size configuration (100 agents, larger grids) instead of desk scale.
    #[arg(long)]
    full_scale: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated variant names, e.g. carp-1000,mrdrrt-no-rewire.
    #[arg(long, value_delimiter = ',')]
    variants: Option<Vec<Variant>>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long, env = "MRPLAN_WORKERS")]
    workers: Option<usize>,
    #[arg(long)]
    runs_out: PathBuf,
    #[arg(long)]
    aggregate_out: PathBuf,
    #[command(flatten)]
    output: Output,
}

impl BenchCommon {
    fn apply(&self, seed: &mut u64, variants: &mut Vec<Variant>, budget: &mut Budget) {
        if let Some(s) = self.seed {
            *seed = s;
        }
        if let Some(v) = &self.variants {
            variants.clone_from(v);
        }
        if let Some(m) = self.max_iter {
            budget.max_iterations = m;
        }
        if let Some(w) = self.workers {
            budget.workers = w;
        }
    }
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long, value_delimiter = ',')]
    sides: Option<Vec<usize>>,
    #[arg(long)]
    agents: Option<usize>,
    #[arg(long)]
    assignments: Option<usize>,
    #[arg(long)]
    steps: Option<usize>,
    #[command(flatten)]
    common: BenchCommon,
}

#[derive(Args)]
struct AdversarialArgs {
    #[arg(long, value_delimiter = ',')]
    agent_counts: Option<Vec<usize>>,
    #[arg(long)]
    instances: Option<usize>,
    #[command(flatten)]
    common: BenchCommon,
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| file_err(path, e))
}

fn load_map(path: &Path) -> Result<Roadmap64, Failure> {
    map_from_json(&read_text(path)?).map_err(|e| file_err(path, e))
}

fn load_scenario(path: &Path, map: &Roadmap64) -> Result<Assignment, Failure> {
    let assignment = scenario_from_json(&read_text(path)?).map_err(|e| file_err(path, e))?;
    assignment.check_against(map).map_err(|e| file_err(path, e))?;
    Ok(assignment)
}

fn ensure_writable(path: &Path, output: &Output) -> Outcome {
    if path.exists() && !output.force {
        return Err(Failure::File(format!(
            "{} exists; pass --force to overwrite",
            path.display()
        )));
    }
    Ok(())
}

/// Writes `bytes` to `path` (if any) and, with `--stdout`, to stdout.
fn emit(path: Option<&Path>, bytes: &[u8], output: &Output) -> Outcome {
    if path.is_none() && !output.stdout {
        return Err(Failure::Usage("no output: pass --out or --stdout".into()));
    }
    if let Some(path) = path {
        ensure_writable(path, output)?;
        fs::write(path, bytes).map_err(|e| file_err(path, e))?;
        log::info!("wrote {}", path.display());
    }
    if output.stdout {
        io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::File(format!("stdout: {e}")))?;
    }
    Ok(())
}

fn json_line(text: String) -> Vec<u8> {
    let mut bytes = text.into_bytes();
    bytes.push(b'\n');
    bytes
}

#[derive(Serialize)]
struct PlanStats {
    algo: &'static str,
    success: bool,
    steps: Option<usize>,
    sum_of_costs: Option<f64>,
    iterations: usize,
    runtime_ms: f64,
    tree_size: Option<usize>,
}

fn stats_path(args: &PlanArgs) -> Option<PathBuf> {
    args.stats
        .clone()
        .or_else(|| args.out.as_ref().map(|p| p.with_extension("stats.json")))
}

fn run_plan(args: &PlanArgs) -> Outcome {
    if args.out.is_none() && !args.output.stdout {
        return Err(Failure::Usage("no output: pass --out or --stdout".into()));
    }
    let map = load_map(&args.map)?;
    let assignment = load_scenario(&args.scenario, &map)?;
    let stats_file = stats_path(args);
    for path in args.out.iter().chain(&stats_file) {
        ensure_writable(path, &args.output)?;
    }

    let started = std::time::Instant::now();
    let (plan, mut stats): (Option<Plan>, PlanStats) = match args.algo {
        Algo::Carp => {
            let params = CarpParams {
                max_shuffles: args.shuffles,
                start_time: 0,
                seed: args.seed,
            };
            let (plan, iterations) = match CarpPlanner::new(&map).plan_all(&assignment, &params) {
                Ok(sol) => (Some(sol.plan), sol.shuffles_used),
                Err(fail) => (None, fail.shuffles_used),
            };
            let stats = PlanStats {
                algo: "carp",
                success: plan.is_some(),
                steps: None,
                sum_of_costs: None,
                iterations,
                runtime_ms: 0.0,
                tree_size: None,
            };
            (plan, stats)
        }
        Algo::Mrdrrt => {
            let params = PlannerParams {
                nn_count: args.nn,
                delta: args.delta,
                max_iterations: args.max_iter,
                connector_orderings: args.connector_orderings,
                improved_expansion: !args.no_improved_expansion,
                rewiring: !args.no_rewire,
                seed: args.seed,
            };
            let (plan, run) = match mrdrrt::plan(&assignment, &map, &params) {
                Ok(out) => (Some(out.plan), out.stats),
                Err(PlanError::Exhausted { stats }) => (None, stats),
                Err(PlanError::Graph(e)) => return Err(file_err(&args.scenario, e)),
            };
            let stats = PlanStats {
                algo: "mrdrrt",
                success: plan.is_some(),
                steps: None,
                sum_of_costs: None,
                iterations: run.iterations,
                runtime_ms: 0.0,
                tree_size: Some(run.tree_size),
            };
            (plan, stats)
        }
    };
    stats.runtime_ms = started.elapsed().as_secs_f64() * 1e3;
    if let Some(p) = &plan {
        if let Err(v) = validate_plan(p, &assignment, &map) {
            return Err(Failure::Planning(format!("planner returned an invalid plan: {v}")));
        }
        stats.steps = Some(p.makespan());
        stats.sum_of_costs = Some(p.sum_of_costs(&map));
    }

    let stats_json = json_line(serde_json::to_string_pretty(&stats).expect("stats"));
    match &stats_file {
        Some(path) => {
            fs::write(path, &stats_json).map_err(|e| file_err(path, e))?;
        }
        None => io::stderr().write_all(&stats_json).map_err(|e| Failure::File(e.to_string()))?,
    }

    let Some(plan) = plan else {
        return Err(Failure::Planning(format!(
            "{} found no plan after {} iterations",
            stats.algo, stats.iterations
        )));
    };
    let mut csv = Vec::new();
    write_plan(&plan, &mut csv).map_err(|e| Failure::File(e.to_string()))?;
    // existence was checked above, before planning
    let output = Output {
        force: true,
        ..args.output.clone()
    };
    emit(args.out.as_deref(), &csv, &output)
}

fn run_validate(map: &Path, scenario: &Path, plan_path: &Path) -> Outcome {
    let map = load_map(map)?;
    let assignment = load_scenario(scenario, &map)?;
    let file = fs::File::open(plan_path).map_err(|e| file_err(plan_path, e))?;
    let plan = read_plan(file).map_err(|e| file_err(plan_path, e))?;
    validate_plan(&plan, &assignment, &map)
        .map_err(|v| Failure::Planning(format!("invalid plan: {v}")))?;
    log::info!("plan valid: makespan {}", plan.makespan());
    Ok(())
}

fn load_config<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read_text(path)?).map_err(|e| file_err(path, e))
}

fn write_experiment(out: &ExperimentOutput, common: &BenchCommon) -> Outcome {
    for path in [&common.runs_out, &common.aggregate_out] {
        ensure_writable(path, &common.output)?;
    }
    let mut runs = Vec::new();
    bench::write_runs(&out.runs, &mut runs).map_err(|e| Failure::File(e.to_string()))?;
    let mut rows = Vec::new();
    bench::write_aggregate(&out.rows, &mut rows).map_err(|e| Failure::File(e.to_string()))?;
    fs::write(&common.runs_out, &runs).map_err(|e| file_err(&common.runs_out, e))?;
    let aggregate_output = Output {
        force: true,
        ..common.output.clone()
    };
    emit(Some(&common.aggregate_out), &rows, &aggregate_output)
}

fn run_density(args: &DensityArgs) -> Outcome {
    let mut config: DensityConfig = match (&args.common.config, args.common.full_scale) {
        (Some(path), _) => load_config(path)?,
        (None, true) => DensityConfig::full_scale(),
        (None, false) => DensityConfig::default(),
    };
    if let Some(s) = &args.sides {
        config.sides.clone_from(s);
    }
    if let Some(a) = args.agents {
        config.agents = a;
    }
    if let Some(a) = args.assignments {
        config.assignments = a;
    }
    if let Some(s) = args.steps {
        config.step_count = s;
    }
    args.common
        .apply(&mut config.seed, &mut config.variants, &mut config.budget);
    let out = bench::experiment_density(&config).map_err(|e| Failure::Usage(e.to_string()))?;
    write_experiment(&out, &args.common)
}

fn run_adversarial(args: &AdversarialArgs) -> Outcome {
    let mut config: AdversarialConfig = match (&args.common.config, args.common.full_scale) {
        (Some(path), _) => load_config(path)?,
        (None, true) => AdversarialConfig::full_scale(),
        (None, false) => AdversarialConfig::default(),
    };
    if let Some(c) = &args.agent_counts {
        config.agent_counts.clone_from(c);
    }
    if let Some(i) = args.instances {
        config.instances = i;
    }
    args.common
        .apply(&mut config.seed, &mut config.variants, &mut config.budget);
    let out = bench::experiment_adversarial(&config).map_err(|e| Failure::Usage(e.to_string()))?;
    write_experiment(&out, &args.common)
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::GenGrid {
            side,
            connectivity,
            spacing,
            out,
            output,
        } => {
            if side == 0 || !(spacing.is_finite() && spacing > 0.0) {
                return Err(Failure::Usage("side and spacing must be positive".into()));
            }
            let spec = GridSpec {
                spacing,
                ..GridSpec::new(side, connectivity.into())
            };
            let map: Roadmap64 = mapgen::grid(&spec);
            emit(out.as_deref(), &json_line(map_to_json(&map)), &output)
        }
        Command::GenSweep {
            side,
            connectivity,
            steps,
            seed,
            out_dir,
            output,
        } => {
            if side < 2 || steps == 0 {
                return Err(Failure::Usage("need side >= 2 and steps >= 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let full: Roadmap64 = mapgen::grid(&GridSpec::new(side, connectivity.into()));
            let base = mapgen::mst_base(&full, &mut rng).map_err(|e| Failure::Usage(e.to_string()))?;
            let sweep = mapgen::density_sweep(&full, &base, steps, &mut rng);
            fs::create_dir_all(&out_dir).map_err(|e| file_err(&out_dir, e))?;
            let paths: Vec<PathBuf> = (0..sweep.len())
                .map(|i| out_dir.join(format!("map_{i:02}.json")))
                .collect();
            for path in &paths {
                ensure_writable(path, &output)?;
            }
            for (map, path) in sweep.iter().zip(&paths) {
                fs::write(path, json_line(map_to_json(map))).map_err(|e| file_err(path, e))?;
                if output.stdout {
                    println!("{}\t{}", path.display(), map.edge_count());
                }
            }
            Ok(())
        }
        Command::GenAdversarial {
            agents,
            seed,
            map_out,
            scenario_out,
            output,
        } => {
            if agents < 2 || agents % 2 != 0 {
                return Err(Failure::Usage("--agents must be even and at least 2".into()));
            }
            let (map, assignment): (Roadmap64, _) =
                mapgen::adversarial(&AdversarialSpec { agents, seed });
            ensure_writable(&scenario_out, &output)?;
            emit(Some(&map_out), &json_line(map_to_json(&map)), &output)?;
            fs::write(&scenario_out, json_line(scenario_to_json(&assignment)))
                .map_err(|e| file_err(&scenario_out, e))
        }
        Command::GenAssignment {
            map,
            agents,
            seed,
            out,
            output,
        } => {
            let roadmap = load_map(&map)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let assignment = mapgen::random_assignment(&roadmap, agents, &mut rng)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            emit(out.as_deref(), &json_line(scenario_to_json(&assignment)), &output)
        }
        Command::Plan(args) => run_plan(&args),
        Command::Validate {
            map,
            scenario,
            plan,
        } => run_validate(&map, &scenario, &plan),
        Command::BenchDensity(args) => run_density(&args),
        Command::BenchAdversarial(args) => run_adversarial(&args),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("mrplan: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
