//! Command-line interface: solve layout problems by exhaustive search,
//! amplitude-amplification simulation, or QUBO annealing; check candidate
//! encodings; emit CBO/QUBO formulations; measure circuit resources; and run
//! the annealing experiment grid.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qdraw_core::arith::{build_eq, build_less, build_popcount};
use qdraw_core::circuit::{circuit_to_json, netlist, Circuit};
use qdraw_core::combin::{log2_ceil, partition_k_sets, KSetPartition};
use qdraw_core::graph::{
    brute_force_solve, read_graph_str, verify_solution, BruteForceLimits, GraphError,
    ProblemInstance, Solution,
};
use qdraw_core::grover::{Backend as GroverBackend, GroverError, GroverRun};
use qdraw_core::oracle::{build_phase_inversion, decode_gamma, predicate};
use qdraw_core::qubo::{
    anneal_instance, build_cbo, compile_qubo, default_penalty, linearize, run_experiment,
    AnnealParams, Annealer, ExperimentConfig, QuboModel, SimulatedAnnealer, Transitivity,
};
use qdraw_core::transducer::{
    build_collision_detector, build_order_transducer, build_skewness_transducer,
    expected_order_ancillas,
};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qdraw",
    about = "Layout search via reversible-logic oracles and annealing",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    Tlcm,
    Tlkp,
    Tlqp,
    Tls,
    Opcm,
    Bt,
    Bs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveBackend {
    Grover,
    Anneal,
    Brute,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransitivityArg {
    Linear,
    Quadratic,
}

impl From<TransitivityArg> for Transitivity {
    fn from(t: TransitivityArg) -> Self {
        match t {
            TransitivityArg::Linear => Transitivity::Linear,
            TransitivityArg::Quadratic => Transitivity::Quadratic,
        }
    }
}

#[derive(Args)]
struct InstanceArgs {
    /// Problem to solve.
    #[arg(long, value_enum)]
    problem: Problem,
    /// Graph file (text or JSON).
    #[arg(long)]
    input: PathBuf,
    /// Problem parameter: rho (tlcm/opcm), k (tlkp), sigma (tls/bs), tau (bt).
    #[arg(long)]
    param: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print a verified solution (or none) as JSON.
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value = "grover")]
        backend: SolveBackend,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        shots: usize,
        /// Transitivity family for the anneal backend.
        #[arg(long, value_enum, default_value = "linear")]
        transitivity: TransitivityArg,
        #[arg(long, default_value_t = 10_000)]
        sweeps: usize,
        #[arg(long, default_value_t = 10)]
        restarts: usize,
        /// Penalty weight override for the anneal backend.
        #[arg(long)]
        penalty: Option<i64>,
    },
    /// Evaluate the classical oracle predicate on one search bitstring.
    Check {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Basis state as a decimal integer or 0b-prefixed binary string.
        #[arg(long)]
        gamma: String,
    },
    /// Emit the CBO (default) or compiled QUBO formulation as JSON.
    Formulate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value = "linear")]
        transitivity: TransitivityArg,
        /// Linearize and compile down to a QUBO.
        #[arg(long)]
        qubo: bool,
        #[arg(long)]
        penalty: Option<i64>,
    },
    /// Anneal a QUBO from a JSON file ({num_vars, terms, offset}).
    Anneal {
        #[arg(long)]
        qubo: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        sweeps: usize,
        #[arg(long, default_value_t = 0.95)]
        decay: f64,
        #[arg(long, default_value_t = 1)]
        restarts: usize,
    },
    /// Build a circuit and report measured complexity/depth/width.
    Estimate {
        #[command(subcommand)]
        target: EstimateTarget,
    },
    /// Run the annealing experiment grid; prints a table and emits CSV.
    Experiment {
        /// JSON config file; the flags below apply otherwise.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated vertices per layer.
        #[arg(long, value_delimiter = ',', default_values_t = vec![6, 8, 10])]
        layers: Vec<usize>,
        /// Comma-separated densities in percent.
        #[arg(long, value_delimiter = ',', default_values_t = vec![10, 30, 50])]
        densities: Vec<u32>,
        #[arg(long, default_value_t = 10)]
        instances: usize,
        #[arg(long, default_value_t = 10)]
        seeds: usize,
        #[arg(long, default_value_t = 10_000)]
        sweeps: usize,
        #[arg(long, default_value_t = 10)]
        restarts: usize,
        /// Write the CSV here; stdout gets it otherwise.
        #[arg(long)]
        out_csv: Option<PathBuf>,
    },
    /// Partition all k-subsets of a ground set into cross-independent
    /// classes.
    Partition {
        #[arg(long)]
        ground_size: usize,
        #[arg(long)]
        k: usize,
    },
    /// Export a phase-inversion circuit as a netlist or JSON.
    Export {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value = "netlist")]
        format: String,
    },
}

#[derive(Subcommand)]
enum EstimateTarget {
    /// Full detector circuit on a synthetic instance: the first m edges of
    /// the complete (bipartite) graph on n vertices, in index order.
    Detector {
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        param: Option<u64>,
    },
    /// Popcount tree on t bits.
    Popcount {
        #[arg(long)]
        t: usize,
    },
    /// Order transducer on n values.
    OrderTransducer {
        #[arg(long)]
        n: usize,
    },
    /// Skewness transducer selecting sigma of m edges.
    SkewnessTransducer {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        sigma: usize,
    },
    /// Collision detector over `count` values of `width` bits.
    CollisionDetector {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        width: usize,
    },
    /// Equality or less-than comparator on values in [t].
    Comparator {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "less")]
        op: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(classify(&err))
        }
    }
}

/// Distinct exit classes: 65 bad input data, 66 unreadable input,
/// 69 capacity/guard exceeded, 70 internal.
fn classify(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(g) = cause.downcast_ref::<GraphError>() {
            return match g {
                GraphError::TooLarge(_) => 69,
                _ => 65,
            };
        }
        if let Some(g) = cause.downcast_ref::<GroverError>() {
            return match g {
                GroverError::HybridCapacity(_, _) => 69,
                _ => 65,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 66;
        }
        if cause.downcast_ref::<serde_json::Error>().is_some() {
            return 65;
        }
        if cause
            .downcast_ref::<qdraw_core::qubo::QuboError>()
            .is_some()
        {
            return 65;
        }
    }
    70
}

fn load_instance(args: &InstanceArgs) -> Result<ProblemInstance> {
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let graph = read_graph_str(&text)?;
    let need = |name: &str| {
        args.param
            .ok_or_else(|| anyhow!("--param ({name}) is required for this problem"))
    };
    let instance = match args.problem {
        Problem::Tlcm => ProblemInstance::Tlcm {
            graph: graph.as_bipartite()?,
            rho: need("rho")?,
        },
        Problem::Tlkp => ProblemInstance::Tlkp {
            graph: graph.as_bipartite()?,
            k: need("k")?,
        },
        Problem::Tlqp => ProblemInstance::Tlqp {
            graph: graph.as_bipartite()?,
        },
        Problem::Tls => ProblemInstance::Tls {
            graph: graph.as_bipartite()?,
            sigma: need("sigma")? as usize,
        },
        Problem::Opcm => ProblemInstance::Opcm {
            graph: graph.as_general()?,
            rho: need("rho")?,
        },
        Problem::Bt => ProblemInstance::Bt {
            graph: graph.as_general()?,
            tau: need("tau")? as usize,
        },
        Problem::Bs => ProblemInstance::Bs {
            graph: graph.as_general()?,
            sigma: need("sigma")? as usize,
        },
    };
    instance.validate()?;
    Ok(instance)
}

/// Verify before printing; nothing unverified is ever emitted.
fn checked_solution(instance: &ProblemInstance, solution: &Solution) -> Result<serde_json::Value> {
    if !verify_solution(
        instance,
        solution,
        BruteForceLimits::default().max_book_vertices,
    )? {
        bail!("internal error: solution failed verification");
    }
    Ok(serde_json::to_value(solution)?)
}

fn crossing_count(instance: &ProblemInstance, solution: &Solution) -> Option<u64> {
    use qdraw_core::graph::{count_book_crossings, count_two_level_crossings};
    match (instance, solution) {
        (ProblemInstance::Tlcm { graph, .. }, Solution::TwoLevel { order }) => {
            count_two_level_crossings(graph, order, None).ok()
        }
        (ProblemInstance::Opcm { graph, .. }, Solution::Spine { order }) => {
            count_book_crossings(graph, order, None).ok()
        }
        _ => None,
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Solve {
            instance,
            backend,
            seed,
            shots,
            transitivity,
            sweeps,
            restarts,
            penalty,
        } => {
            let inst = load_instance(&instance)?;
            let out = match backend {
                SolveBackend::Brute => {
                    let report = brute_force_solve(&inst, &BruteForceLimits::default())?;
                    let solution = report
                        .witness
                        .as_ref()
                        .map(|w| checked_solution(&inst, w))
                        .transpose()?;
                    json!({
                        "problem": inst.kind().name(),
                        "backend": "brute",
                        "search_bits": report.search_bits,
                        "accepting_states": report.accepting_states.to_string(),
                        "solution": solution,
                        "crossings": report.witness.as_ref().and_then(|w| crossing_count(&inst, w)),
                        "found": report.witness.is_some(),
                    })
                }
                SolveBackend::Grover => {
                    let mut run = GroverRun::new(inst.clone());
                    run.backend = GroverBackend::Hybrid;
                    run.seed = seed;
                    run.shots = shots;
                    let outcome = qdraw_core::grover::run(&run)?;
                    let solution = outcome
                        .solution
                        .as_ref()
                        .map(|s| checked_solution(&inst, s))
                        .transpose()?;
                    json!({
                        "problem": inst.kind().name(),
                        "backend": "grover",
                        "search_bits": outcome.search_bits,
                        "m": outcome.m.map(|m| m.to_string()),
                        "iterations": outcome.iterations,
                        "shots": outcome.shots,
                        "success_rate": outcome.success_rate,
                        "predicted_success": outcome.predicted_success,
                        "schedule": outcome.schedule,
                        "solution": solution,
                        "crossings": outcome.solution.as_ref().and_then(|s| crossing_count(&inst, s)),
                        "found": outcome.solution.is_some(),
                    })
                }
                SolveBackend::Anneal => {
                    let params = AnnealParams {
                        sweeps,
                        restarts,
                        ..AnnealParams::default()
                    };
                    let report =
                        anneal_instance(&inst, transitivity.into(), &params, penalty, seed)?;
                    let verified = report
                        .solution
                        .as_ref()
                        .map(|s| verify_solution(&inst, s, 8).unwrap_or(false))
                        .unwrap_or(false);
                    let solution = report
                        .solution
                        .as_ref()
                        .filter(|_| verified)
                        .map(|s| checked_solution(&inst, s))
                        .transpose()?;
                    json!({
                        "problem": inst.kind().name(),
                        "backend": "anneal",
                        "energy": report.result.energy,
                        "objective": report.result.objective_value,
                        "constraint_violations": report.result.constraint_violations,
                        "violations": report.violations,
                        "wall_time_ms": report.result.wall_time_ms,
                        "sweeps": report.result.sweeps,
                        "qubo_vars": report.qubo_vars,
                        "penalty": report.penalty,
                        "solution": solution,
                        "crossings": report.solution.as_ref().and_then(|s| crossing_count(&inst, s)),
                        "found": verified,
                    })
                }
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Check { instance, gamma } => {
            let inst = load_instance(&instance)?;
            let value = parse_gamma(&gamma)?;
            let accepted = predicate(&inst, value)?;
            let decoded = decode_gamma(&inst, value)?;
            let out = json!({
                "problem": inst.kind().name(),
                "gamma": value,
                "search_bits": inst.search_bits(),
                "accepted": accepted,
                "decoded": decoded,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Formulate {
            instance,
            transitivity,
            qubo,
            penalty,
        } => {
            let inst = load_instance(&instance)?;
            let model = build_cbo(&inst, transitivity.into())?;
            if qubo {
                let lin = linearize(&model);
                let weight = penalty.unwrap_or_else(|| default_penalty(&model));
                let compiled = compile_qubo(&lin, weight)?;
                println!("{}", serde_json::to_string_pretty(&compiled)?);
            } else {
                println!("{}", serde_json::to_string_pretty(&model)?);
            }
        }
        Command::Anneal {
            qubo,
            seed,
            sweeps,
            decay,
            restarts,
        } => {
            let text = std::fs::read_to_string(&qubo)
                .with_context(|| format!("reading {}", qubo.display()))?;
            let model: QuboModel = serde_json::from_str(&text)?;
            let params = AnnealParams {
                sweeps,
                decay,
                restarts,
                initial_temperature: None,
            };
            let result = SimulatedAnnealer.solve(&model, &params, seed);
            println!("{}", serde_json::to_string_pretty(&result)?);
        }
        Command::Estimate { target } => {
            let out = estimate(target)?;
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Experiment {
            config,
            layers,
            densities,
            instances,
            seeds,
            sweeps,
            restarts,
            out_csv,
        } => {
            let config = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    serde_json::from_str(&text)?
                }
                None => ExperimentConfig {
                    layer_sizes: layers,
                    densities,
                    instances_per_cell: instances,
                    seeds: (0..seeds as u64).collect(),
                    params: AnnealParams {
                        sweeps,
                        restarts,
                        ..AnnealParams::default()
                    },
                    ..ExperimentConfig::default()
                },
            };
            let report = run_experiment(&config)?;
            print!("{}", report.to_table());
            match out_csv {
                Some(path) => {
                    std::fs::write(&path, report.to_csv())
                        .with_context(|| format!("writing {}", path.display()))?;
                    eprintln!("csv written to {}", path.display());
                }
                None => print!("{}", report.to_csv()),
            }
        }
        Command::Partition { ground_size, k } => {
            let partition = partition_k_sets(ground_size, k);
            let out = json!({
                "ground_size": ground_size,
                "k": k,
                "class_count": partition.class_count(),
                "max_class_size": partition.max_class_size(),
                "degree_bound_plus_one":
                    (KSetPartition::degree_bound(ground_size, k) + 1).to_string(),
                "classes": partition.classes,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Export { instance, format } => {
            let inst = load_instance(&instance)?;
            let pi = build_phase_inversion(&inst)?;
            match format.as_str() {
                "netlist" => print!("{}", netlist(&pi.circuit)),
                "json" => println!("{}", circuit_to_json(&pi.circuit)),
                other => bail!("unknown format `{other}` (use netlist or json)"),
            }
        }
    }
    Ok(())
}

fn parse_gamma(text: &str) -> Result<u64> {
    if let Some(bin) = text.strip_prefix("0b") {
        u64::from_str_radix(bin, 2).map_err(|e| anyhow!("bad binary gamma: {e}"))
    } else {
        text.parse().map_err(|e| anyhow!("bad gamma: {e}"))
    }
}

fn metrics_json(circuit: &Circuit) -> serde_json::Value {
    let m = circuit.metrics();
    json!({
        "complexity": m.complexity,
        "depth": m.depth,
        "width": m.width,
        "width_exact": m.width_exact,
        "gates": circuit.gates.len(),
        "qubits": circuit.total_qubits(),
    })
}

/// Asymptotic bounds reported alongside measured detector numbers.
fn detector_formula(problem: Problem) -> serde_json::Value {
    let (cc, depth, width) = match problem {
        Problem::Tlcm => ("O(m^2)", "O(n^2)", "O(m^2)"),
        Problem::Tlkp => ("O(m^2)", "O(m log^2 m)", "O(m)"),
        Problem::Tlqp => ("O(m^6)", "O(m^4)", "O(m^2)"),
        Problem::Tls => ("O(m^2)", "O(m)", "O(m)"),
        Problem::Opcm => ("O(n^8)", "O(n^6)", "O(m^2)"),
        Problem::Bt => ("O(n^8)", "O(n^6)", "O(m)"),
        Problem::Bs => ("O(n^8)", "O(n^6)", "O(m)"),
    };
    json!({ "complexity": cc, "depth": depth, "width": width })
}

/// Synthetic instance for resource estimation: the first m edges of the
/// complete (bipartite) graph, layers split as evenly as possible.
fn synthetic_instance(
    problem: Problem,
    n: usize,
    m: usize,
    param: Option<u64>,
) -> Result<ProblemInstance> {
    use qdraw_core::graph::{BipartiteGraph, Graph};
    let bipartite = || -> Result<BipartiteGraph> {
        let su = n.div_ceil(2);
        let sv = n / 2;
        let full = BipartiteGraph::complete(su, sv);
        if m > full.m() {
            bail!("m = {m} exceeds the {} edges of the complete bipartite graph", full.m());
        }
        Ok(BipartiteGraph {
            size_u: su,
            size_v: sv,
            edges: full.edges[..m].to_vec(),
        })
    };
    let general = || -> Result<Graph> {
        let full = Graph::complete(n);
        if m > full.m() {
            bail!("m = {m} exceeds the {} edges of the complete graph", full.m());
        }
        Ok(Graph {
            n,
            edges: full.edges[..m].to_vec(),
        })
    };
    Ok(match problem {
        Problem::Tlcm => ProblemInstance::Tlcm {
            graph: bipartite()?,
            rho: param.unwrap_or(1),
        },
        Problem::Tlkp => ProblemInstance::Tlkp {
            graph: bipartite()?,
            k: param.unwrap_or(1),
        },
        Problem::Tlqp => ProblemInstance::Tlqp {
            graph: bipartite()?,
        },
        Problem::Tls => ProblemInstance::Tls {
            graph: bipartite()?,
            sigma: param.unwrap_or(1) as usize,
        },
        Problem::Opcm => ProblemInstance::Opcm {
            graph: general()?,
            rho: param.unwrap_or(1),
        },
        Problem::Bt => ProblemInstance::Bt {
            graph: general()?,
            tau: param.unwrap_or(2) as usize,
        },
        Problem::Bs => ProblemInstance::Bs {
            graph: general()?,
            sigma: param.unwrap_or(1) as usize,
        },
    })
}

fn estimate(target: EstimateTarget) -> Result<serde_json::Value> {
    Ok(match target {
        EstimateTarget::Detector {
            problem,
            n,
            m,
            param,
        } => {
            let instance = synthetic_instance(problem, n, m, param)?;
            let pi = build_phase_inversion(&instance)?;
            json!({
                "target": "detector",
                "problem": instance.kind().name(),
                "n": n,
                "m": m,
                "search_bits": instance.search_bits(),
                "measured": metrics_json(&pi.circuit),
                "formula": detector_formula(problem),
            })
        }
        EstimateTarget::Popcount { t } => {
            let pc = build_popcount(t);
            json!({
                "target": "popcount",
                "t": t,
                "t_padded": pc.t_padded,
                "adders": pc.adder_count,
                "scratch_qubits": pc.scratch.size,
                "result_bits": pc.result.size,
                "measured": metrics_json(&pc.circuit),
                "formula": { "complexity": "O(t)", "depth": "O(log^2 t)", "width": "O(t)" },
            })
        }
        EstimateTarget::OrderTransducer { n } => {
            let ot = build_order_transducer(n);
            json!({
                "target": "order_transducer",
                "n": n,
                "ancillas": ot.ancilla_total(),
                "ancilla_formula": expected_order_ancillas(n),
                "measured": metrics_json(&ot.circuit),
                "formula": { "complexity": "O(n^2 log n)", "depth": "O(n log n)", "width": "O(n log n)" },
            })
        }
        EstimateTarget::SkewnessTransducer { m, sigma } => {
            let st = build_skewness_transducer(m, sigma);
            json!({
                "target": "skewness_transducer",
                "m": m,
                "sigma": sigma,
                "measured": metrics_json(&st.circuit),
                "formula": { "complexity": "O(sigma m log m)", "depth": "O(sigma m)", "width": "O(sigma log m)" },
            })
        }
        EstimateTarget::CollisionDetector { count, width } => {
            let cd = build_collision_detector(count, width);
            json!({
                "target": "collision_detector",
                "count": count,
                "width": width,
                "measured": metrics_json(&cd.circuit),
            })
        }
        EstimateTarget::Comparator { t, op } => {
            let cmp = match op.as_str() {
                "eq" => build_eq(t),
                "less" => build_less(t),
                other => bail!("unknown comparator `{other}` (use eq or less)"),
            };
            json!({
                "target": format!("comparator_{op}"),
                "t": t,
                "operand_bits": log2_ceil(t),
                "measured": metrics_json(&cmp.circuit),
                "formula": { "complexity": "O(log t)", "depth": "O(log t)", "width": "O(log t)" },
            })
        }
    })
}
