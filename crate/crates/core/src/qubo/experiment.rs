//! Experiment harness: random bipartite instances over a grid of layer
//! sizes and densities, both transitivity modes, annealed and summarized as
//! CSV plus an aligned text table.

use super::{
    build_cbo, decode_assignment, default_penalty, AnnealParams, AnnealResult, CboAnnealer,
    Transitivity,
};
use crate::graph::{
    count_two_level_crossings, tlcm_optimum, BipartiteGraph, BruteForceLimits, ProblemInstance,
    Solution,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Vertices per layer for each grid row.
    pub layer_sizes: Vec<usize>,
    /// Densities in percent.
    pub densities: Vec<u32>,
    pub instances_per_cell: usize,
    /// Annealing seeds applied to every instance.
    pub seeds: Vec<u64>,
    pub params: AnnealParams,
    /// Base seed of the instance generator.
    pub instance_seed: u64,
    /// Layer-size cap for the exact optimum / gap column.
    pub optimum_max_layer: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            layer_sizes: vec![6, 8, 10],
            densities: vec![10, 30, 50],
            instances_per_cell: 10,
            seeds: (0..10).collect(),
            params: AnnealParams {
                restarts: 10,
                ..AnnealParams::default()
            },
            instance_seed: 0,
            optimum_max_layer: 6,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentCell {
    pub n: usize,
    pub d: u32,
    pub time_linear_ms: f64,
    pub constraints_linear: usize,
    pub crossings_linear: f64,
    pub time_quadratic_ms: f64,
    pub constraints_quadratic: usize,
    pub crossings_quadratic: f64,
    /// Average exact optimum (layer sizes within the brute-force cap).
    pub optimum: Option<f64>,
    pub gap_linear: Option<f64>,
    pub gap_quadratic: Option<f64>,
    /// (instance, seed) runs whose decode was infeasible, per mode.
    pub infeasible_linear: usize,
    pub infeasible_quadratic: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub cells: Vec<ExperimentCell>,
}

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "n,d,time_linear,constraints_linear,crossings_linear,\
             time_quadratic,constraints_quadratic,crossings_quadratic,\
             optimum,gap_linear,gap_quadratic\n",
        );
        for c in &self.cells {
            let opt = c.optimum.map_or(String::new(), |v| format!("{v:.2}"));
            let gl = c.gap_linear.map_or(String::new(), |v| format!("{v:.2}"));
            let gq = c.gap_quadratic.map_or(String::new(), |v| format!("{v:.2}"));
            out.push_str(&format!(
                "{},{},{:.2},{},{:.2},{:.2},{},{:.2},{},{},{}\n",
                c.n,
                c.d,
                c.time_linear_ms,
                c.constraints_linear,
                c.crossings_linear,
                c.time_quadratic_ms,
                c.constraints_quadratic,
                c.crossings_quadratic,
                opt,
                gl,
                gq
            ));
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:>3} {:>3} | {:>12} {:>12} {:>10} | {:>12} {:>12} {:>10} | {:>8}\n",
            "n", "d", "t_lin(ms)", "cons_lin", "cross_lin", "t_quad(ms)", "cons_quad",
            "cross_quad", "optimum"
        ));
        for c in &self.cells {
            let opt = c.optimum.map_or("-".into(), |v| format!("{v:.2}"));
            out.push_str(&format!(
                "{:>3} {:>3} | {:>12.2} {:>12} {:>10.2} | {:>12.2} {:>12} {:>10.2} | {:>8}\n",
                c.n,
                c.d,
                c.time_linear_ms,
                c.constraints_linear,
                c.crossings_linear,
                c.time_quadratic_ms,
                c.constraints_quadratic,
                c.crossings_quadratic,
                opt
            ));
        }
        out
    }
}

/// Deterministic bipartite instance: every (u, v) edge included with
/// probability d/100.
pub fn random_bipartite(n_per_layer: usize, density: u32, seed: u64) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n_per_layer {
        for v in 0..n_per_layer {
            if rng.gen_range(0..100u32) < density {
                edges.push((u, v));
            }
        }
    }
    BipartiteGraph {
        size_u: n_per_layer,
        size_v: n_per_layer,
        edges,
    }
}

fn cell_instance_seed(base: u64, n: usize, d: u32, index: usize) -> u64 {
    base ^ (n as u64) << 40 ^ (d as u64) << 20 ^ index as u64
}

/// One annealed run of one instance in one mode; returns the anneal result
/// plus crossings of the decoded drawing when feasible.
pub struct ModeRun {
    pub result: AnnealResult,
    pub crossings: Option<u64>,
}

/// Full TLCM pipeline for one graph and mode.
pub fn anneal_tlcm(
    graph: &BipartiteGraph,
    mode: Transitivity,
    params: &AnnealParams,
    seed: u64,
) -> super::Result<(ModeRun, usize)> {
    let instance = ProblemInstance::Tlcm {
        graph: graph.clone(),
        rho: 0, // the budget is irrelevant for the minimization objective
    };
    let cbo = build_cbo(&instance, mode)?;
    let constraint_count = cbo.constraints.len();
    let mut result = CboAnnealer.solve(&cbo, default_penalty(&cbo), params, seed);
    result.objective_value = Some(cbo.objective.eval(&result.assignment));
    result.constraint_violations = cbo.violations(&result.assignment).len();
    let decode = decode_assignment(&instance, &cbo.vars, &result.assignment);
    let crossings = match decode.solution {
        Some(Solution::TwoLevel { order }) if result.constraint_violations == 0 => {
            Some(count_two_level_crossings(graph, &order, None)?)
        }
        _ => None,
    };
    Ok((ModeRun { result, crossings }, constraint_count))
}

pub fn run_experiment(config: &ExperimentConfig) -> super::Result<ExperimentReport> {
    let mut cells = Vec::new();
    for &n in &config.layer_sizes {
        for &d in &config.densities {
            let graphs: Vec<BipartiteGraph> = (0..config.instances_per_cell)
                .map(|i| random_bipartite(n, d, cell_instance_seed(config.instance_seed, n, d, i)))
                .collect();

            // exact optimum per instance when the brute force is affordable
            let optima: Option<Vec<u64>> = if n <= config.optimum_max_layer {
                let limits = BruteForceLimits {
                    max_layer: config.optimum_max_layer,
                    ..BruteForceLimits::default()
                };
                Some(
                    graphs
                        .par_iter()
                        .map(|g| tlcm_optimum(g, &limits).map(|(c, _)| c))
                        .collect::<crate::graph::Result<Vec<u64>>>()?,
                )
            } else {
                None
            };

            let mut cell = ExperimentCell {
                n,
                d,
                time_linear_ms: 0.0,
                constraints_linear: 0,
                crossings_linear: 0.0,
                time_quadratic_ms: 0.0,
                constraints_quadratic: 0,
                crossings_quadratic: 0.0,
                optimum: optima
                    .as_ref()
                    .map(|o| o.iter().sum::<u64>() as f64 / o.len().max(1) as f64),
                gap_linear: None,
                gap_quadratic: None,
                infeasible_linear: 0,
                infeasible_quadratic: 0,
            };

            for mode in [Transitivity::Linear, Transitivity::Quadratic] {
                let runs: Vec<super::Result<(ModeRun, usize)>> = graphs
                    .par_iter()
                    .flat_map(|g| {
                        config
                            .seeds
                            .par_iter()
                            .map(move |&seed| anneal_tlcm(g, mode, &config.params, seed))
                    })
                    .collect();
                let mut time_total = 0.0;
                let mut crossings_total = 0u64;
                let mut feasible = 0usize;
                let mut infeasible = 0usize;
                let mut constraints = 0usize;
                for run in runs {
                    let (run, ccount) = run?;
                    constraints = ccount;
                    time_total += run.result.wall_time_ms;
                    match run.crossings {
                        Some(c) => {
                            crossings_total += c;
                            feasible += 1;
                        }
                        None => infeasible += 1,
                    }
                }
                let runs_total = (config.instances_per_cell * config.seeds.len()).max(1);
                let avg_time = time_total / runs_total as f64;
                let avg_cross = crossings_total as f64 / feasible.max(1) as f64;
                let gap = cell
                    .optimum
                    .map(|opt| avg_cross - opt)
                    .filter(|_| feasible > 0);
                match mode {
                    Transitivity::Linear => {
                        cell.time_linear_ms = avg_time;
                        cell.constraints_linear = constraints;
                        cell.crossings_linear = avg_cross;
                        cell.gap_linear = gap;
                        cell.infeasible_linear = infeasible;
                    }
                    Transitivity::Quadratic => {
                        cell.time_quadratic_ms = avg_time;
                        cell.constraints_quadratic = constraints;
                        cell.crossings_quadratic = avg_cross;
                        cell.gap_quadratic = gap;
                        cell.infeasible_quadratic = infeasible;
                    }
                }
            }
            cells.push(cell);
        }
    }
    Ok(ExperimentReport { cells })
}
