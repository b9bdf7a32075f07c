//! Annealers. [`SimulatedAnnealer`] runs single-bit-flip Metropolis over a
//! raw QUBO with incremental energy updates through cached local fields; a
//! geometric temperature schedule is calibrated from probe flips.
//! [`CboAnnealer`] runs the same machinery over a constrained model's own
//! variables, the way a hybrid constraint-handling solver consumes a CBO
//! directly.

use super::QuboModel;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnnealParams {
    /// Total sweeps (each sweep attempts one flip per variable).
    pub sweeps: usize,
    /// Geometric temperature decay applied per sweep.
    pub decay: f64,
    /// Starting temperature; calibrated for ~0.8 uphill acceptance over 100
    /// probe flips when absent.
    pub initial_temperature: Option<f64>,
    /// Independent quenches sharing the sweep budget; the best state wins.
    pub restarts: usize,
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams {
            sweeps: 10_000,
            decay: 0.95,
            initial_temperature: None,
            restarts: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnnealResult {
    pub assignment: Vec<bool>,
    /// Exact energy of `assignment` under the annealer's objective
    /// (integer arithmetic throughout).
    pub energy: i64,
    /// Objective value of the source model, filled by the pipeline.
    pub objective_value: Option<i64>,
    /// Broken source-model constraints, filled by the pipeline.
    pub constraint_violations: usize,
    pub wall_time_ms: f64,
    pub sweeps: usize,
}

pub trait Annealer {
    fn solve(&self, qubo: &QuboModel, params: &AnnealParams, seed: u64) -> AnnealResult;
}

/// The shipped QUBO annealer. A remote-service implementation would slot in
/// behind the same trait.
#[derive(Debug, Default, Clone, Copy)]
pub struct SimulatedAnnealer;

struct State {
    assignment: Vec<bool>,
    /// field[k] = Q_kk + sum_j Q_kj x_j over neighbors j.
    field: Vec<i64>,
    energy: i64,
}

struct Problem {
    n: usize,
    diag: Vec<i64>,
    neighbors: Vec<Vec<(u32, i64)>>,
    offset: i64,
}

impl Problem {
    fn new(qubo: &QuboModel) -> Self {
        let n = qubo.num_vars;
        let mut diag = vec![0i64; n];
        let mut neighbors = vec![Vec::new(); n];
        for (&(i, j), &c) in &qubo.terms {
            if i == j {
                diag[i as usize] += c;
            } else {
                neighbors[i as usize].push((j, c));
                neighbors[j as usize].push((i, c));
            }
        }
        Problem {
            n,
            diag,
            neighbors,
            offset: qubo.offset,
        }
    }

    fn random_state(&self, rng: &mut ChaCha8Rng) -> State {
        let assignment: Vec<bool> = (0..self.n).map(|_| rng.gen()).collect();
        let mut field = self.diag.clone();
        for k in 0..self.n {
            for &(j, c) in &self.neighbors[k] {
                if assignment[j as usize] {
                    field[k] += c;
                }
            }
        }
        let mut energy = self.offset;
        for k in 0..self.n {
            if assignment[k] {
                energy += self.diag[k];
                for &(j, c) in &self.neighbors[k] {
                    if j as usize > k && assignment[j as usize] {
                        energy += c;
                    }
                }
            }
        }
        State {
            assignment,
            field,
            energy,
        }
    }

    fn delta(&self, state: &State, k: usize) -> i64 {
        if state.assignment[k] {
            -state.field[k]
        } else {
            state.field[k]
        }
    }

    fn flip(&self, state: &mut State, k: usize) {
        let delta = self.delta(state, k);
        state.energy += delta;
        state.assignment[k] = !state.assignment[k];
        let sign = if state.assignment[k] { 1 } else { -1 };
        for &(j, c) in &self.neighbors[k] {
            state.field[j as usize] += sign * c;
        }
    }
}

/// Mean uphill step over 100 probe flips, scaled for ~0.8 acceptance.
fn calibrate_t0(uphill: &[f64]) -> f64 {
    if uphill.is_empty() {
        return 1.0;
    }
    let mean = uphill.iter().sum::<f64>() / uphill.len() as f64;
    mean / (1.0f64 / 0.8).ln()
}

impl Annealer for SimulatedAnnealer {
    fn solve(&self, qubo: &QuboModel, params: &AnnealParams, seed: u64) -> AnnealResult {
        let start = Instant::now();
        let problem = Problem::new(qubo);
        let restarts = params.restarts.max(1);
        let sweeps_per_restart = (params.sweeps / restarts).max(1);
        let mut best: Option<(i64, Vec<bool>)> = None;

        for restart in 0..restarts {
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed ^ (restart as u64).wrapping_mul(0x9e3779b97f4a7c15),
            );
            let mut state = problem.random_state(&mut rng);
            let mut temperature = params.initial_temperature.unwrap_or_else(|| {
                let uphill: Vec<f64> = (0..100)
                    .filter_map(|_| {
                        if problem.n == 0 {
                            return None;
                        }
                        let k = rng.gen_range(0..problem.n);
                        let d = problem.delta(&state, k);
                        (d > 0).then_some(d as f64)
                    })
                    .collect();
                calibrate_t0(&uphill)
            });
            let mut best_local = (state.energy, state.assignment.clone());
            for _ in 0..sweeps_per_restart {
                for _ in 0..problem.n {
                    let k = rng.gen_range(0..problem.n);
                    let delta = problem.delta(&state, k);
                    let accept = delta <= 0
                        || (temperature > 0.0
                            && rng.gen::<f64>() < (-(delta as f64) / temperature).exp());
                    if accept {
                        problem.flip(&mut state, k);
                        if state.energy < best_local.0 {
                            best_local = (state.energy, state.assignment.clone());
                        }
                    }
                }
                temperature *= params.decay;
            }
            if best.as_ref().is_none_or(|(e, _)| best_local.0 < *e) {
                best = Some(best_local);
            }
        }

        let (energy, assignment) = best.unwrap_or((qubo.offset, Vec::new()));
        debug_assert_eq!(energy, qubo.energy(&assignment));
        AnnealResult {
            assignment,
            energy,
            objective_value: None,
            constraint_violations: 0,
            wall_time_ms: start.elapsed().as_secs_f64() * 1000.0,
            sweeps: sweeps_per_restart * restarts,
        }
    }
}

/// Metropolis annealing over a CBO's own variables: two-variable consistency
/// equalities (x_a + x_b = 1) are presolved into complement pairs so one
/// move swaps a precedence direction, and the remaining constraints enter
/// the energy as penalty * shortfall^2. Handles constraints and objectives
/// of any degree, so no linearization is needed.
#[derive(Debug, Default, Clone, Copy)]
pub struct CboAnnealer;

struct CboProblem<'m> {
    model: &'m super::CboModel,
    penalty: i64,
    /// One representative variable per complement pair plus all unpaired.
    free: Vec<u32>,
    /// complement[b] = Some(a): x_b is pinned to 1 - x_a.
    complement: Vec<Option<u32>>,
    /// Constraints kept as penalties (presolved equalities excluded).
    active: Vec<usize>,
    /// Flattened objective terms.
    obj_terms: Vec<(Vec<u32>, i64)>,
    /// Per free slot: the active-constraint positions it can change.
    pen_touch: Vec<Vec<usize>>,
    /// Per free slot: the objective terms it can change.
    obj_touch: Vec<Vec<usize>>,
}

impl<'m> CboProblem<'m> {
    fn new(model: &'m super::CboModel, penalty: i64) -> Self {
        let n = model.vars.len();
        let mut complement: Vec<Option<u32>> = vec![None; n];
        let mut presolved = vec![false; model.constraints.len()];
        for (ci, c) in model.constraints.iter().enumerate() {
            if c.relation != super::Relation::Eq || c.bound != 1 {
                continue;
            }
            let mut unit_vars = Vec::new();
            let mut plain = true;
            for (m, &coeff) in c.poly.terms() {
                match (m.len(), coeff) {
                    (1, 1) => unit_vars.push(m[0]),
                    _ => plain = false,
                }
            }
            if plain && unit_vars.len() == 2 {
                let (a, b) = (unit_vars[0], unit_vars[1]);
                if a != b && complement[a as usize].is_none() && complement[b as usize].is_none() {
                    complement[b as usize] = Some(a);
                    presolved[ci] = true;
                }
            }
        }
        let free: Vec<u32> = (0..n as u32)
            .filter(|&v| complement[v as usize].is_none())
            .collect();
        let active: Vec<usize> = (0..model.constraints.len())
            .filter(|&ci| !presolved[ci])
            .collect();

        // slot resolution: a variable maps to the slot of its representative
        let mut slot_of = vec![u32::MAX; n];
        for (slot, &v) in free.iter().enumerate() {
            slot_of[v as usize] = slot as u32;
        }
        for (b, comp) in complement.iter().enumerate() {
            if let Some(a) = comp {
                slot_of[b] = slot_of[*a as usize];
            }
        }

        let mut pen_touch = vec![Vec::new(); free.len()];
        for (pos, &ci) in active.iter().enumerate() {
            let mut slots: Vec<u32> = model.constraints[ci]
                .poly
                .terms()
                .flat_map(|(m, _)| m.iter().map(|&v| slot_of[v as usize]))
                .collect();
            slots.sort_unstable();
            slots.dedup();
            for slot in slots {
                pen_touch[slot as usize].push(pos);
            }
        }
        let obj_terms: Vec<(Vec<u32>, i64)> = model
            .objective
            .terms()
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        let mut obj_touch = vec![Vec::new(); free.len()];
        for (ti, (m, _)) in obj_terms.iter().enumerate() {
            let mut slots: Vec<u32> = m.iter().map(|&v| slot_of[v as usize]).collect();
            slots.sort_unstable();
            slots.dedup();
            for slot in slots {
                obj_touch[slot as usize].push(ti);
            }
        }
        CboProblem {
            model,
            penalty,
            free,
            complement,
            active,
            obj_terms,
            pen_touch,
            obj_touch,
        }
    }

    /// Expand free-variable values into a full assignment.
    fn expand(&self, free_values: &[bool]) -> Vec<bool> {
        let mut full = vec![false; self.model.vars.len()];
        for (slot, &v) in self.free.iter().enumerate() {
            full[v as usize] = free_values[slot];
        }
        for (b, comp) in self.complement.iter().enumerate() {
            if let Some(a) = comp {
                full[b] = !full[*a as usize];
            }
        }
        full
    }

    fn shortfall(&self, ci: usize, value: i64) -> i64 {
        let c = &self.model.constraints[ci];
        match c.relation {
            super::Relation::Eq => (value - c.bound).abs(),
            super::Relation::Le => (value - c.bound).max(0),
            super::Relation::Lt => (value - (c.bound - 1)).max(0),
            super::Relation::Ge => (c.bound - value).max(0),
        }
    }

    fn energy(&self, full: &[bool]) -> i64 {
        let mut e = self.model.objective.eval(full);
        for &ci in &self.active {
            let s = self.shortfall(ci, self.model.constraints[ci].poly.eval(full));
            e += self.penalty * s * s;
        }
        e
    }

    fn flip(&self, full: &mut [bool], slot: usize) {
        let v = self.free[slot] as usize;
        full[v] = !full[v];
        for (b, comp) in self.complement.iter().enumerate() {
            if *comp == Some(self.free[slot]) {
                full[b] = !full[b];
            }
        }
    }

    /// Objective terms plus penalties the slot can affect.
    fn local_energy(&self, full: &[bool], slot: usize) -> i64 {
        let mut e = 0i64;
        for &ti in &self.obj_touch[slot] {
            let (m, c) = &self.obj_terms[ti];
            if m.iter().all(|&v| full[v as usize]) {
                e += c;
            }
        }
        for &pos in &self.pen_touch[slot] {
            let ci = self.active[pos];
            let s = self.shortfall(ci, self.model.constraints[ci].poly.eval(full));
            e += self.penalty * s * s;
        }
        e
    }

    /// Exact energy delta of flipping `slot` (untouched terms cancel).
    fn delta(&self, full: &mut [bool], slot: usize) -> i64 {
        let before = self.local_energy(full, slot);
        self.flip(full, slot);
        let after = self.local_energy(full, slot);
        self.flip(full, slot);
        after - before
    }
}

impl CboAnnealer {
    pub fn solve(
        &self,
        model: &super::CboModel,
        penalty: i64,
        params: &AnnealParams,
        seed: u64,
    ) -> AnnealResult {
        let start = Instant::now();
        let problem = CboProblem::new(model, penalty);
        let n = problem.free.len();
        let restarts = params.restarts.max(1);
        let sweeps_per_restart = (params.sweeps / restarts).max(1);
        let mut best: Option<(i64, Vec<bool>)> = None;

        for restart in 0..restarts {
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed ^ (restart as u64).wrapping_mul(0x9e3779b97f4a7c15),
            );
            let free_values: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
            let mut full = problem.expand(&free_values);
            let mut energy = problem.energy(&full);
            let mut temperature = params.initial_temperature.unwrap_or_else(|| {
                let uphill: Vec<f64> = (0..100)
                    .filter_map(|_| {
                        if n == 0 {
                            return None;
                        }
                        let slot = rng.gen_range(0..n);
                        let d = problem.delta(&mut full, slot);
                        (d > 0).then_some(d as f64)
                    })
                    .collect();
                calibrate_t0(&uphill)
            });
            let mut best_local = (energy, full.clone());
            for _ in 0..sweeps_per_restart {
                for _ in 0..n.max(1) {
                    if n == 0 {
                        break;
                    }
                    let slot = rng.gen_range(0..n);
                    let d = problem.delta(&mut full, slot);
                    let accept = d <= 0
                        || (temperature > 0.0
                            && rng.gen::<f64>() < (-(d as f64) / temperature).exp());
                    if accept {
                        problem.flip(&mut full, slot);
                        energy += d;
                        if energy < best_local.0 {
                            best_local = (energy, full.clone());
                        }
                    }
                }
                temperature *= params.decay;
            }
            debug_assert_eq!(energy, problem.energy(&full));
            if best.as_ref().is_none_or(|(e, _)| best_local.0 < *e) {
                best = Some(best_local);
            }
        }

        let (energy, assignment) = match best {
            Some(b) => b,
            None => {
                let full = problem.expand(&[]);
                (problem.energy(&full), full)
            }
        };
        AnnealResult {
            assignment,
            energy,
            objective_value: None,
            constraint_violations: 0,
            wall_time_ms: start.elapsed().as_secs_f64() * 1000.0,
            sweeps: sweeps_per_restart * restarts,
        }
    }
}
