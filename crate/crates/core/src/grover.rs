//! End-to-end search: uniform start, phase inversion, inversion about the
//! mean, iteration scheduling, measurement, and decoding.
//!
//! The default hybrid backend exploits two facts: the oracle is
//! classical-reversible (so the sign of each basis state comes from the
//! classical predicate, or from pushing the basis state through the full
//! circuit in verification mode), and a uniform start keeps the amplitude
//! vector two-valued (one value on marked states, one on the rest). One
//! predicate sweep builds the marked set; every Grover iteration after that
//! is O(1). The dense backend evolves the full state vector and is only
//! feasible for toy sizes.

use crate::circuit::{anti, Circuit, DenseState, Gate, QubitRange, RegisterRole};
use crate::graph::{
    brute_force_solve, verify_solution, BruteForceLimits, GraphError, ProblemInstance, ProblemKind,
    Solution,
};
use crate::oracle::{build_phase_inversion, predicate, PhaseInversion};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hybrid runs sweep 2^l predicate calls and hold a 2^l-bit marked set.
pub const HYBRID_BIT_CAP: usize = 26;

#[derive(Debug, Error)]
pub enum GroverError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Circuit(#[from] crate::circuit::CircuitError),
    #[error("search register of {0} bits exceeds the hybrid cap of {1}")]
    HybridCapacity(usize, usize),
    #[error("iteration count undefined for M = 0")]
    NoSolutions,
    #[error("decoded measurement failed graph verification; gamma = {0}")]
    VerificationFailed(u64),
}

pub type Result<T> = std::result::Result<T, GroverError>;

/// Optimal iteration count floor(pi/4 sqrt(2^l / M)).
pub fn iteration_count(search_bits: usize, m_count: u128) -> Result<usize> {
    if m_count == 0 {
        return Err(GroverError::NoSolutions);
    }
    let n = 2f64.powi(search_bits as i32);
    let ratio = n / m_count as f64;
    Ok((std::f64::consts::FRAC_PI_4 * ratio.sqrt()).floor() as usize)
}

/// Closed-form success probability after `r` iterations with `M` marked
/// states: sin^2((2r+1) asin(sqrt(M/2^l))).
pub fn predicted_success(search_bits: usize, m_count: u128, r: usize) -> f64 {
    let theta = (m_count as f64 / 2f64.powi(search_bits as i32)).sqrt().asin();
    ((2 * r + 1) as f64 * theta).sin().powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    /// Oracle sign from the classical predicate (default).
    Hybrid,
    /// Oracle sign from pushing each basis state through the full
    /// phase-inversion circuit; slower, exercises the gates.
    HybridCircuit,
    /// Full state-vector evolution of the assembled circuit.
    Dense,
}

#[derive(Debug, Clone)]
pub struct GroverRun {
    pub instance: ProblemInstance,
    pub backend: Backend,
    pub shots: usize,
    pub seed: u64,
    /// Iteration override; when absent the count comes from M (brute force
    /// within guard) or the halving schedule.
    pub iterations: Option<usize>,
    pub limits: BruteForceLimits,
    pub hybrid_bit_cap: usize,
}

impl GroverRun {
    pub fn new(instance: ProblemInstance) -> Self {
        GroverRun {
            instance,
            backend: Backend::Hybrid,
            shots: 1000,
            seed: 0,
            iterations: None,
            limits: BruteForceLimits::default(),
            hybrid_bit_cap: HYBRID_BIT_CAP,
        }
    }
}

/// One row of the unknown-M halving schedule.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub m_guess: u128,
    pub iterations: usize,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroverOutcome {
    pub problem: ProblemKind,
    pub search_bits: usize,
    /// Number of marked basis states, when established.
    pub m: Option<u128>,
    /// Iterations of the final (or only) amplification run.
    pub iterations: usize,
    pub shots: usize,
    pub success_rate: f64,
    pub predicted_success: Option<f64>,
    pub solution: Option<Solution>,
    /// Measured search bitstrings, one per shot.
    pub measured: Vec<u64>,
    /// Halving-schedule log; empty when M was known up front.
    pub schedule: Vec<ScheduleEntry>,
}

/// Marked-state bitset with a word-level rank index for O(log) select.
pub struct MarkedSet {
    pub search_bits: usize,
    words: Vec<u64>,
    prefix: Vec<u64>,
    pub count: u128,
}

impl MarkedSet {
    /// Sweep the predicate over all 2^l basis states (parallel over chunks).
    pub fn from_predicate(search_bits: usize, marked: impl Fn(u64) -> bool + Sync) -> Self {
        let total: u64 = 1 << search_bits;
        let n_words = total.div_ceil(64) as usize;
        let words: Vec<u64> = (0..n_words as u64)
            .into_par_iter()
            .map(|w| {
                let mut word = 0u64;
                let base = w * 64;
                for b in 0..64 {
                    let gamma = base + b;
                    if gamma < total && marked(gamma) {
                        word |= 1 << b;
                    }
                }
                word
            })
            .collect();
        let mut prefix = Vec::with_capacity(n_words + 1);
        let mut acc = 0u64;
        prefix.push(0);
        for w in &words {
            acc += w.count_ones() as u64;
            prefix.push(acc);
        }
        MarkedSet {
            search_bits,
            count: acc as u128,
            words,
            prefix,
        }
    }

    pub fn contains(&self, gamma: u64) -> bool {
        self.words[(gamma / 64) as usize] >> (gamma % 64) & 1 == 1
    }

    /// The `rank`-th marked state (0-based).
    fn select_marked(&self, rank: u64) -> u64 {
        let mut lo = 0usize;
        let mut hi = self.words.len();
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if self.prefix[mid] <= rank {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut remaining = rank - self.prefix[lo];
        let mut word = self.words[lo];
        let mut bit = 0;
        loop {
            if word & 1 == 1 {
                if remaining == 0 {
                    return lo as u64 * 64 + bit;
                }
                remaining -= 1;
            }
            word >>= 1;
            bit += 1;
        }
    }

    /// The `rank`-th unmarked state (0-based).
    fn select_unmarked(&self, rank: u64) -> u64 {
        let mut lo = 0usize;
        let mut hi = self.words.len();
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if (mid as u64 * 64).saturating_sub(self.prefix[mid]) <= rank {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut remaining = rank - (lo as u64 * 64 - self.prefix[lo]);
        let mut word = self.words[lo];
        let mut bit = 0;
        loop {
            if word & 1 == 0 {
                if remaining == 0 {
                    return lo as u64 * 64 + bit;
                }
                remaining -= 1;
            }
            word >>= 1;
            bit += 1;
        }
    }
}

/// Exact Grover dynamics from a uniform start: the state stays constant on
/// the marked set and constant on its complement, so two amplitudes suffice.
pub struct HybridEngine {
    pub marked: MarkedSet,
    pub amp_marked: f64,
    pub amp_unmarked: f64,
}

impl HybridEngine {
    pub fn new(marked: MarkedSet) -> Self {
        let norm = 2f64.powi(marked.search_bits as i32).sqrt().recip();
        HybridEngine {
            marked,
            amp_marked: norm,
            amp_unmarked: norm,
        }
    }

    pub fn reset_uniform(&mut self) {
        let norm = 2f64.powi(self.marked.search_bits as i32).sqrt().recip();
        self.amp_marked = norm;
        self.amp_unmarked = norm;
    }

    /// One oracle + diffusion round.
    pub fn iterate(&mut self) {
        let n = 2f64.powi(self.marked.search_bits as i32);
        let m = self.marked.count as f64;
        self.amp_marked = -self.amp_marked;
        let mean = (m * self.amp_marked + (n - m) * self.amp_unmarked) / n;
        self.amp_marked = 2.0 * mean - self.amp_marked;
        self.amp_unmarked = 2.0 * mean - self.amp_unmarked;
    }

    pub fn iterate_n(&mut self, rounds: usize) {
        for _ in 0..rounds {
            self.iterate();
        }
    }

    /// Probability that a measurement lands on a marked state.
    pub fn success_probability(&self) -> f64 {
        self.marked.count as f64 * self.amp_marked * self.amp_marked
    }

    pub fn norm(&self) -> f64 {
        let n = 2f64.powi(self.marked.search_bits as i32);
        let m = self.marked.count as f64;
        (m * self.amp_marked.powi(2) + (n - m) * self.amp_unmarked.powi(2)).sqrt()
    }

    /// Materialize the full amplitude vector (small l only).
    pub fn amplitudes(&self) -> Vec<f64> {
        let total = 1u64 << self.marked.search_bits;
        (0..total)
            .map(|g| {
                if self.marked.contains(g) {
                    self.amp_marked
                } else {
                    self.amp_unmarked
                }
            })
            .collect()
    }

    /// Sample one measurement.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> u64 {
        let total = 1u128 << self.marked.search_bits;
        let m = self.marked.count;
        let p_marked = self.success_probability().clamp(0.0, 1.0);
        if m > 0 && (m == total || rng.gen::<f64>() < p_marked) {
            let rank = rng.gen_range(0..m as u64);
            self.marked.select_marked(rank)
        } else {
            let rank = rng.gen_range(0..(total - m) as u64);
            self.marked.select_unmarked(rank)
        }
    }
}

/// Diffusion operator as gates: Hadamards, a sign flip of the all-zeros
/// state kicked back through the |-> wire, Hadamards again. This realizes
/// the inversion about the mean up to a global -1 per application.
pub fn diffusion_gates(search: QubitRange, phase: usize) -> Vec<Gate> {
    let mut gates = Vec::new();
    for q in search.iter() {
        gates.push(Gate::h(q));
    }
    gates.push(Gate::mcx(search.iter().map(anti).collect(), phase));
    for q in search.iter() {
        gates.push(Gate::h(q));
    }
    gates
}

/// Analytic inversion about the mean on a raw amplitude slice.
pub fn reflect_about_mean(amps: &mut [(f64, f64)]) {
    let n = amps.len() as f64;
    let mean_re = amps.iter().map(|a| a.0).sum::<f64>() / n;
    let mean_im = amps.iter().map(|a| a.1).sum::<f64>() / n;
    for a in amps.iter_mut() {
        a.0 = 2.0 * mean_re - a.0;
        a.1 = 2.0 * mean_im - a.1;
    }
}

/// Assemble the full dense circuit: uniform preparation, then `r` rounds of
/// phase inversion followed by diffusion.
pub fn dense_search_circuit(pi: &PhaseInversion, r: usize) -> Circuit {
    let mut c = Circuit {
        registers: pi.circuit.registers.clone(),
        gates: Vec::new(),
        spans: Vec::new(),
    };
    c.push(Gate::x(pi.phase));
    c.push(Gate::h(pi.phase));
    for q in pi.search.iter() {
        c.push(Gate::h(q));
    }
    for _ in 0..r {
        c.gates.extend(pi.circuit.gates.iter().cloned());
        for g in diffusion_gates(pi.search, pi.phase) {
            c.push(g);
        }
    }
    c
}

fn hybrid_marked_set(
    instance: &ProblemInstance,
    backend: Backend,
    pi: Option<&PhaseInversion>,
) -> Result<MarkedSet> {
    let l = instance.search_bits();
    match backend {
        Backend::Hybrid => Ok(MarkedSet::from_predicate(l, |g| {
            predicate(instance, g).expect("in-range gamma")
        })),
        Backend::HybridCircuit => {
            let pi = pi.expect("circuit present in verification mode");
            Ok(MarkedSet::from_predicate(l, |g| {
                let (sign, clean) = pi.sign_of(g).expect("basis run");
                assert!(clean, "ancillas dirty for gamma {g:b}");
                sign
            }))
        }
        Backend::Dense => unreachable!("dense backend does not use a marked set"),
    }
}

/// Run the search. With M known and positive the optimal iteration count is
/// used directly; with M = 0 or unknown the halving schedule guesses
/// M = 2^l, 2^{l-1}, ..., 1, verifying one sample per guess.
pub fn run(config: &GroverRun) -> Result<GroverOutcome> {
    config.instance.validate()?;
    let l = config.instance.search_bits();
    match config.backend {
        Backend::Dense => run_dense(config, l),
        _ => run_hybrid(config, l),
    }
}

fn run_hybrid(config: &GroverRun, l: usize) -> Result<GroverOutcome> {
    if l > config.hybrid_bit_cap {
        return Err(GroverError::HybridCapacity(l, config.hybrid_bit_cap));
    }
    let pi = match config.backend {
        Backend::HybridCircuit => Some(build_phase_inversion(&config.instance)?),
        _ => None,
    };
    let marked = hybrid_marked_set(&config.instance, config.backend, pi.as_ref())?;
    let mut engine = HybridEngine::new(marked);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    // M from brute force when the instance is small enough; the sweep count
    // is authoritative and they must agree (cross-checked in tests)
    let m_known = brute_force_solve(&config.instance, &config.limits)
        .ok()
        .map(|r| r.accepting_states);
    let m = engine.marked.count;
    if let Some(mk) = m_known {
        debug_assert_eq!(mk, m, "brute-force M disagrees with predicate sweep");
    }

    if m > 0 {
        let r = match config.iterations {
            Some(r) => r,
            None => iteration_count(l, m)?,
        };
        engine.iterate_n(r);
        let predicted = engine.success_probability();
        let mut measured = Vec::with_capacity(config.shots);
        let mut hits = 0usize;
        let mut solution = None;
        for _ in 0..config.shots {
            let gamma = engine.sample(&mut rng);
            if engine.marked.contains(gamma) {
                hits += 1;
                if solution.is_none() {
                    let decoded = crate::oracle::decode_gamma(&config.instance, gamma)?
                        .ok_or(GroverError::VerificationFailed(gamma))?;
                    if !verify_solution(&config.instance, &decoded, usize::MAX)? {
                        return Err(GroverError::VerificationFailed(gamma));
                    }
                    solution = Some(decoded);
                }
            }
            measured.push(gamma);
        }
        Ok(GroverOutcome {
            problem: config.instance.kind(),
            search_bits: l,
            m: Some(m),
            iterations: r,
            shots: config.shots,
            success_rate: hits as f64 / config.shots.max(1) as f64,
            predicted_success: Some(predicted),
            solution,
            measured,
            schedule: Vec::new(),
        })
    } else {
        // no marked states: the halving schedule runs its course and
        // honestly reports nothing
        let mut schedule = Vec::new();
        let mut last_r = 0;
        for j in (0..=l).rev() {
            let m_guess = 1u128 << j;
            let r = iteration_count(l, m_guess)?;
            engine.reset_uniform();
            engine.iterate_n(r);
            let gamma = engine.sample(&mut rng);
            let verified = engine.marked.contains(gamma);
            schedule.push(ScheduleEntry {
                m_guess,
                iterations: r,
                verified,
            });
            last_r = r;
        }
        Ok(GroverOutcome {
            problem: config.instance.kind(),
            search_bits: l,
            m: Some(0),
            iterations: last_r,
            shots: 0,
            success_rate: 0.0,
            predicted_success: Some(0.0),
            solution: None,
            measured: Vec::new(),
            schedule,
        })
    }
}

fn run_dense(config: &GroverRun, l: usize) -> Result<GroverOutcome> {
    let pi = build_phase_inversion(&config.instance)?;
    let m_report = brute_force_solve(&config.instance, &config.limits)?;
    let m = m_report.accepting_states;
    let r = match config.iterations {
        Some(r) => r,
        None => {
            if m == 0 {
                return Err(GroverError::NoSolutions);
            }
            iteration_count(l, m)?
        }
    };
    let circuit = dense_search_circuit(&pi, r);
    let state = circuit.run_dense(&DenseState::zero(circuit.total_qubits()))?;

    // marginal over the search register (ancillas are zero, the phase wire
    // splits amplitude between its two values)
    let probs = state.probabilities();
    let mut search_probs = vec![0.0f64; 1 << l];
    for (idx, p) in probs.iter().enumerate() {
        search_probs[idx & ((1 << l) - 1)] += p;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut measured = Vec::with_capacity(config.shots);
    let mut hits = 0;
    let mut solution = None;
    for _ in 0..config.shots {
        let mut u: f64 = rng.gen();
        let mut gamma = 0u64;
        for (g, p) in search_probs.iter().enumerate() {
            if u < *p {
                gamma = g as u64;
                break;
            }
            u -= p;
        }
        if predicate(&config.instance, gamma)? {
            hits += 1;
            if solution.is_none() {
                let decoded = crate::oracle::decode_gamma(&config.instance, gamma)?
                    .ok_or(GroverError::VerificationFailed(gamma))?;
                if !verify_solution(&config.instance, &decoded, usize::MAX)? {
                    return Err(GroverError::VerificationFailed(gamma));
                }
                solution = Some(decoded);
            }
        }
        measured.push(gamma);
    }
    let predicted = (m > 0).then(|| predicted_success(l, m, r));
    Ok(GroverOutcome {
        problem: config.instance.kind(),
        search_bits: l,
        m: Some(m),
        iterations: r,
        shots: config.shots,
        success_rate: hits as f64 / config.shots.max(1) as f64,
        predicted_success: predicted,
        solution,
        measured,
        schedule: Vec::new(),
    })
}

/// Toy dense Grover over an explicit marked list: search register plus one
/// |-> wire, oracle = one sign-flip MCX per marked state. Returns the
/// amplitude vector restricted to the search register. Each oracle and each
/// diffusion applies a global -1, so the result equals the hybrid amplitudes
/// times (-1)^r when r oracle calls flip... the diffusion construction
/// contributes one global sign per round, i.e. overall (-1)^r.
pub fn dense_toy_amplitudes(search_bits: usize, marked: &[u64], r: usize) -> Vec<f64> {
    let mut c = Circuit::new();
    let search = c.add_register("search", search_bits, RegisterRole::Input);
    let phase = c.add_register("minus", 1, RegisterRole::Phase);
    c.push(Gate::x(phase.idx(0)));
    c.push(Gate::h(phase.idx(0)));
    for q in search.iter() {
        c.push(Gate::h(q));
    }
    for _ in 0..r {
        for &g in marked {
            let controls = (0..search_bits)
                .map(|b| {
                    if g >> b & 1 == 1 {
                        crate::circuit::ctrl(search.idx(b))
                    } else {
                        anti(search.idx(b))
                    }
                })
                .collect();
            c.push(Gate::mcx(controls, phase.idx(0)));
        }
        for gate in diffusion_gates(search, phase.idx(0)) {
            c.push(gate);
        }
    }
    let state = c.run_dense(&DenseState::zero(c.total_qubits())).unwrap();
    // phase wire is |->: the 0-component carries amp/sqrt(2)
    let sqrt2 = std::f64::consts::SQRT_2;
    (0..1usize << search_bits)
        .map(|s| state.amps[s].0 * sqrt2)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BipartiteGraph;

    #[test]
    fn iteration_count_examples() {
        assert_eq!(iteration_count(8, 24).unwrap(), 2);
        assert_eq!(iteration_count(4, 1).unwrap(), 3);
        assert_eq!(iteration_count(6, 1 << 6).unwrap(), 0);
        assert!(matches!(iteration_count(4, 0), Err(GroverError::NoSolutions)));
    }

    #[test]
    fn diffusion_fixes_uniform_state() {
        let mut amps = vec![(0.25, 0.0); 16];
        reflect_about_mean(&mut amps);
        for a in &amps {
            assert!((a.0 - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn diffusion_is_an_involution() {
        let mut amps: Vec<(f64, f64)> = (0..8).map(|i| (i as f64 * 0.1, -(i as f64) * 0.05)).collect();
        let orig = amps.clone();
        reflect_about_mean(&mut amps);
        reflect_about_mean(&mut amps);
        for (a, b) in amps.iter().zip(orig.iter()) {
            assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
        }
    }

    #[test]
    fn single_marked_of_four_found_in_one_iteration() {
        // textbook exact case: l=2, M=1, r=1 drives success to 1
        let marked = MarkedSet::from_predicate(2, |g| g == 2);
        let mut engine = HybridEngine::new(marked);
        engine.iterate();
        assert!((engine.success_probability() - 1.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            assert_eq!(engine.sample(&mut rng), 2);
        }
    }

    #[test]
    fn hybrid_matches_dense_on_toy_predicates() {
        for l in [3usize, 5, 8] {
            let marked_list: Vec<u64> = (0..1u64 << l).filter(|g| g % 5 == 1).collect();
            for r in 0..4usize {
                let dense = dense_toy_amplitudes(l, &marked_list, r);
                let set = MarkedSet::from_predicate(l, |g| g % 5 == 1);
                let mut engine = HybridEngine::new(set);
                engine.iterate_n(r);
                let hybrid = engine.amplitudes();
                let sign = if r % 2 == 1 { -1.0 } else { 1.0 };
                for (d, h) in dense.iter().zip(hybrid.iter()) {
                    assert!(
                        (d - sign * h).abs() < 1e-9,
                        "l={l} r={r}: dense {d} vs hybrid {h}"
                    );
                }
            }
        }
    }

    #[test]
    fn norm_preserved_across_iterations() {
        let set = MarkedSet::from_predicate(10, |g| g.count_ones() == 3);
        let mut engine = HybridEngine::new(set);
        for _ in 0..50 {
            engine.iterate();
            assert!((engine.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn success_follows_closed_form() {
        let set = MarkedSet::from_predicate(12, |g| g % 37 == 0);
        let m = set.count;
        let mut engine = HybridEngine::new(set);
        for r in 0..30usize {
            let formula = predicted_success(12, m, r);
            assert!(
                (engine.success_probability() - formula).abs() < 1e-9,
                "r = {r}"
            );
            engine.iterate();
        }
    }

    #[test]
    fn tlcm_k22_end_to_end() {
        let instance = ProblemInstance::Tlcm {
            graph: BipartiteGraph::complete(2, 2),
            rho: 1,
        };
        let config = GroverRun::new(instance);
        let outcome = run(&config).unwrap();
        assert_eq!(outcome.search_bits, 8);
        assert_eq!(outcome.m, Some(24));
        assert_eq!(outcome.iterations, 2);
        let expect = predicted_success(8, 24, 2);
        assert!((outcome.predicted_success.unwrap() - expect).abs() < 1e-9);
        assert!((outcome.success_rate - expect).abs() < 0.05);
        assert!(outcome.solution.is_some());
        assert_eq!(outcome.measured.len(), 1000);
    }

    #[test]
    fn hybrid_circuit_backend_agrees() {
        let instance = ProblemInstance::Tlcm {
            graph: BipartiteGraph::complete(2, 2),
            rho: 1,
        };
        let mut config = GroverRun::new(instance);
        config.backend = Backend::HybridCircuit;
        config.shots = 50;
        let outcome = run(&config).unwrap();
        assert_eq!(outcome.m, Some(24));
        assert!(outcome.solution.is_some());
    }

    #[test]
    fn no_solution_runs_the_schedule() {
        // rho = 0 on K22 is unsatisfiable
        let instance = ProblemInstance::Tlcm {
            graph: BipartiteGraph::complete(2, 2),
            rho: 0,
        };
        let outcome = run(&GroverRun::new(instance)).unwrap();
        assert!(outcome.solution.is_none());
        assert_eq!(outcome.m, Some(0));
        assert_eq!(outcome.schedule.len(), 9); // guesses 2^8 down to 1
        assert!(outcome.schedule.iter().all(|e| !e.verified));
    }

    #[test]
    fn capacity_guard() {
        let instance = ProblemInstance::Tlcm {
            graph: BipartiteGraph::complete(2, 2),
            rho: 1,
        };
        let mut config = GroverRun::new(instance);
        config.hybrid_bit_cap = 4;
        assert!(matches!(
            run(&config),
            Err(GroverError::HybridCapacity(8, 4))
        ));
    }

    #[test]
    fn dense_backend_on_a_tiny_instance() {
        // K_{1,1}: l = 2, the two permutation encodings are marked, so
        // M = N/2 pins the success probability at one half
        let instance = ProblemInstance::Tlcm {
            graph: BipartiteGraph::complete(1, 1),
            rho: 1,
        };
        let mut config = GroverRun::new(instance.clone());
        config.backend = Backend::Dense;
        config.shots = 2000;
        let outcome = run(&config).unwrap();
        assert_eq!(outcome.m, Some(2));
        let expect = predicted_success(2, 2, outcome.iterations);
        assert!((expect - 0.5).abs() < 1e-12);
        assert!((outcome.success_rate - expect).abs() < 0.05);
        assert!(outcome.solution.is_some());
    }
}
