//! Solution detectors for the seven layout problems and their assembly into
//! phase-inversion circuits, plus a classical predicate mirroring each
//! circuit bit for bit.
//!
//! A phase inversion runs the input transducer(s), the problem's detector
//! pipeline, one final-check MCX onto the |-> wire, and then the mirrored
//! gate list restoring every ancilla. The classical predicate decodes the
//! same search bitstring and evaluates the same condition through the graph
//! layer; agreement between the two is the core invariant of this module.

use crate::arith::{emit_less, emit_popcount, popcount_padded, popcount_result_bits, popcount_scratch};
use crate::circuit::{anti, ctrl, Circuit, Control, Gate, Polarity, QubitRange, RegisterRole};
use crate::combin::{decode_edge_subset, decode_permutation, log2_ceil, schedule_disjoint, IntSeqEncoding};
use crate::graph::{
    BipartiteGraph, EdgeRemovalSet, Graph, GraphError, PageAssignment, ProblemInstance, Result,
    Solution, SpineOrder, TwoLevelOrder,
};
use crate::transducer::{
    emit_order_stage, emit_skewness_stage, order_extra_scratch, skew_extra_scratch, x_index,
};

/// A complete phase-inversion circuit with its wire map.
#[derive(Debug, Clone)]
pub struct PhaseInversion {
    pub circuit: Circuit,
    /// The search register: the first `l` qubits (phi, then psi/theta).
    pub search: QubitRange,
    /// The |-> wire targeted by the final check.
    pub phase: usize,
}

impl PhaseInversion {
    /// Push the basis state `gamma` through the circuit. Returns whether the
    /// sign flipped and whether every non-search, non-phase qubit came back
    /// to zero with the search bits intact.
    pub fn sign_of(&self, gamma: u64) -> crate::circuit::Result<(bool, bool)> {
        let total = self.circuit.total_qubits();
        let mut bits = vec![false; total];
        for p in 0..self.search.size {
            bits[self.search.idx(p)] = gamma >> p & 1 == 1;
        }
        let out = self.circuit.run_basis(&bits)?;
        let clean = (0..total).all(|q| out.bits[q] == bits[q]);
        Ok((out.sign < 0, clean))
    }
}

/// A detector bundle: the circuit plus the classical predicate over the same
/// encoding.
#[derive(Debug, Clone)]
pub struct OracleBundle {
    pub instance: ProblemInstance,
    pub phase_inversion: PhaseInversion,
}

impl OracleBundle {
    pub fn search_bits(&self) -> usize {
        self.phase_inversion.search.size
    }

    pub fn predicate(&self, gamma: u64) -> Result<bool> {
        predicate(&self.instance, gamma)
    }

    pub fn decode(&self, gamma: u64) -> Result<Option<Solution>> {
        decode_gamma(&self.instance, gamma)
    }
}

pub fn build_detector(instance: &ProblemInstance) -> Result<OracleBundle> {
    Ok(OracleBundle {
        instance: instance.clone(),
        phase_inversion: build_phase_inversion(instance)?,
    })
}

fn negate(c: Control) -> Control {
    Control {
        qubit: c.qubit,
        polarity: match c.polarity {
            Polarity::Control => Polarity::Anticontrol,
            Polarity::Anticontrol => Polarity::Control,
        },
    }
}

/// Control asserting that vertex `a` precedes vertex `b` in the order
/// encoded by the x block.
fn prec_control(n: usize, x: QubitRange, a: usize, b: usize) -> Control {
    if a < b {
        ctrl(x.idx(x_index(n, a, b)))
    } else {
        anti(x.idx(x_index(n, b, a)))
    }
}

/// chi wire index for the edge pair a < b.
fn chi_index(m: usize, a: usize, b: usize) -> usize {
    x_index(m, a, b)
}

/// Cross finder for two-level drawings: chi_{a,b} ^= [u-precedence differs
/// from v-precedence], two mixed-polarity Toffolis per independent pair,
/// scheduled in rounds of pairs with disjoint precedence wires.
fn emit_cross_finder_two_level(c: &mut Circuit, graph: &BipartiteGraph, x: QubitRange, chi: QubitRange) {
    let n = graph.n();
    let m = graph.m();
    let mut cells: Vec<(usize, Control, Control)> = Vec::new();
    let mut keys: Vec<Vec<usize>> = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if !graph.independent(a, b) {
                continue; // chi stays a constant-zero wire
            }
            let (ua, va) = graph.edges[a];
            let (ub, vb) = graph.edges[b];
            let u_lit = prec_control(n, x, ua, ub);
            let v_lit = prec_control(n, x, graph.size_u + va, graph.size_u + vb);
            cells.push((chi.idx(chi_index(m, a, b)), u_lit, v_lit));
            keys.push(vec![u_lit.qubit, v_lit.qubit]);
        }
    }
    let start = c.cursor();
    for round in schedule_disjoint(&keys) {
        for &ci in &round {
            let (target, u_lit, v_lit) = cells[ci];
            c.push(Gate::mcx(vec![u_lit, negate(v_lit)], target));
            c.push(Gate::mcx(vec![negate(u_lit), v_lit], target));
        }
    }
    c.mark("cross_finder_2l", start);
}

/// Cross finder for 1-page layouts: chi_{a,b} ^= [endpoints interleave],
/// eight 3-control MCX per independent pair, one per interleaving
/// arrangement; arrangements are mutually exclusive so the XOR acts as OR.
fn emit_cross_finder_book(c: &mut Circuit, graph: &Graph, x: QubitRange, chi: QubitRange) {
    let n = graph.n;
    let m = graph.m();
    let mut cells: Vec<(usize, [usize; 4])> = Vec::new();
    let mut keys: Vec<Vec<usize>> = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if !graph.independent(a, b) {
                continue;
            }
            let (p, q) = graph.edges[a];
            let (r, s) = graph.edges[b];
            cells.push((chi.idx(chi_index(m, a, b)), [p, q, r, s]));
            let mut key = vec![
                prec_control(n, x, p, r).qubit,
                prec_control(n, x, p, s).qubit,
                prec_control(n, x, q, r).qubit,
                prec_control(n, x, q, s).qubit,
            ];
            key.sort_unstable();
            key.dedup();
            keys.push(key);
        }
    }
    let start = c.cursor();
    for round in schedule_disjoint(&keys) {
        for &ci in &round {
            let (target, [p, q, r, s]) = cells[ci];
            let arrangements = [
                [p, r, q, s],
                [p, s, q, r],
                [q, r, p, s],
                [q, s, p, r],
                [r, p, s, q],
                [r, q, s, p],
                [s, p, r, q],
                [s, q, r, p],
            ];
            for arr in arrangements {
                let controls = vec![
                    prec_control(n, x, arr[0], arr[1]),
                    prec_control(n, x, arr[1], arr[2]),
                    prec_control(n, x, arr[2], arr[3]),
                ];
                c.push(Gate::mcx(controls, target));
            }
        }
    }
    c.mark("cross_finder_book", start);
}

/// Standalone two-level cross finder for inspection and tests.
pub fn build_cross_finder_two_level(graph: &BipartiteGraph) -> (Circuit, QubitRange, QubitRange) {
    let n = graph.n();
    let m = graph.m();
    let mut c = Circuit::new();
    let x = c.add_register("x", n * (n - 1) / 2, RegisterRole::Input);
    let chi = c.add_register("chi", m * (m - 1) / 2, RegisterRole::Ancilla);
    emit_cross_finder_two_level(&mut c, graph, x, chi);
    (c, x, chi)
}

/// Standalone book cross finder.
pub fn build_cross_finder_book(graph: &Graph) -> (Circuit, QubitRange, QubitRange) {
    let n = graph.n;
    let m = graph.m();
    let mut c = Circuit::new();
    let x = c.add_register("x", n * (n - 1) / 2, RegisterRole::Input);
    let chi = c.add_register("chi", m * (m - 1) / 2, RegisterRole::Ancilla);
    emit_cross_finder_book(&mut c, graph, x, chi);
    (c, x, chi)
}

/// Popcount-and-compare stage: count the ones among `input` and set
/// `g ^= [count <= bound]`, via a strict comparison against bound+1.
struct CountCompare {
    pad: QubitRange,
    scratch: QubitRange,
    count: QubitRange,
    zero: QubitRange,
    const_reg: QubitRange,
    carry: QubitRange,
}

impl CountCompare {
    fn add_registers(c: &mut Circuit, prefix: &str, width: usize) -> Self {
        let padded = popcount_padded(width);
        let kc = popcount_result_bits(padded);
        CountCompare {
            pad: c.add_register(format!("{prefix}_pad"), padded - width, RegisterRole::Ancilla),
            scratch: c.add_register(
                format!("{prefix}_scratch"),
                popcount_scratch(padded),
                RegisterRole::Ancilla,
            ),
            count: c.add_register(format!("{prefix}_count"), kc, RegisterRole::Ancilla),
            zero: c.add_register(format!("{prefix}_zero"), 1, RegisterRole::Ancilla),
            const_reg: c.add_register(format!("{prefix}_const"), kc + 1, RegisterRole::Ancilla),
            carry: c.add_register(format!("{prefix}_carry"), kc + 1, RegisterRole::Ancilla),
        }
    }

    /// Count capacity: the comparison bound is clamped so the constant
    /// register can always hold bound+1.
    fn emit(&self, c: &mut Circuit, input: &[usize], bound: u64, g: usize) {
        let wires: Vec<usize> = input.iter().copied().chain(self.pad.iter()).collect();
        emit_popcount(c, &wires, &self.scratch.as_vec(), &self.count.as_vec());
        let clamped = bound.min(input.len() as u64);
        let constant = clamped + 1;
        for (j, wire) in self.const_reg.iter().enumerate() {
            if constant >> j & 1 == 1 {
                c.push(Gate::x(wire));
            }
        }
        let lhs: Vec<usize> = self.count.iter().chain(self.zero.iter()).collect();
        emit_less(c, &lhs, &self.const_reg.as_vec(), &self.carry.as_vec(), g);
    }
}

/// Chain of Toffolis ANDing `flags` into `g` through `cascade` wires (one
/// fewer than the flag count). Single flags copy, empty flag lists set g
/// outright.
fn emit_and_cascade(c: &mut Circuit, flags: &[usize], cascade: QubitRange, g: usize) {
    match flags.len() {
        0 => c.push(Gate::x(g)),
        1 => c.push(Gate::cnot(flags[0], g)),
        _ => {
            assert!(cascade.size >= flags.len() - 2);
            let mut acc = flags[0];
            for (i, &f) in flags[1..flags.len() - 1].iter().enumerate() {
                c.push(Gate::toffoli(acc, f, cascade.idx(i)));
                acc = cascade.idx(i);
            }
            c.push(Gate::toffoli(acc, flags[flags.len() - 1], g));
        }
    }
}

/// Rounds of "no member fires" flags: for each round, compute the member
/// flags in parallel, collect their conjunction of negations into a round
/// flag, then uncompute the member flags. `emit_member` must be
/// self-inverse (all blocks in this crate are). Returns the round flags.
fn emit_rounds_none_fire(
    c: &mut Circuit,
    keys: &[Vec<usize>],
    member_flags: QubitRange,
    round_flags: QubitRange,
    mut emit_member: impl FnMut(&mut Circuit, usize, usize),
) -> Vec<usize> {
    let rounds = schedule_disjoint(keys);
    assert!(round_flags.size >= rounds.len());
    let mut out = Vec::with_capacity(rounds.len());
    for (ri, round) in rounds.iter().enumerate() {
        assert!(member_flags.size >= round.len());
        for (slot, &cell) in round.iter().enumerate() {
            emit_member(c, cell, member_flags.idx(slot));
        }
        c.push(Gate::mcx(
            round.iter().enumerate().map(|(slot, _)| anti(member_flags.idx(slot))).collect(),
            round_flags.idx(ri),
        ));
        for (slot, &cell) in round.iter().enumerate() {
            emit_member(c, cell, member_flags.idx(slot));
        }
        out.push(round_flags.idx(ri));
    }
    out
}

/// Shared assembly: search registers, transducer stage(s), detector stage,
/// final check, mirror.
struct Frame {
    c: Circuit,
    n: usize,
    phi: QubitRange,
    psi: Option<QubitRange>,
    theta: Option<QubitRange>,
    f_phi: usize,
    f_theta: Option<usize>,
    x: QubitRange,
    e: Option<QubitRange>,
}

impl Frame {
    fn new(instance: &ProblemInstance) -> Frame {
        let n = instance.n();
        let m = instance.m();
        let width_n = log2_ceil(n);
        let mut c = Circuit::new();
        let phi = c.add_register("phi", n * width_n, RegisterRole::Input);
        let psi = match instance {
            ProblemInstance::Bt { tau, .. } => {
                Some(c.add_register("psi", m * log2_ceil(*tau), RegisterRole::Input))
            }
            _ => None,
        };
        let theta = match instance {
            ProblemInstance::Tls { sigma, .. } | ProblemInstance::Bs { sigma, .. } => {
                Some(c.add_register("theta", sigma * log2_ceil(m), RegisterRole::Input))
            }
            _ => None,
        };
        Frame {
            c,
            n,
            phi,
            psi,
            theta,
            f_phi: usize::MAX,
            f_theta: None,
            x: QubitRange { start: 0, size: 0 },
            e: None,
        }
    }

    fn search_bits(&self) -> usize {
        self.phi.size
            + self.psi.map_or(0, |r| r.size)
            + self.theta.map_or(0, |r| r.size)
    }

    /// Allocate and run the order transducer (and the skewness transducer
    /// when theta is present). Returns the cursor range of the transducer
    /// stage.
    fn emit_transducers(&mut self, m: usize, sigma: Option<usize>) {
        let n = self.n;
        let f_phi = self.c.add_register("f_phi", 1, RegisterRole::Flag);
        let x = self
            .c
            .add_register("x", n * (n - 1) / 2, RegisterRole::Ancilla);
        let ot_scratch =
            self.c
                .add_register("ot_scratch", order_extra_scratch(n), RegisterRole::Ancilla);
        self.f_phi = f_phi.idx(0);
        self.x = x;
        emit_order_stage(&mut self.c, n, self.phi, self.f_phi, x, ot_scratch);

        if let Some(sigma) = sigma {
            let f_theta = self.c.add_register("f_theta", 1, RegisterRole::Flag);
            let e = self.c.add_register("e", m, RegisterRole::Ancilla);
            let st_scratch = self.c.add_register(
                "st_scratch",
                skew_extra_scratch(m, sigma),
                RegisterRole::Ancilla,
            );
            self.f_theta = Some(f_theta.idx(0));
            self.e = Some(e);
            emit_skewness_stage(
                &mut self.c,
                m,
                sigma,
                self.theta.expect("theta register"),
                f_theta.idx(0),
                e,
                st_scratch,
            );
        }
    }

    /// Final check plus the global mirror: MCX over the well-formedness
    /// flags and g onto the phase wire, then the inverse of everything
    /// before it.
    fn finish(mut self, g: usize, block_start: usize) -> PhaseInversion {
        let phase = self.c.add_register("phase", 1, RegisterRole::Phase);
        let block_end = self.c.cursor();
        let mut controls = vec![ctrl(self.f_phi)];
        if let Some(f_theta) = self.f_theta {
            controls.push(ctrl(f_theta));
        }
        controls.push(ctrl(g));
        let fc_start = self.c.cursor();
        self.c.push(Gate::mcx(controls, phase.idx(0)));
        self.c.mark("final_check", fc_start);
        crate::arith::append_inverse_range(&mut self.c, block_start, block_end);
        let search = QubitRange {
            start: 0,
            size: self.search_bits(),
        };
        PhaseInversion {
            circuit: self.c,
            search,
            phase: phase.idx(0),
        }
    }
}

pub fn build_phase_inversion(instance: &ProblemInstance) -> Result<PhaseInversion> {
    instance.validate()?;
    match instance {
        ProblemInstance::Tlcm { graph, rho } => {
            Ok(build_count_detector(instance, Crossing::TwoLevel(graph.clone()), *rho))
        }
        ProblemInstance::Opcm { graph, rho } => {
            Ok(build_count_detector(instance, Crossing::Book(graph.clone()), *rho))
        }
        ProblemInstance::Tlkp { graph, k } => Ok(build_tlkp(instance, graph, *k)),
        ProblemInstance::Tlqp { graph } => Ok(build_tlqp(instance, graph)),
        ProblemInstance::Tls { graph, sigma } => {
            Ok(build_skew_detector(instance, Crossing::TwoLevel(graph.clone()), *sigma))
        }
        ProblemInstance::Bs { graph, sigma } => {
            Ok(build_skew_detector(instance, Crossing::Book(graph.clone()), *sigma))
        }
        ProblemInstance::Bt { graph, tau } => Ok(build_bt(instance, graph, *tau)),
    }
}

/// Which crossing geometry feeds a detector.
enum Crossing {
    TwoLevel(BipartiteGraph),
    Book(Graph),
}

impl Crossing {
    fn m(&self) -> usize {
        match self {
            Crossing::TwoLevel(g) => g.m(),
            Crossing::Book(g) => g.m(),
        }
    }

    fn independent(&self, a: usize, b: usize) -> bool {
        match self {
            Crossing::TwoLevel(g) => g.independent(a, b),
            Crossing::Book(g) => g.independent(a, b),
        }
    }

    fn emit_finder(&self, c: &mut Circuit, x: QubitRange, chi: QubitRange) {
        match self {
            Crossing::TwoLevel(g) => emit_cross_finder_two_level(c, g, x, chi),
            Crossing::Book(g) => emit_cross_finder_book(c, g, x, chi),
        }
    }
}

/// TLCM / OPCM: cross finder, popcount over all chi wires, compare against
/// the crossing budget.
fn build_count_detector(instance: &ProblemInstance, crossing: Crossing, rho: u64) -> PhaseInversion {
    let m = crossing.m();
    let pair_count = m * (m - 1) / 2;
    let mut frame = Frame::new(instance);
    frame.emit_transducers(m, None);
    let block_start = 0;

    let chi = frame
        .c
        .add_register("chi", pair_count, RegisterRole::Ancilla);
    let g = frame.c.add_register("g", 1, RegisterRole::Flag);
    if pair_count == 0 {
        // no edge pairs, nothing can cross
        frame.c.push(Gate::x(g.idx(0)));
        return frame.finish(g.idx(0), block_start);
    }
    let stage = CountCompare::add_registers(&mut frame.c, "cc", pair_count);
    crossing.emit_finder(&mut frame.c, frame.x, chi);
    let start = frame.c.cursor();
    stage.emit(&mut frame.c, &chi.as_vec(), rho, g.idx(0));
    frame.c.mark("cross_counter", start);
    frame.finish(g.idx(0), block_start)
}

/// TLKP: per-edge popcounts in sequence, one comparator per edge, conjunction.
fn build_tlkp(instance: &ProblemInstance, graph: &BipartiteGraph, k: u64) -> PhaseInversion {
    let m = graph.m();
    let mut frame = Frame::new(instance);
    frame.emit_transducers(m, None);
    let block_start = 0;

    let pair_count = m * (m - 1) / 2;
    let chi = frame
        .c
        .add_register("chi", pair_count, RegisterRole::Ancilla);
    let g = frame.c.add_register("g", 1, RegisterRole::Flag);
    if m <= 1 {
        frame.c.push(Gate::x(g.idx(0)));
        return frame.finish(g.idx(0), block_start);
    }

    let per_edge = m - 1;
    let padded = popcount_padded(per_edge);
    let kc = popcount_result_bits(padded);
    let pad = frame
        .c
        .add_register("ecc_pad", padded - per_edge, RegisterRole::Ancilla);
    let scratch = frame
        .c
        .add_register("ecc_scratch", popcount_scratch(padded), RegisterRole::Ancilla);
    let counts = frame
        .c
        .add_register("edge_counts", m * kc, RegisterRole::Ancilla);
    let zero = frame.c.add_register("ecc_zero", 1, RegisterRole::Ancilla);
    let const_reg = frame
        .c
        .add_register("k_const", kc + 1, RegisterRole::Ancilla);
    let carry = frame
        .c
        .add_register("ecc_carry", kc + 1, RegisterRole::Ancilla);
    let kappa = frame.c.add_register("kappa", m, RegisterRole::Ancilla);

    emit_cross_finder_two_level(&mut frame.c, graph, frame.x, chi);

    let start = frame.c.cursor();
    for i in 0..m {
        // crossings involving edge i
        let wires: Vec<usize> = (0..m)
            .filter(|&j| j != i)
            .map(|j| chi.idx(chi_index(m, i.min(j), i.max(j))))
            .chain(pad.iter())
            .collect();
        let out: Vec<usize> = (0..kc).map(|b| counts.idx(i * kc + b)).collect();
        emit_popcount(&mut frame.c, &wires, &scratch.as_vec(), &out);
    }
    frame.c.mark("edge_cross_counter", start);

    let start = frame.c.cursor();
    let clamped = k.min(per_edge as u64) + 1;
    for (j, wire) in const_reg.iter().enumerate() {
        if clamped >> j & 1 == 1 {
            frame.c.push(Gate::x(wire));
        }
    }
    for i in 0..m {
        let lhs: Vec<usize> = (0..kc)
            .map(|b| counts.idx(i * kc + b))
            .chain(zero.iter())
            .collect();
        emit_less(
            &mut frame.c,
            &lhs,
            &const_reg.as_vec(),
            &carry.as_vec(),
            kappa.idx(i),
        );
    }
    frame
        .c
        .push(Gate::mcx(kappa.iter().map(ctrl).collect(), g.idx(0)));
    frame.c.mark("edge_cross_comparator", start);
    frame.finish(g.idx(0), block_start)
}

/// TLQP: no three edges may pairwise cross; triple AND gates per
/// cross-independent round, round flags ANDed through a Toffoli cascade.
fn build_tlqp(instance: &ProblemInstance, graph: &BipartiteGraph) -> PhaseInversion {
    let m = graph.m();
    let mut frame = Frame::new(instance);
    frame.emit_transducers(m, None);
    let block_start = 0;

    let pair_count = m * (m - 1) / 2;
    let chi = frame
        .c
        .add_register("chi", pair_count, RegisterRole::Ancilla);

    // triples of pairwise-independent edges; others cannot pairwise cross
    let mut triples: Vec<[usize; 3]> = Vec::new();
    let mut keys: Vec<Vec<usize>> = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if !graph.independent(a, b) {
                continue;
            }
            for c_edge in b + 1..m {
                if graph.independent(a, c_edge) && graph.independent(b, c_edge) {
                    triples.push([a, b, c_edge]);
                    keys.push(vec![
                        chi_index(m, a, b),
                        chi_index(m, a, c_edge),
                        chi_index(m, b, c_edge),
                    ]);
                }
            }
        }
    }
    let rounds = schedule_disjoint(&keys);
    let max_round = rounds.iter().map(Vec::len).max().unwrap_or(0);

    let member_flags = frame
        .c
        .add_register("triple_flags", max_round, RegisterRole::Ancilla);
    let round_flags = frame
        .c
        .add_register("round_flags", rounds.len(), RegisterRole::Ancilla);
    let cascade = frame.c.add_register(
        "cascade",
        rounds.len().saturating_sub(1),
        RegisterRole::Ancilla,
    );
    let g = frame.c.add_register("g", 1, RegisterRole::Flag);

    emit_cross_finder_two_level(&mut frame.c, graph, frame.x, chi);

    let start = frame.c.cursor();
    let flags = emit_rounds_none_fire(
        &mut frame.c,
        &keys,
        member_flags,
        round_flags,
        |c, cell, out| {
            let [a, b, d] = triples[cell];
            c.push(Gate::mcx(
                vec![
                    ctrl(chi.idx(chi_index(m, a, b))),
                    ctrl(chi.idx(chi_index(m, a, d))),
                    ctrl(chi.idx(chi_index(m, b, d))),
                ],
                out,
            ));
        },
    );
    emit_and_cascade(&mut frame.c, &flags, cascade, g.idx(0));
    frame.c.mark("quasi_planarity_tester", start);
    frame.finish(g.idx(0), block_start)
}

/// TLS / BS: crossings among surviving edges must vanish; per pair
/// s = (not removed a) and (not removed b) and chi, rounds over pairs of
/// edge indicators, cascade of round flags.
fn build_skew_detector(instance: &ProblemInstance, crossing: Crossing, sigma: usize) -> PhaseInversion {
    let m = crossing.m();
    let mut frame = Frame::new(instance);
    frame.emit_transducers(m, Some(sigma));
    let block_start = 0;

    let pair_count = m * (m - 1) / 2;
    let chi = frame
        .c
        .add_register("chi", pair_count, RegisterRole::Ancilla);
    let e = frame.e.expect("skewness transducer ran");

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut keys: Vec<Vec<usize>> = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if !crossing.independent(a, b) {
                continue;
            }
            pairs.push((a, b));
            keys.push(vec![a, b]);
        }
    }
    let rounds = schedule_disjoint(&keys);
    let max_round = rounds.iter().map(Vec::len).max().unwrap_or(0);

    let member_flags = frame
        .c
        .add_register("skew_flags", max_round, RegisterRole::Ancilla);
    let round_flags = frame
        .c
        .add_register("round_flags", rounds.len(), RegisterRole::Ancilla);
    let cascade = frame.c.add_register(
        "cascade",
        rounds.len().saturating_sub(1),
        RegisterRole::Ancilla,
    );
    let g = frame.c.add_register("g", 1, RegisterRole::Flag);

    crossing.emit_finder(&mut frame.c, frame.x, chi);

    let start = frame.c.cursor();
    let flags = emit_rounds_none_fire(
        &mut frame.c,
        &keys,
        member_flags,
        round_flags,
        |c, cell, out| {
            let (a, b) = pairs[cell];
            c.push(Gate::mcx(
                vec![
                    anti(e.idx(a)),
                    anti(e.idx(b)),
                    ctrl(chi.idx(chi_index(m, a, b))),
                ],
                out,
            ));
        },
    );
    emit_and_cascade(&mut frame.c, &flags, cascade, g.idx(0));
    frame.c.mark("skewness_cross_tester", start);
    frame.finish(g.idx(0), block_start)
}

/// BT: crossing edges must sit on different pages; equality comparators on
/// page labels ANDed with chi per pair, plus range checks when the page
/// count is not a power of two.
fn build_bt(instance: &ProblemInstance, graph: &Graph, tau: usize) -> PhaseInversion {
    let m = graph.m();
    let w_tau = log2_ceil(tau);
    let mut frame = Frame::new(instance);
    frame.emit_transducers(m, None);
    let block_start = 0;
    let psi = frame.psi.expect("psi register");

    let pair_count = m * (m - 1) / 2;
    let chi = frame
        .c
        .add_register("chi", pair_count, RegisterRole::Ancilla);

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut keys: Vec<Vec<usize>> = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if !graph.independent(a, b) {
                continue;
            }
            pairs.push((a, b));
            keys.push(vec![a, b]);
        }
    }
    let rounds = schedule_disjoint(&keys);
    let max_round = rounds.iter().map(Vec::len).max().unwrap_or(0);

    // per parallel cell: w_tau equality scratch + equality flag + pair flag
    let eq_scratch = frame
        .c
        .add_register("beta_eq_scratch", max_round * w_tau, RegisterRole::Ancilla);
    let eq_flags = frame
        .c
        .add_register("beta_eq_flags", max_round, RegisterRole::Ancilla);
    let member_flags = frame
        .c
        .add_register("beta_pair_flags", max_round, RegisterRole::Ancilla);
    let round_flags = frame
        .c
        .add_register("round_flags", rounds.len(), RegisterRole::Ancilla);
    let range_needed = !tau.is_power_of_two();
    let range = if range_needed {
        Some((
            frame
                .c
                .add_register("tau_const", w_tau, RegisterRole::Ancilla),
            frame
                .c
                .add_register("tau_carry", w_tau, RegisterRole::Ancilla),
            frame.c.add_register("tau_flags", m, RegisterRole::Ancilla),
        ))
    } else {
        None
    };
    let g = frame.c.add_register("g", 1, RegisterRole::Flag);

    emit_cross_finder_book(&mut frame.c, graph, frame.x, chi);

    let psi_wires = |i: usize| -> Vec<usize> { (0..w_tau).map(|j| psi.idx(i * w_tau + j)).collect() };

    let start = frame.c.cursor();
    // emit_member computes pair flag = chi_{a,b} AND psi[a]=psi[b]; re-run
    // restores both the pair flag and the equality internals
    let emit_member = |c: &mut Circuit, cell: usize, out: usize, slot: usize| {
        let (a, b) = pairs[cell];
        if w_tau == 0 {
            // a single page: equal by definition, the pair flag is just chi
            c.push(Gate::cnot(chi.idx(chi_index(m, a, b)), out));
            return;
        }
        let scratch: Vec<usize> = (0..w_tau).map(|j| eq_scratch.idx(slot * w_tau + j)).collect();
        let eq_flag = eq_flags.idx(slot);
        crate::arith::emit_eq(c, &psi_wires(a), &psi_wires(b), &scratch, eq_flag);
        c.push(Gate::mcx(
            vec![ctrl(eq_flag), ctrl(chi.idx(chi_index(m, a, b)))],
            out,
        ));
        crate::arith::emit_eq(c, &psi_wires(a), &psi_wires(b), &scratch, eq_flag);
    };

    let mut flag_wires = Vec::new();
    for (ri, round) in rounds.iter().enumerate() {
        for (slot, &cell) in round.iter().enumerate() {
            emit_member(&mut frame.c, cell, member_flags.idx(slot), slot);
        }
        frame.c.push(Gate::mcx(
            round
                .iter()
                .enumerate()
                .map(|(slot, _)| anti(member_flags.idx(slot)))
                .collect(),
            round_flags.idx(ri),
        ));
        for (slot, &cell) in round.iter().enumerate() {
            emit_member(&mut frame.c, cell, member_flags.idx(slot), slot);
        }
        flag_wires.push(round_flags.idx(ri));
    }
    frame.c.mark("color_tester", start);

    if let Some((const_reg, carry, range_flags)) = &range {
        let start = frame.c.cursor();
        for (j, wire) in const_reg.iter().enumerate() {
            if tau >> j & 1 == 1 {
                frame.c.push(Gate::x(wire));
            }
        }
        for i in 0..m {
            emit_less(
                &mut frame.c,
                &psi_wires(i),
                &const_reg.as_vec(),
                &carry.as_vec(),
                range_flags.idx(i),
            );
        }
        flag_wires.extend(range_flags.iter());
        frame.c.mark("page_range_check", start);
    }

    if flag_wires.is_empty() {
        frame.c.push(Gate::x(g.idx(0)));
    } else {
        frame
            .c
            .push(Gate::mcx(flag_wires.iter().map(|&q| ctrl(q)).collect(), g.idx(0)));
    }
    frame.finish(g.idx(0), block_start)
}

const MAX_PREDICATE_BITS: usize = 63;

fn bits_of(gamma: u64, offset: usize, count: usize, width: usize) -> IntSeqEncoding {
    let mask = if count * width == 64 {
        u64::MAX
    } else {
        (1u64 << (count * width)) - 1
    };
    IntSeqEncoding::from_u64(count, width, (gamma >> offset) & mask)
}

/// Decode a search bitstring into a candidate solution; `None` when any part
/// of the encoding is degenerate (non-permutation phi, repeated or
/// out-of-range theta, out-of-range psi).
pub fn decode_gamma(instance: &ProblemInstance, gamma: u64) -> Result<Option<Solution>> {
    let l = instance.search_bits();
    if l > MAX_PREDICATE_BITS {
        return Err(GraphError::TooLarge(format!(
            "search register of {l} bits exceeds the 63-bit decode window"
        )));
    }
    if l < 64 && gamma >> l != 0 {
        return Err(GraphError::Parameter(format!(
            "gamma has bits above the {l}-bit search register"
        )));
    }
    let n = instance.n();
    let wn = log2_ceil(n);
    let phi = bits_of(gamma, 0, n, wn);
    let Some(positions) = decode_permutation(&phi) else {
        return Ok(None);
    };
    let order_of = |ids: std::ops::Range<usize>| -> Vec<usize> {
        let mut vs: Vec<usize> = ids.collect();
        vs.sort_by_key(|&v| positions[v]);
        vs
    };

    match instance {
        ProblemInstance::Tlcm { graph, .. }
        | ProblemInstance::Tlkp { graph, .. }
        | ProblemInstance::Tlqp { graph } => {
            let order = TwoLevelOrder {
                order_u: order_of(0..graph.size_u),
                order_v: order_of(graph.size_u..n)
                    .into_iter()
                    .map(|v| v - graph.size_u)
                    .collect(),
            };
            Ok(Some(Solution::TwoLevel { order }))
        }
        ProblemInstance::Tls { graph, sigma } => {
            let wm = log2_ceil(graph.m());
            let theta = bits_of(gamma, n * wn, *sigma, wm);
            let Some(subset) = decode_edge_subset(&theta, graph.m()) else {
                return Ok(None);
            };
            let order = TwoLevelOrder {
                order_u: order_of(0..graph.size_u),
                order_v: order_of(graph.size_u..n)
                    .into_iter()
                    .map(|v| v - graph.size_u)
                    .collect(),
            };
            Ok(Some(Solution::TwoLevelSkew {
                removed: EdgeRemovalSet::new(subset, graph.m())?,
                order: Some(order),
            }))
        }
        ProblemInstance::Opcm { .. } => Ok(Some(Solution::Spine {
            order: SpineOrder { order: order_of(0..n) },
        })),
        ProblemInstance::Bt { graph, tau } => {
            let w_tau = log2_ceil(*tau);
            let psi = bits_of(gamma, n * wn, graph.m(), w_tau);
            let pages = psi.values();
            if pages.iter().any(|&p| p >= *tau) {
                return Ok(None);
            }
            Ok(Some(Solution::Book {
                order: SpineOrder { order: order_of(0..n) },
                pages: PageAssignment { pages, tau: *tau },
            }))
        }
        ProblemInstance::Bs { graph, sigma } => {
            let wm = log2_ceil(graph.m());
            let theta = bits_of(gamma, n * wn, *sigma, wm);
            let Some(subset) = decode_edge_subset(&theta, graph.m()) else {
                return Ok(None);
            };
            Ok(Some(Solution::BookSkew {
                removed: EdgeRemovalSet::new(subset, graph.m())?,
                order: Some(SpineOrder { order: order_of(0..n) }),
            }))
        }
    }
}

/// The classical mirror of the phase-inversion circuit: true exactly when
/// the circuit would flip the sign of this basis state.
pub fn predicate(instance: &ProblemInstance, gamma: u64) -> Result<bool> {
    match decode_gamma(instance, gamma)? {
        None => Ok(false),
        Some(solution) => crate::graph::verify_solution(instance, &solution, usize::MAX),
    }
}
