//! Input transducers: the order transducer (collision detector + precedence
//! constructor) and the skewness transducer (collision detector + edge
//! constructor).
//!
//! Both turn a packed integer-sequence register into a well-formedness flag
//! plus derived wires (precedence bits, edge indicators). Comparator
//! instances are scheduled in cross-independent rounds: members of a round
//! touch disjoint wires and run in parallel, rounds run in sequence.

use crate::arith::{append_inverse_range, emit_eq, emit_less};
use crate::circuit::{anti, ctrl, Circuit, Gate, QubitRange, RegisterRole};
use crate::combin::{log2_ceil, schedule_disjoint};

/// Stack of free scratch wires; builders take and release per round.
pub(crate) struct WirePool {
    free: Vec<usize>,
}

impl WirePool {
    pub fn new(wires: impl IntoIterator<Item = usize>) -> Self {
        let mut free: Vec<usize> = wires.into_iter().collect();
        free.reverse(); // hand out in ascending order
        WirePool { free }
    }

    pub fn take(&mut self, k: usize) -> Vec<usize> {
        assert!(self.free.len() >= k, "scratch pool exhausted");
        (0..k).map(|_| self.free.pop().unwrap()).collect()
    }

    pub fn release(&mut self, wires: Vec<usize>) {
        self.free.extend(wires.into_iter().rev());
    }
}

/// Index of precedence wire x_{i,j} (i < j) in the lexicographic block
/// x_{0,1} ... x_{0,n-1}, x_{1,2}, ...
pub fn x_index(n: usize, i: usize, j: usize) -> usize {
    assert!(i < j && j < n);
    let before = n * (n - 1) / 2 - (n - i) * (n - i - 1) / 2;
    before + (j - i - 1)
}

/// Wires of the `i`-th packed value (LSB first).
fn value_wires(reg: QubitRange, width: usize, i: usize) -> Vec<usize> {
    (0..width).map(|j| reg.idx(i * width + j)).collect()
}

/// Plan for the distinctness/range block: the pair schedule and the scratch
/// it needs.
struct WellFormedPlan {
    rounds: Vec<Vec<usize>>,
    pairs: Vec<Vec<usize>>,
    pool_need: usize,
}

fn plan_wellformed(count: usize, width: usize, range_bound: Option<usize>) -> WellFormedPlan {
    let pairs = crate::combin::k_subsets(count, 2);
    let rounds = schedule_disjoint(&pairs);
    let max_slot = rounds.iter().map(Vec::len).max().unwrap_or(0);
    let mut pool_need = max_slot * (width + 1) + rounds.len();
    if range_bound.is_some() {
        // constant register, shared carry chain, one flag per value
        pool_need += 2 * width + count;
    }
    WellFormedPlan {
        rounds,
        pairs,
        pool_need,
    }
}

/// Emit the well-formedness flag: f ^= [values pairwise distinct and, when a
/// range bound is given, all below it]. Everything but `f_out` is restored
/// by mirroring the block before the final MCX.
fn emit_wellformed_flag(
    c: &mut Circuit,
    values: &[Vec<usize>],
    range_bound: Option<usize>,
    pool: &mut WirePool,
    f_out: usize,
) {
    let width = values.first().map_or(0, Vec::len);
    let plan = plan_wellformed(values.len(), width, range_bound);
    let block_start = c.cursor();
    let mut global_controls: Vec<usize> = Vec::new();
    let mut held: Vec<Vec<usize>> = Vec::new();

    if let Some(bound) = range_bound {
        let const_reg = pool.take(width);
        for (j, wire) in const_reg.iter().enumerate() {
            if bound >> j & 1 == 1 {
                c.push(Gate::x(*wire));
            }
        }
        let carries = pool.take(width);
        for v in values {
            let flag = pool.take(1);
            emit_less(c, v, &const_reg, &carries, flag[0]);
            global_controls.push(flag[0]);
            held.push(flag);
        }
        held.push(const_reg);
        held.push(carries);
    }

    if values.len() >= 2 {
        let class_flags = pool.take(plan.rounds.len());
        for (ci, round) in plan.rounds.iter().enumerate() {
            let mut slots: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(round.len());
            for _ in round {
                slots.push((pool.take(width), pool.take(1)));
            }
            for (&pi, slot) in round.iter().zip(&slots) {
                let (i, j) = (plan.pairs[pi][0], plan.pairs[pi][1]);
                emit_eq(c, &values[i], &values[j], &slot.0, slot.1[0]);
            }
            c.push(Gate::mcx(
                slots.iter().map(|s| anti(s.1[0])).collect(),
                class_flags[ci],
            ));
            // restore the equality flags so the slots can serve the next round
            for (&pi, slot) in round.iter().zip(&slots) {
                let (i, j) = (plan.pairs[pi][0], plan.pairs[pi][1]);
                emit_eq(c, &values[i], &values[j], &slot.0, slot.1[0]);
            }
            for (scratch, flag) in slots {
                pool.release(scratch);
                pool.release(flag);
            }
        }
        global_controls.extend(class_flags.iter().copied());
        held.push(class_flags);
    }

    let before_mcx = c.cursor();
    if global_controls.is_empty() {
        // nothing can go wrong: f is constant 1
        c.push(Gate::x(f_out));
    } else {
        c.push(Gate::mcx(
            global_controls.iter().map(|&q| ctrl(q)).collect(),
            f_out,
        ));
        append_inverse_range(c, block_start, before_mcx);
    }
    for wires in held {
        pool.release(wires);
    }
}

/// A standalone collision detector: flag = [all `count` integers pairwise
/// distinct].
#[derive(Debug, Clone)]
pub struct CollisionDetector {
    pub count: usize,
    pub width: usize,
    pub circuit: Circuit,
    pub values: QubitRange,
    pub flag: usize,
    pub scratch: QubitRange,
}

pub fn build_collision_detector(count: usize, width: usize) -> CollisionDetector {
    assert!(count >= 2, "collision detection needs at least two values");
    assert!(width >= 1);
    let plan = plan_wellformed(count, width, None);
    let mut circuit = Circuit::new();
    let values = circuit.add_register("values", count * width, RegisterRole::Input);
    let flag = circuit.add_register("flag", 1, RegisterRole::Flag);
    let scratch = circuit.add_register("scratch", plan.pool_need, RegisterRole::Ancilla);
    let wire_vecs: Vec<Vec<usize>> = (0..count).map(|i| value_wires(values, width, i)).collect();
    let mut pool = WirePool::new(scratch.iter());
    let start = circuit.cursor();
    emit_wellformed_flag(&mut circuit, &wire_vecs, None, &mut pool, flag.idx(0));
    circuit.mark("collision_detector", start);
    CollisionDetector {
        count,
        width,
        circuit,
        values,
        flag: flag.idx(0),
        scratch,
    }
}

/// A standalone precedence constructor: x_{i,j} = [phi[i] < phi[j]] for all
/// i < j.
#[derive(Debug, Clone)]
pub struct PrecedenceConstructor {
    pub n: usize,
    pub width: usize,
    pub circuit: Circuit,
    pub phi: QubitRange,
    pub x: QubitRange,
    pub scratch: QubitRange,
}

pub fn build_precedence_constructor(n: usize) -> PrecedenceConstructor {
    assert!(n >= 2);
    let width = log2_ceil(n);
    let pairs = crate::combin::k_subsets(n, 2);
    let rounds = schedule_disjoint(&pairs);
    let max_slot = rounds.iter().map(Vec::len).max().unwrap_or(0);
    let mut circuit = Circuit::new();
    let phi = circuit.add_register("phi", n * width, RegisterRole::Input);
    let x = circuit.add_register("x", n * (n - 1) / 2, RegisterRole::Ancilla);
    let scratch = circuit.add_register("scratch", max_slot * width, RegisterRole::Ancilla);
    let mut pool = WirePool::new(scratch.iter());
    let start = circuit.cursor();
    emit_precedence(&mut circuit, phi, width, n, x, &mut pool, &pairs, &rounds);
    circuit.mark("precedence_constructor", start);
    PrecedenceConstructor {
        n,
        width,
        circuit,
        phi,
        x,
        scratch,
    }
}

#[allow(clippy::too_many_arguments)]
fn emit_precedence(
    c: &mut Circuit,
    phi: QubitRange,
    width: usize,
    n: usize,
    x: QubitRange,
    pool: &mut WirePool,
    pairs: &[Vec<usize>],
    rounds: &[Vec<usize>],
) {
    for round in rounds {
        let slots: Vec<Vec<usize>> = round.iter().map(|_| pool.take(width)).collect();
        for (&pi, slot) in round.iter().zip(&slots) {
            let (i, j) = (pairs[pi][0], pairs[pi][1]);
            emit_less(
                c,
                &value_wires(phi, width, i),
                &value_wires(phi, width, j),
                slot,
                x.idx(x_index(n, i, j)),
            );
        }
        for slot in slots {
            pool.release(slot);
        }
    }
}

/// The order transducer: flag = [phi encodes a permutation of [n]] and
/// x_{i,j} = [phi[i] < phi[j]].
#[derive(Debug, Clone)]
pub struct OrderTransducer {
    pub n: usize,
    pub width: usize,
    pub circuit: Circuit,
    pub phi: QubitRange,
    pub flag: usize,
    pub x: QubitRange,
    pub scratch: QubitRange,
}

impl OrderTransducer {
    /// Everything except the phi register.
    pub fn ancilla_total(&self) -> usize {
        1 + self.x.size + self.scratch.size
    }
}

/// Ancilla total stated for the order transducer: n/2 (n - 1 + log n) + 1.
/// Holds exactly for the power-of-two sizes; tiny n need slightly more
/// (the collision detector's round flags outgrow the formula).
pub fn expected_order_ancillas(n: usize) -> usize {
    n * (n - 1 + log2_ceil(n)) / 2 + 1
}

/// Scratch the order stage needs beyond the x block itself.
pub(crate) fn order_extra_scratch(n: usize) -> usize {
    let width = log2_ceil(n);
    let range_bound = (!n.is_power_of_two()).then_some(n);
    let plan = plan_wellformed(n, width, range_bound);
    let x_size = n * (n - 1) / 2;
    let precedence_need = (n / 2).max(1) * width;
    // the collision stage may borrow the still-zero x block
    let collision_extra = plan.pool_need.saturating_sub(x_size);
    precedence_need.max(collision_extra)
}

/// Emit the full order stage (collision detector, then precedence
/// constructor) on caller-provided wires. `scratch` must hold at least
/// [`order_extra_scratch`] wires; the x block doubles as collision scratch
/// while it is still zero.
pub(crate) fn emit_order_stage(
    c: &mut Circuit,
    n: usize,
    phi: QubitRange,
    flag: usize,
    x: QubitRange,
    scratch: QubitRange,
) {
    let width = log2_ceil(n);
    let range_bound = (!n.is_power_of_two()).then_some(n);
    let values: Vec<Vec<usize>> = (0..n).map(|i| value_wires(phi, width, i)).collect();

    let start = c.cursor();
    let mut pool_c = WirePool::new(x.iter().chain(scratch.iter()));
    emit_wellformed_flag(c, &values, range_bound, &mut pool_c, flag);
    c.mark("collision_detector", start);

    let start_p = c.cursor();
    let pairs = crate::combin::k_subsets(n, 2);
    let rounds = schedule_disjoint(&pairs);
    let mut pool_p = WirePool::new(scratch.iter());
    emit_precedence(c, phi, width, n, x, &mut pool_p, &pairs, &rounds);
    c.mark("precedence_constructor", start_p);
}

pub fn build_order_transducer(n: usize) -> OrderTransducer {
    assert!(n >= 2);
    let width = log2_ceil(n);
    let x_size = n * (n - 1) / 2;
    let scratch_size = order_extra_scratch(n);

    let mut circuit = Circuit::new();
    let phi = circuit.add_register("phi", n * width, RegisterRole::Input);
    let flag = circuit.add_register("f_phi", 1, RegisterRole::Flag);
    let x = circuit.add_register("x", x_size, RegisterRole::Ancilla);
    let scratch = circuit.add_register("scratch", scratch_size, RegisterRole::Ancilla);
    emit_order_stage(&mut circuit, n, phi, flag.idx(0), x, scratch);

    OrderTransducer {
        n,
        width,
        circuit,
        phi,
        flag: flag.idx(0),
        x,
        scratch,
    }
}

/// Emit one edge-indicator gate: e_out ^= [theta[j] = index] for each j, as
/// one MCX per j whose control pattern spells the constant.
fn emit_edge_indicator(
    c: &mut Circuit,
    theta_values: &[Vec<usize>],
    width: usize,
    index: usize,
    e_out: usize,
) {
    for value in theta_values {
        let controls = (0..width)
            .map(|j| {
                if index >> j & 1 == 1 {
                    ctrl(value[j])
                } else {
                    anti(value[j])
                }
            })
            .collect();
        c.push(Gate::mcx(controls, e_out));
    }
}

/// The skewness transducer: flag = [theta encodes a sigma-subset of [m]],
/// e_i = [some theta[j] equals i] (XOR semantics on degenerate inputs).
#[derive(Debug, Clone)]
pub struct SkewnessTransducer {
    pub m: usize,
    pub sigma: usize,
    pub width: usize,
    pub circuit: Circuit,
    pub theta: QubitRange,
    pub flag: usize,
    pub e: QubitRange,
    pub scratch: QubitRange,
}

/// Scratch the skewness stage needs beyond the e block itself.
pub(crate) fn skew_extra_scratch(m: usize, sigma: usize) -> usize {
    let width = log2_ceil(m);
    let range_bound = (!m.is_power_of_two()).then_some(m);
    let plan = plan_wellformed(sigma, width, range_bound);
    plan.pool_need.saturating_sub(m)
}

/// Emit the full skewness stage (collision detector, then edge constructor)
/// on caller-provided wires; the e block doubles as collision scratch while
/// it is still zero.
pub(crate) fn emit_skewness_stage(
    c: &mut Circuit,
    m: usize,
    sigma: usize,
    theta: QubitRange,
    flag: usize,
    e: QubitRange,
    scratch: QubitRange,
) {
    let width = log2_ceil(m);
    let range_bound = (!m.is_power_of_two()).then_some(m);
    let values: Vec<Vec<usize>> = (0..sigma).map(|i| value_wires(theta, width, i)).collect();

    let start = c.cursor();
    let mut pool = WirePool::new(e.iter().chain(scratch.iter()));
    emit_wellformed_flag(c, &values, range_bound, &mut pool, flag);
    c.mark("collision_detector", start);

    let start_e = c.cursor();
    for i in 0..m {
        emit_edge_indicator(c, &values, width, i, e.idx(i));
    }
    c.mark("edge_constructor", start_e);
}

pub fn build_skewness_transducer(m: usize, sigma: usize) -> SkewnessTransducer {
    assert!(sigma >= 1 && m >= 2);
    let width = log2_ceil(m);
    let mut circuit = Circuit::new();
    let theta = circuit.add_register("theta", sigma * width, RegisterRole::Input);
    let flag = circuit.add_register("f_theta", 1, RegisterRole::Flag);
    let e = circuit.add_register("e", m, RegisterRole::Ancilla);
    let scratch = circuit.add_register(
        "scratch",
        skew_extra_scratch(m, sigma),
        RegisterRole::Ancilla,
    );
    emit_skewness_stage(&mut circuit, m, sigma, theta, flag.idx(0), e, scratch);

    SkewnessTransducer {
        m,
        sigma,
        width,
        circuit,
        theta,
        flag: flag.idx(0),
        e,
        scratch,
    }
}

/// A standalone edge constructor over its own registers (no collision stage).
pub fn build_edge_constructor(m: usize, sigma: usize) -> SkewnessTransducer {
    assert!(sigma >= 1 && m >= 2);
    let width = log2_ceil(m);
    let mut circuit = Circuit::new();
    let theta = circuit.add_register("theta", sigma * width, RegisterRole::Input);
    let flag = circuit.add_register("f_theta", 1, RegisterRole::Flag);
    let e = circuit.add_register("e", m, RegisterRole::Ancilla);
    let scratch = circuit.add_register("scratch", 0, RegisterRole::Ancilla);
    let values: Vec<Vec<usize>> = (0..sigma).map(|i| value_wires(theta, width, i)).collect();
    let start = circuit.cursor();
    for i in 0..m {
        emit_edge_indicator(&mut circuit, &values, width, i, e.idx(i));
    }
    circuit.mark("edge_constructor", start);
    SkewnessTransducer {
        m,
        sigma,
        width,
        circuit,
        theta,
        flag: flag.idx(0),
        e,
        scratch,
    }
}
