//! Reusable reversible arithmetic: the equality and less-than comparators
//! and the popcount tree built from half/full adders.
//!
//! Every block here follows the compute / use / uncompute pattern: a layer
//! writing scratch, a gate reading it into the output, and the mirrored
//! layer restoring scratch to zero. Each emitted block is therefore its own
//! inverse, which the transducers and detectors rely on when they re-emit a
//! block to uncompute its flag.

use crate::circuit::{anti, ctrl, Circuit, Gate, QubitRange, RegisterRole};
use crate::combin::log2_ceil;

/// A standalone comparator circuit with its wire map. Operands are
/// `log2_ceil(t)` bits wide (values in `[t]`).
#[derive(Debug, Clone)]
pub struct Comparator {
    pub t: usize,
    pub circuit: Circuit,
    pub lhs: QubitRange,
    pub rhs: QubitRange,
    pub scratch: QubitRange,
    pub flag: usize,
}

/// flag ^= [a == b]. Uses `a.len()` scratch qubits, restored.
///
/// Per bit, two Toffolis (one positive, one anticontrolled) write the XNOR
/// into scratch; one MCX over all XNOR bits hits the flag; the XNOR layer is
/// then uncomputed.
pub fn emit_eq(c: &mut Circuit, a: &[usize], b: &[usize], scratch: &[usize], flag: usize) {
    let w = a.len();
    assert_eq!(b.len(), w);
    assert!(scratch.len() >= w, "equality comparator needs w scratch qubits");
    let layer_start = c.cursor();
    for i in 0..w {
        c.push(Gate::mcx(vec![ctrl(a[i]), ctrl(b[i])], scratch[i]));
        c.push(Gate::mcx(vec![anti(a[i]), anti(b[i])], scratch[i]));
    }
    let layer_end = c.cursor();
    c.push(Gate::mcx((0..w).map(|i| ctrl(scratch[i])).collect(), flag));
    append_inverse_range(c, layer_start, layer_end);
}

/// flag ^= [a < b], strict. Uses `a.len()` scratch qubits, restored.
///
/// Computes the carry chain of b + ones-complement(a): the final carry is 1
/// exactly when b > a. Anticontrols stand in for the complement, the carry
/// is copied out, and the chain is uncomputed.
pub fn emit_less(c: &mut Circuit, a: &[usize], b: &[usize], scratch: &[usize], flag: usize) {
    let w = a.len();
    assert_eq!(b.len(), w);
    assert!(scratch.len() >= w, "less-than comparator needs w scratch qubits");
    let chain_start = c.cursor();
    c.push(Gate::mcx(vec![ctrl(b[0]), anti(a[0])], scratch[0]));
    for k in 1..w {
        // majority(carry, b[k], !a[k]) as an XOR of three products
        c.push(Gate::mcx(vec![ctrl(scratch[k - 1]), ctrl(b[k])], scratch[k]));
        c.push(Gate::mcx(vec![ctrl(scratch[k - 1]), anti(a[k])], scratch[k]));
        c.push(Gate::mcx(vec![ctrl(b[k]), anti(a[k])], scratch[k]));
    }
    let chain_end = c.cursor();
    c.push(Gate::cnot(scratch[w - 1], flag));
    append_inverse_range(c, chain_start, chain_end);
}

/// Append the reversed clone of `gates[start..end]` (every gate kind here is
/// self-inverse).
pub fn append_inverse_range(c: &mut Circuit, start: usize, end: usize) {
    let tail: Vec<Gate> = c.gates[start..end].iter().rev().cloned().collect();
    c.gates.extend(tail);
}

pub fn build_eq(t: usize) -> Comparator {
    build_comparator(t, emit_eq, "eq")
}

pub fn build_less(t: usize) -> Comparator {
    build_comparator(t, emit_less, "less")
}

fn build_comparator(
    t: usize,
    emit: fn(&mut Circuit, &[usize], &[usize], &[usize], usize),
    name: &str,
) -> Comparator {
    assert!(t >= 2, "comparators need operands of at least one bit");
    let w = log2_ceil(t);
    let mut circuit = Circuit::new();
    let lhs = circuit.add_register("lhs", w, RegisterRole::Input);
    let rhs = circuit.add_register("rhs", w, RegisterRole::Input);
    let scratch = circuit.add_register("scratch", w, RegisterRole::Ancilla);
    let flag = circuit.add_register("flag", 1, RegisterRole::Flag);
    let start = circuit.cursor();
    emit(
        &mut circuit,
        &lhs.as_vec(),
        &rhs.as_vec(),
        &scratch.as_vec(),
        flag.idx(0),
    );
    circuit.mark(name, start);
    Comparator {
        t,
        circuit,
        lhs,
        rhs,
        scratch,
        flag: flag.idx(0),
    }
}

/// (a, b, 0, 0) -> (a, b, a xor b, a and b)
pub fn emit_half_adder(c: &mut Circuit, a: usize, b: usize, sum: usize, carry: usize) {
    c.push(Gate::cnot(a, sum));
    c.push(Gate::cnot(b, sum));
    c.push(Gate::toffoli(a, b, carry));
}

/// (a, b, cin, 0, 0) -> (a, b, cin, a xor b xor cin, majority(a, b, cin))
pub fn emit_full_adder(c: &mut Circuit, a: usize, b: usize, cin: usize, sum: usize, carry: usize) {
    c.push(Gate::cnot(a, sum));
    c.push(Gate::cnot(b, sum));
    c.push(Gate::cnot(cin, sum));
    c.push(Gate::toffoli(a, b, carry));
    c.push(Gate::toffoli(a, cin, carry));
    c.push(Gate::toffoli(b, cin, carry));
}

/// Standalone half adder: registers `in`(2), `sum`(1), `carry`(1).
pub fn build_half_adder() -> Circuit {
    let mut c = Circuit::new();
    let input = c.add_register("in", 2, RegisterRole::Input);
    let sum = c.add_register("sum", 1, RegisterRole::Flag);
    let carry = c.add_register("carry", 1, RegisterRole::Flag);
    emit_half_adder(&mut c, input.idx(0), input.idx(1), sum.idx(0), carry.idx(0));
    c
}

/// Standalone full adder: registers `in`(3), `sum`(1), `carry`(1).
pub fn build_full_adder() -> Circuit {
    let mut c = Circuit::new();
    let input = c.add_register("in", 3, RegisterRole::Input);
    let sum = c.add_register("sum", 1, RegisterRole::Flag);
    let carry = c.add_register("carry", 1, RegisterRole::Flag);
    emit_full_adder(
        &mut c,
        input.idx(0),
        input.idx(1),
        input.idx(2),
        sum.idx(0),
        carry.idx(0),
    );
    c
}

/// Input width after padding to a power of two.
pub fn popcount_padded(t: usize) -> usize {
    t.max(1).next_power_of_two()
}

/// Scratch qubits the popcount tree uses on a (padded) width-`tp` input:
/// two per adder, `4 tp - 2 log tp - 4` in total (0 when tp = 1).
pub fn popcount_scratch(tp: usize) -> usize {
    if tp <= 1 {
        0
    } else {
        4 * tp - 2 * log2_ceil(tp) - 4
    }
}

/// Result register width: `1 + log2(tp)` bits.
pub fn popcount_result_bits(tp: usize) -> usize {
    1 + log2_ceil(tp)
}

/// Popcount over `input` into `result`; returns the number of adders in the
/// compute half. `input.len()` must be a power of two (callers pad with
/// constant-zero wires), scratch is restored via copy-out CNOTs followed by
/// the mirrored compute block.
pub fn emit_popcount(
    c: &mut Circuit,
    input: &[usize],
    scratch: &[usize],
    result: &[usize],
) -> usize {
    let tp = input.len();
    assert!(tp.is_power_of_two(), "popcount input must be padded to a power of two");
    assert_eq!(result.len(), popcount_result_bits(tp));
    assert!(scratch.len() >= popcount_scratch(tp));

    if tp == 1 {
        c.push(Gate::cnot(input[0], result[0]));
        return 0;
    }

    let mut next_scratch = 0;
    let mut take = |k: usize| {
        let out = &scratch[next_scratch..next_scratch + k];
        next_scratch += k;
        out.to_vec()
    };
    let mut adders = 0;
    let compute_start = c.cursor();

    // pair the input bits into two-bit sums
    let mut numbers: Vec<Vec<usize>> = Vec::with_capacity(tp / 2);
    for i in 0..tp / 2 {
        let wires = take(2);
        emit_half_adder(c, input[2 * i], input[2 * i + 1], wires[0], wires[1]);
        adders += 1;
        numbers.push(wires);
    }

    // merge pairs level by level; adding two i-bit numbers takes one half
    // adder and i-1 full adders and yields i+1 bits
    while numbers.len() > 1 {
        let mut merged = Vec::with_capacity(numbers.len() / 2);
        for pair in numbers.chunks(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let width = a.len();
            let mut out = Vec::with_capacity(width + 1);
            let wires = take(2);
            emit_half_adder(c, a[0], b[0], wires[0], wires[1]);
            adders += 1;
            out.push(wires[0]);
            let mut carry = wires[1];
            for k in 1..width {
                let wires = take(2);
                emit_full_adder(c, a[k], b[k], carry, wires[0], wires[1]);
                adders += 1;
                out.push(wires[0]);
                carry = wires[1];
            }
            out.push(carry);
            merged.push(out);
        }
        numbers = merged;
    }

    let compute_end = c.cursor();
    assert_eq!(next_scratch, popcount_scratch(tp), "scratch census mismatch");

    let total = &numbers[0];
    assert_eq!(total.len(), result.len());
    for (s, r) in total.iter().zip(result.iter()) {
        c.push(Gate::cnot(*s, *r));
    }
    append_inverse_range(c, compute_start, compute_end);
    adders
}

/// A standalone popcount circuit with its wire map and adder census.
#[derive(Debug, Clone)]
pub struct Popcount {
    pub t: usize,
    pub t_padded: usize,
    pub circuit: Circuit,
    pub input: QubitRange,
    pub pad: QubitRange,
    pub scratch: QubitRange,
    pub result: QubitRange,
    /// Half/full adders in the compute half (the copy-out and mirror halves
    /// are excluded, matching the adder-count identity 2t - log t - 2).
    pub adder_count: usize,
}

pub fn build_popcount(t: usize) -> Popcount {
    assert!(t >= 1);
    let tp = popcount_padded(t);
    let mut circuit = Circuit::new();
    let input = circuit.add_register("bits", t, RegisterRole::Input);
    let pad = circuit.add_register("pad", tp - t, RegisterRole::Ancilla);
    let scratch = circuit.add_register("scratch", popcount_scratch(tp), RegisterRole::Ancilla);
    let result = circuit.add_register("count", popcount_result_bits(tp), RegisterRole::Flag);
    let wires: Vec<usize> = input.iter().chain(pad.iter()).collect();
    let start = circuit.cursor();
    let adder_count = emit_popcount(
        &mut circuit,
        &wires,
        &scratch.as_vec(),
        &result.as_vec(),
    );
    circuit.mark("popcount", start);
    Popcount {
        t,
        t_padded: tp,
        circuit,
        input,
        pad,
        scratch,
        result,
        adder_count,
    }
}
