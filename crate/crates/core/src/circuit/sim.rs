//! Two simulation backends. Every oracle gate is classical-reversible, so a
//! basis state can be pushed through an H-free circuit bit by bit; dense
//! amplitude evolution covers circuits that do contain H gates.

use super::{Circuit, CircuitError, GateKind, Polarity, RegisterRole, Result};

/// Dense simulation refuses circuits beyond this many qubits (2^26 complex
/// amplitudes is about 1 GiB).
pub const DENSE_QUBIT_CAP: usize = 26;

/// A classical bitstring with a tracked global sign. The sign models the
/// phase register: an X aimed at a phase-role qubit maps |-> to -|->, i.e.
/// it flips the sign and leaves the bits alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisState {
    pub bits: Vec<bool>,
    pub sign: i8,
}

impl BasisState {
    pub fn new(bits: Vec<bool>) -> Self {
        BasisState { bits, sign: 1 }
    }

    pub fn from_u64(n_qubits: usize, raw: u64) -> Self {
        BasisState::new((0..n_qubits).map(|p| (raw >> p) & 1 == 1).collect())
    }

    pub fn to_u64(&self) -> u64 {
        assert!(self.bits.len() <= 64);
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (p, &b)| acc | ((b as u64) << p))
    }
}

fn controls_satisfied(gate: &super::Gate, bits: &[bool]) -> bool {
    gate.controls.iter().all(|c| {
        let want = matches!(c.polarity, Polarity::Control);
        bits[c.qubit] == want
    })
}

pub(super) fn run_basis(circuit: &Circuit, bits: &[bool]) -> Result<BasisState> {
    let total = circuit.total_qubits();
    if bits.len() != total {
        return Err(CircuitError::BadInputLength(bits.len(), total));
    }
    let phase_qubits: Vec<bool> = (0..total)
        .map(|q| circuit.role_of(q) == RegisterRole::Phase)
        .collect();
    let mut state = BasisState::new(bits.to_vec());
    for gate in &circuit.gates {
        match gate.kind {
            GateKind::H => return Err(CircuitError::NonBasisGate),
            GateKind::X | GateKind::Mcx => {
                if gate.controls.iter().any(|c| phase_qubits[c.qubit]) {
                    return Err(CircuitError::ControlOnPhase);
                }
                if controls_satisfied(gate, &state.bits) {
                    if phase_qubits[gate.target] {
                        state.sign = -state.sign;
                    } else {
                        state.bits[gate.target] = !state.bits[gate.target];
                    }
                }
            }
        }
    }
    Ok(state)
}

/// Full amplitude vector over all qubits of a circuit, little-endian: bit p
/// of the index is qubit p.
#[derive(Debug, Clone)]
pub struct DenseState {
    pub n_qubits: usize,
    /// Interleaved (re, im) amplitudes, length 2^n.
    pub amps: Vec<(f64, f64)>,
}

impl DenseState {
    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: u64) -> Self {
        assert!(n_qubits <= DENSE_QUBIT_CAP);
        let mut amps = vec![(0.0, 0.0); 1usize << n_qubits];
        amps[index as usize] = (1.0, 0.0);
        DenseState { n_qubits, amps }
    }

    pub fn norm(&self) -> f64 {
        self.amps
            .iter()
            .map(|(re, im)| re * re + im * im)
            .sum::<f64>()
            .sqrt()
    }

    /// Probability of measuring each basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|(re, im)| re * re + im * im).collect()
    }
}

pub(super) fn run_dense(circuit: &Circuit, init: &DenseState) -> Result<DenseState> {
    let total = circuit.total_qubits();
    if total > DENSE_QUBIT_CAP {
        return Err(CircuitError::TooManyQubits(total));
    }
    if init.n_qubits != total {
        return Err(CircuitError::BadInputLength(init.n_qubits, total));
    }
    let mut state = init.clone();
    let dim = state.amps.len();
    for gate in &circuit.gates {
        let t_bit = 1usize << gate.target;
        match gate.kind {
            GateKind::H => {
                let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
                for i in 0..dim {
                    if i & t_bit == 0 {
                        let j = i | t_bit;
                        let a = state.amps[i];
                        let b = state.amps[j];
                        state.amps[i] = ((a.0 + b.0) * inv_sqrt2, (a.1 + b.1) * inv_sqrt2);
                        state.amps[j] = ((a.0 - b.0) * inv_sqrt2, (a.1 - b.1) * inv_sqrt2);
                    }
                }
            }
            GateKind::X | GateKind::Mcx => {
                for i in 0..dim {
                    if i & t_bit == 0 && dense_controls_hit(gate, i) {
                        let j = i | t_bit;
                        state.amps.swap(i, j);
                    }
                }
            }
        }
    }
    Ok(state)
}

fn dense_controls_hit(gate: &super::Gate, index: usize) -> bool {
    gate.controls.iter().all(|c| {
        let bit = index >> c.qubit & 1 == 1;
        bit == matches!(c.polarity, Polarity::Control)
    })
}
