//! Gate-list IR over named qubit registers.
//!
//! Gates are X, H, and multi-controlled X with per-control polarity
//! (anticontrols fire on |0>). MCX stays a first-class gate so circuits read
//! like their block diagrams; its decomposition cost is charged only in the
//! resource metrics. All three kinds are self-inverse, so circuit inversion
//! is gate-list reversal.

mod export;
mod metrics;
mod sim;

pub use export::{circuit_from_json, circuit_to_json, netlist};
pub use metrics::ResourceMetrics;
pub use sim::{BasisState, DenseState, DENSE_QUBIT_CAP};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("qubit {0} out of range ({1} qubits)")]
    QubitOutOfRange(usize, usize),
    #[error("duplicate register name `{0}`")]
    DuplicateRegister(String),
    #[error("control list invalid: {0}")]
    BadControls(String),
    #[error("H gates cannot be simulated on a classical basis state")]
    NonBasisGate,
    #[error("controls on the phase register are not supported")]
    ControlOnPhase,
    #[error("dense simulation capped at {DENSE_QUBIT_CAP} qubits, circuit has {0}")]
    TooManyQubits(usize),
    #[error("register layouts differ, circuits cannot compose")]
    RegisterMismatch,
    #[error("basis input length {0} does not match qubit count {1}")]
    BadInputLength(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CircuitError>;

/// What a register holds; drives ancilla-restoration checks and the
/// phase-kickback convention in basis simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegisterRole {
    Input,
    Ancilla,
    Flag,
    Phase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    pub name: String,
    pub size: usize,
    pub role: RegisterRole,
    /// First global qubit index of this register.
    pub start: usize,
}

/// A contiguous block of global qubit indices handed out by
/// [`Circuit::add_register`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QubitRange {
    pub start: usize,
    pub size: usize,
}

impl QubitRange {
    pub fn idx(&self, i: usize) -> usize {
        assert!(i < self.size, "register index out of range");
        self.start + i
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.start..self.start + self.size
    }

    pub fn as_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Polarity {
    #[serde(rename = "+")]
    Control,
    #[serde(rename = "-")]
    Anticontrol,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

/// Positive control helper.
pub fn ctrl(qubit: usize) -> Control {
    Control {
        qubit,
        polarity: Polarity::Control,
    }
}

/// Anticontrol helper (fires on |0>).
pub fn anti(qubit: usize) -> Control {
    Control {
        qubit,
        polarity: Polarity::Anticontrol,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    X,
    H,
    Mcx,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub controls: Vec<Control>,
    pub target: usize,
}

impl Gate {
    pub fn x(target: usize) -> Self {
        Gate {
            kind: GateKind::X,
            controls: Vec::new(),
            target,
        }
    }

    pub fn h(target: usize) -> Self {
        Gate {
            kind: GateKind::H,
            controls: Vec::new(),
            target,
        }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::mcx(vec![ctrl(control)], target)
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Self {
        Gate::mcx(vec![ctrl(c1), ctrl(c2)], target)
    }

    pub fn mcx(controls: Vec<Control>, target: usize) -> Self {
        assert!(!controls.is_empty(), "MCX needs at least one control");
        Gate {
            kind: GateKind::Mcx,
            controls,
            target,
        }
    }

    /// Elementary-gate weight: X, H, CNOT, and Toffoli count 1; an MCX with
    /// c > 2 controls is charged its ladder of c-1 Toffoli-equivalents.
    pub fn weight(&self) -> u64 {
        match self.kind {
            GateKind::X | GateKind::H => 1,
            GateKind::Mcx => {
                let c = self.controls.len() as u64;
                if c <= 2 {
                    1
                } else {
                    c - 1
                }
            }
        }
    }

    /// Every qubit the gate touches: controls then target.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls
            .iter()
            .map(|c| c.qubit)
            .chain(std::iter::once(self.target))
    }
}

/// A named slice of the gate list, recorded by builders for inspection and
/// netlist annotation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub name: String,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Circuit {
    pub registers: Vec<Register>,
    pub gates: Vec<Gate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub spans: Vec<Span>,
}

impl Circuit {
    pub fn new() -> Self {
        Circuit::default()
    }

    pub fn total_qubits(&self) -> usize {
        self.registers.last().map_or(0, |r| r.start + r.size)
    }

    pub fn add_register(
        &mut self,
        name: impl Into<String>,
        size: usize,
        role: RegisterRole,
    ) -> QubitRange {
        let name = name.into();
        assert!(
            self.registers.iter().all(|r| r.name != name),
            "duplicate register name {name}"
        );
        let start = self.total_qubits();
        self.registers.push(Register {
            name,
            size,
            role,
            start,
        });
        QubitRange { start, size }
    }

    pub fn register(&self, name: &str) -> Option<QubitRange> {
        self.registers.iter().find(|r| r.name == name).map(|r| QubitRange {
            start: r.start,
            size: r.size,
        })
    }

    pub fn role_of(&self, qubit: usize) -> RegisterRole {
        for r in &self.registers {
            if qubit >= r.start && qubit < r.start + r.size {
                return r.role;
            }
        }
        panic!("qubit {qubit} outside all registers");
    }

    fn validate_gate(&self, gate: &Gate) -> Result<()> {
        let total = self.total_qubits();
        for q in gate.qubits() {
            if q >= total {
                return Err(CircuitError::QubitOutOfRange(q, total));
            }
        }
        let mut seen: Vec<usize> = gate.controls.iter().map(|c| c.qubit).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(CircuitError::BadControls("duplicate control qubit".into()));
        }
        if gate.controls.iter().any(|c| c.qubit == gate.target) {
            return Err(CircuitError::BadControls("control equals target".into()));
        }
        if gate.kind == GateKind::H && !gate.controls.is_empty() {
            return Err(CircuitError::BadControls("H takes no controls".into()));
        }
        Ok(())
    }

    pub fn push(&mut self, gate: Gate) {
        self.validate_gate(&gate).expect("invalid gate");
        self.gates.push(gate);
    }

    pub fn try_push(&mut self, gate: Gate) -> Result<()> {
        self.validate_gate(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Current gate count; pair with [`Circuit::mark`] or
    /// [`Circuit::append_inverse_from`].
    pub fn cursor(&self) -> usize {
        self.gates.len()
    }

    /// Record a named span from `start` to the current cursor.
    pub fn mark(&mut self, name: impl Into<String>, start: usize) {
        self.spans.push(Span {
            name: name.into(),
            start,
            end: self.gates.len(),
        });
    }

    /// Total elementary weight of a recorded span.
    pub fn span_weight(&self, span: &Span) -> u64 {
        self.gates[span.start..span.end]
            .iter()
            .map(Gate::weight)
            .sum()
    }

    /// Append the inverse of everything from `start` onward: the reversed
    /// gate list (all gate kinds are self-inverse).
    pub fn append_inverse_from(&mut self, start: usize) {
        let tail: Vec<Gate> = self.gates[start..].iter().rev().cloned().collect();
        self.gates.extend(tail);
    }

    /// The whole circuit reversed.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            registers: self.registers.clone(),
            gates: self.gates.iter().rev().cloned().collect(),
            spans: Vec::new(),
        }
    }

    /// Concatenate circuits over an identical register layout.
    pub fn compose(parts: &[&Circuit]) -> Result<Circuit> {
        let first = parts.first().ok_or(CircuitError::RegisterMismatch)?;
        let mut out = Circuit {
            registers: first.registers.clone(),
            gates: Vec::new(),
            spans: Vec::new(),
        };
        for part in parts {
            if part.registers != out.registers {
                return Err(CircuitError::RegisterMismatch);
            }
            out.gates.extend(part.gates.iter().cloned());
        }
        Ok(out)
    }

    pub fn metrics(&self) -> ResourceMetrics {
        metrics::compute(self)
    }

    /// Classical evolution of a basis state; errors on H gates. An X landing
    /// on a phase-role qubit flips the tracked sign instead of the bit,
    /// mirroring X|-> = -|->.
    pub fn run_basis(&self, bits: &[bool]) -> Result<BasisState> {
        sim::run_basis(self, bits)
    }

    /// Exact amplitude evolution (capped at [`DENSE_QUBIT_CAP`] qubits).
    pub fn run_dense(&self, init: &DenseState) -> Result<DenseState> {
        sim::run_dense(self, init)
    }
}
