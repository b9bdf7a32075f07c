//! Circuit export: a line-oriented netlist and a JSON mirror.

use super::{Circuit, CircuitError, Polarity, Result};
use std::fmt::Write;

/// Textual netlist: registers, then one `gate` line per gate in order.
///
/// ```text
/// register phi 4 input
/// register flag 1 flag
/// gate mcx controls=[(0,+),(1,-)] target=4
/// gate x controls=[] target=2
/// ```
pub fn netlist(circuit: &Circuit) -> String {
    let mut out = String::new();
    for r in &circuit.registers {
        let role = match r.role {
            super::RegisterRole::Input => "input",
            super::RegisterRole::Ancilla => "ancilla",
            super::RegisterRole::Flag => "flag",
            super::RegisterRole::Phase => "phase",
        };
        writeln!(out, "register {} {} {}", r.name, r.size, role).unwrap();
    }
    for gate in &circuit.gates {
        let kind = match gate.kind {
            super::GateKind::X => "x",
            super::GateKind::H => "h",
            super::GateKind::Mcx => "mcx",
        };
        let controls = gate
            .controls
            .iter()
            .map(|c| {
                let sign = match c.polarity {
                    Polarity::Control => '+',
                    Polarity::Anticontrol => '-',
                };
                format!("({},{})", c.qubit, sign)
            })
            .collect::<Vec<_>>()
            .join(",");
        writeln!(out, "gate {kind} controls=[{controls}] target={}", gate.target).unwrap();
    }
    out
}

pub fn circuit_to_json(circuit: &Circuit) -> String {
    serde_json::to_string_pretty(circuit).expect("circuit serializes")
}

pub fn circuit_from_json(json: &str) -> Result<Circuit> {
    serde_json::from_str(json).map_err(|e| CircuitError::Parse(e.to_string()))
}
