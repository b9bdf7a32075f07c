//! Exact-search toolkit for two-level and book layouts of graphs.
//!
//! The crate has three layers:
//!
//! * classical ground truth: graph/layout types, crossing predicates, and
//!   brute-force solvers ([`graph`]);
//! * a reversible-logic stack: a gate IR with resource metrics ([`circuit`]),
//!   arithmetic gates ([`arith`]), input transducers ([`transducer`]),
//!   per-problem solution detectors ([`oracle`]), and a Grover search driver
//!   ([`grover`]);
//! * an annealing stack: CBO formulations, linearization, QUBO compilation,
//!   and a simulated annealer with an experiment harness ([`qubo`]).
//!
//! Every quantum-side component is cross-validated against the classical
//! layer, and every solver output re-verifies through [`graph`] before it is
//! reported.

pub mod arith;
pub mod circuit;
pub mod combin;
pub mod graph;
pub mod grover;
pub mod oracle;
pub mod qubo;
pub mod transducer;
