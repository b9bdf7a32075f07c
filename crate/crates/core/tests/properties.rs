//! Property tests over randomized circuits, encodings, and polynomials.

use proptest::prelude::*;
use qdraw_core::circuit::{anti, ctrl, BasisState, Circuit, Control, Gate, RegisterRole};
use qdraw_core::combin::{decode_permutation, log2_ceil, IntSeqEncoding};
use qdraw_core::graph::{
    count_two_level_crossings, two_level_cross, BipartiteGraph, EdgeRemovalSet, TwoLevelOrder,
};
use qdraw_core::qubo::Poly;

/// Random H-free gates over `qubits` wires.
fn arb_gate(qubits: usize) -> impl Strategy<Value = Gate> {
    (0..qubits, proptest::collection::vec((0..qubits, any::<bool>()), 0..3)).prop_filter_map(
        "controls must exclude the target and repeats",
        |(target, raw)| {
            let mut controls: Vec<Control> = Vec::new();
            for (q, positive) in raw {
                if q == target || controls.iter().any(|c| c.qubit == q) {
                    return None;
                }
                controls.push(if positive { ctrl(q) } else { anti(q) });
            }
            Some(if controls.is_empty() {
                Gate::x(target)
            } else {
                Gate::mcx(controls, target)
            })
        },
    )
}

fn arb_circuit(qubits: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    proptest::collection::vec(arb_gate(qubits), 0..max_gates).prop_map(move |gates| {
        let mut c = Circuit::new();
        c.add_register("q", qubits, RegisterRole::Input);
        for g in gates {
            c.push(g);
        }
        c
    })
}

proptest! {
    /// A circuit followed by its inverse restores every basis state.
    #[test]
    fn circuit_inverse_is_identity(circuit in arb_circuit(6, 24), raw in 0u64..64) {
        let inv = circuit.inverse();
        let both = Circuit::compose(&[&circuit, &inv]).unwrap();
        let input = BasisState::from_u64(6, raw);
        let out = both.run_basis(&input.bits).unwrap();
        prop_assert_eq!(out.bits, input.bits);
        prop_assert_eq!(out.sign, 1);
    }

    /// Classical reversibility: distinct inputs stay distinct.
    #[test]
    fn circuit_is_a_permutation(circuit in arb_circuit(5, 16)) {
        let mut seen = vec![false; 32];
        for raw in 0..32u64 {
            let out = circuit.run_basis(&BasisState::from_u64(5, raw).bits).unwrap();
            let idx = out.to_u64() as usize;
            prop_assert!(!seen[idx], "two inputs collided on {idx}");
            seen[idx] = true;
        }
    }

    /// Depth and width never exceed complexity, and inversion preserves all
    /// three.
    #[test]
    fn metrics_inequalities(circuit in arb_circuit(6, 24)) {
        let m = circuit.metrics();
        prop_assert!(m.depth <= m.complexity);
        prop_assert!(m.width <= m.complexity);
        prop_assert_eq!(circuit.inverse().metrics(), m);
    }

    /// Packed encodings round-trip through u64 and values.
    #[test]
    fn encoding_round_trip(count in 1usize..6, width in 1usize..4, seed in any::<u64>()) {
        let raw = seed & ((1u64 << (count * width)) - 1).max(1);
        let enc = IntSeqEncoding::from_u64(count, width, raw);
        prop_assert_eq!(enc.to_u64(), raw & ((1u64 << (count * width)) - 1));
        let rebuilt = IntSeqEncoding::from_values(width, &enc.values());
        prop_assert_eq!(rebuilt, enc);
    }

    /// decode_permutation agrees with a naive distinct-and-in-range check.
    #[test]
    fn permutation_decode_matches_naive(n in 2usize..6, seed in any::<u64>()) {
        let w = log2_ceil(n);
        let raw = seed & ((1u64 << (n * w)) - 1);
        let enc = IntSeqEncoding::from_u64(n, w, raw);
        let vals = enc.values();
        let naive = vals.iter().all(|&v| v < n)
            && (0..n).all(|i| (i + 1..n).all(|j| vals[i] != vals[j]));
        prop_assert_eq!(decode_permutation(&enc).is_some(), naive);
    }
}

/// Random small bipartite graphs with at least one edge.
fn arb_bipartite() -> impl Strategy<Value = BipartiteGraph> {
    (1usize..4, 1usize..4)
        .prop_flat_map(|(su, sv)| {
            let full = BipartiteGraph::complete(su, sv);
            let m = full.edges.len();
            (Just(full), proptest::bits::u32::between(0, m))
        })
        .prop_map(|(full, mask)| {
            let edges: Vec<(usize, usize)> = full
                .edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            BipartiteGraph {
                size_u: full.size_u,
                size_v: full.size_v,
                edges,
            }
        })
        .prop_filter("need at least one edge", |g| !g.edges.is_empty())
}

/// Seeded shuffle of 0..count (deterministic per case).
fn shuffled(count: usize, mut seed: u64) -> Vec<usize> {
    let mut items: Vec<usize> = (0..count).collect();
    for i in (1..count).rev() {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        items.swap(i, (seed >> 33) as usize % (i + 1));
    }
    items
}

proptest! {
    /// Crossing predicate symmetry and the full-removal identity.
    #[test]
    fn crossing_symmetry_and_removal(g in arb_bipartite(), seed in any::<u64>()) {
        let order = TwoLevelOrder {
            order_u: shuffled(g.size_u, seed ^ 0x5eed),
            order_v: shuffled(g.size_v, seed ^ 0xfeed),
        };
        for a in 0..g.m() {
            for b in 0..g.m() {
                if a != b {
                    prop_assert_eq!(
                        two_level_cross(&g, &order, a, b).unwrap(),
                        two_level_cross(&g, &order, b, a).unwrap()
                    );
                }
            }
        }
        let all = EdgeRemovalSet::new(0..g.m(), g.m()).unwrap();
        prop_assert_eq!(count_two_level_crossings(&g, &order, Some(&all)).unwrap(), 0);
    }

    /// Polynomial algebra: evaluation distributes over multiplication on
    /// binary assignments (with idempotent powers).
    #[test]
    fn poly_mul_matches_pointwise(
        terms_a in proptest::collection::vec((proptest::collection::vec(0u32..6, 0..3), -4i64..5), 0..4),
        terms_b in proptest::collection::vec((proptest::collection::vec(0u32..6, 0..3), -4i64..5), 0..4),
        raw in 0u64..64,
    ) {
        let mut a = Poly::zero();
        for (m, c) in &terms_a {
            a.add_term(m.clone(), *c);
        }
        let mut b = Poly::zero();
        for (m, c) in &terms_b {
            b.add_term(m.clone(), *c);
        }
        let assign: Vec<bool> = (0..6).map(|i| raw >> i & 1 == 1).collect();
        prop_assert_eq!(a.mul(&b).eval(&assign), a.eval(&assign) * b.eval(&assign));
    }
}
