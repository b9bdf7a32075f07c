//! Resource metrics over the gate dependency DAG.
//!
//! Gates are DAG vertices weighted by their elementary-gate cost; an edge
//! joins two gates sharing a qubit, earlier to later. Complexity is the
//! total weight, depth the heaviest chain, and width the heaviest antichain.
//! Width is exact (weighted Dilworth via minimum flow with lower bounds) up
//! to [`EXACT_WIDTH_GATE_CAP`] gates; beyond that a per-layer weighted
//! maximum is reported as a labeled lower bound.

use super::{Circuit, Gate};
use serde::{Deserialize, Serialize};

/// Largest gate count for which the exact antichain computation runs.
pub const EXACT_WIDTH_GATE_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceMetrics {
    /// Elementary gate count.
    pub complexity: u64,
    /// Heaviest dependency chain.
    pub depth: u64,
    /// Heaviest antichain; a layered lower bound when `width_exact` is false.
    pub width: u64,
    pub width_exact: bool,
}

pub(super) fn compute(circuit: &Circuit) -> ResourceMetrics {
    let weights: Vec<u64> = circuit.gates.iter().map(Gate::weight).collect();
    let complexity: u64 = weights.iter().sum();

    // depth: sweep gates in order, tracking the heaviest chain ending at the
    // last gate on each qubit
    let total_qubits = circuit.total_qubits();
    let mut chain = vec![0u64; total_qubits];
    let mut depth = 0;
    for (gi, gate) in circuit.gates.iter().enumerate() {
        let below = gate.qubits().map(|q| chain[q]).max().unwrap_or(0);
        let here = below + weights[gi];
        for q in gate.qubits() {
            chain[q] = here;
        }
        depth = depth.max(here);
    }

    let n = circuit.gates.len();
    if n == 0 {
        return ResourceMetrics {
            complexity,
            depth,
            width: 0,
            width_exact: true,
        };
    }

    let edges = dependency_edges(circuit);
    if n <= EXACT_WIDTH_GATE_CAP {
        let width = max_weight_antichain(n, &edges, &weights);
        ResourceMetrics {
            complexity,
            depth,
            width,
            width_exact: true,
        }
    } else {
        let width = layered_width(n, &edges, &weights);
        ResourceMetrics {
            complexity,
            depth,
            width,
            width_exact: false,
        }
    }
}

/// Sparse dependency edges: each gate points to the next gate on every qubit
/// it touches. Reachability in this graph equals the full dependency order.
fn dependency_edges(circuit: &Circuit) -> Vec<(usize, usize)> {
    let total_qubits = circuit.total_qubits();
    let mut last_on = vec![usize::MAX; total_qubits];
    let mut edges = Vec::new();
    for (gi, gate) in circuit.gates.iter().enumerate() {
        let mut preds: Vec<usize> = gate
            .qubits()
            .filter(|&q| last_on[q] != usize::MAX)
            .map(|q| last_on[q])
            .collect();
        preds.sort_unstable();
        preds.dedup();
        for p in preds {
            edges.push((p, gi));
        }
        for q in gate.qubits() {
            last_on[q] = gi;
        }
    }
    edges
}

/// Max weight over ASAP layers; every layer is an antichain, so this lower
/// bound is itself a valid schedule width.
fn layered_width(n: usize, edges: &[(usize, usize)], weights: &[u64]) -> u64 {
    let mut layer = vec![0usize; n];
    for &(u, v) in edges {
        layer[v] = layer[v].max(layer[u] + 1);
    }
    let top = layer.iter().copied().max().unwrap_or(0);
    let mut acc = vec![0u64; top + 1];
    for (g, &l) in layer.iter().enumerate() {
        acc[l] += weights[g];
    }
    acc.into_iter().max().unwrap_or(0)
}

/// Exact maximum-weight antichain via minimum flow with lower bounds.
///
/// Split each gate v into v_in -> v_out carrying a lower bound of w(v); wire
/// the source to every v_in, every v_out to the sink, and dependency edges
/// u_out -> v_in, all unbounded. Flow decomposes into chains and vertex v
/// needs w(v) units of coverage, so by weighted Dilworth duality the minimum
/// feasible s-t flow value equals the maximum-weight antichain.
fn max_weight_antichain(n: usize, edges: &[(usize, usize)], weights: &[u64]) -> u64 {
    const INF: u64 = u64::MAX / 4;
    // nodes: 0..n in, n..2n out, then s, t, ss, tt
    let s = 2 * n;
    let t = 2 * n + 1;
    let ss = 2 * n + 2;
    let tt = 2 * n + 3;
    let mut net = Dinic::new(2 * n + 4);

    // lower bounds exist only on the v_in -> v_out edges; apply the standard
    // excess transformation
    for v in 0..n {
        net.add_edge(v, n + v, INF);
        net.add_edge(s, v, INF);
        net.add_edge(n + v, t, INF);
        net.add_edge(ss, n + v, weights[v]);
        net.add_edge(v, tt, weights[v]);
    }
    for &(u, v) in edges {
        net.add_edge(n + u, v, INF);
    }
    let ts_edge = net.add_edge(t, s, INF);

    // a feasible circulation always exists (route w(v) along s -> v -> t)
    net.max_flow(ss, tt);
    let feasible_value = net.flow_on(ts_edge);
    net.close_edge(ts_edge);
    let reduction = net.max_flow(t, s);
    feasible_value - reduction
}

struct Dinic {
    // edge i and i^1 are a forward/backward pair; cap is residual capacity
    to: Vec<usize>,
    cap: Vec<u64>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            to: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.to.len();
        self.to.push(to);
        self.cap.push(cap);
        self.to.push(from);
        self.cap.push(0);
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    /// Flow pushed through a forward edge (its reverse accumulates it).
    fn flow_on(&self, id: usize) -> u64 {
        self.cap[id ^ 1]
    }

    /// Remove an edge pair from the residual network.
    fn close_edge(&mut self, id: usize) {
        self.cap[id] = 0;
        self.cap[id ^ 1] = 0;
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut queue = std::collections::VecDeque::new();
        self.level[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &id in &self.adj[v] {
                let w = self.to[id];
                if self.cap[id] > 0 && self.level[w] < 0 {
                    self.level[w] = self.level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.level[t] >= 0
    }

    /// Iterative path search within the level graph (graphs here can be
    /// deep, so no recursion).
    fn augment(&mut self, s: usize, t: usize) -> u64 {
        let mut path: Vec<usize> = Vec::new(); // edge ids along the current path
        let mut v = s;
        loop {
            if v == t {
                let bottleneck = path.iter().map(|&id| self.cap[id]).min().unwrap();
                for &id in &path {
                    self.cap[id] -= bottleneck;
                    self.cap[id ^ 1] += bottleneck;
                }
                return bottleneck;
            }
            let mut advanced = false;
            while self.iter[v] < self.adj[v].len() {
                let id = self.adj[v][self.iter[v]];
                let w = self.to[id];
                if self.cap[id] > 0 && self.level[w] == self.level[v] + 1 {
                    path.push(id);
                    v = w;
                    advanced = true;
                    break;
                }
                self.iter[v] += 1;
            }
            if !advanced {
                if v == s {
                    return 0;
                }
                // dead end: blacklist v and retreat one edge
                self.level[v] = -1;
                let id = path.pop().unwrap();
                v = self.to[id ^ 1];
            }
        }
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let pushed = self.augment(s, t);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}
