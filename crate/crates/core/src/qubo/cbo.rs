//! CBO formulations: directed precedence variables per layer with
//! consistency and transitivity constraints, crossing indicators as their
//! defining polynomials, and the problem-specific objective or constraints.

use super::{CboModel, Constraint, Poly, Relation, VarInfo};
use crate::graph::{
    BipartiteGraph, EdgeRemovalSet, Graph, PageAssignment, ProblemInstance, Solution, SpineOrder,
    TwoLevelOrder,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Transitivity family: two linear inequalities per ordered triple, or one
/// quadratic inequality (half the constraint count).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transitivity {
    Linear,
    Quadratic,
}

/// What a CBO variable stands for, for decoding assignments back into
/// layouts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarMeta {
    /// u_{i,j} = 1 iff u_i precedes u_j.
    OrderU { i: usize, j: usize },
    OrderV { i: usize, j: usize },
    /// Spine precedence for book problems.
    OrderX { i: usize, j: usize },
    /// Edge removed (skewness problems).
    Removal { edge: usize },
    /// Edge assigned to a page (book thickness).
    Page { edge: usize, page: usize },
    /// Monomial replacement from linearization.
    Linearized { monomial: Vec<u32> },
    /// Slack bit of an inequality.
    Slack { constraint: usize, weight: i64 },
}

struct Builder {
    vars: Vec<VarInfo>,
    constraints: Vec<Constraint>,
    objective: Poly,
}

impl Builder {
    fn new() -> Self {
        Builder {
            vars: Vec::new(),
            constraints: Vec::new(),
            objective: Poly::zero(),
        }
    }

    fn add_var(&mut self, name: String, meta: VarMeta) -> u32 {
        let id = self.vars.len() as u32;
        self.vars.push(VarInfo { name, meta });
        id
    }

    fn constrain(&mut self, label: String, poly: Poly, relation: Relation, bound: i64) {
        self.constraints.push(Constraint {
            label,
            poly,
            relation,
            bound,
        });
    }

    fn finish(self) -> CboModel {
        CboModel {
            vars: self.vars,
            objective: self.objective,
            constraints: self.constraints,
        }
    }
}

/// Directed precedence variables for one layer, with consistency and the
/// chosen transitivity family.
fn ordering_layer(
    b: &mut Builder,
    prefix: &str,
    count: usize,
    transitivity: Transitivity,
    meta: impl Fn(usize, usize) -> VarMeta,
) -> BTreeMap<(usize, usize), u32> {
    let mut vars = BTreeMap::new();
    for i in 0..count {
        for j in 0..count {
            if i != j {
                let id = b.add_var(format!("{prefix}{i}_{j}"), meta(i, j));
                vars.insert((i, j), id);
            }
        }
    }
    // consistency: exactly one direction per unordered pair
    for i in 0..count {
        for j in i + 1..count {
            let mut p = Poly::var(vars[&(i, j)]);
            p.add(&Poly::var(vars[&(j, i)]));
            b.constrain(
                format!("C{prefix} {i},{j}"),
                p,
                Relation::Eq,
                1,
            );
        }
    }
    // transitivity over ordered triples of distinct vertices
    for i in 0..count {
        for j in 0..count {
            for k in 0..count {
                if i == j || j == k || i == k {
                    continue;
                }
                match transitivity {
                    Transitivity::Linear => {
                        let mut p = Poly::var(vars[&(i, j)]);
                        p.add(&Poly::var(vars[&(j, k)]));
                        p.add_term(vec![vars[&(i, k)]], -1);
                        b.constrain(
                            format!("T{prefix} {i},{j},{k} ge"),
                            p.clone(),
                            Relation::Ge,
                            0,
                        );
                        b.constrain(format!("T{prefix} {i},{j},{k} le"), p, Relation::Le, 1);
                    }
                    Transitivity::Quadratic => {
                        // 1 - u_ij u_jk + u_ik >= 1
                        let mut p = Poly::constant(1);
                        p.add_term(vec![vars[&(i, j)], vars[&(j, k)]], -1);
                        p.add(&Poly::var(vars[&(i, k)]));
                        b.constrain(format!("TQ{prefix} {i},{j},{k}"), p, Relation::Ge, 1);
                    }
                }
            }
        }
    }
    vars
}

/// Two-level crossing indicator for an independent pair: with e_a=(u_i,v_k)
/// and e_b=(u_j,v_l), chi = u_ij v_lk + u_ji v_kl. Symmetric in (a, b).
fn chi_two_level(
    graph: &BipartiteGraph,
    u_vars: &BTreeMap<(usize, usize), u32>,
    v_vars: &BTreeMap<(usize, usize), u32>,
    a: usize,
    b: usize,
) -> Poly {
    let (ui, vk) = graph.edges[a];
    let (uj, vl) = graph.edges[b];
    let mut p = Poly::zero();
    p.add_term(vec![u_vars[&(ui, uj)], v_vars[&(vl, vk)]], 1);
    p.add_term(vec![u_vars[&(uj, ui)], v_vars[&(vk, vl)]], 1);
    p
}

/// Book crossing indicator for an ordered independent pair: the four cubic
/// arrangement terms in which an endpoint of e_a comes first.
fn chi_book_oriented(
    graph: &Graph,
    x_vars: &BTreeMap<(usize, usize), u32>,
    a: usize,
    b: usize,
) -> Poly {
    let (p, q) = graph.edges[a];
    let (r, s) = graph.edges[b];
    let mut out = Poly::zero();
    for [w, x, y, z] in [[p, r, q, s], [p, s, q, r], [q, r, p, s], [q, s, p, r]] {
        out.add_term(
            vec![x_vars[&(w, x)], x_vars[&(x, y)], x_vars[&(y, z)]],
            1,
        );
    }
    out
}

/// Full book crossing indicator: both orientations.
fn chi_book_symmetric(
    graph: &Graph,
    x_vars: &BTreeMap<(usize, usize), u32>,
    a: usize,
    b: usize,
) -> Poly {
    let mut p = chi_book_oriented(graph, x_vars, a, b);
    p.add(&chi_book_oriented(graph, x_vars, b, a));
    p
}

fn independent_pairs_bip(graph: &BipartiteGraph) -> Vec<(usize, usize)> {
    let m = graph.m();
    (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .filter(|&(a, b)| graph.independent(a, b))
        .collect()
}

fn independent_pairs(graph: &Graph) -> Vec<(usize, usize)> {
    let m = graph.m();
    (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .filter(|&(a, b)| graph.independent(a, b))
        .collect()
}

/// Build the CBO formulation of a problem instance.
pub fn build_cbo(instance: &ProblemInstance, transitivity: Transitivity) -> super::Result<CboModel> {
    instance.validate()?;
    let mut b = Builder::new();
    match instance {
        ProblemInstance::Tlcm { graph, rho: _ } => {
            let (u_vars, v_vars) = two_level_ordering(&mut b, graph, transitivity);
            for (a, bb) in independent_pairs_bip(graph) {
                b.objective
                    .add(&chi_two_level(graph, &u_vars, &v_vars, a, bb));
            }
        }
        ProblemInstance::Tlkp { graph, k } => {
            let (u_vars, v_vars) = two_level_ordering(&mut b, graph, transitivity);
            for a in 0..graph.m() {
                let mut p = Poly::zero();
                for bb in 0..graph.m() {
                    if a != bb && graph.independent(a, bb) {
                        p.add(&chi_two_level(graph, &u_vars, &v_vars, a.min(bb), a.max(bb)));
                    }
                }
                if !p.is_zero() {
                    b.constrain(format!("KP e{a}"), p, Relation::Le, *k as i64);
                }
            }
        }
        ProblemInstance::Tlqp { graph } => {
            let (u_vars, v_vars) = two_level_ordering(&mut b, graph, transitivity);
            let m = graph.m();
            for a in 0..m {
                for c in a + 1..m {
                    if !graph.independent(a, c) {
                        continue;
                    }
                    for d in c + 1..m {
                        if !graph.independent(a, d) || !graph.independent(c, d) {
                            continue;
                        }
                        let mut p = chi_two_level(graph, &u_vars, &v_vars, a, c);
                        p.add(&chi_two_level(graph, &u_vars, &v_vars, a, d));
                        p.add(&chi_two_level(graph, &u_vars, &v_vars, c, d));
                        b.constrain(format!("QP e{a},e{c},e{d}"), p, Relation::Lt, 3);
                    }
                }
            }
        }
        ProblemInstance::Tls { graph, sigma } => {
            let (u_vars, v_vars) = two_level_ordering(&mut b, graph, transitivity);
            let s_vars: Vec<u32> = (0..graph.m())
                .map(|e| b.add_var(format!("s{e}"), VarMeta::Removal { edge: e }))
                .collect();
            let mut total = Poly::zero();
            for &s in &s_vars {
                total.add(&Poly::var(s));
            }
            b.constrain("CS".into(), total, Relation::Le, *sigma as i64);
            for (a, bb) in independent_pairs_bip(graph) {
                let mut p = chi_two_level(graph, &u_vars, &v_vars, a, bb);
                p.add_term(vec![s_vars[a]], -1);
                p.add_term(vec![s_vars[bb]], -1);
                b.constrain(format!("S e{a},e{bb}"), p, Relation::Lt, 1);
            }
        }
        ProblemInstance::Opcm { graph, rho: _ } => {
            let x_vars = spine_ordering(&mut b, graph.n, transitivity);
            for (a, bb) in independent_pairs(graph) {
                b.objective.add(&chi_book_symmetric(graph, &x_vars, a, bb));
            }
        }
        ProblemInstance::Bt { graph, tau } => {
            let x_vars = spine_ordering(&mut b, graph.n, transitivity);
            let mut page_vars = vec![Vec::with_capacity(*tau); graph.m()];
            for e in 0..graph.m() {
                for c in 0..*tau {
                    page_vars[e].push(b.add_var(
                        format!("p{e}_{c}"),
                        VarMeta::Page { edge: e, page: c },
                    ));
                }
            }
            for e in 0..graph.m() {
                let mut p = Poly::zero();
                for &v in &page_vars[e] {
                    p.add(&Poly::var(v));
                }
                b.constrain(format!("BC e{e}"), p, Relation::Eq, 1);
            }
            for (a, bb) in independent_pairs(graph) {
                for c in 0..*tau {
                    let mut p = chi_book_symmetric(graph, &x_vars, a, bb);
                    p.add(&Poly::var(page_vars[a][c]));
                    p.add(&Poly::var(page_vars[bb][c]));
                    b.constrain(format!("CC e{a},e{bb},page{c}"), p, Relation::Lt, 3);
                }
            }
        }
        ProblemInstance::Bs { graph, sigma } => {
            let x_vars = spine_ordering(&mut b, graph.n, transitivity);
            let s_vars: Vec<u32> = (0..graph.m())
                .map(|e| b.add_var(format!("s{e}"), VarMeta::Removal { edge: e }))
                .collect();
            let mut total = Poly::zero();
            for &s in &s_vars {
                total.add(&Poly::var(s));
            }
            b.constrain("CS".into(), total, Relation::Le, *sigma as i64);
            for (a, bb) in independent_pairs(graph) {
                let mut p = chi_book_symmetric(graph, &x_vars, a, bb);
                p.add_term(vec![s_vars[a]], -1);
                p.add_term(vec![s_vars[bb]], -1);
                b.constrain(format!("S e{a},e{bb}"), p, Relation::Lt, 1);
            }
        }
    }
    Ok(b.finish())
}

type PairVars = BTreeMap<(usize, usize), u32>;

fn two_level_ordering(
    b: &mut Builder,
    graph: &BipartiteGraph,
    transitivity: Transitivity,
) -> (PairVars, PairVars) {
    let u_vars = ordering_layer(b, "u", graph.size_u, transitivity, |i, j| VarMeta::OrderU {
        i,
        j,
    });
    let v_vars = ordering_layer(b, "v", graph.size_v, transitivity, |i, j| VarMeta::OrderV {
        i,
        j,
    });
    (u_vars, v_vars)
}

fn spine_ordering(b: &mut Builder, n: usize, transitivity: Transitivity) -> PairVars {
    ordering_layer(b, "x", n, transitivity, |i, j| VarMeta::OrderX { i, j })
}

/// Default penalty weight: one more than an upper bound on the objective
/// (the sum of its positive coefficients), so feasible optima always beat
/// infeasible assignments. Pure feasibility models get 1 + 0.
pub fn default_penalty(model: &CboModel) -> i64 {
    1 + model
        .objective
        .terms()
        .map(|(_, &c)| c.max(0))
        .sum::<i64>()
}

/// Decoded assignment: a layout when the ordering (and page/removal)
/// variables are consistent, otherwise the list of broken constraints.
#[derive(Debug, Clone, Serialize)]
pub struct DecodeOutcome {
    pub solution: Option<Solution>,
    pub violations: Vec<String>,
}

/// Recover a vertex order from a tournament of precedence bits: positions
/// follow descending win counts, then the full matrix is re-checked so any
/// intransitivity surfaces as a violation.
fn order_from_wins(
    count: usize,
    get: impl Fn(usize, usize) -> bool,
    label: &str,
    violations: &mut Vec<String>,
) -> Vec<usize> {
    for i in 0..count {
        for j in i + 1..count {
            if get(i, j) == get(j, i) {
                violations.push(format!("{label}: consistency broken for pair ({i},{j})"));
            }
        }
    }
    let mut wins = vec![0usize; count];
    for i in 0..count {
        for j in 0..count {
            if i != j && get(i, j) {
                wins[i] += 1;
            }
        }
    }
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(wins[v]));
    for (p, &i) in order.iter().enumerate() {
        for &j in order.iter().skip(p + 1) {
            if !get(i, j) {
                violations.push(format!(
                    "{label}: transitivity broken around pair ({i},{j})"
                ));
                return order;
            }
        }
    }
    order
}

/// Decode a (prefix of an) assignment against the instance's variable
/// metadata.
pub fn decode_assignment(
    instance: &ProblemInstance,
    vars: &[VarInfo],
    assignment: &[bool],
) -> DecodeOutcome {
    let mut violations = Vec::new();
    let mut u_prec: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut v_prec: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut x_prec: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut removal: Vec<usize> = Vec::new();
    let mut pages: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (id, var) in vars.iter().enumerate() {
        let value = assignment.get(id).copied().unwrap_or(false);
        match &var.meta {
            VarMeta::OrderU { i, j } => {
                u_prec.insert((*i, *j), value);
            }
            VarMeta::OrderV { i, j } => {
                v_prec.insert((*i, *j), value);
            }
            VarMeta::OrderX { i, j } => {
                x_prec.insert((*i, *j), value);
            }
            VarMeta::Removal { edge } => {
                if value {
                    removal.push(*edge);
                }
            }
            VarMeta::Page { edge, page } => {
                if value {
                    pages.entry(*edge).or_default().push(*page);
                }
            }
            VarMeta::Linearized { .. } | VarMeta::Slack { .. } => {}
        }
    }

    let solution = match instance {
        ProblemInstance::Tlcm { graph, .. }
        | ProblemInstance::Tlkp { graph, .. }
        | ProblemInstance::Tlqp { graph }
        | ProblemInstance::Tls { graph, .. } => {
            let order_u = order_from_wins(
                graph.size_u,
                |i, j| u_prec.get(&(i, j)).copied().unwrap_or(false),
                "u-layer",
                &mut violations,
            );
            let order_v = order_from_wins(
                graph.size_v,
                |i, j| v_prec.get(&(i, j)).copied().unwrap_or(false),
                "v-layer",
                &mut violations,
            );
            let order = TwoLevelOrder { order_u, order_v };
            if let ProblemInstance::Tls { graph, sigma } = instance {
                if removal.len() > *sigma {
                    violations.push(format!(
                        "removal set size {} exceeds sigma = {sigma}",
                        removal.len()
                    ));
                }
                EdgeRemovalSet::new(removal.iter().copied(), graph.m())
                    .ok()
                    .map(|removed| Solution::TwoLevelSkew {
                        removed,
                        order: Some(order),
                    })
            } else {
                Some(Solution::TwoLevel { order })
            }
        }
        ProblemInstance::Opcm { graph, .. } => {
            let order = order_from_wins(
                graph.n,
                |i, j| x_prec.get(&(i, j)).copied().unwrap_or(false),
                "spine",
                &mut violations,
            );
            Some(Solution::Spine {
                order: SpineOrder { order },
            })
        }
        ProblemInstance::Bt { graph, tau } => {
            let order = order_from_wins(
                graph.n,
                |i, j| x_prec.get(&(i, j)).copied().unwrap_or(false),
                "spine",
                &mut violations,
            );
            let mut page_of = vec![usize::MAX; graph.m()];
            for e in 0..graph.m() {
                match pages.get(&e).map(Vec::as_slice) {
                    Some([single]) => page_of[e] = *single,
                    Some(multiple) => violations.push(format!(
                        "edge {e} assigned {} pages",
                        multiple.len()
                    )),
                    None => violations.push(format!("edge {e} assigned no page")),
                }
            }
            if page_of.iter().all(|&p| p != usize::MAX) {
                Some(Solution::Book {
                    order: SpineOrder { order },
                    pages: PageAssignment {
                        pages: page_of,
                        tau: *tau,
                    },
                })
            } else {
                None
            }
        }
        ProblemInstance::Bs { graph, sigma } => {
            let order = order_from_wins(
                graph.n,
                |i, j| x_prec.get(&(i, j)).copied().unwrap_or(false),
                "spine",
                &mut violations,
            );
            if removal.len() > *sigma {
                violations.push(format!(
                    "removal set size {} exceeds sigma = {sigma}",
                    removal.len()
                ));
            }
            EdgeRemovalSet::new(removal.iter().copied(), graph.m())
                .ok()
                .map(|removed| Solution::BookSkew {
                    removed,
                    order: Some(SpineOrder { order }),
                })
        }
    };

    DecodeOutcome {
        solution: if violations.is_empty() { solution } else { None },
        violations,
    }
}
