//! Exhaustive solvers. Besides a witness per problem definition, each run
//! reports the number of raw search-register bitstrings the phase-inversion
//! circuit would mark (every encoding of every accepting configuration),
//! which calibrates the Grover iteration count.

use super::*;
use crate::combin::binomial;
use rayon::prelude::*;

/// Enumeration guards; exhaustive search beyond these is refused.
#[derive(Debug, Clone, Copy)]
pub struct BruteForceLimits {
    /// Per-layer cap for the two-level problems.
    pub max_layer: usize,
    /// Vertex cap for the book-layout problems.
    pub max_book_vertices: usize,
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        BruteForceLimits {
            max_layer: 8,
            max_book_vertices: 8,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BruteForceReport {
    /// An optimal/feasible witness per the problem definition, if any.
    pub witness: Option<Solution>,
    /// Number of accepting search-register bitstrings (M).
    pub accepting_states: u128,
    /// Search-register width (number of bits an encoding uses).
    pub search_bits: usize,
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Encodings per two-level drawing: a drawing fixes only the relative order
/// inside each layer, so `C(n, |U|)` position interleavings map to it.
fn two_level_multiplicity(graph: &BipartiteGraph) -> u128 {
    binomial(graph.n(), graph.size_u)
}

fn guard_two_level(graph: &BipartiteGraph, limits: &BruteForceLimits) -> Result<()> {
    if graph.size_u > limits.max_layer || graph.size_v > limits.max_layer {
        return Err(GraphError::TooLarge(format!(
            "layer sizes ({}, {}) exceed guard {}",
            graph.size_u, graph.size_v, limits.max_layer
        )));
    }
    Ok(())
}

fn guard_book(graph: &Graph, limits: &BruteForceLimits) -> Result<()> {
    if graph.n > limits.max_book_vertices {
        return Err(GraphError::TooLarge(format!(
            "vertex count {} exceeds guard {}",
            graph.n, limits.max_book_vertices
        )));
    }
    Ok(())
}

/// Crossing histogram over all pairs of layer orders, with the index of the
/// first order pair achieving the minimum.
struct TlcmSurvey {
    histogram: Vec<u64>,
    best: Option<(u64, usize, usize)>,
}

fn tlcm_survey(graph: &BipartiteGraph) -> TlcmSurvey {
    let su = graph.size_u;
    let sv = graph.size_v;
    let orders_u = permutations(su);
    let orders_v = permutations(sv);
    let max_pairs = graph.m() * graph.m().saturating_sub(1) / 2;

    // neighbours of each v-vertex on the u side
    let mut nbr: Vec<Vec<usize>> = vec![Vec::new(); sv];
    for &(u, v) in &graph.edges {
        nbr[v].push(u);
    }

    let surveys: Vec<TlcmSurvey> = orders_u
        .par_iter()
        .enumerate()
        .map(|(ui, ou)| {
            let mut pos_u = vec![0usize; su];
            for (p, &u) in ou.iter().enumerate() {
                pos_u[u] = p;
            }
            // cross[a][b]: crossing pairs contributed when v-vertex a
            // precedes v-vertex b
            let mut cross = vec![vec![0u64; sv]; sv];
            for a in 0..sv {
                for b in 0..sv {
                    if a == b {
                        continue;
                    }
                    let mut c = 0;
                    for &x in &nbr[a] {
                        for &y in &nbr[b] {
                            if x != y && pos_u[x] > pos_u[y] {
                                c += 1;
                            }
                        }
                    }
                    cross[a][b] = c;
                }
            }
            let mut hist = vec![0u64; max_pairs + 1];
            let mut best: Option<(u64, usize, usize)> = None;
            for (vi, ov) in orders_v.iter().enumerate() {
                let mut total = 0;
                for p in 0..sv {
                    for q in p + 1..sv {
                        total += cross[ov[p]][ov[q]];
                    }
                }
                hist[total as usize] += 1;
                if best.is_none_or(|(c, _, _)| total < c) {
                    best = Some((total, ui, vi));
                }
            }
            TlcmSurvey {
                histogram: hist,
                best,
            }
        })
        .collect();

    let mut histogram = vec![0u64; max_pairs + 1];
    let mut best: Option<(u64, usize, usize)> = None;
    for s in surveys {
        for (i, h) in s.histogram.iter().enumerate() {
            histogram[i] += h;
        }
        if let Some(b) = s.best {
            if best.is_none_or(|cur| (b.0, b.1, b.2) < (cur.0, cur.1, cur.2)) {
                best = Some(b);
            }
        }
    }
    TlcmSurvey { histogram, best }
}

/// Exact two-level crossing number with a witnessing drawing.
pub fn tlcm_optimum(
    graph: &BipartiteGraph,
    limits: &BruteForceLimits,
) -> Result<(u64, TwoLevelOrder)> {
    guard_two_level(graph, limits)?;
    let survey = tlcm_survey(graph);
    let (cost, ui, vi) = survey.best.expect("at least one order pair exists");
    let order = TwoLevelOrder {
        order_u: permutations(graph.size_u)[ui].clone(),
        order_v: permutations(graph.size_v)[vi].clone(),
    };
    Ok((cost, order))
}

/// Visit each (order_u, order_v) pair; early-exits when the visitor returns
/// true and reports whether that happened.
fn for_each_two_level<F: FnMut(&TwoLevelOrder) -> bool>(su: usize, sv: usize, mut f: F) -> bool {
    let mut items_u: Vec<usize> = (0..su).collect();
    for_each_permutation(&mut items_u, &mut |ou| {
        let mut items_v: Vec<usize> = (0..sv).collect();
        for_each_permutation(&mut items_v, &mut |ov| {
            f(&TwoLevelOrder {
                order_u: ou.to_vec(),
                order_v: ov.to_vec(),
            })
        })
    })
}

/// Crossing pairs of a two-level drawing as edge-index pairs.
fn crossing_pairs_two_level(graph: &BipartiteGraph, order: &TwoLevelOrder) -> Vec<(usize, usize)> {
    let pos_u = order.pos_u();
    let pos_v = order.pos_v();
    let mut out = Vec::new();
    for a in 0..graph.m() {
        for b in a + 1..graph.m() {
            if !graph.independent(a, b) {
                continue;
            }
            let (ua, va) = graph.edges[a];
            let (ub, vb) = graph.edges[b];
            if (pos_u[ua] < pos_u[ub]) != (pos_v[va] < pos_v[vb]) {
                out.push((a, b));
            }
        }
    }
    out
}

fn crossing_pairs_book(graph: &Graph, order: &SpineOrder) -> Vec<(usize, usize)> {
    let pos = order.pos();
    let mut out = Vec::new();
    for a in 0..graph.m() {
        for b in a + 1..graph.m() {
            if !graph.independent(a, b) {
                continue;
            }
            let (a0, a1) = graph.edges[a];
            let (b0, b1) = graph.edges[b];
            if spine_interleave(pos[a0], pos[a1], pos[b0], pos[b1]) {
                out.push((a, b));
            }
        }
    }
    out
}

/// All `sigma`-subsets of edge indices.
fn edge_subsets(m: usize, sigma: usize) -> Vec<Vec<usize>> {
    crate::combin::k_subsets(m, sigma)
}

/// Does `subset` hit every crossing pair?
fn covers(pairs: &[(usize, usize)], subset: &[usize]) -> bool {
    pairs
        .iter()
        .all(|&(a, b)| subset.contains(&a) || subset.contains(&b))
}

/// Spine orders with vertex 0 pinned first. Rotating a spine order does not
/// change which chords interleave, so each rotation class is surveyed once
/// and re-weighted by `n` when counting encodings.
fn fixed_first_spines(n: usize) -> Vec<SpineOrder> {
    if n == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..n).collect();
    for_each_permutation(&mut rest, &mut |perm| {
        let mut order = Vec::with_capacity(n);
        order.push(0);
        order.extend_from_slice(perm);
        out.push(SpineOrder { order });
        false
    });
    out
}

/// Exhaustive solve. Returns a witness per the problem definition plus the
/// count of accepting raw bitstrings.
pub fn brute_force_solve(
    instance: &ProblemInstance,
    limits: &BruteForceLimits,
) -> Result<BruteForceReport> {
    instance.validate()?;
    let search_bits = instance.search_bits();
    match instance {
        ProblemInstance::Tlcm { graph, rho } => {
            guard_two_level(graph, limits)?;
            let survey = tlcm_survey(graph);
            let accepted_orders: u64 = survey
                .histogram
                .iter()
                .take(*rho as usize + 1)
                .sum();
            let mult = two_level_multiplicity(graph);
            let witness = survey.best.filter(|&(c, _, _)| c <= *rho).map(|(_, ui, vi)| {
                Solution::TwoLevel {
                    order: TwoLevelOrder {
                        order_u: permutations(graph.size_u)[ui].clone(),
                        order_v: permutations(graph.size_v)[vi].clone(),
                    },
                }
            });
            Ok(BruteForceReport {
                witness,
                accepting_states: accepted_orders as u128 * mult,
                search_bits,
            })
        }
        ProblemInstance::Tlkp { graph, k } => {
            guard_two_level(graph, limits)?;
            let mut accepted: u128 = 0;
            let mut witness = None;
            for_each_two_level(graph.size_u, graph.size_v, |order| {
                let counts = per_edge_two_level_crossings(graph, order).unwrap();
                if counts.iter().all(|&c| c <= *k) {
                    accepted += 1;
                    if witness.is_none() {
                        witness = Some(Solution::TwoLevel {
                            order: order.clone(),
                        });
                    }
                }
                false
            });
            Ok(BruteForceReport {
                witness,
                accepting_states: accepted * two_level_multiplicity(graph),
                search_bits,
            })
        }
        ProblemInstance::Tlqp { graph } => {
            guard_two_level(graph, limits)?;
            let mut accepted: u128 = 0;
            let mut witness = None;
            for_each_two_level(graph.size_u, graph.size_v, |order| {
                if is_quasi_planar_two_level(graph, order).unwrap() {
                    accepted += 1;
                    if witness.is_none() {
                        witness = Some(Solution::TwoLevel {
                            order: order.clone(),
                        });
                    }
                }
                false
            });
            Ok(BruteForceReport {
                witness,
                accepting_states: accepted * two_level_multiplicity(graph),
                search_bits,
            })
        }
        ProblemInstance::Tls { graph, sigma } => {
            guard_two_level(graph, limits)?;
            // witness per the problem definition: remove <= sigma edges so a
            // forest of caterpillars remains
            let general = graph.to_general();
            let mut witness = None;
            'outer: for size in 0..=*sigma {
                for subset in edge_subsets(graph.m(), size) {
                    let removed = EdgeRemovalSet::new(subset.iter().copied(), graph.m())?;
                    if is_caterpillar_forest(&remove_edges(&general, &removed)) {
                        witness = Some(Solution::TwoLevelSkew {
                            removed,
                            order: None,
                        });
                        break 'outer;
                    }
                }
            }
            // marked encodings pair a drawing with an exact-sigma subset
            // whose removal leaves the drawing crossing-free
            let subsets = edge_subsets(graph.m(), *sigma);
            let mut accepted_pairs: u128 = 0;
            for_each_two_level(graph.size_u, graph.size_v, |order| {
                let pairs = crossing_pairs_two_level(graph, order);
                for subset in &subsets {
                    if covers(&pairs, subset) {
                        accepted_pairs += 1;
                    }
                }
                false
            });
            let mult = two_level_multiplicity(graph) * factorial(*sigma);
            Ok(BruteForceReport {
                witness,
                accepting_states: accepted_pairs * mult,
                search_bits,
            })
        }
        ProblemInstance::Opcm { graph, rho } => {
            guard_book(graph, limits)?;
            let mut accepted: u128 = 0;
            let mut witness = None;
            for spine in fixed_first_spines(graph.n) {
                let crossings = count_book_crossings(graph, &spine, None)?;
                if crossings <= *rho {
                    accepted += 1;
                    if witness.is_none() {
                        witness = Some(Solution::Spine { order: spine });
                    }
                }
            }
            Ok(BruteForceReport {
                witness,
                accepting_states: accepted * graph.n as u128,
                search_bits,
            })
        }
        ProblemInstance::Bt { graph, tau } => {
            guard_book(graph, limits)?;
            let mut accepted: u128 = 0;
            let mut witness = None;
            for spine in fixed_first_spines(graph.n) {
                let pairs = crossing_pairs_book(graph, &spine);
                let valid = count_page_assignments(graph.m(), *tau, &pairs, &mut |pages| {
                    if witness.is_none() {
                        witness = Some(Solution::Book {
                            order: spine.clone(),
                            pages: PageAssignment {
                                pages: pages.to_vec(),
                                tau: *tau,
                            },
                        });
                    }
                });
                accepted += valid;
            }
            Ok(BruteForceReport {
                witness,
                accepting_states: accepted * graph.n as u128,
                search_bits,
            })
        }
        ProblemInstance::Bs { graph, sigma } => {
            guard_book(graph, limits)?;
            let mut witness = None;
            'outer: for size in 0..=*sigma {
                for subset in edge_subsets(graph.m(), size) {
                    let removed = EdgeRemovalSet::new(subset.iter().copied(), graph.m())?;
                    if is_outerplanar(&remove_edges(graph, &removed), limits.max_book_vertices)? {
                        witness = Some(Solution::BookSkew {
                            removed,
                            order: None,
                        });
                        break 'outer;
                    }
                }
            }
            let subsets = edge_subsets(graph.m(), *sigma);
            let mut accepted_pairs: u128 = 0;
            for spine in fixed_first_spines(graph.n) {
                let pairs = crossing_pairs_book(graph, &spine);
                for subset in &subsets {
                    if covers(&pairs, subset) {
                        accepted_pairs += 1;
                    }
                }
            }
            Ok(BruteForceReport {
                witness,
                accepting_states: accepted_pairs * graph.n as u128 * factorial(*sigma),
                search_bits,
            })
        }
    }
}

/// Count page assignments avoiding same-page crossings; calls `on_valid`
/// for each valid assignment found (used to capture a witness).
fn count_page_assignments(
    m: usize,
    tau: usize,
    crossing_pairs: &[(usize, usize)],
    on_valid: &mut dyn FnMut(&[usize]),
) -> u128 {
    let mut conflicts: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &(a, b) in crossing_pairs {
        conflicts[b.max(a)].push(a.min(b));
    }
    let mut pages = vec![0usize; m];
    let mut count = 0u128;
    fn rec(
        i: usize,
        m: usize,
        tau: usize,
        conflicts: &[Vec<usize>],
        pages: &mut Vec<usize>,
        count: &mut u128,
        on_valid: &mut dyn FnMut(&[usize]),
    ) {
        if i == m {
            *count += 1;
            on_valid(pages);
            return;
        }
        for p in 0..tau {
            if conflicts[i].iter().all(|&j| pages[j] != p) {
                pages[i] = p;
                rec(i + 1, m, tau, conflicts, pages, count, on_valid);
            }
        }
    }
    rec(0, m, tau, &conflicts, &mut pages, &mut count, on_valid);
    count
}
