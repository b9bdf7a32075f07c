use super::*;
use crate::graph::{
    book_cross, count_two_level_crossings, permutations, BipartiteGraph, Graph, ProblemInstance,
    SpineOrder, TwoLevelOrder,
};

fn k22() -> BipartiteGraph {
    BipartiteGraph::complete(2, 2)
}

fn tlcm(graph: BipartiteGraph) -> ProblemInstance {
    ProblemInstance::Tlcm { graph, rho: 0 }
}

/// Assignment of ordering variables realizing the given orders.
fn assignment_for_orders(model: &CboModel, order: &TwoLevelOrder) -> Vec<bool> {
    let pos_u = order.pos_u();
    let pos_v = order.pos_v();
    model
        .vars
        .iter()
        .map(|v| match &v.meta {
            VarMeta::OrderU { i, j } => pos_u[*i] < pos_u[*j],
            VarMeta::OrderV { i, j } => pos_v[*i] < pos_v[*j],
            _ => false,
        })
        .collect()
}

fn assignment_for_spine(model: &CboModel, order: &SpineOrder) -> Vec<bool> {
    let pos = order.pos();
    model
        .vars
        .iter()
        .map(|v| match &v.meta {
            VarMeta::OrderX { i, j } => pos[*i] < pos[*j],
            _ => false,
        })
        .collect()
}

#[test]
fn k22_census() {
    let model = build_cbo(&tlcm(k22()), Transitivity::Linear).unwrap();
    // two directed variables per layer, one consistency constraint each,
    // no triples
    assert_eq!(model.num_vars(), 4);
    assert_eq!(model.constraints.len(), 2);
    // objective: chi(e0,e3) + chi(e1,e2), two monomials each
    assert_eq!(model.objective.terms().count(), 4);
}

#[test]
fn table_constraint_counts_at_n10() {
    let graph = BipartiteGraph::complete(10, 10);
    let linear = build_cbo(&tlcm(graph.clone()), Transitivity::Linear).unwrap();
    let quadratic = build_cbo(&tlcm(graph), Transitivity::Quadratic).unwrap();
    assert_eq!(linear.constraints.len(), 2970);
    assert_eq!(quadratic.constraints.len(), 1530);
    assert_eq!(linear.num_vars(), 180);
}

#[test]
fn quadratic_mode_halves_transitivity() {
    for n in [3usize, 4, 5] {
        let graph = BipartiteGraph::complete(n, n);
        let linear = build_cbo(&tlcm(graph.clone()), Transitivity::Linear).unwrap();
        let quadratic = build_cbo(&tlcm(graph), Transitivity::Quadratic).unwrap();
        let consistency = n * (n - 1); // both layers
        let lin_trans = linear.constraints.len() - consistency;
        let quad_trans = quadratic.constraints.len() - consistency;
        assert_eq!(lin_trans, 2 * quad_trans, "n = {n}");
        assert!(quadratic.constraints.len() < linear.constraints.len());
    }
}

#[test]
fn chi_two_level_matches_reference() {
    for graph in [
        k22(),
        BipartiteGraph::new(3, 3, vec![(0, 0), (0, 2), (1, 1), (2, 0), (2, 2)]).unwrap(),
    ] {
        let model = build_cbo(&tlcm(graph.clone()), Transitivity::Linear).unwrap();
        for ou in permutations(graph.size_u) {
            for ov in permutations(graph.size_v) {
                let order = TwoLevelOrder {
                    order_u: ou.clone(),
                    order_v: ov.clone(),
                };
                let assign = assignment_for_orders(&model, &order);
                assert!(model.violations(&assign).is_empty());
                let expect = count_two_level_crossings(&graph, &order, None).unwrap();
                assert_eq!(model.objective.eval(&assign), expect as i64);
            }
        }
    }
}

#[test]
fn chi_book_matches_reference() {
    for graph in [
        Graph::cycle(4),
        Graph::complete(4),
        Graph::new(5, vec![(0, 2), (1, 3), (2, 4), (0, 3), (1, 4)]).unwrap(),
        Graph::complete(5),
    ] {
        let instance = ProblemInstance::Opcm {
            graph: graph.clone(),
            rho: 0,
        };
        let model = build_cbo(&instance, Transitivity::Linear).unwrap();
        for order in permutations(graph.n) {
            let spine = SpineOrder { order };
            let assign = assignment_for_spine(&model, &spine);
            assert!(model.violations(&assign).is_empty());
            let mut expect = 0i64;
            for a in 0..graph.m() {
                for b in a + 1..graph.m() {
                    if book_cross(&graph, &spine, a, b).unwrap() {
                        expect += 1;
                    }
                }
            }
            assert_eq!(model.objective.eval(&assign), expect, "spine {spine:?}");
        }
    }
}

#[test]
fn feasibility_bijection_small_layers() {
    // joint enumeration at (3,3)
    for mode in [Transitivity::Linear, Transitivity::Quadratic] {
        let graph = BipartiteGraph::complete(3, 3);
        let model = build_cbo(&tlcm(graph), mode).unwrap();
        assert_eq!(model.num_vars(), 12);
        let mut feasible = Vec::new();
        for raw in 0..(1u32 << 12) {
            let assign: Vec<bool> = (0..12).map(|b| raw >> b & 1 == 1).collect();
            if model.violations(&assign).is_empty() {
                feasible.push(assign);
            }
        }
        assert_eq!(feasible.len(), 36, "3! * 3! order pairs, mode {mode:?}");
        // each feasible assignment decodes to a distinct order pair
        let instance = tlcm(BipartiteGraph::complete(3, 3));
        let mut decoded: Vec<String> = feasible
            .iter()
            .map(|a| {
                let out = decode_assignment(&instance, &model.vars, a);
                assert!(out.violations.is_empty());
                format!("{:?}", out.solution.unwrap())
            })
            .collect();
        decoded.sort();
        decoded.dedup();
        assert_eq!(decoded.len(), 36);
    }
}

#[test]
fn feasibility_bijection_layer_of_four() {
    // the u layer's constraints reference only the u variables (ids below
    // 4*3), so the per-layer count suffices for the product structure
    let graph = BipartiteGraph::complete(4, 4);
    let model = build_cbo(&tlcm(graph), Transitivity::Linear).unwrap();
    let u_vars = 12;
    let u_constraints: Vec<_> = model
        .constraints
        .iter()
        .filter(|c| c.poly.max_var().is_some_and(|v| (v as usize) < u_vars))
        .collect();
    let mut count = 0;
    for raw in 0..(1u32 << u_vars) {
        let mut assign: Vec<bool> = (0..u_vars).map(|b| raw >> b & 1 == 1).collect();
        assign.resize(model.num_vars(), false);
        if u_constraints.iter().all(|c| c.satisfied(&assign)) {
            count += 1;
        }
    }
    assert_eq!(count, 24);
}

#[test]
fn linearize_examples() {
    // x0 x1 in a constraint becomes z with three couplings
    let mut model = CboModel {
        vars: (0..2)
            .map(|i| VarInfo {
                name: format!("x{i}"),
                meta: VarMeta::Removal { edge: i },
            })
            .collect(),
        objective: Poly::zero(),
        constraints: vec![Constraint {
            label: "quad".into(),
            poly: Poly::var(0).mul(&Poly::var(1)),
            relation: Relation::Le,
            bound: 0,
        }],
    };
    let lin = linearize(&model);
    assert_eq!(lin.num_vars(), 3);
    assert_eq!(lin.constraints.len(), 1 + 3);
    assert!(lin.constraints.iter().all(|c| c.poly.degree() <= 1));

    // cubic monomial: four couplings
    model.vars.push(VarInfo {
        name: "x2".into(),
        meta: VarMeta::Removal { edge: 2 },
    });
    model.constraints[0].poly = Poly::var(0).mul(&Poly::var(1)).mul(&Poly::var(2));
    let lin = linearize(&model);
    assert_eq!(lin.constraints.len(), 1 + 4);

    // purely linear models pass through untouched
    model.constraints[0].poly = Poly::var(0);
    let lin = linearize(&model);
    assert_eq!(lin.constraints.len(), 1);
    assert_eq!(lin.num_vars(), 3);
}

#[test]
fn linearize_preserves_objective_values() {
    // cubic objective: evaluate original vs linearized with z forced to the
    // product values
    let graph = Graph::complete(4);
    let instance = ProblemInstance::Opcm { graph, rho: 0 };
    let model = build_cbo(&instance, Transitivity::Linear).unwrap();
    let lin = linearize(&model);
    for order in permutations(4) {
        let spine = SpineOrder { order };
        let base = assignment_for_spine(&model, &spine);
        let mut extended = base.clone();
        extended.resize(lin.num_vars(), false);
        for (id, var) in lin.vars.iter().enumerate() {
            if let VarMeta::Linearized { monomial } = &var.meta {
                extended[id] = monomial.iter().all(|&x| base[x as usize]);
            }
        }
        assert_eq!(model.objective.eval(&base), lin.objective.eval(&extended));
        assert!(lin.violations(&extended).is_empty());
    }
}

#[test]
fn compile_equality_expansion() {
    // x0 + x1 = 1 with P = 2: check the exact quadratic expansion by
    // evaluating all four assignments
    let model = CboModel {
        vars: (0..2)
            .map(|i| VarInfo {
                name: format!("x{i}"),
                meta: VarMeta::Removal { edge: i },
            })
            .collect(),
        objective: Poly::zero(),
        constraints: vec![Constraint {
            label: "pick one".into(),
            poly: {
                let mut p = Poly::var(0);
                p.add(&Poly::var(1));
                p
            },
            relation: Relation::Eq,
            bound: 1,
        }],
    };
    let compiled = compile_qubo(&model, 2).unwrap();
    assert_eq!(compiled.qubo.num_vars, 2);
    for raw in 0..4u32 {
        let assign: Vec<bool> = (0..2).map(|b| raw >> b & 1 == 1).collect();
        let x0 = assign[0] as i64;
        let x1 = assign[1] as i64;
        let expect = 2 * (x0 + x1 - 1) * (x0 + x1 - 1);
        assert_eq!(compiled.qubo.energy(&assign), expect);
    }
}

#[test]
fn compile_skips_vacuous_and_rejects_infeasible() {
    let var = |i| VarInfo {
        name: format!("x{i}"),
        meta: VarMeta::Removal { edge: i },
    };
    // x0 <= 1 holds for every binary x0: no slack, no penalty
    let vacuous = CboModel {
        vars: vec![var(0)],
        objective: Poly::zero(),
        constraints: vec![Constraint {
            label: "vacuous".into(),
            poly: Poly::var(0),
            relation: Relation::Le,
            bound: 1,
        }],
    };
    let compiled = compile_qubo(&vacuous, 5).unwrap();
    assert_eq!(compiled.qubo.num_vars, 1);
    assert!(compiled.qubo.terms.is_empty());

    // x0 >= 2 cannot hold
    let impossible = CboModel {
        vars: vec![var(0)],
        objective: Poly::zero(),
        constraints: vec![Constraint {
            label: "impossible".into(),
            poly: Poly::var(0),
            relation: Relation::Ge,
            bound: 2,
        }],
    };
    assert!(matches!(
        compile_qubo(&impossible, 5),
        Err(QuboError::Infeasible(_))
    ));
}

#[test]
fn compile_requires_linear_constraints() {
    let model = CboModel {
        vars: (0..2)
            .map(|i| VarInfo {
                name: format!("x{i}"),
                meta: VarMeta::Removal { edge: i },
            })
            .collect(),
        objective: Poly::zero(),
        constraints: vec![Constraint {
            label: "quad".into(),
            poly: Poly::var(0).mul(&Poly::var(1)),
            relation: Relation::Le,
            bound: 0,
        }],
    };
    assert!(matches!(
        compile_qubo(&model, 1),
        Err(QuboError::NotLinear(_, 2))
    ));
}

#[test]
fn feasible_assignments_have_zero_penalty() {
    let graph = k22();
    let model = build_cbo(&tlcm(graph.clone()), Transitivity::Linear).unwrap();
    let compiled = compile_qubo(&linearize(&model), default_penalty(&model)).unwrap();
    for ou in permutations(2) {
        for ov in permutations(2) {
            let order = TwoLevelOrder {
                order_u: ou.clone(),
                order_v: ov.clone(),
            };
            let mut assign = assignment_for_orders(&model, &order);
            assign.resize(compiled.qubo.num_vars, false);
            // no z variables here (degree-2 objective is native), no slacks
            // from the equality constraints
            let energy = compiled.qubo.energy(&assign);
            let crossings = count_two_level_crossings(&graph, &order, None).unwrap() as i64;
            assert_eq!(energy, crossings);
        }
    }
}

#[test]
fn penalty_soundness_exhaustive_small() {
    // every QUBO optimum decodes to a feasible CBO optimum (K22, 4 vars)
    let graph = k22();
    let instance = tlcm(graph);
    let model = build_cbo(&instance, Transitivity::Linear).unwrap();
    let compiled = compile_qubo(&linearize(&model), default_penalty(&model)).unwrap();
    assert!(compiled.qubo.num_vars <= 16);
    let mut best = i64::MAX;
    let mut best_assignments = Vec::new();
    for raw in 0..(1u32 << compiled.qubo.num_vars) {
        let assign: Vec<bool> = (0..compiled.qubo.num_vars)
            .map(|b| raw >> b & 1 == 1)
            .collect();
        let energy = compiled.qubo.energy(&assign);
        if energy < best {
            best = energy;
            best_assignments.clear();
        }
        if energy == best {
            best_assignments.push(assign);
        }
    }
    // K22's two-level crossing number is 1
    assert_eq!(best, 1);
    for assign in best_assignments {
        assert!(model.violations(&assign).is_empty());
        let decoded = decode_assignment(&instance, &compiled.vars, &assign);
        assert!(decoded.violations.is_empty());
        assert!(decoded.solution.is_some());
    }
}

#[test]
fn decode_reports_violations() {
    let instance = tlcm(k22());
    let model = build_cbo(&instance, Transitivity::Linear).unwrap();
    // u01 = u10 = 1: inconsistent
    let mut assign = vec![false; model.num_vars()];
    assign[0] = true;
    assign[1] = true;
    let out = decode_assignment(&instance, &model.vars, &assign);
    assert!(out.solution.is_none());
    assert!(out.violations.iter().any(|v| v.contains("consistency")));

    // cyclic triple on a 3-vertex layer
    let graph3 = BipartiteGraph::complete(3, 1);
    let instance3 = tlcm(graph3);
    let model3 = build_cbo(&instance3, Transitivity::Linear).unwrap();
    let mut assign = vec![false; model3.num_vars()];
    for (id, var) in model3.vars.iter().enumerate() {
        if let VarMeta::OrderU { i, j } = var.meta {
            // 0 -> 1 -> 2 -> 0 cycle
            assign[id] = matches!((i, j), (0, 1) | (1, 2) | (2, 0));
        }
    }
    let out = decode_assignment(&instance3, &model3.vars, &assign);
    assert!(out.solution.is_none());
    assert!(out.violations.iter().any(|v| v.contains("transitivity")));
}

#[test]
fn anneal_trivial_diagonal() {
    let mut qubo = QuboModel::default();
    qubo.num_vars = 2;
    qubo.add(0, 0, 1);
    qubo.add(1, 1, 1);
    let result = SimulatedAnnealer.solve(&qubo, &AnnealParams::default(), 0);
    assert_eq!(result.energy, 0);
    assert_eq!(result.assignment, vec![false, false]);
}

#[test]
fn anneal_k22_reaches_the_optimum() {
    let graph = k22();
    let (run, _) = crate::qubo::experiment::anneal_tlcm(
        &graph,
        Transitivity::Linear,
        &AnnealParams::default(),
        0,
    )
    .unwrap();
    assert_eq!(run.result.constraint_violations, 0);
    assert_eq!(run.crossings, Some(1));
    assert_eq!(run.result.energy, 1);
}

#[test]
fn qubo_json_round_trip() {
    let mut qubo = QuboModel::default();
    qubo.num_vars = 3;
    qubo.add(0, 1, -2);
    qubo.add(2, 2, 5);
    qubo.offset = 7;
    let json = serde_json::to_string(&qubo).unwrap();
    assert!(json.contains("\"terms\":[[0,1,-2],[2,2,5]]"));
    let back: QuboModel = serde_json::from_str(&json).unwrap();
    assert_eq!(back, qubo);
}

#[test]
fn slack_weights_cover_ranges() {
    for range in 0..40u64 {
        let weights = slack_weights(range);
        assert_eq!(weights.iter().sum::<u64>(), range);
        // every value in [0, range] must be representable
        let mut representable = vec![false; range as usize + 1];
        representable[0] = true;
        for &w in &weights {
            for v in (0..=range as usize).rev() {
                if v >= w as usize && representable[v - w as usize] {
                    representable[v] = true;
                }
            }
        }
        assert!(representable.iter().all(|&r| r), "range {range}");
    }
}

#[test]
fn experiment_smoke() {
    let config = ExperimentConfig {
        layer_sizes: vec![3],
        densities: vec![50],
        instances_per_cell: 2,
        seeds: vec![0, 1],
        params: AnnealParams {
            sweeps: 500,
            restarts: 2,
            ..AnnealParams::default()
        },
        instance_seed: 7,
        optimum_max_layer: 6,
    };
    let report = run_experiment(&config).unwrap();
    assert_eq!(report.cells.len(), 1);
    let cell = &report.cells[0];
    assert!(cell.constraints_quadratic < cell.constraints_linear);
    assert!(cell.optimum.is_some());
    let csv = report.to_csv();
    assert!(csv.starts_with("n,d,time_linear"));
    assert_eq!(csv.lines().count(), 2);
}
