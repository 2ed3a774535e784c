//! Property tests for the structural invariants: cover monotonicity,
//! hereditary clique tests, format round trips, and satisfiability
//! preservation through normalization and regularization.

use proptest::prelude::*;

use eccforge_core::cnf::{
    brute_force_sat, evaluate, normalize, parse_dimacs, read_assignment, regularize, CnfError,
    Formula, Lit,
};
use eccforge_core::graph::{
    is_clique, read_cover, read_graph, verify_cover, write_graph, CliqueCover, EdgeClass,
    EdgeFilter, Graph, GraphBuilder,
};
use eccforge_core::reduction::read_instance;

fn arb_graph(max_vertices: u32) -> impl Strategy<Value = Graph> {
    (2..=max_vertices)
        .prop_flat_map(|n| {
            let pairs: Vec<(u32, u32)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            let len = pairs.len();
            (
                Just(n),
                Just(pairs),
                proptest::collection::vec(any::<bool>(), len),
                proptest::collection::vec(any::<bool>(), len),
            )
        })
        .prop_map(|(n, pairs, present, classes)| {
            let mut b = GraphBuilder::new(n);
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if present[i] {
                    let class = if classes[i] { EdgeClass::Imp } else { EdgeClass::Free };
                    b.add_edge(u, v, class).unwrap();
                }
            }
            b.build()
        })
}

fn arb_formula(max_vars: u32, max_clauses: usize) -> impl Strategy<Value = Formula> {
    (1..=max_vars)
        .prop_flat_map(move |n| {
            let clause = proptest::collection::vec((0..n, any::<bool>()), 1..=3)
                .prop_map(|lits| lits.into_iter().map(|(v, p)| Lit::new(v, p)).collect());
            (
                Just(n),
                proptest::collection::vec(clause, 1..=max_clauses),
            )
        })
        .prop_map(|(n, clauses)| Formula::new(n, clauses))
}

/// Clauses over three distinct variables, so normalization adds no fresh
/// variables and the regularized formula stays inside the brute-force guard.
fn arb_strict_formula(max_vars: u32, max_clauses: usize) -> impl Strategy<Value = Formula> {
    (3..=max_vars)
        .prop_flat_map(move |n| {
            let vars: Vec<u32> = (0..n).collect();
            let clause = (
                proptest::sample::subsequence(vars, 3),
                any::<[bool; 3]>(),
            )
                .prop_map(|(vs, polarity)| {
                    vs.into_iter()
                        .zip(polarity)
                        .map(|(v, p)| Lit::new(v, p))
                        .collect::<Vec<Lit>>()
                });
            (
                Just(n),
                proptest::collection::vec(clause, 1..=max_clauses),
            )
        })
        .prop_map(|(n, clauses)| Formula::new(n, clauses))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn per_edge_cover_is_valid_and_stays_valid_under_additions(g in arb_graph(10)) {
        let mut cliques: Vec<Vec<u32>> = g.edges().iter().map(|&(u, v, _)| vec![u, v]).collect();
        prop_assert!(verify_cover(&g, &CliqueCover::new(cliques.clone()), EdgeFilter::All).valid);
        // adding more cliques can never invalidate
        cliques.extend(g.edges().iter().take(3).map(|&(u, v, _)| vec![v, u]));
        for v in 0..g.vertex_count() {
            cliques.push(vec![v]);
        }
        prop_assert!(verify_cover(&g, &CliqueCover::new(cliques), EdgeFilter::All).valid);
    }

    #[test]
    fn clique_property_is_hereditary(g in arb_graph(10), sub in any::<u16>()) {
        let all: Vec<u32> = (0..g.vertex_count()).collect();
        for size in (1..=all.len()).rev() {
            let set = &all[..size];
            if is_clique(&g, set).unwrap() {
                let filtered: Vec<u32> = set
                    .iter()
                    .copied()
                    .enumerate()
                    .filter(|&(i, _)| sub >> (i % 16) & 1 == 1)
                    .map(|(_, v)| v)
                    .collect();
                prop_assert!(is_clique(&g, &filtered).unwrap());
            }
        }
    }

    #[test]
    fn graph_text_format_round_trips(g in arb_graph(12), k in proptest::option::of(0u64..10_000)) {
        let text = write_graph(&g, k);
        let (back, k_back) = read_graph(&text).unwrap();
        prop_assert_eq!(k_back, k);
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn file_readers_reject_garbage_without_panicking(text in "\\PC{0,400}") {
        let _ = read_graph(&text);
        let _ = read_cover(&text);
        let _ = read_instance(&text);
        let _ = parse_dimacs(&text);
        let _ = read_assignment(&text);
    }

    #[test]
    fn readers_survive_header_shaped_garbage(
        nv in prop_oneof![0u32..=2048, (1u32 << 16) + 1..],
        ne in any::<u32>(),
        k in any::<i64>(),
        body in "[ecpv 0-9\\-\n]{0,200}",
    ) {
        let _ = read_graph(&format!("p ecc {nv} {ne} {k}\n{body}"));
        let _ = parse_dimacs(&format!("p cnf {nv} {ne}\n{body}"));
    }

    #[test]
    fn normalization_preserves_satisfiability(f in arb_formula(9, 12)) {
        let before = brute_force_sat(&f).unwrap().is_some();
        match normalize(&f) {
            Ok(norm) => {
                let after = brute_force_sat(&norm).unwrap().is_some();
                prop_assert_eq!(before, after);
            }
            Err(CnfError::TriviallyUnsat { .. }) => prop_assert!(!before),
            Err(e) => prop_assert!(false, "unexpected error: {e}"),
        }
    }

    #[test]
    fn regularization_preserves_satisfiability(f in arb_strict_formula(7, 10)) {
        let norm = match normalize(&f) {
            Ok(norm) if !norm.clauses.is_empty() => norm,
            _ => return Ok(()),
        };
        let reg = regularize(&norm);
        let norm_sat = brute_force_sat(&norm).unwrap();
        let reg_sat = brute_force_sat(&reg.base).unwrap();
        prop_assert_eq!(norm_sat.is_some(), reg_sat.is_some());
        // lifting any assignment gives a balanced one that satisfies the
        // regular formula exactly when the original satisfied its input
        for mask in 0u32..(1 << norm.num_vars) {
            let orig: Vec<bool> = (0..norm.num_vars).map(|i| mask >> i & 1 == 1).collect();
            let lifted = reg.lift_assignment(&orig).unwrap();
            prop_assert_eq!(
                lifted.iter().filter(|&&v| v).count() * 2,
                lifted.len()
            );
            prop_assert_eq!(
                evaluate(&reg.base, &lifted).unwrap(),
                evaluate(&norm, &orig).unwrap()
            );
        }
    }
}
