//! Certificate translation between satisfying assignments and size-`k`
//! clique covers of a reduction instance.
//!
//! Forward ([`cover_from_assignment`]): the simplicial cliques pay for all
//! free edges, one twin pair per fence vertex covers the assignment gadgets,
//! the two assignment cliques encode the chosen truth values, and two final
//! cliques sweep the guard edges together with the clause edges the chosen
//! literals left over. The count lands on exactly `k` because it is
//! constructed, never padded.
//!
//! Backward ([`assignment_from_cover`]): locate the cliques holding the two
//! guard edges, pick any other clique through a clause matching edge, and
//! read the assignment off its `w` vertices, trying the first copy then the
//! second. Valid covers within budget always yield a clique that decodes to
//! a satisfying assignment; anything else fails loudly.

use thiserror::Error;

use crate::cnf::{evaluate, is_balanced, Assignment};
use crate::cocktail::{build_cocktail, extend_twin_cover, CocktailError, TwinPair};
use crate::graph::{verify_cover, CliqueCover, EdgeFilter, VertexId, Violation};
use crate::reduction::ReductionInstance;

#[derive(Debug, Error)]
pub enum TransferError {
    #[error("assignment has {got} values, expected {expected_full} (or {expected_half} for the first half)")]
    AssignmentLength {
        expected_full: u32,
        expected_half: u32,
        got: usize,
    },
    #[error("assignment does not set exactly half of the variables true")]
    AssignmentUnbalanced,
    #[error("assignment sets the dummy variable 0 true")]
    AssignmentDummy,
    #[error("assignment does not satisfy the instance formula")]
    AssignmentUnsatisfied,
    #[error("cover is invalid: {0}")]
    InvalidCover(Violation),
    #[error("no clique covers the guard edge {0}-{1}")]
    MissingGuardClique(VertexId, VertexId),
    #[error("no clique outside the guard cliques contains a clause matching edge")]
    NoCandidateClique,
    #[error("no candidate clique decodes to a satisfying assignment in either copy")]
    ExtractionFailed,
    #[error(transparent)]
    Cocktail(#[from] CocktailError),
}

/// Index of the lowest literal of clause `j` satisfied by `phi`.
fn chosen_literal(inst: &ReductionInstance, phi: &[bool], j: usize) -> Option<u8> {
    (1..=3u8).find(|&alpha| {
        let (var, value) = inst.formula.literal(j, alpha);
        phi[var as usize] == (value == 1)
    })
}

/// Builds the proof cover of size exactly `k` for a satisfying assignment.
///
/// `phi` may cover all `n` variables (then it must be balanced) or just the
/// first `n/2`, in which case the second half is derived as the negations
/// and balance is automatic. The dummy variable 0 must be false.
pub fn cover_from_assignment(
    inst: &ReductionInstance,
    phi: &[bool],
) -> Result<CliqueCover, TransferError> {
    let n = inst.layout.n;
    let phi: Assignment = if phi.len() == n as usize {
        if !is_balanced(phi) {
            return Err(TransferError::AssignmentUnbalanced);
        }
        phi.to_vec()
    } else if phi.len() == (n / 2) as usize {
        inst.formula
            .extend_half(phi)
            .expect("half length was just checked")
    } else {
        return Err(TransferError::AssignmentLength {
            expected_full: n,
            expected_half: n / 2,
            got: phi.len(),
        });
    };
    if phi[0] {
        return Err(TransferError::AssignmentDummy);
    }
    if !evaluate(&inst.formula.base, &phi).expect("lengths agree") {
        return Err(TransferError::AssignmentUnsatisfied);
    }
    let layout = &inst.layout;
    let m = layout.m;
    let alpha_of: Vec<u8> = (0..m as usize)
        .map(|j| chosen_literal(inst, &phi, j).expect("every clause has a satisfied literal"))
        .collect();

    let mut cliques: Vec<Vec<VertexId>> = Vec::with_capacity(inst.k as usize);

    // one clique per simplicial vertex: its closed neighborhood
    for (t, clique) in inst.free_cover.iter().enumerate() {
        let mut closed = clique.clone();
        closed.push(inst.simplicial_of_clique[t]);
        closed.sort_unstable();
        cliques.push(closed);
    }

    // per copy, extend the side twins and the assignment twins to a full
    // twin cover of the gadget, and hang each fence vertex on one pair
    let cocktail = build_cocktail(layout.ell + 1)?;
    for copy in 1..=2u8 {
        let offset = layout.w_id(copy, 0, 0);
        let sides = TwinPair::new(
            (0..n).map(|i| 2 * i).collect(),
            (0..n).map(|i| 2 * i + 1).collect(),
        );
        let assignment_pair = TwinPair::new(
            (0..n).map(|i| 2 * i + u32::from(phi[i as usize])).collect(),
            (0..n).map(|i| 2 * i + u32::from(!phi[i as usize])).collect(),
        );
        let cover = extend_twin_cover(&cocktail, &[sides, assignment_pair])?;
        for (idx, pair) in cover.pairs.iter().enumerate().skip(2) {
            let gamma = idx as u32 - 1;
            let fence = layout.u_id(copy, gamma);
            for side in [&pair.side0, &pair.side1] {
                let mut clique: Vec<VertexId> = side.iter().map(|&v| v + offset).collect();
                clique.push(fence);
                clique.sort_unstable();
                cliques.push(clique);
            }
        }
    }

    // the assignment cliques across both copies and the clause gadgets
    let mut c0: Vec<VertexId> = Vec::new();
    let mut c1: Vec<VertexId> = Vec::new();
    for copy in 1..=2u8 {
        for i in 0..n {
            c0.push(layout.w_id(copy, i, u8::from(phi[i as usize])));
            c1.push(layout.w_id(copy, i, u8::from(!phi[i as usize])));
        }
    }
    for (j, &alpha) in alpha_of.iter().enumerate() {
        for beta in 1..=2u8 {
            c0.push(layout.p_id(j as u32, alpha, beta));
        }
    }
    c0.sort_unstable();
    c1.sort_unstable();
    cliques.push(c0);
    cliques.push(c1);

    // two sweep cliques: each holds one guard edge and, per clause, both
    // endpoints of one of the two leftover matching edges
    let mut t1 = vec![layout.q_id(1, 1), layout.q_id(1, 2)];
    let mut t2 = vec![layout.q_id(2, 1), layout.q_id(2, 2)];
    for (j, &alpha) in alpha_of.iter().enumerate() {
        let leftovers: Vec<u8> = (1..=3u8).filter(|&a| a != alpha).collect();
        for beta in 1..=2u8 {
            t1.push(layout.p_id(j as u32, leftovers[0], beta));
            t2.push(layout.p_id(j as u32, leftovers[1], beta));
        }
    }
    t1.sort_unstable();
    t2.sort_unstable();
    cliques.push(t1);
    cliques.push(t2);

    debug_assert_eq!(cliques.len() as u64, inst.k);
    let cover = CliqueCover::new(cliques);
    debug_assert!(verify_cover(&inst.graph, &cover, EdgeFilter::All).valid);
    Ok(cover)
}

fn contains_edge(clique: &[VertexId], u: VertexId, v: VertexId) -> bool {
    clique.binary_search(&u).is_ok() && clique.binary_search(&v).is_ok()
}

/// Reads the assignment of one gadget copy off a candidate clique, requiring
/// exactly one vertex of every `w` pair.
fn decode_copy(inst: &ReductionInstance, clique: &[VertexId], copy: u8) -> Option<Assignment> {
    let layout = &inst.layout;
    let mut phi = Vec::with_capacity(layout.n as usize);
    for i in 0..layout.n {
        let zero = clique.binary_search(&layout.w_id(copy, i, 0)).is_ok();
        let one = clique.binary_search(&layout.w_id(copy, i, 1)).is_ok();
        match (zero, one) {
            (true, false) => phi.push(false),
            (false, true) => phi.push(true),
            _ => return None,
        }
    }
    Some(phi)
}

fn try_candidate(inst: &ReductionInstance, clique: &[VertexId]) -> Option<Assignment> {
    for copy in 1..=2u8 {
        if let Some(phi) = decode_copy(inst, clique, copy) {
            if evaluate(&inst.formula.base, &phi).expect("lengths agree") {
                return Some(phi);
            }
        }
    }
    None
}

/// Extracts a satisfying assignment from a valid cover.
///
/// Covers no larger than the instance budget always decode; oversized or
/// foreign covers are handled best effort and may fail with
/// [`TransferError::ExtractionFailed`]. Candidates are tried in cover order
/// and the first success wins, independent of thread schedule.
pub fn assignment_from_cover(
    inst: &ReductionInstance,
    cover: &CliqueCover,
) -> Result<Assignment, TransferError> {
    let report = verify_cover(&inst.graph, cover, EdgeFilter::All);
    if let Some(violation) = report.first_violation {
        return Err(TransferError::InvalidCover(violation));
    }
    let layout = &inst.layout;
    let sorted: Vec<Vec<VertexId>> = cover
        .cliques
        .iter()
        .map(|c| {
            let mut s = c.clone();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();

    let guard_edges = [
        (layout.q_id(1, 1), layout.q_id(1, 2)),
        (layout.q_id(2, 1), layout.q_id(2, 2)),
    ];
    for (u, v) in guard_edges {
        if !sorted.iter().any(|c| contains_edge(c, u, v)) {
            return Err(TransferError::MissingGuardClique(u, v));
        }
    }
    let holds_guard_edge =
        |c: &[VertexId]| guard_edges.iter().any(|&(u, v)| contains_edge(c, u, v));

    let candidates: Vec<&Vec<VertexId>> = sorted
        .iter()
        .filter(|c| !holds_guard_edge(c))
        .filter(|c| {
            (0..layout.m).any(|j| {
                (1..=3u8).any(|alpha| {
                    contains_edge(c, layout.p_id(j, alpha, 1), layout.p_id(j, alpha, 2))
                })
            })
        })
        .collect();
    if candidates.is_empty() {
        return Err(TransferError::NoCandidateClique);
    }

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if candidates.len() > 1 {
            return candidates
                .par_iter()
                .find_map_first(|clique| try_candidate(inst, clique))
                .ok_or(TransferError::ExtractionFailed);
        }
    }
    candidates
        .iter()
        .find_map(|clique| try_candidate(inst, clique))
        .ok_or(TransferError::ExtractionFailed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{brute_force_sat, normalize, parse_dimacs, regularize};
    use crate::graph::is_clique;
    use crate::reduction::reduce;

    fn pipeline(text: &str) -> (ReductionInstance, Assignment) {
        let parsed = parse_dimacs(text).unwrap();
        let norm = normalize(&parsed).unwrap();
        let reg = regularize(&norm);
        let inst = reduce(&reg).unwrap();
        let witness = brute_force_sat(&norm).unwrap().expect("satisfiable input");
        let phi = reg.lift_assignment(&witness).unwrap();
        (inst, phi)
    }

    #[test]
    fn forward_cover_has_exactly_k_cliques_and_validates() {
        let (inst, phi) = pipeline("p cnf 3 2\n1 2 3 0\n-1 -2 3 0\n");
        let cover = cover_from_assignment(&inst, &phi).unwrap();
        assert_eq!(cover.len() as u64, inst.k);
        assert!(verify_cover(&inst.graph, &cover, EdgeFilter::All).valid);
        for clique in &cover.cliques {
            assert!(is_clique(&inst.graph, clique).unwrap());
        }
    }

    #[test]
    fn half_assignment_input_is_extended() {
        let (inst, phi) = pipeline("p cnf 2 2\n1 2 0\n-1 2 0\n");
        let half = &phi[..(inst.layout.n / 2) as usize];
        let cover = cover_from_assignment(&inst, half).unwrap();
        assert_eq!(cover.len() as u64, inst.k);
    }

    #[test]
    fn unbalanced_full_assignment_is_rejected() {
        let (inst, mut phi) = pipeline("p cnf 2 1\n1 2 0\n");
        // flipping one dummy of the second half breaks balance, not satisfaction
        let flip = (inst.layout.n / 2) as usize;
        phi[flip] = !phi[flip];
        assert!(matches!(
            cover_from_assignment(&inst, &phi),
            Err(TransferError::AssignmentUnbalanced)
        ));
    }

    #[test]
    fn unsatisfying_assignment_is_rejected() {
        let (inst, phi) = pipeline("p cnf 3 1\n1 2 3 0\n");
        // negating everything keeps balance but breaks some clause
        let negated: Vec<bool> = phi.iter().map(|&v| !v).collect();
        let result = cover_from_assignment(&inst, &negated);
        assert!(matches!(
            result,
            Err(TransferError::AssignmentUnsatisfied | TransferError::AssignmentDummy)
        ));
    }

    #[test]
    fn round_trip_recovers_a_satisfying_assignment() {
        let (inst, phi) = pipeline("p cnf 4 3\n1 -2 3 0\n2 3 -4 0\n-1 -3 4 0\n");
        let cover = cover_from_assignment(&inst, &phi).unwrap();
        let extracted = assignment_from_cover(&inst, &cover).unwrap();
        assert!(evaluate(&inst.formula.base, &extracted).unwrap());
    }

    #[test]
    fn sweep_cliques_hold_one_leftover_edge_per_clause() {
        let (inst, phi) = pipeline("p cnf 3 2\n1 2 3 0\n-1 2 -3 0\n");
        let cover = cover_from_assignment(&inst, &phi).unwrap();
        let layout = &inst.layout;
        for (a, b) in [(1u8, 2u8), (2, 1)] {
            let q_edge = (layout.q_id(a, 1), layout.q_id(a, 2));
            let sweep = cover
                .cliques
                .iter()
                .map(|c| {
                    let mut s = c.clone();
                    s.sort_unstable();
                    s
                })
                .find(|c| contains_edge(c, q_edge.0, q_edge.1))
                .unwrap();
            let _ = b;
            for j in 0..layout.m {
                let edges_inside = (1..=3u8)
                    .filter(|&alpha| {
                        contains_edge(&sweep, layout.p_id(j, alpha, 1), layout.p_id(j, alpha, 2))
                    })
                    .count();
                assert_eq!(edges_inside, 1, "guard row {a}, clause {j}");
            }
        }
    }

    #[test]
    fn cover_claiming_both_guard_edges_in_one_clique_is_invalid() {
        let (inst, phi) = pipeline("p cnf 2 1\n1 -2 0\n");
        let mut cover = cover_from_assignment(&inst, &phi).unwrap();
        let layout = &inst.layout;
        let merged = vec![
            layout.q_id(1, 1),
            layout.q_id(1, 2),
            layout.q_id(2, 1),
            layout.q_id(2, 2),
        ];
        cover.cliques.push(merged);
        assert!(matches!(
            assignment_from_cover(&inst, &cover),
            Err(TransferError::InvalidCover(Violation::NotAClique { .. }))
        ));
    }

    #[test]
    fn oversized_cover_without_w_content_fails_extraction() {
        let (inst, phi) = pipeline("p cnf 3 2\n1 2 3 0\n-1 2 -3 0\n");
        let layout = &inst.layout;
        let genuine = cover_from_assignment(&inst, &phi).unwrap();
        // strip the clause vertices out of the assignment clique and cover
        // their matching edges with bare two-vertex cliques instead: still a
        // valid cover, but every candidate clique now decodes to nothing
        let mut cliques = genuine.cliques.clone();
        let c0 = cliques
            .iter_mut()
            .find(|c| {
                let has_w = c.iter().any(|&v| v < layout.u_start());
                let touches_guard_or_simplicial =
                    c.iter().any(|&v| v >= layout.q_start());
                let has_matching_edge = (0..layout.m).any(|j| {
                    (1..=3u8).any(|alpha| {
                        c.contains(&layout.p_id(j, alpha, 1)) && c.contains(&layout.p_id(j, alpha, 2))
                    })
                });
                has_w && has_matching_edge && !touches_guard_or_simplicial
            })
            .expect("the assignment clique holds w vertices and clause matching edges");
        c0.retain(|&v| v < layout.p_start());
        for j in 0..layout.m {
            let alpha = (1..=3u8)
                .find(|&alpha| {
                    let (var, value) = inst.formula.literal(j as usize, alpha);
                    phi[var as usize] == (value == 1)
                })
                .unwrap();
            cliques.push(vec![layout.p_id(j, alpha, 1), layout.p_id(j, alpha, 2)]);
        }
        let perturbed = CliqueCover::new(cliques);
        assert!(verify_cover(&inst.graph, &perturbed, EdgeFilter::All).valid);
        assert!(matches!(
            assignment_from_cover(&inst, &perturbed),
            Err(TransferError::ExtractionFailed)
        ));
    }
}
