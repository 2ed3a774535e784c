//! Cocktail party graphs and their twin clique covers.
//!
//! `H_ell` is the complete graph on `2^ell` vertices with a perfect matching
//! removed; vertex `2t` is partnered with `2t+1`. A maximum clique picks one
//! endpoint of every removed matching edge, and the complement of a maximum
//! clique is again one. Such a complementary pair is a twin pair, and a cover
//! made of twin pairs is a twin cover. [`extend_twin_cover`] grows an
//! admissible set of twin pairs into a full twin cover of `2*ell` cliques by
//! assigning complementary bit labels to the vertices.

use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, CliqueCover, EdgeClass, VertexId};

/// Iterator creation guard for [`enumerate_max_cliques_cocktail`].
pub const MAX_ENUM_ELL: u32 = 20;

#[derive(Debug, Error)]
pub enum CocktailError {
    #[error("ell must be at least 1, got {0}")]
    EllTooSmall(u32),
    #[error("seed must contain between 1 and {ell} twin pairs, got {delta}")]
    BadSeedSize { delta: usize, ell: u32 },
    #[error("seed pair {index} is not a twin pair: {reason}")]
    SeedNotTwins { index: usize, reason: String },
    #[error("seed side choices must intersect in exactly {expected} vertices, one choice gives {found}")]
    BadSeedIntersection { expected: usize, found: usize },
    #[error("ell {0} exceeds the enumeration guard {MAX_ENUM_ELL}")]
    EnumGuard(u32),
}

/// A maximum clique of `H_ell` together with its complementary maximum
/// clique. Both sides are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPair {
    pub side0: Vec<VertexId>,
    pub side1: Vec<VertexId>,
}

impl TwinPair {
    pub fn new(mut side0: Vec<VertexId>, mut side1: Vec<VertexId>) -> Self {
        side0.sort_unstable();
        side1.sort_unstable();
        TwinPair { side0, side1 }
    }
}

/// An ordered list of twin pairs; flattening yields the clique cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinCover {
    pub pairs: Vec<TwinPair>,
}

impl TwinCover {
    pub fn flatten(&self) -> CliqueCover {
        let mut cliques = Vec::with_capacity(2 * self.pairs.len());
        for pair in &self.pairs {
            cliques.push(pair.side0.clone());
            cliques.push(pair.side1.clone());
        }
        CliqueCover::new(cliques)
    }
}

/// `H_ell` plus its removed-matching pairing.
#[derive(Debug, Clone)]
pub struct CocktailGraph {
    ell: u32,
    graph: Graph,
}

impl CocktailGraph {
    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn vertex_count(&self) -> u32 {
        1u32 << self.ell
    }

    /// Number of removed matching edges, `2^(ell-1)`.
    pub fn pair_count(&self) -> u32 {
        1u32 << (self.ell - 1)
    }

    /// The unique non-neighbor of `v`.
    pub fn partner(&self, v: VertexId) -> VertexId {
        v ^ 1
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

/// Builds `H_ell`: vertices `0..2^ell`, all edges present except
/// `2t`-`2t+1`. Every edge is classed `imp`.
pub fn build_cocktail(ell: u32) -> Result<CocktailGraph, CocktailError> {
    if ell < 1 {
        return Err(CocktailError::EllTooSmall(ell));
    }
    let n = 1u32 << ell;
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if v != (u ^ 1) {
                b.add_edge(u, v, EdgeClass::Imp).expect("pairs are in range and distinct");
            }
        }
    }
    Ok(CocktailGraph {
        ell,
        graph: b.build(),
    })
}

fn check_twin_pair(g: &CocktailGraph, index: usize, pair: &TwinPair) -> Result<(), CocktailError> {
    let half = g.pair_count() as usize;
    let n = g.vertex_count();
    let fail = |reason: String| CocktailError::SeedNotTwins { index, reason };
    if pair.side0.len() != half || pair.side1.len() != half {
        return Err(fail(format!(
            "sides must each have {half} vertices, got {} and {}",
            pair.side0.len(),
            pair.side1.len()
        )));
    }
    let mut seen = vec![false; n as usize];
    for &v in pair.side0.iter().chain(pair.side1.iter()) {
        if v >= n {
            return Err(fail(format!("vertex {v} out of range")));
        }
        if seen[v as usize] {
            return Err(fail(format!("vertex {v} appears twice")));
        }
        seen[v as usize] = true;
    }
    // one endpoint of every removed matching edge per side makes each side a
    // maximum clique, and forces side1 to be the complement of side0
    for &v in &pair.side0 {
        if pair.side0.binary_search(&g.partner(v)).is_ok() {
            return Err(fail(format!(
                "side contains both endpoints of removed edge {}-{}",
                v.min(g.partner(v)),
                v.max(g.partner(v))
            )));
        }
    }
    Ok(())
}

/// Extends `seed` (1 to `ell` twin pairs) to a full twin cover of exactly
/// `ell` pairs whose first `seed.len()` pairs are the seed, verbatim.
///
/// Admissibility: picking one side from each seed pair must always intersect
/// in exactly `2^(ell-delta)` vertices; this is checked and violations are
/// errors. The construction assigns each vertex a `delta`-bit label from seed
/// membership, extends it per class so that partners receive bitwise
/// complementary full labels, and emits one twin pair per label bit.
pub fn extend_twin_cover(
    g: &CocktailGraph,
    seed: &[TwinPair],
) -> Result<TwinCover, CocktailError> {
    let ell = g.ell();
    let delta = seed.len();
    if delta < 1 || delta as u32 > ell {
        return Err(CocktailError::BadSeedSize { delta, ell });
    }
    for (index, pair) in seed.iter().enumerate() {
        check_twin_pair(g, index, pair)?;
    }
    let n = g.vertex_count() as usize;

    // delta-bit label per vertex: bit gamma says which side of seed pair
    // gamma+1 contains it
    let mut class_label = vec![0u32; n];
    for (gamma, pair) in seed.iter().enumerate() {
        for &v in &pair.side1 {
            class_label[v as usize] |= 1 << gamma;
        }
    }

    let expected = 1usize << (ell as usize - delta);
    let mut classes: Vec<Vec<VertexId>> = vec![Vec::new(); 1 << delta];
    for v in 0..n as VertexId {
        classes[class_label[v as usize] as usize].push(v);
    }
    for class in &classes {
        if class.len() != expected {
            return Err(CocktailError::BadSeedIntersection {
                expected,
                found: class.len(),
            });
        }
    }

    // per-class extension label: enumerate one class in id order, force the
    // complementary class through the partner bijection
    let ext_bits = ell as usize - delta;
    let ext_mask: u32 = if ext_bits == 0 { 0 } else { (1u32 << ext_bits) - 1 };
    let mut ext_label = vec![u32::MAX; n];
    for c in 0..classes.len() {
        if ext_label[classes[c][0] as usize] != u32::MAX {
            continue;
        }
        for (t, &v) in classes[c].iter().enumerate() {
            ext_label[v as usize] = t as u32;
            ext_label[g.partner(v) as usize] = t as u32 ^ ext_mask;
        }
    }

    let mut full_label = vec![0u32; n];
    for v in 0..n {
        full_label[v] = class_label[v] | (ext_label[v] << delta);
    }

    let mut pairs = Vec::with_capacity(ell as usize);
    for gamma in 0..ell {
        let mut side0 = Vec::with_capacity(n / 2);
        let mut side1 = Vec::with_capacity(n / 2);
        for v in 0..n as VertexId {
            if full_label[v as usize] >> gamma & 1 == 0 {
                side0.push(v);
            } else {
                side1.push(v);
            }
        }
        pairs.push(TwinPair { side0, side1 });
    }
    Ok(TwinCover { pairs })
}

/// Least `k` such that `num_pairs <= C(k-1, ceil(k/2))`: the optimum clique
/// cover size of a cocktail party graph on `2 * num_pairs` vertices, by the
/// Gregory-Pullman bound. Requires `num_pairs >= 2`.
pub fn gregory_pullman_opt(num_pairs: u64) -> Result<u32, CocktailError> {
    if num_pairs < 2 {
        return Err(CocktailError::EllTooSmall(num_pairs as u32));
    }
    for k in 1u32.. {
        if binomial_at_least(k - 1, k.div_ceil(2), num_pairs) {
            return Ok(k);
        }
    }
    unreachable!("binomial grows without bound")
}

/// True iff C(n, r) >= target, computed with saturation.
fn binomial_at_least(n: u32, r: u32, target: u64) -> bool {
    if r > n {
        return target == 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r as u128 {
        acc = acc.saturating_mul(n as u128 - i) / (i + 1);
        if acc >= target as u128 {
            return true;
        }
    }
    acc >= target as u128
}

/// Lazily yields all maximum cliques of `H_ell`: every selection of one
/// endpoint per removed matching edge, in odometer order. There are
/// `2^(2^(ell-1))` of them, so callers should bound consumption.
pub fn enumerate_max_cliques_cocktail(
    g: &CocktailGraph,
) -> Result<MaxCliqueIter, CocktailError> {
    if g.ell() > MAX_ENUM_ELL {
        return Err(CocktailError::EnumGuard(g.ell()));
    }
    Ok(MaxCliqueIter {
        choices: Some(vec![0u8; g.pair_count() as usize]),
    })
}

pub struct MaxCliqueIter {
    choices: Option<Vec<u8>>,
}

impl Iterator for MaxCliqueIter {
    type Item = Vec<VertexId>;

    fn next(&mut self) -> Option<Vec<VertexId>> {
        let choices = self.choices.as_mut()?;
        let clique: Vec<VertexId> = choices
            .iter()
            .enumerate()
            .map(|(t, &b)| 2 * t as VertexId + b as VertexId)
            .collect();
        let mut i = 0;
        loop {
            if i == choices.len() {
                self.choices = None;
                break;
            }
            if choices[i] == 0 {
                choices[i] = 1;
                break;
            }
            choices[i] = 0;
            i += 1;
        }
        Some(clique)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_clique, verify_cover, EdgeFilter};

    #[test]
    fn smallest_cocktail_graph_has_no_edges() {
        let g = build_cocktail(1).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.graph().edge_count(), 0);
    }

    #[test]
    fn h2_is_the_four_cycle() {
        let g = build_cocktail(2).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.graph().edge_count(), 4);
        assert!(!g.graph().is_adjacent(0, 1));
        assert!(!g.graph().is_adjacent(2, 3));
        assert!(g.graph().is_adjacent(0, 2));
    }

    #[test]
    fn h3_has_24_edges() {
        let g = build_cocktail(3).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.graph().edge_count(), 24);
    }

    #[test]
    fn edge_count_formula_holds_up_to_ell_8() {
        for ell in 1..=8u32 {
            let g = build_cocktail(ell).unwrap();
            let n = 1u64 << ell;
            assert_eq!(g.graph().edge_count() as u64, n / 2 * (n - 2));
        }
    }

    #[test]
    fn ell_zero_is_rejected() {
        assert!(matches!(build_cocktail(0), Err(CocktailError::EllTooSmall(0))));
    }

    #[test]
    fn partner_is_a_fixed_point_free_involution() {
        let g = build_cocktail(3).unwrap();
        for v in 0..g.vertex_count() {
            assert_ne!(g.partner(v), v);
            assert_eq!(g.partner(g.partner(v)), v);
            assert!(!g.graph().is_adjacent(v, g.partner(v)));
        }
    }

    #[test]
    fn extend_on_h2_yields_the_four_two_vertex_cliques() {
        let g = build_cocktail(2).unwrap();
        let seed = vec![TwinPair::new(vec![0, 2], vec![1, 3])];
        let cover = extend_twin_cover(&g, &seed).unwrap();
        assert_eq!(cover.pairs.len(), 2);
        assert_eq!(cover.pairs[0], seed[0]);
        let mut all: Vec<Vec<VertexId>> = cover.flatten().cliques;
        all.sort();
        assert_eq!(all, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn extend_on_h3_covers_with_three_pairs() {
        let g = build_cocktail(3).unwrap();
        let seed = vec![TwinPair::new(vec![0, 2, 4, 6], vec![1, 3, 5, 7])];
        let cover = extend_twin_cover(&g, &seed).unwrap();
        assert_eq!(cover.pairs.len(), 3);
        assert_eq!(cover.pairs[0], seed[0]);
        let report = verify_cover(g.graph(), &cover.flatten(), EdgeFilter::All);
        assert!(report.valid, "{:?}", report.first_violation);
    }

    #[test]
    fn extend_with_two_seed_pairs_on_h4() {
        let g = build_cocktail(4).unwrap();
        // second pair agrees with the first on exactly half of the removed edges
        let first: Vec<VertexId> = (0..8).map(|t| 2 * t).collect();
        let second: Vec<VertexId> = (0..8)
            .map(|t| 2 * t + u32::from(t >= 4))
            .collect();
        let seed = vec![
            TwinPair::new(first.clone(), first.iter().map(|&v| v ^ 1).collect()),
            TwinPair::new(second.clone(), second.iter().map(|&v| v ^ 1).collect()),
        ];
        let cover = extend_twin_cover(&g, &seed).unwrap();
        assert_eq!(cover.pairs.len(), 4);
        assert_eq!(&cover.pairs[..2], &seed[..]);
        assert!(verify_cover(g.graph(), &cover.flatten(), EdgeFilter::All).valid);
    }

    #[test]
    fn repeated_seed_pair_violates_the_intersection_condition() {
        let g = build_cocktail(2).unwrap();
        let pair = TwinPair::new(vec![0, 2], vec![1, 3]);
        let seed = vec![pair.clone(), pair];
        assert!(matches!(
            extend_twin_cover(&g, &seed),
            Err(CocktailError::BadSeedIntersection { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn non_complementary_seed_is_rejected() {
        let g = build_cocktail(2).unwrap();
        let seed = vec![TwinPair::new(vec![0, 2], vec![1, 2])];
        assert!(matches!(
            extend_twin_cover(&g, &seed),
            Err(CocktailError::SeedNotTwins { .. })
        ));
    }

    #[test]
    fn side_with_both_matching_endpoints_is_rejected() {
        let g = build_cocktail(2).unwrap();
        let seed = vec![TwinPair::new(vec![0, 1], vec![2, 3])];
        assert!(matches!(
            extend_twin_cover(&g, &seed),
            Err(CocktailError::SeedNotTwins { .. })
        ));
    }

    #[test]
    fn optimum_formula_values() {
        assert_eq!(gregory_pullman_opt(2).unwrap(), 4);
        assert_eq!(gregory_pullman_opt(4).unwrap(), 5);
        // C(5,3) = 10 >= 8 while C(4,3) = 4 < 8
        assert_eq!(gregory_pullman_opt(8).unwrap(), 6);
        assert!(gregory_pullman_opt(1).is_err());
    }

    #[test]
    fn max_clique_enumeration_counts() {
        let g1 = build_cocktail(1).unwrap();
        let singles: Vec<_> = enumerate_max_cliques_cocktail(&g1).unwrap().collect();
        assert_eq!(singles, vec![vec![0], vec![1]]);

        let g2 = build_cocktail(2).unwrap();
        assert_eq!(enumerate_max_cliques_cocktail(&g2).unwrap().count(), 4);

        let g3 = build_cocktail(3).unwrap();
        let cliques: Vec<_> = enumerate_max_cliques_cocktail(&g3).unwrap().collect();
        assert_eq!(cliques.len(), 16);
        for c in &cliques {
            assert_eq!(c.len(), 4);
            assert!(is_clique(g3.graph(), c).unwrap());
        }
    }

    #[test]
    fn every_maximum_clique_extends_to_a_twin_cover() {
        for ell in 1..=4u32 {
            let g = build_cocktail(ell).unwrap();
            for clique in enumerate_max_cliques_cocktail(&g).unwrap() {
                let complement: Vec<VertexId> = clique.iter().map(|&v| v ^ 1).collect();
                let seed = vec![TwinPair::new(clique, complement)];
                let cover = extend_twin_cover(&g, &seed).unwrap();
                assert_eq!(cover.pairs.len(), ell as usize);
                assert_eq!(cover.pairs[0], seed[0]);
                assert!(verify_cover(g.graph(), &cover.flatten(), EdgeFilter::All).valid);
            }
        }
    }
}
