//! Exact edge clique cover solving at desk scale.
//!
//! Three engines with explicit guards: a pivoting Bron-Kerbosch enumeration
//! of maximal cliques over bit masks, an exhaustive minimum-cover oracle for
//! tiny graphs, and a branch-and-bound decision solver that branches on an
//! uncovered edge and tries every maximal clique containing it. Since any
//! cover converts to one of the same size that uses only maximal cliques,
//! restricting the search to maximal cliques loses nothing.
//!
//! [`kernelize`] applies three preprocessing rules to a fixed point and
//! records every application so covers of the reduced graph can be lifted
//! back to the original.

use std::sync::atomic::{AtomicBool, Ordering};

use thiserror::Error;

use crate::graph::{CliqueCover, EdgeClass, Graph, GraphBuilder, VertexId};

pub const MAX_ENUM_VERTICES: u32 = 64;
pub const MAX_ORACLE_VERTICES: u32 = 10;
pub const MAX_ORACLE_CLIQUES: usize = 40;
/// Default branch-and-bound guard, overridable per call up to
/// [`MAX_ENUM_VERTICES`].
pub const MAX_SOLVE_VERTICES: u32 = 24;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("graph has {vertices} vertices, this engine is limited to {max}")]
    TooManyVertices { vertices: u32, max: u32 },
    #[error("graph has {cliques} maximal cliques, the oracle is limited to {max}")]
    TooManyCliques { cliques: usize, max: usize },
}

fn bit_adjacency(g: &Graph) -> Vec<u64> {
    (0..g.vertex_count())
        .map(|v| {
            let row = g.adjacency_row(v);
            if row.is_empty() {
                0
            } else {
                row[0]
            }
        })
        .collect()
}

fn mask_to_vec(mask: u64) -> Vec<VertexId> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // pivot on the vertex covering most of p
    let pivot = mask_to_vec(p | x)
        .into_iter()
        .max_by_key(|&u| (p & adj[u as usize]).count_ones())
        .expect("p | x is nonempty");
    let mut candidates = p & !adj[pivot as usize];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u64 << v;
        candidates &= !bit;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// All maximal cliques of `g`, each sorted, the list in lexicographic order.
pub fn enumerate_maximal_cliques(g: &Graph) -> Result<Vec<Vec<VertexId>>, SolverError> {
    let n = g.vertex_count();
    if n > MAX_ENUM_VERTICES {
        return Err(SolverError::TooManyVertices {
            vertices: n,
            max: MAX_ENUM_VERTICES,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj = bit_adjacency(g);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut masks = Vec::new();
    bron_kerbosch(&adj, 0, full, 0, &mut masks);
    let mut cliques: Vec<Vec<VertexId>> = masks.into_iter().map(mask_to_vec).collect();
    cliques.sort_unstable();
    Ok(cliques)
}

/// Edge coverage bitmaps, one block vector per clique.
struct CoverageIndex {
    edges: Vec<(VertexId, VertexId)>,
    blocks: usize,
    clique_masks: Vec<Vec<u64>>,
    cliques_per_edge: Vec<Vec<u32>>,
}

impl CoverageIndex {
    fn new(g: &Graph, cliques: &[Vec<VertexId>]) -> Self {
        let edges: Vec<(VertexId, VertexId)> = g.edges().iter().map(|&(u, v, _)| (u, v)).collect();
        let blocks = edges.len().div_ceil(64).max(1);
        let edge_index = |u: VertexId, v: VertexId| -> usize {
            let key = (u.min(v), u.max(v));
            edges.binary_search(&key).expect("clique pair is an edge")
        };
        let mut clique_masks = vec![vec![0u64; blocks]; cliques.len()];
        let mut cliques_per_edge = vec![Vec::new(); edges.len()];
        for (c, clique) in cliques.iter().enumerate() {
            for (i, &u) in clique.iter().enumerate() {
                for &v in &clique[i + 1..] {
                    let e = edge_index(u, v);
                    clique_masks[c][e / 64] |= 1 << (e % 64);
                    cliques_per_edge[e].push(c as u32);
                }
            }
        }
        CoverageIndex {
            edges,
            blocks,
            clique_masks,
            cliques_per_edge,
        }
    }

    fn full_mask(&self) -> Vec<u64> {
        let mut full = vec![u64::MAX; self.blocks];
        let rem = self.edges.len() % 64;
        if self.edges.is_empty() {
            full[0] = 0;
        } else if rem > 0 {
            full[self.blocks - 1] = u64::MAX >> (64 - rem);
        }
        full
    }
}

fn or_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= s;
    }
}

fn is_all_set(mask: &[u64], full: &[u64]) -> bool {
    mask.iter().zip(full).all(|(m, f)| m == f)
}

/// Exhaustive minimum edge clique cover of a tiny graph, searching subsets
/// of maximal cliques in increasing size. This is the independence oracle
/// the branch-and-bound solver is validated against, so it stays blunt: no
/// bounds, no heuristics, fixed first-uncovered-edge order.
pub fn min_cover_oracle(g: &Graph) -> Result<(usize, CliqueCover), SolverError> {
    let n = g.vertex_count();
    if n > MAX_ORACLE_VERTICES {
        return Err(SolverError::TooManyVertices {
            vertices: n,
            max: MAX_ORACLE_VERTICES,
        });
    }
    let cliques = enumerate_maximal_cliques(g)?;
    if cliques.len() > MAX_ORACLE_CLIQUES {
        return Err(SolverError::TooManyCliques {
            cliques: cliques.len(),
            max: MAX_ORACLE_CLIQUES,
        });
    }
    let index = CoverageIndex::new(g, &cliques);
    let full = index.full_mask();
    for size in 0..=g.edge_count() {
        let mut chosen: Vec<u32> = Vec::new();
        let covered = vec![0u64; index.blocks];
        if oracle_dfs(&index, &full, size, covered, &mut chosen) {
            let cover = CliqueCover::new(
                chosen
                    .iter()
                    .map(|&c| cliques[c as usize].clone())
                    .collect(),
            );
            return Ok((chosen.len(), cover));
        }
    }
    unreachable!("the per-edge cover bounds the optimum by |E|")
}

fn oracle_dfs(
    index: &CoverageIndex,
    full: &[u64],
    size: usize,
    covered: Vec<u64>,
    chosen: &mut Vec<u32>,
) -> bool {
    if is_all_set(&covered, full) {
        return true;
    }
    if chosen.len() == size {
        return false;
    }
    let e = (0..index.edges.len())
        .find(|&e| covered[e / 64] >> (e % 64) & 1 == 0)
        .expect("some edge is uncovered");
    for &c in &index.cliques_per_edge[e] {
        let mut next = covered.clone();
        or_into(&mut next, &index.clique_masks[c as usize]);
        chosen.push(c);
        if oracle_dfs(index, full, size, next, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Knobs for [`solve_exact_with`].
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Vertex guard; capped at [`MAX_ENUM_VERTICES`].
    pub max_vertices: u32,
    /// Fixed candidate order on a single thread, so reruns produce
    /// byte-identical covers.
    pub deterministic: bool,
    /// Split the root branches across threads (needs the `parallel`
    /// feature; the reported answer and minimum size do not depend on it).
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_vertices: MAX_SOLVE_VERTICES,
            deterministic: false,
            parallel: true,
        }
    }
}

struct SearchContext<'a> {
    index: &'a CoverageIndex,
    full: Vec<u64>,
    compat: Vec<Vec<u64>>,
    k_limit: usize,
    stop: AtomicBool,
}

impl<'a> SearchContext<'a> {
    fn new(g: &Graph, index: &'a CoverageIndex, k_limit: usize) -> Self {
        let m = index.edges.len();
        let blocks = m.div_ceil(64).max(1);
        // compat[e] marks edges that can share a single clique with e
        let mut compat = vec![vec![0u64; blocks]; m];
        for e in 0..m {
            for f in e + 1..m {
                let (a, b) = index.edges[e];
                let (c, d) = index.edges[f];
                let mut vs = vec![a, b, c, d];
                vs.sort_unstable();
                vs.dedup();
                let ok = crate::graph::is_clique(g, &vs).expect("edge endpoints are in range");
                if ok {
                    compat[e][f / 64] |= 1 << (f % 64);
                    compat[f][e / 64] |= 1 << (e % 64);
                }
            }
        }
        SearchContext {
            index,
            full: index.full_mask(),
            compat,
            k_limit,
            stop: AtomicBool::new(false),
        }
    }

    /// Greedy set of pairwise single-clique-incompatible uncovered edges;
    /// each needs its own clique, so the count lower-bounds the remainder.
    fn lower_bound(&self, covered: &[u64]) -> usize {
        let blocks = covered.len();
        let mut picked = vec![0u64; blocks];
        let mut count = 0;
        for e in 0..self.index.edges.len() {
            if covered[e / 64] >> (e % 64) & 1 == 1 {
                continue;
            }
            let clash = (0..blocks).any(|b| self.compat[e][b] & picked[b] != 0);
            if !clash {
                picked[e / 64] |= 1 << (e % 64);
                count += 1;
            }
        }
        count
    }

    fn pick_edge(&self, covered: &[u64]) -> usize {
        (0..self.index.edges.len())
            .filter(|&e| covered[e / 64] >> (e % 64) & 1 == 0)
            .min_by_key(|&e| self.index.cliques_per_edge[e].len())
            .expect("some edge is uncovered")
    }

    fn dfs(&self, covered: Vec<u64>, chosen: &mut Vec<u32>) -> Option<Vec<u32>> {
        if self.stop.load(Ordering::Relaxed) {
            return None;
        }
        if is_all_set(&covered, &self.full) {
            return Some(chosen.clone());
        }
        let used = chosen.len();
        if used >= self.k_limit || used + self.lower_bound(&covered) > self.k_limit {
            return None;
        }
        let e = self.pick_edge(&covered);
        for &c in &self.index.cliques_per_edge[e] {
            let mut next = covered.clone();
            or_into(&mut next, &self.index.clique_masks[c as usize]);
            chosen.push(c);
            if let Some(found) = self.dfs(next, chosen) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }
}

/// Finds a clique cover of size at most `k_limit`, or proves none exists.
/// Default guards apply; see [`solve_exact_with`].
pub fn solve_exact(g: &Graph, k_limit: usize) -> Result<Option<CliqueCover>, SolverError> {
    solve_exact_with(g, k_limit, &SolveOptions::default())
}

pub fn solve_exact_with(
    g: &Graph,
    k_limit: usize,
    opts: &SolveOptions,
) -> Result<Option<CliqueCover>, SolverError> {
    let n = g.vertex_count();
    let cap = opts.max_vertices.min(MAX_ENUM_VERTICES);
    if n > cap {
        return Err(SolverError::TooManyVertices {
            vertices: n,
            max: cap,
        });
    }
    if g.edge_count() == 0 {
        return Ok(Some(CliqueCover::new(Vec::new())));
    }
    let cliques = enumerate_maximal_cliques(g)?;
    let index = CoverageIndex::new(g, &cliques);
    let ctx = SearchContext::new(g, &index, k_limit);
    if k_limit == 0 || ctx.lower_bound(&vec![0u64; index.blocks]) > k_limit {
        return Ok(None);
    }

    let root_edge = ctx.pick_edge(&vec![0u64; index.blocks]);
    let root_candidates = &index.cliques_per_edge[root_edge];

    let to_cover = |chosen: Vec<u32>| {
        CliqueCover::new(
            chosen
                .into_iter()
                .map(|c| cliques[c as usize].clone())
                .collect(),
        )
    };

    #[cfg(feature = "parallel")]
    if opts.parallel && !opts.deterministic && root_candidates.len() > 1 {
        use rayon::prelude::*;
        let found = root_candidates.par_iter().find_map_any(|&c| {
            let mut covered = vec![0u64; index.blocks];
            or_into(&mut covered, &index.clique_masks[c as usize]);
            let mut chosen = vec![c];
            let result = ctx.dfs(covered, &mut chosen);
            if result.is_some() {
                ctx.stop.store(true, Ordering::Relaxed);
            }
            result
        });
        return Ok(found.map(to_cover));
    }

    for &c in root_candidates {
        let mut covered = vec![0u64; index.blocks];
        or_into(&mut covered, &index.clique_masks[c as usize]);
        let mut chosen = vec![c];
        if let Some(found) = ctx.dfs(covered, &mut chosen) {
            return Ok(Some(to_cover(found)));
        }
    }
    Ok(None)
}

/// Minimum cover size and a witness, by raising the budget from the lower
/// bound until the decision search succeeds.
pub fn min_cover(g: &Graph, opts: &SolveOptions) -> Result<(usize, CliqueCover), SolverError> {
    for k in 0..=g.edge_count() {
        if let Some(cover) = solve_exact_with(g, k, opts)? {
            return Ok((cover.len(), cover));
        }
    }
    unreachable!("the per-edge cover bounds the optimum by |E|")
}

// ---------------------------------------------------------------------------
// Kernelization.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleApplication {
    /// R1: a vertex without edges was dropped.
    IsolatedVertexRemoved { vertex: VertexId },
    /// R2: a clique that is the only maximal clique through each of its
    /// edges was committed to the solution and its edges removed.
    CliqueCommitted { clique: Vec<VertexId> },
    /// R3: of two adjacent vertices with identical closed neighborhoods,
    /// the higher one was dropped.
    TwinMerged { kept: VertexId, removed: VertexId },
}

/// Outcome of [`kernelize`]: the reduced instance plus enough bookkeeping to
/// lift a cover of the reduced graph back to the original one.
#[derive(Debug)]
pub struct KernelResult {
    pub reduced: Graph,
    /// Remaining budget; negative means the instance is already a NO.
    pub k_reduced: i64,
    /// Cliques of the original graph committed by R2, in order.
    pub forced_cliques: Vec<Vec<VertexId>>,
    pub trace: Vec<RuleApplication>,
    /// Reduced vertex id to original vertex id.
    pub vertex_map: Vec<VertexId>,
}

impl KernelResult {
    pub fn answer_is_no(&self) -> bool {
        self.k_reduced < 0
    }

    pub fn rule_applications(&self) -> usize {
        self.trace.len()
    }

    /// Translates a cover of the reduced graph into a cover of the original
    /// graph by undoing the trace: committed cliques are re-added and merged
    /// twins rejoin every clique that contains their survivor.
    pub fn lift_cover(&self, cover: &CliqueCover) -> CliqueCover {
        let mut cliques: Vec<Vec<VertexId>> = cover
            .cliques
            .iter()
            .map(|c| c.iter().map(|&v| self.vertex_map[v as usize]).collect())
            .collect();
        for rule in self.trace.iter().rev() {
            match rule {
                RuleApplication::IsolatedVertexRemoved { .. } => {}
                RuleApplication::CliqueCommitted { clique } => cliques.push(clique.clone()),
                RuleApplication::TwinMerged { kept, removed } => {
                    for clique in cliques.iter_mut() {
                        if clique.contains(kept) {
                            clique.push(*removed);
                        }
                    }
                }
            }
        }
        for clique in cliques.iter_mut() {
            clique.sort_unstable();
        }
        CliqueCover::new(cliques)
    }
}

struct KernelState {
    n: usize,
    blocks: usize,
    alive: Vec<bool>,
    rows: Vec<Vec<u64>>,
}

impl KernelState {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count() as usize;
        let blocks = n.div_ceil(64).max(1);
        let rows = (0..n).map(|v| g.adjacency_row(v as u32).to_vec()).collect();
        KernelState {
            n,
            blocks,
            alive: vec![true; n],
            rows,
        }
    }

    fn has_bit(&self, row: usize, v: usize) -> bool {
        self.rows[row][v / 64] >> (v % 64) & 1 == 1
    }

    fn degree(&self, v: usize) -> u32 {
        self.rows[v].iter().map(|b| b.count_ones()).sum()
    }

    fn delete_vertex(&mut self, v: usize) {
        for w in 0..self.n {
            self.rows[w][v / 64] &= !(1 << (v % 64));
        }
        self.rows[v] = vec![0; self.blocks];
        self.alive[v] = false;
    }

    fn delete_edge(&mut self, u: usize, v: usize) {
        self.rows[u][v / 64] &= !(1 << (v % 64));
        self.rows[v][u / 64] &= !(1 << (u % 64));
    }

    fn closed_row(&self, v: usize) -> Vec<u64> {
        let mut row = self.rows[v].clone();
        row[v / 64] |= 1 << (v % 64);
        row
    }

    fn members(&self, mask: &[u64]) -> Vec<usize> {
        (0..self.n).filter(|&v| mask[v / 64] >> (v % 64) & 1 == 1).collect()
    }

    fn is_clique_mask(&self, mask: &[u64], members: &[usize]) -> bool {
        members.iter().all(|&x| {
            let closed = self.closed_row(x);
            mask.iter().zip(&closed).all(|(m, c)| m & !c == 0)
        })
    }
}

/// Applies three reduction rules to a fixed point and reports the reduced
/// instance. R1 drops isolated vertices. R2 commits a clique `C = N[u] n N[v]`
/// of an edge `uv` when `C` has a common neighbor and is the only maximal
/// clique through every one of its edges, spending one unit of budget.
/// R3 merges adjacent vertices with identical closed neighborhoods. Each of
/// these keeps the YES/NO answer intact, and committed cliques are cliques
/// of the original graph.
pub fn kernelize(g: &Graph, k: u64) -> KernelResult {
    let mut state = KernelState::new(g);
    let mut trace: Vec<RuleApplication> = Vec::new();
    let mut forced: Vec<Vec<VertexId>> = Vec::new();
    let mut k_reduced: i64 = i64::try_from(k).unwrap_or(i64::MAX);

    'fixpoint: loop {
        // R1: isolated vertices
        for v in 0..state.n {
            if state.alive[v] && state.degree(v) == 0 {
                state.delete_vertex(v);
                trace.push(RuleApplication::IsolatedVertexRemoved { vertex: v as VertexId });
                continue 'fixpoint;
            }
        }
        // R2: an edge whose closed common neighborhood is the unique maximal
        // clique through all of its edges
        for u in 0..state.n {
            if !state.alive[u] {
                continue;
            }
            for v in u + 1..state.n {
                if !state.has_bit(u, v) {
                    continue;
                }
                let mut common = state.closed_row(u);
                let closed_v = state.closed_row(v);
                for (c, o) in common.iter_mut().zip(&closed_v) {
                    *c &= o;
                }
                let members = state.members(&common);
                if members.len() < 3 {
                    continue;
                }
                if !state.is_clique_mask(&common, &members) {
                    continue;
                }
                // every internal edge must see exactly this clique
                let unique = members.iter().enumerate().all(|(i, &x)| {
                    members[i + 1..].iter().all(|&y| {
                        let cx = state.closed_row(x);
                        let cy = state.closed_row(y);
                        cx.iter().zip(&cy).zip(&common).all(|((a, b), c)| a & b == *c)
                    })
                });
                if !unique {
                    continue;
                }
                let clique: Vec<VertexId> = members.iter().map(|&x| x as VertexId).collect();
                for (i, &x) in members.iter().enumerate() {
                    for &y in &members[i + 1..] {
                        state.delete_edge(x, y);
                    }
                }
                forced.push(clique.clone());
                trace.push(RuleApplication::CliqueCommitted { clique });
                k_reduced -= 1;
                continue 'fixpoint;
            }
        }
        // R3: adjacent closed twins; keep the lower id. The degree guard
        // leaves bare K2 components to the solver, where the lift argument
        // would otherwise have no clique containing the survivor.
        for u in 0..state.n {
            if !state.alive[u] || state.degree(u) < 2 {
                continue;
            }
            let closed_u = state.closed_row(u);
            for v in u + 1..state.n {
                if !state.has_bit(u, v) {
                    continue;
                }
                if state.closed_row(v) == closed_u {
                    state.delete_vertex(v);
                    trace.push(RuleApplication::TwinMerged {
                        kept: u as VertexId,
                        removed: v as VertexId,
                    });
                    continue 'fixpoint;
                }
            }
        }
        break;
    }

    let vertex_map: Vec<VertexId> = (0..state.n)
        .filter(|&v| state.alive[v])
        .map(|v| v as VertexId)
        .collect();
    let mut dense = vec![u32::MAX; state.n];
    for (new, &old) in vertex_map.iter().enumerate() {
        dense[old as usize] = new as u32;
    }
    let mut b = GraphBuilder::new(vertex_map.len() as u32);
    for &old_u in &vertex_map {
        for old_v in (old_u + 1)..state.n as u32 {
            if state.alive[old_v as usize] && state.has_bit(old_u as usize, old_v as usize) {
                let class = g
                    .edge_class(old_u, old_v)
                    .unwrap_or(EdgeClass::Imp);
                b.add_edge(dense[old_u as usize], dense[old_v as usize], class)
                    .expect("kernel edges are simple");
            }
        }
    }
    for &old in &vertex_map {
        if let Some(name) = g.name(old) {
            b.set_name(dense[old as usize], name);
        }
    }
    KernelResult {
        reduced: b.build(),
        k_reduced,
        forced_cliques: forced,
        trace,
        vertex_map,
    }
}
