//! Builds an edge clique cover instance from a regularized 3-CNF formula.
//!
//! The graph hosts two assignment gadgets (copies of a cocktail party graph
//! on the `w` vertices, fenced by the `u` vertices), one clause gadget `P_j`
//! per clause (three independent edges), and a guard gadget `Q` (two
//! independent edges). Edges split into an important set that consumes the
//! interesting part of the budget and a free set covered by the closed
//! neighborhoods of dedicated simplicial vertices, one per clique of the
//! free cover emitted by [`build_free_cover`]. The budget is
//! `k = 4*ell + |free cover|`.
//!
//! Which `w` vertices a clause vertex misses is the whole trick: `p_{j,a,b}`
//! is adjacent to every `w` vertex except `w_{0,1}` and the one encoding the
//! wrong value of its own literal, so a maximum clique through the `w` side
//! can absorb `p_{j,a,b}` exactly when it encodes an assignment satisfying
//! literal `a` of clause `j`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cnf::{Formula, Lit, RegularFormula};
use crate::graph::{
    read_graph, write_graph, EdgeClass, Graph, GraphBuilder, GraphError, VertexId, VertexName,
};

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("formula has no clauses")]
    EmptyFormula,
    #[error("formula is not regular: {0}")]
    NotRegular(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("not a reduction instance: {0}")]
    BadInstance(String),
}

/// `ceil(log2(m))` for `m >= 1`.
pub fn ceil_log2(m: u32) -> u32 {
    m.next_power_of_two().trailing_zeros()
}

/// Number of cliques covering the free edges: `46 + 36*ceil(log2 m) + 24*ell`.
pub fn free_cover_size(ell: u32, m: u32) -> u64 {
    46 + 36 * u64::from(ceil_log2(m)) + 24 * u64::from(ell)
}

/// Budget pair `(k0, k)`: `k0 = 4*ell` covers the important edges, the rest
/// pays for one simplicial clique per free-cover member.
pub fn budget(ell: u32, m: u32) -> (u64, u64) {
    let k0 = 4 * u64::from(ell);
    (k0, k0 + free_cover_size(ell, m))
}

/// Dense id assignment for the gadget blocks, in order: the two `w` blocks,
/// the two `u` blocks, clause vertices, guard vertices, simplicial vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetLayout {
    pub n: u32,
    pub m: u32,
    pub ell: u32,
    pub free_clique_count: u32,
}

impl GadgetLayout {
    pub fn new(n: u32, m: u32, ell: u32) -> Self {
        GadgetLayout {
            n,
            m,
            ell,
            free_clique_count: free_cover_size(ell, m) as u32,
        }
    }

    pub fn u_start(&self) -> u32 {
        4 * self.n
    }

    pub fn p_start(&self) -> u32 {
        4 * self.n + 2 * (self.ell - 1)
    }

    pub fn q_start(&self) -> u32 {
        self.p_start() + 6 * self.m
    }

    pub fn s_start(&self) -> u32 {
        self.q_start() + 4
    }

    pub fn vertex_count(&self) -> u32 {
        self.s_start() + self.free_clique_count
    }

    pub fn w_id(&self, copy: u8, i: u32, c: u8) -> VertexId {
        debug_assert!(copy == 1 || copy == 2);
        debug_assert!(i < self.n && c < 2);
        (u32::from(copy) - 1) * 2 * self.n + 2 * i + u32::from(c)
    }

    pub fn u_id(&self, copy: u8, gamma: u32) -> VertexId {
        debug_assert!((1..self.ell).contains(&gamma));
        self.u_start() + (u32::from(copy) - 1) * (self.ell - 1) + gamma - 1
    }

    pub fn p_id(&self, j: u32, alpha: u8, beta: u8) -> VertexId {
        debug_assert!((1..=3).contains(&alpha) && (1..=2).contains(&beta));
        self.p_start() + 6 * j + 2 * (u32::from(alpha) - 1) + u32::from(beta) - 1
    }

    pub fn q_id(&self, a: u8, b: u8) -> VertexId {
        self.q_start() + 2 * (u32::from(a) - 1) + u32::from(b) - 1
    }

    pub fn s_id(&self, t: u32) -> VertexId {
        self.s_start() + t
    }

    pub fn name_of(&self, v: VertexId) -> VertexName {
        if v < self.u_start() {
            let copy = (v / (2 * self.n)) as u8 + 1;
            let rest = v % (2 * self.n);
            VertexName::W {
                copy,
                var: rest / 2,
                value: (rest % 2) as u8,
            }
        } else if v < self.p_start() {
            let rest = v - self.u_start();
            VertexName::U {
                copy: (rest / (self.ell - 1)) as u8 + 1,
                gamma: rest % (self.ell - 1) + 1,
            }
        } else if v < self.q_start() {
            let rest = v - self.p_start();
            VertexName::P {
                clause: rest / 6,
                lit: ((rest % 6) / 2) as u8 + 1,
                side: (rest % 2) as u8 + 1,
            }
        } else if v < self.s_start() {
            let rest = v - self.q_start();
            VertexName::Q {
                row: (rest / 2) as u8 + 1,
                col: (rest % 2) as u8 + 1,
            }
        } else {
            VertexName::S {
                serial: v - self.s_start(),
            }
        }
    }
}

/// A built instance: the graph, its budget, and every index needed to read
/// gadget structure back out of it.
#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub graph: Graph,
    pub k: u64,
    pub k0: u64,
    pub formula: RegularFormula,
    pub layout: GadgetLayout,
    /// The free-edge clique cover, in construction order.
    pub free_cover: Vec<Vec<VertexId>>,
    /// Simplicial vertex attached to each free-cover clique.
    pub simplicial_of_clique: Vec<VertexId>,
}

fn bit_of(x: u32, gamma: u32) -> u8 {
    (x >> (gamma - 1) & 1) as u8
}

fn validate_regular(f: &RegularFormula) -> Result<(), ReductionError> {
    let n = f.num_vars();
    if !n.is_power_of_two() || n != 1 << f.ell {
        return Err(ReductionError::NotRegular(format!(
            "variable count {n} is not 2^{}",
            f.ell
        )));
    }
    if f.num_clauses() == 0 {
        return Err(ReductionError::EmptyFormula);
    }
    for (j, clause) in f.base.clauses.iter().enumerate() {
        if clause.len() != 3 {
            return Err(ReductionError::NotRegular(format!(
                "clause {j} has width {}",
                clause.len()
            )));
        }
        let vars: BTreeSet<u32> = clause.iter().map(|l| l.var).collect();
        if vars.len() != 3 {
            return Err(ReductionError::NotRegular(format!(
                "clause {j} repeats a variable"
            )));
        }
        if vars.contains(&0) {
            return Err(ReductionError::NotRegular(format!(
                "clause {j} mentions the dummy variable"
            )));
        }
    }
    Ok(())
}

/// Emits the clique cover of the free edges, family by family, in a fixed
/// order so that simplicial serials are reproducible:
/// 4 side-pair cliques, 24 guard-to-clause cliques, `36*ceil(log2 m)`
/// clause-pair cliques keyed on bits of the clause index, 6 cliques through
/// the true-pattern vertices `w_{0,0}`, 12 cliques catching each clause
/// vertex's own literal edge, and `24*ell` cliques keyed on bits of the
/// variable index.
pub fn build_free_cover(f: &RegularFormula, layout: &GadgetLayout) -> Vec<Vec<VertexId>> {
    let n = layout.n;
    let m = layout.m;
    let mut cover: Vec<Vec<VertexId>> = Vec::with_capacity(layout.free_clique_count as usize);

    // both w sides of one copy against both of the other
    for c in 0..2u8 {
        for c2 in 0..2u8 {
            let mut clique: Vec<VertexId> = (0..n).map(|i| layout.w_id(1, i, c)).collect();
            clique.extend((0..n).map(|i| layout.w_id(2, i, c2)));
            cover.push(clique);
        }
    }
    // one guard vertex with one clause vertex per gadget
    for a in 1..=2u8 {
        for b in 1..=2u8 {
            for alpha in 1..=3u8 {
                for beta in 1..=2u8 {
                    let mut clique = vec![layout.q_id(a, b)];
                    clique.extend((0..m).map(|j| layout.p_id(j, alpha, beta)));
                    cover.push(clique);
                }
            }
        }
    }
    // edges between clause gadgets, keyed on bits of the clause index
    for gamma in 1..=ceil_log2(m) {
        for alpha in 1..=3u8 {
            for beta in 1..=2u8 {
                for alpha2 in 1..=3u8 {
                    for beta2 in 1..=2u8 {
                        let clique: Vec<VertexId> = (0..m)
                            .map(|j| {
                                if bit_of(j, gamma) == 0 {
                                    layout.p_id(j, alpha, beta)
                                } else {
                                    layout.p_id(j, alpha2, beta2)
                                }
                            })
                            .collect();
                        cover.push(clique);
                    }
                }
            }
        }
    }
    // edges from the true-pattern vertices w_{0,0}
    for alpha in 1..=3u8 {
        for beta in 1..=2u8 {
            let mut clique = vec![layout.w_id(1, 0, 0), layout.w_id(2, 0, 0)];
            clique.extend((0..m).map(|j| layout.p_id(j, alpha, beta)));
            cover.push(clique);
        }
    }
    // each clause vertex with the w vertices encoding its own literal value
    for alpha in 1..=3u8 {
        for beta in 1..=2u8 {
            for c in 0..2u8 {
                let mut clique: Vec<VertexId> = Vec::new();
                for copy in 1..=2u8 {
                    clique.extend((1..n).map(|i| layout.w_id(copy, i, c)));
                }
                for j in 0..m {
                    if f.literal(j as usize, alpha).1 == c {
                        clique.push(layout.p_id(j, alpha, beta));
                    }
                }
                cover.push(clique);
            }
        }
    }
    // remaining clause-to-w edges, keyed on bits of the variable index
    for gamma in 1..=layout.ell {
        for alpha in 1..=3u8 {
            for beta in 1..=2u8 {
                for c in 0..2u8 {
                    for c2 in 0..2u8 {
                        let mut clique: Vec<VertexId> = Vec::new();
                        for copy in 1..=2u8 {
                            for i in 1..n {
                                if bit_of(i, gamma) == c2 {
                                    clique.push(layout.w_id(copy, i, c));
                                }
                            }
                        }
                        for j in 0..m {
                            let (var, _) = f.literal(j as usize, alpha);
                            if bit_of(var, gamma) == 1 - c2 {
                                clique.push(layout.p_id(j, alpha, beta));
                            }
                        }
                        cover.push(clique);
                    }
                }
            }
        }
    }
    debug_assert_eq!(cover.len() as u64, free_cover_size(layout.ell, m));
    for clique in cover.iter_mut() {
        clique.sort_unstable();
    }
    cover
}

/// Builds the full instance for a regularized formula.
pub fn reduce(f: &RegularFormula) -> Result<ReductionInstance, ReductionError> {
    validate_regular(f)?;
    let n = f.num_vars();
    let m = f.num_clauses() as u32;
    let ell = f.ell;
    let layout = GadgetLayout::new(n, m, ell);
    let free_cover = build_free_cover(f, &layout);
    let (k0, k) = budget(ell, m);

    let mut b = GraphBuilder::new(layout.vertex_count());
    for v in 0..layout.vertex_count() {
        b.set_name(v, layout.name_of(v));
    }

    // assignment gadgets: within a copy, same-side edges are free, opposite
    // sides connect except across a removed matching pair, importantly
    for copy in 1..=2u8 {
        for a in 0..2 * n {
            for b2 in (a + 1)..2 * n {
                let (ia, ca) = (a / 2, (a % 2) as u8);
                let (ib, cb) = (b2 / 2, (b2 % 2) as u8);
                if ia == ib {
                    continue;
                }
                let class = if ca == cb { EdgeClass::Free } else { EdgeClass::Imp };
                b.add_edge(layout.w_id(copy, ia, ca), layout.w_id(copy, ib, cb), class)?;
            }
        }
        for gamma in 1..ell {
            for i in 0..n {
                for c in 0..2u8 {
                    b.add_edge(layout.u_id(copy, gamma), layout.w_id(copy, i, c), EdgeClass::Imp)?;
                }
            }
        }
    }
    // complete bipartite between the two w blocks
    for i in 0..n {
        for c in 0..2u8 {
            for i2 in 0..n {
                for c2 in 0..2u8 {
                    b.add_edge(layout.w_id(1, i, c), layout.w_id(2, i2, c2), EdgeClass::Free)?;
                }
            }
        }
    }
    // clause gadget matchings and the guard matching
    for j in 0..m {
        for alpha in 1..=3u8 {
            b.add_edge(
                layout.p_id(j, alpha, 1),
                layout.p_id(j, alpha, 2),
                EdgeClass::Imp,
            )?;
        }
    }
    b.add_edge(layout.q_id(1, 1), layout.q_id(1, 2), EdgeClass::Imp)?;
    b.add_edge(layout.q_id(2, 1), layout.q_id(2, 2), EdgeClass::Imp)?;
    // guard vertices see every clause vertex
    for a in 1..=2u8 {
        for b2 in 1..=2u8 {
            for j in 0..m {
                for alpha in 1..=3u8 {
                    for beta in 1..=2u8 {
                        b.add_edge(
                            layout.q_id(a, b2),
                            layout.p_id(j, alpha, beta),
                            EdgeClass::Free,
                        )?;
                    }
                }
            }
        }
    }
    // distinct clause gadgets are completely joined
    for j in 0..m {
        for j2 in (j + 1)..m {
            for alpha in 1..=3u8 {
                for beta in 1..=2u8 {
                    for alpha2 in 1..=3u8 {
                        for beta2 in 1..=2u8 {
                            b.add_edge(
                                layout.p_id(j, alpha, beta),
                                layout.p_id(j2, alpha2, beta2),
                                EdgeClass::Free,
                            )?;
                        }
                    }
                }
            }
        }
    }
    // clause vertices reach all w vertices except w_{0,1} and the one
    // encoding the wrong value of their own literal
    for j in 0..m {
        for alpha in 1..=3u8 {
            let (var, value) = f.literal(j as usize, alpha);
            for beta in 1..=2u8 {
                let p = layout.p_id(j, alpha, beta);
                for copy in 1..=2u8 {
                    for i in 0..n {
                        for c in 0..2u8 {
                            if (i == 0 && c == 1) || (i == var && c == 1 - value) {
                                continue;
                            }
                            b.add_edge(p, layout.w_id(copy, i, c), EdgeClass::Free)?;
                        }
                    }
                }
            }
        }
    }
    // one simplicial vertex per free-cover clique
    for (t, clique) in free_cover.iter().enumerate() {
        for &v in clique {
            b.add_edge(layout.s_id(t as u32), v, EdgeClass::Free)?;
        }
    }

    let graph = b.build();
    debug_assert_eq!(
        u64::from(graph.vertex_count()),
        2 * (2 * u64::from(n) + u64::from(ell) - 1)
            + 6 * u64::from(m)
            + 4
            + free_cover_size(ell, m)
    );
    debug_assert_eq!(k, k0 + free_cover.len() as u64);

    let simplicial_of_clique = (0..free_cover.len())
        .map(|t| layout.s_id(t as u32))
        .collect();
    Ok(ReductionInstance {
        graph,
        k,
        k0,
        formula: f.clone(),
        layout,
        free_cover,
        simplicial_of_clique,
    })
}

/// Serializes an instance in the graph text format, with the budget in the
/// header and the original variable count in a metadata comment.
pub fn write_instance(inst: &ReductionInstance) -> String {
    let mut out = format!("c norig {}\n", inst.formula.orig_map.len());
    out.push_str(&write_graph(&inst.graph, Some(inst.k)));
    out
}

/// Reads an instance back, reconstructing layout, formula and free cover
/// from the vertex names and adjacencies. Without a `c norig` comment the
/// original variable count is taken to be the largest used first-half index.
pub fn read_instance(text: &str) -> Result<ReductionInstance, ReductionError> {
    let mut norig: Option<u32> = None;
    for line in text.lines() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() == 3 && toks[0] == "c" && toks[1] == "norig" {
            norig = toks[2].parse().ok();
        }
    }
    let (graph, k) = read_graph(text)?;
    let k = k.ok_or_else(|| ReductionError::BadInstance("missing budget in header".into()))?;
    if !graph.has_names() {
        return Err(ReductionError::BadInstance("vertices carry no gadget names".into()));
    }

    let mut w1 = 0u32;
    let mut p = 0u32;
    let mut s = 0u32;
    for v in 0..graph.vertex_count() {
        match graph.name(v) {
            Some(VertexName::W { copy: 1, .. }) => w1 += 1,
            Some(VertexName::P { .. }) => p += 1,
            Some(VertexName::S { .. }) => s += 1,
            Some(_) => {}
            None => {
                return Err(ReductionError::BadInstance(format!("vertex {v} is unnamed")));
            }
        }
    }
    if w1 == 0 || !w1.is_multiple_of(2) || !p.is_multiple_of(6) {
        return Err(ReductionError::BadInstance("gadget block sizes are off".into()));
    }
    let n = w1 / 2;
    let m = p / 6;
    if !n.is_power_of_two() || n < 4 || m == 0 {
        return Err(ReductionError::BadInstance("bad gadget dimensions".into()));
    }
    let ell = n.trailing_zeros();
    let layout = GadgetLayout::new(n, m, ell);
    if layout.vertex_count() != graph.vertex_count() || layout.free_clique_count != s {
        return Err(ReductionError::BadInstance("vertex count does not fit the layout".into()));
    }
    for v in 0..graph.vertex_count() {
        if graph.name(v) != Some(layout.name_of(v)) {
            return Err(ReductionError::BadInstance(format!(
                "vertex {v} is named {:?}, layout expects {:?}",
                graph.name(v),
                layout.name_of(v)
            )));
        }
    }
    if k != budget(ell, m).1 {
        return Err(ReductionError::BadInstance(format!(
            "header budget {k} does not match the layout budget {}",
            budget(ell, m).1
        )));
    }

    // literals from the two missing w neighbors of each clause vertex
    let mut clauses: Vec<Vec<Lit>> = Vec::with_capacity(m as usize);
    for j in 0..m {
        let mut clause = Vec::with_capacity(3);
        for alpha in 1..=3u8 {
            let pv = layout.p_id(j, alpha, 1);
            let mut missing: Vec<(u32, u8)> = Vec::new();
            for i in 0..n {
                for c in 0..2u8 {
                    if !graph.is_adjacent(pv, layout.w_id(1, i, c)) {
                        missing.push((i, c));
                    }
                }
            }
            if missing.len() != 2 || missing[0] != (0, 1) || missing[1].0 == 0 {
                return Err(ReductionError::BadInstance(format!(
                    "clause vertex p[{j},{alpha},1] misses {missing:?} in the first copy"
                )));
            }
            let (var, wrong) = missing[1];
            clause.push(Lit::new(var, wrong == 0));
        }
        clauses.push(clause);
    }

    let base = Formula::new(n, clauses);
    let mut used = vec![false; n as usize];
    for clause in &base.clauses {
        for lit in clause {
            used[lit.var as usize] = true;
        }
    }
    let dummy_indices: BTreeSet<u32> = (0..n).filter(|&v| !used[v as usize]).collect();
    let norig = norig.unwrap_or_else(|| {
        (1..n / 2).rev().find(|&v| used[v as usize]).unwrap_or(0)
    });
    let formula = RegularFormula {
        base,
        ell,
        dup_offset: n / 2,
        dummy_indices,
        orig_map: (0..norig).map(|i| i + 1).collect(),
    };

    let mut free_cover = Vec::with_capacity(s as usize);
    let mut simplicial_of_clique = Vec::with_capacity(s as usize);
    for t in 0..s {
        let sv = layout.s_id(t);
        let clique: Vec<VertexId> = graph.neighbors(sv).collect();
        free_cover.push(clique);
        simplicial_of_clique.push(sv);
    }

    Ok(ReductionInstance {
        graph,
        k,
        k0: budget(ell, m).0,
        formula,
        layout,
        free_cover,
        simplicial_of_clique,
    })
}
