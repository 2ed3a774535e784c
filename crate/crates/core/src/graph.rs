//! Immutable undirected graphs with classed edges, clique tests, cover
//! verification, and the plain-text graph/cover formats.
//!
//! Edges carry a class: `Imp` for edges the solver must treat as hard to
//! cover, `Free` for edges that a construction covers as a side effect.
//! Adjacency is stored as per-vertex bit rows so pair queries cost
//! O(|V|/64) regardless of degree.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Dense vertex identifier, always in `[0, vertex_count)`.
pub type VertexId = u32;

/// Largest vertex count [`read_graph`] accepts. The bit-row adjacency costs
/// `|V|^2/8` bytes, so untrusted files are held to desk scale.
pub const MAX_FILE_VERTICES: u32 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Imp,
    Free,
}

impl EdgeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeClass::Imp => "imp",
            EdgeClass::Free => "free",
        }
    }
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which edges a cover is required to span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeFilter {
    All,
    Imp,
    Free,
}

impl EdgeFilter {
    pub fn admits(self, class: EdgeClass) -> bool {
        match self {
            EdgeFilter::All => true,
            EdgeFilter::Imp => class == EdgeClass::Imp,
            EdgeFilter::Free => class == EdgeClass::Free,
        }
    }
}

/// Structured role of a vertex inside a reduction instance.
///
/// `copy` is 1 or 2 (the assignment gadget copy), `value`/`side`/`row`/`col`
/// follow the gadget indexing; `S` numbers simplicial vertices in the order
/// their cliques were emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexName {
    W { copy: u8, var: u32, value: u8 },
    U { copy: u8, gamma: u32 },
    P { clause: u32, lit: u8, side: u8 },
    Q { row: u8, col: u8 },
    S { serial: u32 },
}

impl fmt::Display for VertexName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexName::W { copy, var, value } => write!(f, "w {copy} {var} {value}"),
            VertexName::U { copy, gamma } => write!(f, "u {copy} {gamma}"),
            VertexName::P { clause, lit, side } => write!(f, "p {clause} {lit} {side}"),
            VertexName::Q { row, col } => write!(f, "q {row} {col}"),
            VertexName::S { serial } => write!(f, "s {serial}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range, graph has {count} vertices")]
    VertexOutOfRange { vertex: VertexId, count: u32 },
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Immutable undirected graph. Built once through [`GraphBuilder`], safe to
/// share between threads afterwards.
#[derive(Debug, Clone)]
pub struct Graph {
    vertex_count: u32,
    rows: Vec<Vec<u64>>,
    edges: Vec<(VertexId, VertexId, EdgeClass)>,
    names: Vec<Option<VertexName>>,
}

impl Graph {
    pub fn builder(vertex_count: u32) -> GraphBuilder {
        GraphBuilder::new(vertex_count)
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order: endpoints sorted within each pair, pairs
    /// sorted lexicographically.
    pub fn edges(&self) -> &[(VertexId, VertexId, EdgeClass)] {
        &self.edges
    }

    pub fn is_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        debug_assert!(u < self.vertex_count && v < self.vertex_count);
        self.rows[u as usize][(v / 64) as usize] >> (v % 64) & 1 == 1
    }

    /// Bit row of `v`: bit `w` set iff `vw` is an edge.
    pub fn adjacency_row(&self, v: VertexId) -> &[u64] {
        &self.rows[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> u32 {
        self.rows[v as usize].iter().map(|b| b.count_ones()).sum()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let row = &self.rows[v as usize];
        (0..self.vertex_count).filter(move |&w| row[(w / 64) as usize] >> (w % 64) & 1 == 1)
    }

    pub fn edge_class(&self, u: VertexId, v: VertexId) -> Option<EdgeClass> {
        let key = (u.min(v), u.max(v));
        self.edges
            .binary_search_by_key(&key, |&(a, b, _)| (a, b))
            .ok()
            .map(|i| self.edges[i].2)
    }

    pub fn has_names(&self) -> bool {
        !self.names.is_empty()
    }

    pub fn name(&self, v: VertexId) -> Option<VertexName> {
        self.names.get(v as usize).copied().flatten()
    }

    /// Graph on the same vertices keeping only edges of one class.
    pub fn class_subgraph(&self, class: EdgeClass) -> Graph {
        let mut b = GraphBuilder::new(self.vertex_count);
        for &(u, v, c) in &self.edges {
            if c == class {
                b.add_edge(u, v, c).expect("edges of a built graph are valid");
            }
        }
        for (v, name) in self.names.iter().enumerate() {
            if let Some(n) = *name {
                b.set_name(v as VertexId, n);
            }
        }
        b.build()
    }

    /// Induced subgraph on the id prefix `[0, count)`.
    pub fn prefix_subgraph(&self, count: u32) -> Graph {
        assert!(count <= self.vertex_count);
        let mut b = GraphBuilder::new(count);
        for &(u, v, c) in &self.edges {
            if u < count && v < count {
                b.add_edge(u, v, c).expect("edges of a built graph are valid");
            }
        }
        for (v, name) in self.names.iter().take(count as usize).enumerate() {
            if let Some(n) = *name {
                b.set_name(v as VertexId, n);
            }
        }
        b.build()
    }

    fn check_range(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            })
        }
    }
}

/// Single-owner construction phase for [`Graph`].
#[derive(Debug)]
pub struct GraphBuilder {
    vertex_count: u32,
    rows: Vec<Vec<u64>>,
    edges: Vec<(VertexId, VertexId, EdgeClass)>,
    names: Vec<Option<VertexName>>,
}

impl GraphBuilder {
    pub fn new(vertex_count: u32) -> Self {
        let blocks = (vertex_count as usize).div_ceil(64);
        GraphBuilder {
            vertex_count,
            rows: vec![vec![0u64; blocks]; vertex_count as usize],
            edges: Vec::new(),
            names: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, class: EdgeClass) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    count: self.vertex_count,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.rows[u as usize][(v / 64) as usize] >> (v % 64) & 1 == 1 {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.rows[u as usize][(v / 64) as usize] |= 1 << (v % 64);
        self.rows[v as usize][(u / 64) as usize] |= 1 << (u % 64);
        self.edges.push((u.min(v), u.max(v), class));
        Ok(())
    }

    pub fn set_name(&mut self, v: VertexId, name: VertexName) {
        if self.names.is_empty() {
            self.names = vec![None; self.vertex_count as usize];
        }
        self.names[v as usize] = Some(name);
    }

    pub fn build(mut self) -> Graph {
        self.edges.sort_unstable_by_key(|&(u, v, _)| (u, v));
        Graph {
            vertex_count: self.vertex_count,
            rows: self.rows,
            edges: self.edges,
            names: self.names,
        }
    }
}

/// A claimed clique cover: an ordered list of vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueCover {
    pub cliques: Vec<Vec<VertexId>>,
}

impl CliqueCover {
    pub fn new(cliques: Vec<Vec<VertexId>>) -> Self {
        CliqueCover { cliques }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }
}

/// True iff every pair of distinct vertices in `set` is adjacent in `g`.
/// Duplicate ids in `set` are collapsed; a singleton is trivially a clique.
pub fn is_clique(g: &Graph, set: &[VertexId]) -> Result<bool, GraphError> {
    let mut vs: Vec<VertexId> = set.to_vec();
    vs.sort_unstable();
    vs.dedup();
    for &v in &vs {
        g.check_range(v)?;
    }
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if !g.is_adjacent(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// First problem found while checking a cover, in check order: cliques are
/// examined in list order, then required edges in canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyClique { index: usize },
    VertexOutOfRange { index: usize, vertex: VertexId },
    NotAClique { index: usize, u: VertexId, v: VertexId },
    UncoveredEdge { u: VertexId, v: VertexId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::EmptyClique { index } => write!(f, "clique {index} is empty"),
            Violation::VertexOutOfRange { index, vertex } => {
                write!(f, "clique {index} mentions unknown vertex {vertex}")
            }
            Violation::NotAClique { index, u, v } => {
                write!(f, "clique {index} contains non-adjacent pair {u}-{v}")
            }
            Violation::UncoveredEdge { u, v } => write!(f, "edge {u}-{v} is uncovered"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoverReport {
    pub valid: bool,
    pub first_violation: Option<Violation>,
}

impl CoverReport {
    fn ok() -> Self {
        CoverReport {
            valid: true,
            first_violation: None,
        }
    }

    fn bad(v: Violation) -> Self {
        CoverReport {
            valid: false,
            first_violation: Some(v),
        }
    }
}

/// Checks that every member of `cover` is a clique of `g` and that every
/// edge admitted by `filter` lies inside at least one member. Violations are
/// reported, never thrown.
pub fn verify_cover(g: &Graph, cover: &CliqueCover, filter: EdgeFilter) -> CoverReport {
    let mut covered: HashSet<(VertexId, VertexId)> = HashSet::new();
    for (index, raw) in cover.cliques.iter().enumerate() {
        if raw.is_empty() {
            return CoverReport::bad(Violation::EmptyClique { index });
        }
        let mut vs = raw.clone();
        vs.sort_unstable();
        vs.dedup();
        if let Some(&vertex) = vs.iter().find(|&&v| v >= g.vertex_count()) {
            return CoverReport::bad(Violation::VertexOutOfRange { index, vertex });
        }
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !g.is_adjacent(u, v) {
                    return CoverReport::bad(Violation::NotAClique { index, u, v });
                }
                covered.insert((u, v));
            }
        }
    }
    for &(u, v, class) in g.edges() {
        if filter.admits(class) && !covered.contains(&(u, v)) {
            return CoverReport::bad(Violation::UncoveredEdge { u, v });
        }
    }
    CoverReport::ok()
}

// ---------------------------------------------------------------------------
// Text formats.
//
// Graph:  `p ecc <num_vertices> <num_edges> <k-or--1>` header, one
//         `v <id> <kind> <indices...>` line per named vertex, one
//         `e <id1> <id2> <imp|free>` line per edge, `c` comment lines.
// Cover:  one clique per line as space-separated vertex ids, `c` comments.
// ---------------------------------------------------------------------------

/// Renders `g` in the graph text format; `k` is the cover budget, written
/// as `-1` when absent.
pub fn write_graph(g: &Graph, k: Option<u64>) -> String {
    let mut out = String::new();
    let k_field = match k {
        Some(k) => k as i64,
        None => -1,
    };
    out.push_str(&format!(
        "p ecc {} {} {}\n",
        g.vertex_count(),
        g.edge_count(),
        k_field
    ));
    for v in 0..g.vertex_count() {
        if let Some(name) = g.name(v) {
            out.push_str(&format!("v {v} {name}\n"));
        }
    }
    for &(u, v, class) in g.edges() {
        out.push_str(&format!("e {u} {v} {class}\n"));
    }
    out
}

/// Parses the graph text format. Strict: the header counts must match, ids
/// must be in range, duplicate edges and self-loops are rejected.
pub fn read_graph(text: &str) -> Result<(Graph, Option<u64>), GraphError> {
    let mut builder: Option<GraphBuilder> = None;
    let mut k: Option<u64> = None;
    let mut declared_edges = 0usize;
    let mut seen_edges = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("p") => {
                if builder.is_some() {
                    return Err(parse_err(line_no, "duplicate header"));
                }
                if parts.next() != Some("ecc") {
                    return Err(parse_err(line_no, "expected `p ecc ...` header"));
                }
                let nv: u32 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(line_no, "bad vertex count"))?;
                if nv > MAX_FILE_VERTICES {
                    return Err(parse_err(
                        line_no,
                        format!("vertex count {nv} exceeds the file limit {MAX_FILE_VERTICES}"),
                    ));
                }
                declared_edges = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(line_no, "bad edge count"))?;
                let k_field: i64 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(line_no, "bad k field"))?;
                if k_field >= 0 {
                    k = Some(k_field as u64);
                } else if k_field != -1 {
                    return Err(parse_err(line_no, "k must be non-negative or -1"));
                }
                builder = Some(GraphBuilder::new(nv));
            }
            Some("v") => {
                let b = builder
                    .as_mut()
                    .ok_or_else(|| parse_err(line_no, "vertex line before header"))?;
                let id: VertexId = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(line_no, "bad vertex id"))?;
                if id >= b.vertex_count {
                    return Err(parse_err(line_no, format!("vertex id {id} out of range")));
                }
                let kind = parts
                    .next()
                    .ok_or_else(|| parse_err(line_no, "missing vertex kind"))?;
                let mut next_u32 = |what: &str| -> Result<u32, GraphError> {
                    parts
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| parse_err(line_no, format!("bad {what}")))
                };
                let name = match kind {
                    "w" => VertexName::W {
                        copy: next_u32("copy")? as u8,
                        var: next_u32("variable index")?,
                        value: next_u32("value")? as u8,
                    },
                    "u" => VertexName::U {
                        copy: next_u32("copy")? as u8,
                        gamma: next_u32("gamma")?,
                    },
                    "p" => VertexName::P {
                        clause: next_u32("clause index")?,
                        lit: next_u32("literal index")? as u8,
                        side: next_u32("side")? as u8,
                    },
                    "q" => VertexName::Q {
                        row: next_u32("row")? as u8,
                        col: next_u32("col")? as u8,
                    },
                    "s" => VertexName::S {
                        serial: next_u32("serial")?,
                    },
                    other => {
                        return Err(parse_err(line_no, format!("unknown vertex kind `{other}`")))
                    }
                };
                b.set_name(id, name);
            }
            Some("e") => {
                let b = builder
                    .as_mut()
                    .ok_or_else(|| parse_err(line_no, "edge line before header"))?;
                let u: VertexId = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(line_no, "bad endpoint"))?;
                let v: VertexId = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(line_no, "bad endpoint"))?;
                let class = match parts.next() {
                    Some("imp") => EdgeClass::Imp,
                    Some("free") => EdgeClass::Free,
                    other => {
                        return Err(parse_err(
                            line_no,
                            format!("expected edge class imp|free, got {other:?}"),
                        ))
                    }
                };
                b.add_edge(u, v, class)
                    .map_err(|e| parse_err(line_no, e.to_string()))?;
                seen_edges += 1;
            }
            Some(other) => {
                return Err(parse_err(line_no, format!("unknown record `{other}`")));
            }
            None => unreachable!(),
        }
    }
    let builder = builder.ok_or_else(|| parse_err(0, "missing `p ecc` header"))?;
    if seen_edges != declared_edges {
        return Err(parse_err(
            0,
            format!("header declares {declared_edges} edges, file has {seen_edges}"),
        ));
    }
    Ok((builder.build(), k))
}

pub fn write_cover(cover: &CliqueCover) -> String {
    let mut out = String::new();
    for clique in &cover.cliques {
        let line: Vec<String> = clique.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_cover(text: &str) -> Result<CliqueCover, GraphError> {
    let mut cliques = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut clique = Vec::new();
        for tok in line.split_whitespace() {
            let v: VertexId = tok
                .parse()
                .map_err(|_| parse_err(idx + 1, format!("bad vertex id `{tok}`")))?;
            clique.push(v);
        }
        cliques.push(clique);
    }
    Ok(CliqueCover::new(cliques))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocktail::build_cocktail;

    fn h(ell: u32) -> Graph {
        build_cocktail(ell).unwrap().into_graph()
    }

    #[test]
    fn singleton_is_clique() {
        let g = h(2);
        assert!(is_clique(&g, &[3]).unwrap());
    }

    #[test]
    fn removed_matching_pair_is_not_clique() {
        // partners w_{0,0}, w_{0,1} are vertices 0 and 1
        let g = h(2);
        assert!(!is_clique(&g, &[0, 1]).unwrap());
    }

    #[test]
    fn out_of_range_vertex_is_input_error() {
        let g = h(2);
        assert!(matches!(
            is_clique(&g, &[0, 9]),
            Err(GraphError::VertexOutOfRange { vertex: 9, .. })
        ));
    }

    #[test]
    fn one_endpoint_per_pair_sets_are_cliques_in_h3() {
        // exhaustive over all 16 selections on the 8-vertex graph
        let g = h(3);
        let mut count = 0;
        for mask in 0u32..16 {
            let set: Vec<VertexId> = (0..4).map(|t| 2 * t + (mask >> t & 1)).collect();
            assert!(is_clique(&g, &set).unwrap(), "selection {mask:04b}");
            count += 1;
        }
        assert_eq!(count, 16);
    }

    #[test]
    fn clique_test_is_hereditary() {
        let g = h(3);
        let set = vec![0, 2, 4, 6];
        assert!(is_clique(&g, &set).unwrap());
        for drop in 0..set.len() {
            let mut sub = set.clone();
            sub.remove(drop);
            assert!(is_clique(&g, &sub).unwrap());
        }
    }

    #[test]
    fn empty_cover_of_edgeless_graph_is_valid() {
        let g = GraphBuilder::new(3).build();
        let report = verify_cover(&g, &CliqueCover::new(vec![]), EdgeFilter::All);
        assert!(report.valid);
    }

    #[test]
    fn four_edge_cover_of_h2_is_valid() {
        let g = h(2);
        let cover = CliqueCover::new(vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
        assert!(verify_cover(&g, &cover, EdgeFilter::All).valid);
    }

    #[test]
    fn dropping_a_face_of_h3_uncovers_an_edge() {
        let g = h(3);
        // six faces of the cube as a twin cover, built from bit labels
        let full = crate::cocktail::build_cocktail(3).unwrap();
        let seed = vec![crate::cocktail::TwinPair::new(
            vec![0, 2, 4, 6],
            vec![1, 3, 5, 7],
        )];
        let cover = crate::cocktail::extend_twin_cover(&full, &seed).unwrap();
        let mut cliques: Vec<Vec<VertexId>> = Vec::new();
        for pair in &cover.pairs {
            cliques.push(pair.side0.clone());
            cliques.push(pair.side1.clone());
        }
        assert_eq!(cliques.len(), 6);
        assert!(verify_cover(&g, &CliqueCover::new(cliques.clone()), EdgeFilter::All).valid);
        for skip in 0..cliques.len() {
            let partial: Vec<Vec<VertexId>> = cliques
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, c)| c.clone())
                .collect();
            let report = verify_cover(&g, &CliqueCover::new(partial), EdgeFilter::All);
            assert!(!report.valid);
            assert!(matches!(
                report.first_violation,
                Some(Violation::UncoveredEdge { .. })
            ));
        }
    }

    #[test]
    fn adding_cliques_keeps_a_valid_cover_valid() {
        let g = h(2);
        let mut cliques = vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]];
        assert!(verify_cover(&g, &CliqueCover::new(cliques.clone()), EdgeFilter::All).valid);
        cliques.push(vec![2]);
        cliques.push(vec![1, 3]);
        assert!(verify_cover(&g, &CliqueCover::new(cliques), EdgeFilter::All).valid);
    }

    #[test]
    fn per_edge_cover_is_always_valid() {
        let g = h(3);
        let cliques: Vec<Vec<VertexId>> = g.edges().iter().map(|&(u, v, _)| vec![u, v]).collect();
        assert_eq!(cliques.len(), 24);
        assert!(verify_cover(&g, &CliqueCover::new(cliques), EdgeFilter::All).valid);
    }

    #[test]
    fn graph_text_round_trip() {
        let mut b = GraphBuilder::new(5);
        b.add_edge(0, 1, EdgeClass::Imp).unwrap();
        b.add_edge(1, 2, EdgeClass::Free).unwrap();
        b.add_edge(4, 0, EdgeClass::Imp).unwrap();
        b.set_name(0, VertexName::W { copy: 1, var: 0, value: 1 });
        b.set_name(4, VertexName::S { serial: 7 });
        let g = b.build();
        let text = write_graph(&g, Some(12));
        let (g2, k) = read_graph(&text).unwrap();
        assert_eq!(k, Some(12));
        assert_eq!(g2.vertex_count(), 5);
        assert_eq!(g2.edges(), g.edges());
        assert_eq!(g2.name(0), g.name(0));
        assert_eq!(g2.name(4), g.name(4));
        assert_eq!(g2.name(2), None);
    }

    #[test]
    fn duplicate_edge_in_file_is_a_parse_error() {
        let text = "p ecc 3 2 -1\ne 0 1 imp\ne 1 0 free\n";
        assert!(matches!(read_graph(text), Err(GraphError::Parse { .. })));
    }

    #[test]
    fn edge_count_mismatch_is_a_parse_error() {
        let text = "p ecc 3 2 -1\ne 0 1 imp\n";
        assert!(read_graph(text).is_err());
    }

    #[test]
    fn cover_text_round_trip() {
        let cover = CliqueCover::new(vec![vec![0, 2, 5], vec![1], vec![3, 4]]);
        let text = write_cover(&cover);
        let back = read_cover(&text).unwrap();
        assert_eq!(back, cover);
    }
}
