//! Runnable end-to-end checks over seeded random corpora.
//!
//! Each check exercises one advertised guarantee of the crate at desk scale
//! and reports a one-line summary. The `acceptance` integration test runs
//! them all with a time budget per check, and `eccforge selftest` runs the
//! same list from the command line. Corpora come from a tiny splitmix64
//! generator so results are reproducible from the seed alone, with no
//! dependence on an external RNG crate.

use std::time::{Duration, Instant};

use crate::cnf::{
    brute_force_sat, evaluate, normalize, regularize, Formula, Lit, RegularFormula,
};
use crate::cocktail::{
    build_cocktail, enumerate_max_cliques_cocktail, extend_twin_cover, gregory_pullman_opt,
    TwinPair,
};
use crate::graph::{
    is_clique, verify_cover, CliqueCover, EdgeClass, EdgeFilter, Graph, GraphBuilder, VertexId,
};
use crate::reduction::{budget, ceil_log2, free_cover_size, reduce, ReductionInstance};
use crate::solver::{kernelize, min_cover, min_cover_oracle, solve_exact, SolveOptions};
use crate::transfer::{assignment_from_cover, cover_from_assignment};

pub const DEFAULT_SEED: u64 = 0x5eed_ecc0;

/// Deterministic splitmix64 stream.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    pub fn chance(&mut self, percent: u64) -> bool {
        self.below(100) < percent
    }
}

/// Random graph on `n` vertices, each edge present with the given
/// percentage probability.
pub fn random_graph(rng: &mut SplitMix64, n: u32, edge_percent: u64) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.chance(edge_percent) {
                b.add_edge(u, v, EdgeClass::Imp).expect("fresh edge");
            }
        }
    }
    b.build()
}

fn random_clause(rng: &mut SplitMix64, num_vars: u32, width: usize) -> Vec<Lit> {
    let mut vars: Vec<u32> = Vec::with_capacity(width);
    while vars.len() < width {
        let v = rng.below(u64::from(num_vars)) as u32;
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort_unstable();
    vars.into_iter()
        .map(|v| Lit::new(v, rng.chance(50)))
        .collect()
}

/// Random formula with distinct-variable clauses of width 3; already in the
/// shape [`normalize`] produces, up to clause duplicates.
pub fn random_3cnf(rng: &mut SplitMix64, num_vars: u32, num_clauses: usize) -> Formula {
    let mut clauses = Vec::with_capacity(num_clauses);
    let mut attempts = 0;
    while clauses.len() < num_clauses && attempts < num_clauses * 50 {
        attempts += 1;
        let clause = random_clause(rng, num_vars, 3);
        if !clauses.contains(&clause) {
            clauses.push(clause);
        }
    }
    Formula::new(num_vars, clauses)
}

/// Raw formula mixing in occasional width-1 and width-2 clauses so the
/// normalization path gets exercised by the pipeline corpora.
pub fn random_raw_formula(rng: &mut SplitMix64, num_vars: u32, num_clauses: usize) -> Formula {
    let mut clauses = Vec::with_capacity(num_clauses);
    for _ in 0..num_clauses {
        let width = if rng.chance(8) {
            1
        } else if rng.chance(12) {
            2
        } else {
            3
        };
        clauses.push(random_clause(rng, num_vars, width.min(num_vars as usize)));
    }
    Formula::new(num_vars, clauses)
}

fn pipeline_instance(raw: &Formula) -> Result<(RegularFormula, ReductionInstance), String> {
    let norm = normalize(raw).map_err(|e| format!("normalize failed: {e}"))?;
    if norm.clauses.is_empty() {
        return Err("corpus formula normalized to nothing".into());
    }
    let reg = regularize(&norm);
    let inst = reduce(&reg).map_err(|e| format!("reduce failed: {e}"))?;
    Ok((reg, inst))
}

fn instance_corpus(seed: u64, count: usize) -> Result<Vec<(Formula, ReductionInstance)>, String> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let vars = rng.range(3, 10) as u32;
        let clauses = rng.range(3, 20) as usize;
        let raw = random_raw_formula(&mut rng, vars, clauses);
        match pipeline_instance(&raw) {
            Ok((_, inst)) => out.push((raw, inst)),
            Err(_) => continue,
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// The checks.
// ---------------------------------------------------------------------------

/// Optimum cover sizes of the two smallest interesting cocktail party
/// graphs, from the oracle, the branch-and-bound solver, and the binomial
/// formula, all agreeing on 4 and 5.
pub fn check_cocktail_optima(_seed: u64) -> Result<String, String> {
    for (ell, expected) in [(2u32, 4usize), (3, 5)] {
        let g = build_cocktail(ell).map_err(|e| e.to_string())?.into_graph();
        let (oracle_size, oracle_cover) = min_cover_oracle(&g).map_err(|e| e.to_string())?;
        if oracle_size != expected {
            return Err(format!("oracle found {oracle_size} for ell={ell}, expected {expected}"));
        }
        if !verify_cover(&g, &oracle_cover, EdgeFilter::All).valid {
            return Err(format!("oracle cover for ell={ell} does not verify"));
        }
        let (solver_size, solver_cover) =
            min_cover(&g, &SolveOptions::default()).map_err(|e| e.to_string())?;
        if solver_size != expected {
            return Err(format!("solver found {solver_size} for ell={ell}, expected {expected}"));
        }
        if !verify_cover(&g, &solver_cover, EdgeFilter::All).valid {
            return Err(format!("solver cover for ell={ell} does not verify"));
        }
        let formula = gregory_pullman_opt(1 << (ell - 1)).map_err(|e| e.to_string())?;
        if formula as usize != expected {
            return Err(format!("formula gives {formula} for ell={ell}, expected {expected}"));
        }
    }
    Ok("optimum is 4 for ell=2 and 5 for ell=3 by oracle, solver and formula".into())
}

fn random_max_clique(rng: &mut SplitMix64, pairs: u32) -> Vec<VertexId> {
    (0..pairs)
        .map(|t| 2 * t + u32::from(rng.chance(50)))
        .collect()
}

fn complement_clique(clique: &[VertexId]) -> Vec<VertexId> {
    clique.iter().map(|&v| v ^ 1).collect()
}

/// Twin cover extension on random admissible seeds for every `ell` up to 6:
/// the result has exactly `ell` pairs, starts with the seed, and its `2*ell`
/// cliques cover the graph.
pub fn check_twin_cover_extension(seed: u64) -> Result<String, String> {
    let mut rng = SplitMix64::new(seed ^ 0x71f1);
    let mut runs = 0;
    for ell in 1..=6u32 {
        let g = build_cocktail(ell).map_err(|e| e.to_string())?;
        let pairs = g.pair_count();
        for delta in 1..=2u32.min(ell) {
            for _ in 0..50 {
                let first = random_max_clique(&mut rng, pairs);
                let mut seed_pairs =
                    vec![TwinPair::new(first.clone(), complement_clique(&first))];
                if delta == 2 {
                    // agree with the first clique on exactly half of the pairs
                    let mut idx: Vec<usize> = (0..pairs as usize).collect();
                    for i in (1..idx.len()).rev() {
                        idx.swap(i, rng.below(i as u64 + 1) as usize);
                    }
                    let mut second = first.clone();
                    for &t in idx.iter().take(pairs as usize / 2) {
                        second[t] ^= 1;
                    }
                    second.sort_unstable();
                    seed_pairs.push(TwinPair::new(second.clone(), complement_clique(&second)));
                }
                let cover = extend_twin_cover(&g, &seed_pairs).map_err(|e| e.to_string())?;
                if cover.pairs.len() != ell as usize {
                    return Err(format!("expected {ell} pairs, got {}", cover.pairs.len()));
                }
                if cover.pairs[..seed_pairs.len()] != seed_pairs[..] {
                    return Err("seed pairs were not returned verbatim".into());
                }
                let flat = cover.flatten();
                if flat.len() != 2 * ell as usize {
                    return Err(format!("cover has {} cliques, expected {}", flat.len(), 2 * ell));
                }
                let report = verify_cover(g.graph(), &flat, EdgeFilter::All);
                if !report.valid {
                    return Err(format!(
                        "ell={ell} delta={delta}: {:?}",
                        report.first_violation
                    ));
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} seeded extensions returned covering twin covers"))
}

struct CliqueTable {
    vertex_masks: Vec<u32>,
    edge_masks: Vec<u32>,
    full_edges: u32,
}

fn clique_table(g: &Graph) -> CliqueTable {
    let n = g.vertex_count();
    let edges: Vec<(u32, u32)> = g.edges().iter().map(|&(u, v, _)| (u, v)).collect();
    let mut vertex_masks = Vec::new();
    let mut edge_masks = Vec::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<u32> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let ok = members.iter().enumerate().all(|(i, &u)| {
            members[i + 1..].iter().all(|&v| g.is_adjacent(u, v))
        });
        if !ok {
            continue;
        }
        let mut em = 0u32;
        for (e, &(u, v)) in edges.iter().enumerate() {
            if mask >> u & 1 == 1 && mask >> v & 1 == 1 {
                em |= 1 << e;
            }
        }
        vertex_masks.push(mask);
        edge_masks.push(em);
    }
    CliqueTable {
        vertex_masks,
        edge_masks,
        full_edges: if edges.is_empty() { 0 } else { (1u32 << edges.len()) - 1 },
    }
}

/// Exhaustive confirmation, for `ell` in {2, 3}, that a cover holding
/// `ell - 1` twin pairs needs at least `2*ell` cliques, and that any such
/// cover of exactly `2*ell` cliques completes the twins.
pub fn check_last_twin_exhaustive(_seed: u64) -> Result<String, String> {
    let mut inspected = 0u64;
    for ell in 2..=3u32 {
        let cg = build_cocktail(ell).map_err(|e| e.to_string())?;
        let g = cg.graph();
        let n = g.vertex_count();
        let full_vertices = (1u32 << n) - 1;
        let table = clique_table(g);
        let clique_count = table.vertex_masks.len();
        let edge_mask_of = |vmask: u32| -> u32 {
            let idx = table.vertex_masks.iter().position(|&m| m == vmask).unwrap();
            table.edge_masks[idx]
        };

        // unordered twin pairs as vertex masks
        let mut twin_pairs: Vec<(u32, u32)> = Vec::new();
        for clique in enumerate_max_cliques_cocktail(&cg).map_err(|e| e.to_string())? {
            let mask: u32 = clique.iter().map(|&v| 1u32 << v).sum();
            let comp = full_vertices ^ mask;
            if mask < comp {
                twin_pairs.push((mask, comp));
            }
        }

        // all (ell-1)-subsets of distinct twin pairs
        let want = ell as usize - 1;
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let mut pick = vec![0usize; want];
        fn gen(subsets: &mut Vec<Vec<usize>>, pick: &mut Vec<usize>, pos: usize, from: usize, total: usize) {
            if pos == pick.len() {
                subsets.push(pick.clone());
                return;
            }
            for i in from..total {
                pick[pos] = i;
                gen(subsets, pick, pos + 1, i + 1, total);
            }
        }
        gen(&mut subsets, &mut pick, 0, 0, twin_pairs.len());

        for subset in &subsets {
            let mut seed_vmasks: Vec<u32> = Vec::new();
            let mut base = 0u32;
            for &t in subset {
                let (a, b) = twin_pairs[t];
                seed_vmasks.push(a);
                seed_vmasks.push(b);
                base |= edge_mask_of(a) | edge_mask_of(b);
            }
            if base == table.full_edges {
                return Err(format!("ell={ell}: {want} twin pairs covered everything alone"));
            }
            for c in 0..clique_count {
                if base | table.edge_masks[c] == table.full_edges {
                    return Err(format!(
                        "ell={ell}: a cover of size {} exists, below the 2*ell bound",
                        2 * want + 1
                    ));
                }
            }
            for c1 in 0..clique_count {
                if seed_vmasks.contains(&table.vertex_masks[c1]) {
                    continue;
                }
                for c2 in (c1 + 1)..clique_count {
                    if seed_vmasks.contains(&table.vertex_masks[c2]) {
                        continue;
                    }
                    inspected += 1;
                    if base | table.edge_masks[c1] | table.edge_masks[c2] == table.full_edges {
                        let v1 = table.vertex_masks[c1];
                        let v2 = table.vertex_masks[c2];
                        if v1 ^ v2 != full_vertices {
                            return Err(format!(
                                "ell={ell}: size-{} cover whose extra cliques are not twins",
                                2 * ell
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{inspected} completion candidates inspected, twins forced every time"))
}

/// The emitted free cover has the advertised size, consists of cliques of
/// the free subgraph, covers all free edges among gadget vertices, and
/// touches no important edge.
pub fn check_free_cover_families(seed: u64) -> Result<String, String> {
    let corpus = instance_corpus(seed ^ 0xf4ee, 20)?;
    for (_, inst) in &corpus {
        let expected = free_cover_size(inst.layout.ell, inst.layout.m);
        if inst.free_cover.len() as u64 != expected {
            return Err(format!(
                "instance (ell={}, m={}) emitted {} cliques, formula says {expected}",
                inst.layout.ell,
                inst.layout.m,
                inst.free_cover.len()
            ));
        }
        let core = inst.graph.prefix_subgraph(inst.layout.s_start());
        let free = core.class_subgraph(EdgeClass::Free);
        for clique in &inst.free_cover {
            if !is_clique(&free, clique).map_err(|e| e.to_string())? {
                return Err("free-cover member is not a clique of the free subgraph".into());
            }
        }
        let report = verify_cover(
            &core,
            &CliqueCover::new(inst.free_cover.clone()),
            EdgeFilter::Free,
        );
        if !report.valid {
            return Err(format!("free edges uncovered: {:?}", report.first_violation));
        }
    }
    Ok(format!("{} pipeline instances, all free covers exact and clean", corpus.len()))
}

fn formula_corpus(seed: u64, count: usize) -> Vec<Formula> {
    let mut rng = SplitMix64::new(seed ^ 0xc0de);
    (0..count)
        .map(|_| {
            let vars = rng.range(4, 8) as u32;
            let clauses = rng.range(4, 20) as usize;
            let raw = random_3cnf(&mut rng, vars, clauses);
            normalize(&raw).expect("width-3 distinct-var clauses normalize cleanly")
        })
        .collect()
}

/// For every satisfiable corpus formula, the forward translation returns
/// exactly `k` cliques and the cover verifies on all edges.
pub fn check_assignment_to_cover(seed: u64) -> Result<String, String> {
    let corpus = formula_corpus(seed, 100);
    let mut satisfiable = 0;
    for norm in &corpus {
        let Some(witness) = brute_force_sat(norm).map_err(|e| e.to_string())? else {
            continue;
        };
        satisfiable += 1;
        let reg = regularize(norm);
        let inst = reduce(&reg).map_err(|e| e.to_string())?;
        let phi = reg.lift_assignment(&witness).map_err(|e| e.to_string())?;
        let cover = cover_from_assignment(&inst, &phi).map_err(|e| e.to_string())?;
        if cover.len() as u64 != inst.k {
            return Err(format!("cover has {} cliques, budget is {}", cover.len(), inst.k));
        }
        let report = verify_cover(&inst.graph, &cover, EdgeFilter::All);
        if !report.valid {
            return Err(format!("cover invalid: {:?}", report.first_violation));
        }
    }
    Ok(format!(
        "{satisfiable} of {} corpus formulas satisfiable, every cover exact and valid",
        corpus.len()
    ))
}

/// Round trip over the same corpus: extracting from the constructed cover
/// yields an assignment satisfying the regular formula and, projected back,
/// the original one.
pub fn check_cover_to_assignment(seed: u64) -> Result<String, String> {
    let corpus = formula_corpus(seed, 100);
    let mut rounds = 0;
    for norm in &corpus {
        let Some(witness) = brute_force_sat(norm).map_err(|e| e.to_string())? else {
            continue;
        };
        let reg = regularize(norm);
        let inst = reduce(&reg).map_err(|e| e.to_string())?;
        let phi = reg.lift_assignment(&witness).map_err(|e| e.to_string())?;
        let cover = cover_from_assignment(&inst, &phi).map_err(|e| e.to_string())?;
        let extracted = assignment_from_cover(&inst, &cover).map_err(|e| e.to_string())?;
        if !evaluate(&reg.base, &extracted).map_err(|e| e.to_string())? {
            return Err("extracted assignment does not satisfy the regular formula".into());
        }
        let original = reg.project_original(&extracted);
        if !evaluate(norm, &original).map_err(|e| e.to_string())? {
            return Err("projected assignment does not satisfy the input formula".into());
        }
        rounds += 1;
    }
    Ok(format!("{rounds} round trips recovered satisfying assignments"))
}

/// On seeded random graphs: branch-and-bound minimum equals the oracle
/// minimum, and preprocessing preserves the decision answer around the
/// optimum.
pub fn check_solver_oracle_kernel(seed: u64) -> Result<String, String> {
    let mut rng = SplitMix64::new(seed ^ 0x50e1);
    let opts = SolveOptions::default();
    let mut solved = 0;
    for case in 0..200u32 {
        let n = rng.range(4, 9) as u32;
        let percent = [25, 40, 50, 65, 80][rng.below(5) as usize];
        let g = random_graph(&mut rng, n, percent);
        let (oracle_size, _) = min_cover_oracle(&g).map_err(|e| format!("case {case}: {e}"))?;
        let (solver_size, solver_cover) =
            min_cover(&g, &opts).map_err(|e| format!("case {case}: {e}"))?;
        if oracle_size != solver_size {
            return Err(format!(
                "case {case}: oracle says {oracle_size}, solver says {solver_size}"
            ));
        }
        if !verify_cover(&g, &solver_cover, EdgeFilter::All).valid {
            return Err(format!("case {case}: solver cover does not verify"));
        }
        for k in [oracle_size.saturating_sub(1), oracle_size] {
            let direct = solve_exact(&g, k)
                .map_err(|e| format!("case {case}: {e}"))?
                .is_some();
            let kernel = kernelize(&g, k as u64);
            let via_kernel = if kernel.answer_is_no() {
                false
            } else {
                match solve_exact(&kernel.reduced, kernel.k_reduced as usize)
                    .map_err(|e| format!("case {case}: {e}"))?
                {
                    Some(reduced_cover) => {
                        let lifted = kernel.lift_cover(&reduced_cover);
                        if !verify_cover(&g, &lifted, EdgeFilter::All).valid {
                            return Err(format!("case {case}: lifted kernel cover is invalid"));
                        }
                        if lifted.len() > k {
                            return Err(format!("case {case}: lifted cover exceeds the budget"));
                        }
                        true
                    }
                    None => false,
                }
            };
            if direct != via_kernel {
                return Err(format!(
                    "case {case}: k={k} direct={direct} via_kernel={via_kernel}"
                ));
            }
        }
        solved += 1;
    }
    Ok(format!("{solved} random graphs, minima agree and preprocessing is answer-safe"))
}

/// The reduction rules never touch a cocktail party graph.
pub fn check_cocktail_kernel_immunity(_seed: u64) -> Result<String, String> {
    for ell in 2..=4u32 {
        let g = build_cocktail(ell).map_err(|e| e.to_string())?.into_graph();
        let result = kernelize(&g, 2 * u64::from(ell));
        if result.rule_applications() != 0 {
            return Err(format!(
                "ell={ell}: {} rule applications, expected none",
                result.rule_applications()
            ));
        }
        if result.reduced.vertex_count() != g.vertex_count()
            || result.reduced.edge_count() != g.edge_count()
        {
            return Err(format!("ell={ell}: graph changed under kernelization"));
        }
    }
    Ok("no rule fires on the cocktail party graphs for ell in 2..=4".into())
}

/// Vertex counts and budgets across the instance corpus match the closed
/// formulas.
pub fn check_size_and_budget(seed: u64) -> Result<String, String> {
    let corpus = instance_corpus(seed ^ 0xf4ee, 20)?;
    for (_, inst) in &corpus {
        let n = u64::from(inst.layout.n);
        let m = u64::from(inst.layout.m);
        let ell = u64::from(inst.layout.ell);
        let expected_v = 2 * (2 * n + ell - 1) + 6 * m + 4 + free_cover_size(ell as u32, m as u32);
        if u64::from(inst.graph.vertex_count()) != expected_v {
            return Err(format!(
                "instance has {} vertices, formula says {expected_v}",
                inst.graph.vertex_count()
            ));
        }
        let expected_k = 28 * ell + 46 + 36 * u64::from(ceil_log2(m as u32));
        if inst.k != expected_k {
            return Err(format!("instance has k={}, formula says {expected_k}", inst.k));
        }
        if budget(ell as u32, m as u32).1 != expected_k {
            return Err("budget helper disagrees with the expanded formula".into());
        }
    }
    Ok(format!("{} instances match the size and budget formulas", corpus.len()))
}

// ---------------------------------------------------------------------------
// Runner.
// ---------------------------------------------------------------------------

pub struct Check {
    pub name: &'static str,
    pub budget: Duration,
    pub run: fn(u64) -> Result<String, String>,
}

pub const CHECKS: &[Check] = &[
    Check {
        name: "cocktail-optima",
        budget: Duration::from_secs(10),
        run: check_cocktail_optima,
    },
    Check {
        name: "twin-cover-extension",
        budget: Duration::from_secs(30),
        run: check_twin_cover_extension,
    },
    Check {
        name: "last-twin-exhaustive",
        budget: Duration::from_secs(120),
        run: check_last_twin_exhaustive,
    },
    Check {
        name: "free-cover-families",
        budget: Duration::from_secs(60),
        run: check_free_cover_families,
    },
    Check {
        name: "assignment-to-cover",
        budget: Duration::from_secs(120),
        run: check_assignment_to_cover,
    },
    Check {
        name: "cover-to-assignment-round-trip",
        budget: Duration::from_secs(120),
        run: check_cover_to_assignment,
    },
    Check {
        name: "solver-oracle-kernel-agreement",
        budget: Duration::from_secs(300),
        run: check_solver_oracle_kernel,
    },
    Check {
        name: "cocktail-kernel-immunity",
        budget: Duration::from_secs(5),
        run: check_cocktail_kernel_immunity,
    },
    Check {
        name: "size-and-budget-formulas",
        budget: Duration::from_secs(5),
        run: check_size_and_budget,
    },
];

pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub within_budget: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

pub fn run_check(check: &Check, seed: u64) -> CheckReport {
    let start = Instant::now();
    let outcome = (check.run)(seed);
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    };
    CheckReport {
        name: check.name,
        passed,
        within_budget: elapsed <= check.budget,
        detail,
        elapsed,
        budget: check.budget,
    }
}

pub fn run_all(seed: u64) -> Vec<CheckReport> {
    CHECKS.iter().map(|c| run_check(c, seed)).collect()
}
