//! `eccforge`: command line front end for the edge clique cover toolkit.
//!
//! Exit codes: 0 on success, 1 on a domain-negative outcome (unsatisfiable
//! input, invalid cover, no cover within budget, failed extraction), 2 on
//! usage or I/O errors. Artifacts go to `-o FILE` or stdout; diagnostics go
//! to stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use eccforge_core::cnf::{self, normalize, parse_dimacs, regularize, CnfError};
use eccforge_core::cocktail::{build_cocktail, extend_twin_cover, gregory_pullman_opt, TwinPair};
use eccforge_core::graph::{
    read_cover, read_graph, verify_cover, write_cover, write_graph, EdgeFilter,
};
use eccforge_core::reduction::{read_instance, reduce, write_instance};
use eccforge_core::selfcheck::{run_all, DEFAULT_SEED};
use eccforge_core::solver::{kernelize, min_cover, solve_exact_with, SolveOptions};
use eccforge_core::transfer::{assignment_from_cover, cover_from_assignment};

#[derive(Parser)]
#[command(
    name = "eccforge",
    version,
    about = "Edge clique cover instances from 3-CNF formulas: build, solve, verify, translate"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Scope {
    All,
    Imp,
    Free,
}

impl From<Scope> for EdgeFilter {
    fn from(scope: Scope) -> EdgeFilter {
        match scope {
            Scope::All => EdgeFilter::All,
            Scope::Imp => EdgeFilter::Imp,
            Scope::Free => EdgeFilter::Free,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build an edge clique cover instance from a DIMACS CNF file
    Reduce {
        /// Input formula in DIMACS CNF format
        input: PathBuf,
        /// Instance file to write (stdout if omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for a clique cover within a budget
    Solve {
        /// Graph or instance in the ecc text format
        graph: PathBuf,
        /// Cover budget; defaults to the budget in the file header
        #[arg(long)]
        k: Option<u64>,
        /// Find the minimum cover size instead of deciding a budget
        #[arg(long)]
        exact_min: bool,
        /// Apply the reduction rules before searching
        #[arg(long)]
        kernelize: bool,
        /// Fixed candidate order on one thread; reruns are byte-identical
        #[arg(long)]
        strict_deterministic: bool,
        /// Override the solver vertex guard (hard cap 64)
        #[arg(long)]
        max_vertices: Option<u32>,
        /// Cover file to write (stdout if omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a cover file against a graph
    Verify {
        graph: PathBuf,
        cover: PathBuf,
        /// Which edge class the cover must span
        #[arg(long, value_enum, default_value_t = Scope::All)]
        scope: Scope,
    },
    /// Turn a satisfying assignment into a cover of exactly k cliques
    Complete {
        instance: PathBuf,
        /// Assignment file: DIMACS literals for all n or the first n/2 variables
        assignment: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extract a satisfying assignment from a cover of an instance
    Extract {
        instance: PathBuf,
        cover: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cocktail party graph utilities
    Cocktail {
        /// Size exponent: the graph has 2^ell vertices
        #[arg(long)]
        ell: u32,
        /// Emit a twin clique cover of 2*ell cliques instead of the graph
        #[arg(long, conflicts_with = "opt")]
        twin_cover: bool,
        /// Print the optimum cover size from the binomial formula
        #[arg(long)]
        opt: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in end-to-end check suite
    Selftest {
        /// Corpus seed
        #[arg(long)]
        seed: Option<u64>,
    },
}

enum CliError {
    /// Expected negative outcome: unsatisfiable, invalid, over budget.
    Domain(String),
    /// Bad usage or I/O.
    Usage(String),
}

type CliResult<T = ()> = Result<T, CliError>;

fn domain(msg: impl Into<String>) -> CliError {
    CliError::Domain(msg.into())
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, content: &str) -> CliResult {
    match output {
        Some(path) => {
            fs::write(path, content).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_reduce(input: &Path, output: Option<&Path>) -> CliResult {
    let text = read_file(input)?;
    let parsed = parse_dimacs(&text).map_err(|e| usage(e.to_string()))?;
    let norm = match normalize(&parsed) {
        Ok(f) => f,
        Err(CnfError::TriviallyUnsat { index }) => {
            return Err(domain(format!(
                "clause {index} is empty: the formula is unsatisfiable, no instance written"
            )));
        }
        Err(e) => return Err(usage(e.to_string())),
    };
    if norm.clauses.is_empty() {
        return Err(domain(
            "every clause is a tautology: the formula is trivially satisfiable, no instance written",
        ));
    }
    let reg = regularize(&norm);
    let inst = reduce(&reg).map_err(|e| usage(e.to_string()))?;
    eprintln!(
        "instance: {} vertices, {} edges, n={} ell={} m={} k={}",
        inst.graph.vertex_count(),
        inst.graph.edge_count(),
        inst.layout.n,
        inst.layout.ell,
        inst.layout.m,
        inst.k
    );
    emit(output, &write_instance(&inst))
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    graph_path: &Path,
    k: Option<u64>,
    exact_min: bool,
    use_kernel: bool,
    strict: bool,
    max_vertices: Option<u32>,
    output: Option<&Path>,
) -> CliResult {
    let text = read_file(graph_path)?;
    let (graph, header_k) = read_graph(&text).map_err(|e| usage(e.to_string()))?;
    let mut opts = SolveOptions::default();
    if strict {
        opts.deterministic = true;
        opts.parallel = false;
    }
    if let Some(mv) = max_vertices {
        opts.max_vertices = mv;
    }

    let solve_err = |e: eccforge_core::solver::SolverError| {
        usage(format!("{e}; raise --max-vertices if you mean it"))
    };

    if exact_min {
        let (size, cover) = if use_kernel {
            let kern = kernelize(&graph, graph.edge_count() as u64);
            let (reduced_size, reduced_cover) =
                min_cover(&kern.reduced, &opts).map_err(solve_err)?;
            let lifted = kern.lift_cover(&reduced_cover);
            (kern.forced_cliques.len() + reduced_size, lifted)
        } else {
            min_cover(&graph, &opts).map_err(solve_err)?
        };
        if !verify_cover(&graph, &cover, EdgeFilter::All).valid {
            return Err(usage("internal error: solver cover failed verification"));
        }
        eprintln!("minimum cover size: {size}");
        return emit(output, &write_cover(&cover));
    }

    let k = k
        .or(header_k)
        .ok_or_else(|| usage("no budget: pass --k or use a file with a budget header"))?;
    let cover = if use_kernel {
        let kern = kernelize(&graph, k);
        if kern.answer_is_no() {
            None
        } else {
            solve_exact_with(&kern.reduced, kern.k_reduced as usize, &opts)
                .map_err(solve_err)?
                .map(|c| kern.lift_cover(&c))
        }
    } else {
        solve_exact_with(&graph, k as usize, &opts).map_err(solve_err)?
    };
    match cover {
        Some(cover) => {
            if !verify_cover(&graph, &cover, EdgeFilter::All).valid {
                return Err(usage("internal error: solver cover failed verification"));
            }
            eprintln!("cover of size {} within budget {k}", cover.len());
            emit(output, &write_cover(&cover))
        }
        None => Err(domain(format!("no clique cover of size at most {k} exists"))),
    }
}

fn cmd_verify(graph_path: &Path, cover_path: &Path, scope: Scope) -> CliResult {
    let (graph, _) = read_graph(&read_file(graph_path)?).map_err(|e| usage(e.to_string()))?;
    let cover = read_cover(&read_file(cover_path)?).map_err(|e| usage(e.to_string()))?;
    let report = verify_cover(&graph, &cover, scope.into());
    if report.valid {
        println!("valid: {} cliques", cover.len());
        Ok(())
    } else {
        Err(domain(format!(
            "invalid cover: {}",
            report.first_violation.expect("invalid reports carry a violation")
        )))
    }
}

fn cmd_complete(instance_path: &Path, assignment_path: &Path, output: Option<&Path>) -> CliResult {
    let inst = read_instance(&read_file(instance_path)?).map_err(|e| usage(e.to_string()))?;
    let assignment = cnf::read_assignment(&read_file(assignment_path)?)
        .map_err(|e| usage(e.to_string()))?
        .ok_or_else(|| domain("assignment file says UNSAT, nothing to complete"))?;
    let cover = cover_from_assignment(&inst, &assignment).map_err(|e| domain(e.to_string()))?;
    eprintln!("cover of exactly k = {} cliques", cover.len());
    emit(output, &write_cover(&cover))
}

fn cmd_extract(instance_path: &Path, cover_path: &Path, output: Option<&Path>) -> CliResult {
    let inst = read_instance(&read_file(instance_path)?).map_err(|e| usage(e.to_string()))?;
    let cover = read_cover(&read_file(cover_path)?).map_err(|e| usage(e.to_string()))?;
    let assignment = assignment_from_cover(&inst, &cover).map_err(|e| domain(e.to_string()))?;
    emit(output, &cnf::write_assignment(&assignment))
}

fn cmd_cocktail(ell: u32, twin_cover: bool, opt: bool, output: Option<&Path>) -> CliResult {
    if opt {
        if ell < 2 {
            return Err(usage("--opt needs ell >= 2, the formula covers n > 1 pairs"));
        }
        let k = gregory_pullman_opt(1u64 << (ell - 1)).map_err(|e| usage(e.to_string()))?;
        return emit(output, &format!("{k}\n"));
    }
    let g = build_cocktail(ell).map_err(|e| usage(e.to_string()))?;
    if twin_cover {
        let evens: Vec<u32> = (0..g.pair_count()).map(|t| 2 * t).collect();
        let odds: Vec<u32> = (0..g.pair_count()).map(|t| 2 * t + 1).collect();
        let cover = extend_twin_cover(&g, &[TwinPair::new(evens, odds)])
            .map_err(|e| usage(e.to_string()))?;
        return emit(output, &write_cover(&cover.flatten()));
    }
    emit(output, &write_graph(g.graph(), None))
}

fn cmd_selftest(seed: Option<u64>) -> CliResult {
    let seed = seed.unwrap_or(DEFAULT_SEED);
    let mut failures = 0;
    for report in run_all(seed) {
        let status = if report.passed && report.within_budget {
            "ok  "
        } else {
            failures += 1;
            "FAIL"
        };
        println!(
            "{status} {:<32} {:>9.2?}  {}",
            report.name, report.elapsed, report.detail
        );
        if report.passed && !report.within_budget {
            println!(
                "     {:<32} exceeded its {:.0?} budget",
                report.name, report.budget
            );
        }
    }
    if failures > 0 {
        Err(domain(format!("{failures} checks failed")))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Reduce { input, output } => cmd_reduce(input, output.as_deref()),
        Command::Solve {
            graph,
            k,
            exact_min,
            kernelize,
            strict_deterministic,
            max_vertices,
            output,
        } => cmd_solve(
            graph,
            *k,
            *exact_min,
            *kernelize,
            *strict_deterministic,
            *max_vertices,
            output.as_deref(),
        ),
        Command::Verify { graph, cover, scope } => cmd_verify(graph, cover, *scope),
        Command::Complete {
            instance,
            assignment,
            output,
        } => cmd_complete(instance, assignment, output.as_deref()),
        Command::Extract {
            instance,
            cover,
            output,
        } => cmd_extract(instance, cover, output.as_deref()),
        Command::Cocktail {
            ell,
            twin_cover,
            opt,
            output,
        } => cmd_cocktail(*ell, *twin_cover, *opt, output.as_deref()),
        Command::Selftest { seed } => cmd_selftest(*seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
