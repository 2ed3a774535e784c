//! Edge clique cover toolkit.
//!
//! The crate turns 3-CNF formulas into edge clique cover instances whose
//! budget grows only logarithmically in the variable count, translates
//! certificates in both directions (satisfying assignment to size-`k` cover
//! and back), and ships the supporting machinery: cocktail party graphs with
//! their twin clique covers, an exact branch-and-bound solver, reduction
//! rules, and an exhaustive oracle for validating everything at desk scale.
//!
//! Modules follow the pipeline: [`cnf`] parses and regularizes formulas,
//! [`reduction`] builds the instance graph, [`transfer`] moves certificates
//! across, [`cocktail`] and [`solver`] provide the graph machinery, and
//! [`graph`] holds the shared representation and text formats. [`selfcheck`]
//! bundles the runnable end-to-end checks used by the test suite and the
//! CLI.
//!
//! With the default `parallel` feature the solver and certificate extraction
//! fan work out across threads via rayon; disabling it leaves sequential
//! fallbacks with identical results.

pub mod cnf;
pub mod cocktail;
pub mod graph;
pub mod reduction;
pub mod selfcheck;
pub mod solver;
pub mod transfer;
