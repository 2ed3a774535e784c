//! DIMACS CNF parsing, strict 3-CNF normalization, and the regularization
//! that prepares a formula for the graph construction.
//!
//! Regularization pads the variable set to a power of two with a dummy
//! variable at index 0, then conjoins a negated copy of the formula over
//! duplicated variables. The result always admits a balanced satisfying
//! assignment when the original formula is satisfiable: extend any
//! assignment of the first half by the negations of its values.

use std::collections::BTreeSet;

use thiserror::Error;

/// Truth assignment, one value per variable.
pub type Assignment = Vec<bool>;

/// Brute-force search guard.
pub const MAX_BRUTE_FORCE_VARS: u32 = 24;

/// Largest variable count [`parse_dimacs`] accepts.
pub const MAX_DIMACS_VARS: u32 = 1 << 24;

#[derive(Debug, Error)]
pub enum CnfError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("clause {index} is empty, the formula is trivially unsatisfiable")]
    TriviallyUnsat { index: usize },
    #[error("clause {index} has {width} distinct variables, inputs must be 3-CNF")]
    ClauseTooWide { index: usize, width: usize },
    #[error("assignment has {got} values, formula has {expected} variables")]
    LengthMismatch { expected: u32, got: usize },
    #[error("{vars} variables exceed the brute-force guard of {MAX_BRUTE_FORCE_VARS}")]
    TooManyVariables { vars: u32 },
    #[error("assignment file: {0}")]
    BadAssignment(String),
}

fn parse_err(line: usize, msg: impl Into<String>) -> CnfError {
    CnfError::Parse {
        line,
        msg: msg.into(),
    }
}

/// A literal over a zero-based variable index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    pub var: u32,
    pub positive: bool,
}

impl Lit {
    pub fn new(var: u32, positive: bool) -> Self {
        Lit { var, positive }
    }

    pub fn satisfied_by(self, assignment: &[bool]) -> bool {
        assignment[self.var as usize] == self.positive
    }

    /// DIMACS form: one-based, sign carries polarity.
    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.var) + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    pub num_vars: u32,
    pub clauses: Vec<Vec<Lit>>,
}

impl Formula {
    pub fn new(num_vars: u32, clauses: Vec<Vec<Lit>>) -> Self {
        Formula { num_vars, clauses }
    }
}

/// Parses DIMACS CNF text. Comments (`c`), blank lines and a trailing `%`
/// marker are ignored; clauses may span lines and end at `0`. The parser
/// does not judge semantics: duplicate or complementary literals survive
/// until [`normalize`].
pub fn parse_dimacs(text: &str) -> Result<Formula, CnfError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut last_line = 0usize;
    'outer: for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(parse_err(line_no, "duplicate header"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(parse_err(line_no, "malformed header, expected `p cnf <vars> <clauses>`"));
            }
            let nv: u32 = parts[2]
                .parse()
                .map_err(|_| parse_err(line_no, "bad variable count"))?;
            if nv > MAX_DIMACS_VARS {
                return Err(parse_err(
                    line_no,
                    format!("variable count {nv} exceeds the limit {MAX_DIMACS_VARS}"),
                ));
            }
            let nc: usize = parts[3]
                .parse()
                .map_err(|_| parse_err(line_no, "bad clause count"))?;
            header = Some((nv, nc));
            continue;
        }
        let (num_vars, _) = header.ok_or_else(|| parse_err(line_no, "clause before `p cnf` header"))?;
        for tok in line.split_whitespace() {
            if tok == "%" {
                break 'outer;
            }
            let lit: i64 = tok
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let var = lit.unsigned_abs() - 1;
            if var >= u64::from(num_vars) {
                return Err(parse_err(
                    line_no,
                    format!("literal {lit} out of range, header declares {num_vars} variables"),
                ));
            }
            current.push(Lit::new(var as u32, lit > 0));
        }
    }
    let (num_vars, _declared) = header.ok_or_else(|| parse_err(last_line, "missing `p cnf` header"))?;
    if !current.is_empty() {
        return Err(parse_err(last_line, "unterminated clause at end of input"));
    }
    Ok(Formula::new(num_vars, clauses))
}

/// Rewrites `f` so that every clause has exactly three literals over three
/// distinct variables and no clause repeats, preserving satisfiability.
///
/// Duplicate literals collapse, tautological clauses vanish, and clauses
/// with fewer than three distinct variables are split on fresh variables:
/// a clause `C` of width `w` becomes the `2^(3-w)` clauses `C` extended by
/// every sign pattern over `3-w` fresh variables, which forces `C` itself.
/// An empty clause is reported as trivially unsatisfiable.
pub fn normalize(f: &Formula) -> Result<Formula, CnfError> {
    let mut canonical: Vec<Vec<Lit>> = Vec::new();
    let mut seen: BTreeSet<Vec<Lit>> = BTreeSet::new();
    for (index, clause) in f.clauses.iter().enumerate() {
        let mut lits = clause.clone();
        lits.sort_unstable();
        lits.dedup();
        let tautology = lits
            .windows(2)
            .any(|w| w[0].var == w[1].var && w[0].positive != w[1].positive);
        if tautology {
            continue;
        }
        if lits.is_empty() {
            return Err(CnfError::TriviallyUnsat { index });
        }
        if lits.len() > 3 {
            return Err(CnfError::ClauseTooWide {
                index,
                width: lits.len(),
            });
        }
        if seen.insert(lits.clone()) {
            canonical.push(lits);
        }
    }

    let mut num_vars = f.num_vars;
    let mut out: Vec<Vec<Lit>> = Vec::new();
    for lits in canonical {
        let missing = 3 - lits.len();
        if missing == 0 {
            out.push(lits);
            continue;
        }
        let fresh: Vec<u32> = (0..missing).map(|d| num_vars + d as u32).collect();
        num_vars += missing as u32;
        for pattern in 0..(1u32 << missing) {
            let mut widened = lits.clone();
            for (bit, &var) in fresh.iter().enumerate() {
                widened.push(Lit::new(var, pattern >> bit & 1 == 1));
            }
            widened.sort_unstable();
            out.push(widened);
        }
    }
    Ok(Formula::new(num_vars, out))
}

fn shift_clause(clause: &[Lit], offset: u32, negate: bool) -> Vec<Lit> {
    clause
        .iter()
        .map(|l| Lit::new(l.var + offset, l.positive ^ negate))
        .collect()
}

/// A normalized formula after regularization: variables padded to `2^ell`
/// with the dummy variable at index 0, and a negated duplicate of every
/// clause over the shifted variable block `[dup_offset, 2*dup_offset)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularFormula {
    pub base: Formula,
    pub ell: u32,
    /// `num_vars / 2`; variable `i + dup_offset` is the negated duplicate of `i`.
    pub dup_offset: u32,
    /// Variables appearing in no clause; always contains index 0.
    pub dummy_indices: BTreeSet<u32>,
    /// Maps a variable of the normalized input to its index here.
    pub orig_map: Vec<u32>,
}

impl RegularFormula {
    pub fn num_vars(&self) -> u32 {
        self.base.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.base.clauses.len()
    }

    /// Variable index and polarity bit of the `alpha`-th literal (1-based)
    /// of clause `j`; the bit is 1 for a positive literal.
    pub fn literal(&self, j: usize, alpha: u8) -> (u32, u8) {
        let lit = self.base.clauses[j][alpha as usize - 1];
        (lit.var, u8::from(lit.positive))
    }

    /// Lifts an assignment of the normalized input formula to a balanced
    /// assignment here: dummies false, duplicates negated.
    pub fn lift_assignment(&self, orig: &[bool]) -> Result<Assignment, CnfError> {
        if orig.len() != self.orig_map.len() {
            return Err(CnfError::LengthMismatch {
                expected: self.orig_map.len() as u32,
                got: orig.len(),
            });
        }
        let mut half = vec![false; self.dup_offset as usize];
        for (i, &v) in orig.iter().enumerate() {
            half[self.orig_map[i] as usize] = v;
        }
        Ok(self.extend_half(&half).expect("half has the right length"))
    }

    /// Extends an assignment of the first `num_vars / 2` variables by the
    /// negations of its values; the result is always balanced.
    pub fn extend_half(&self, half: &[bool]) -> Result<Assignment, CnfError> {
        if half.len() != self.dup_offset as usize {
            return Err(CnfError::LengthMismatch {
                expected: self.dup_offset,
                got: half.len(),
            });
        }
        let mut full = half.to_vec();
        full.extend(half.iter().map(|&v| !v));
        Ok(full)
    }

    /// Restriction of a full assignment to the normalized input variables.
    pub fn project_original(&self, full: &[bool]) -> Assignment {
        self.orig_map.iter().map(|&r| full[r as usize]).collect()
    }
}

/// Regularizes a normalized formula: pads variables to the next power of two
/// that leaves at least one dummy (the dummy sits at index 0 and originals
/// shift up by one), then appends the negated duplicate of every clause over
/// the second variable half. The final variable count is `2^ell` and the
/// clause count doubles.
pub fn regularize(f: &Formula) -> RegularFormula {
    let n0 = f.num_vars;
    let padded = (n0 + 1).next_power_of_two();
    let n = 2 * padded;
    let ell = n.trailing_zeros();

    let mut clauses: Vec<Vec<Lit>> = f.clauses.iter().map(|c| shift_clause(c, 1, false)).collect();
    let mirrored: Vec<Vec<Lit>> = f
        .clauses
        .iter()
        .map(|c| shift_clause(c, 1 + padded, true))
        .collect();
    clauses.extend(mirrored);

    let mut used = vec![false; n as usize];
    for clause in &clauses {
        for lit in clause {
            used[lit.var as usize] = true;
        }
    }
    let dummy_indices: BTreeSet<u32> = (0..n).filter(|&v| !used[v as usize]).collect();
    debug_assert!(dummy_indices.contains(&0));

    RegularFormula {
        base: Formula::new(n, clauses),
        ell,
        dup_offset: padded,
        dummy_indices,
        orig_map: (0..n0).map(|i| i + 1).collect(),
    }
}

/// True iff every clause has a satisfied literal.
pub fn evaluate(f: &Formula, assignment: &[bool]) -> Result<bool, CnfError> {
    if assignment.len() != f.num_vars as usize {
        return Err(CnfError::LengthMismatch {
            expected: f.num_vars,
            got: assignment.len(),
        });
    }
    Ok(f
        .clauses
        .iter()
        .all(|clause| clause.iter().any(|lit| lit.satisfied_by(assignment))))
}

/// Exhaustive satisfiability oracle for small formulas; returns the
/// lexicographically first satisfying assignment if one exists.
pub fn brute_force_sat(f: &Formula) -> Result<Option<Assignment>, CnfError> {
    if f.num_vars > MAX_BRUTE_FORCE_VARS {
        return Err(CnfError::TooManyVariables { vars: f.num_vars });
    }
    let n = f.num_vars;
    for mask in 0u64..(1u64 << n) {
        let assignment: Assignment = (0..n).map(|i| mask >> i & 1 == 1).collect();
        if evaluate(f, &assignment)? {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

pub fn is_balanced(assignment: &[bool]) -> bool {
    let ones = assignment.iter().filter(|&&v| v).count();
    2 * ones == assignment.len()
}

/// Assignment file format: a single line of space-separated DIMACS literals,
/// or the word `UNSAT`.
pub fn write_assignment(assignment: &[bool]) -> String {
    let lits: Vec<String> = assignment
        .iter()
        .enumerate()
        .map(|(i, &v)| Lit::new(i as u32, v).to_dimacs().to_string())
        .collect();
    format!("{}\n", lits.join(" "))
}

/// Largest variable index [`read_assignment`] accepts.
pub const MAX_ASSIGNMENT_VARS: u64 = 1 << 20;

/// Reads the assignment format; `None` for an `UNSAT` marker. Every variable
/// from 1 to the maximum mentioned must appear exactly once.
pub fn read_assignment(text: &str) -> Result<Option<Assignment>, CnfError> {
    let body: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('c'))
        .collect();
    if body.len() == 1 && body[0].eq_ignore_ascii_case("UNSAT") {
        return Ok(None);
    }
    let mut values: Vec<Option<bool>> = Vec::new();
    for line in body {
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| CnfError::BadAssignment(format!("bad literal `{tok}`")))?;
            if lit == 0 {
                return Err(CnfError::BadAssignment("literal 0 is not allowed".into()));
            }
            if lit.unsigned_abs() > MAX_ASSIGNMENT_VARS {
                return Err(CnfError::BadAssignment(format!(
                    "variable {} exceeds the limit {MAX_ASSIGNMENT_VARS}",
                    lit.unsigned_abs()
                )));
            }
            let var = lit.unsigned_abs() as usize - 1;
            if values.len() <= var {
                values.resize(var + 1, None);
            }
            if values[var].is_some() {
                return Err(CnfError::BadAssignment(format!(
                    "variable {} assigned twice",
                    var + 1
                )));
            }
            values[var] = Some(lit > 0);
        }
    }
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| CnfError::BadAssignment(format!("variable {} missing", i + 1)))
        })
        .collect::<Result<Assignment, _>>()
        .map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(v: i64) -> Lit {
        Lit::new(v.unsigned_abs() as u32 - 1, v > 0)
    }

    fn clause(vs: &[i64]) -> Vec<Lit> {
        vs.iter().map(|&v| lit(v)).collect()
    }

    #[test]
    fn parse_smallest_instance() {
        let f = parse_dimacs("p cnf 1 1\n1 0\n").unwrap();
        assert_eq!(f.num_vars, 1);
        assert_eq!(f.clauses, vec![clause(&[1])]);
    }

    #[test]
    fn parse_mixed_polarity_clause() {
        let f = parse_dimacs("p cnf 3 1\n1 -2 3 0\n").unwrap();
        assert_eq!(f.clauses, vec![clause(&[1, -2, 3])]);
    }

    #[test]
    fn parser_keeps_semantic_duplicates() {
        let f = parse_dimacs("p cnf 2 1\n1 1 -1 0").unwrap();
        assert_eq!(f.clauses, vec![clause(&[1, 1, -1])]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_dimacs("p dnf 1 1\n1 0\n"), Err(CnfError::Parse { .. })));
        assert!(matches!(parse_dimacs("p cnf 1 1\n2 0\n"), Err(CnfError::Parse { .. })));
        assert!(matches!(parse_dimacs("p cnf 2 1\n1 2\n"), Err(CnfError::Parse { .. })));
        assert!(matches!(parse_dimacs("1 0\n"), Err(CnfError::Parse { .. })));
    }

    #[test]
    fn unit_clause_splits_into_four_clauses_over_two_fresh_vars() {
        let f = Formula::new(1, vec![clause(&[1])]);
        let norm = normalize(&f).unwrap();
        assert_eq!(norm.num_vars, 3);
        assert_eq!(norm.clauses.len(), 4);
        for c in &norm.clauses {
            assert_eq!(c.len(), 3);
            assert!(c.iter().any(|l| l.var == 0 && l.positive));
        }
        // equisatisfiable, checked by brute force
        assert!(brute_force_sat(&f).unwrap().is_some());
        let witness = brute_force_sat(&norm).unwrap().unwrap();
        assert!(witness[0], "x1 is forced true by the sign expansion");
    }

    #[test]
    fn tautologies_are_removed() {
        let f = Formula::new(2, vec![clause(&[1, -1, 2])]);
        let norm = normalize(&f).unwrap();
        assert!(norm.clauses.is_empty());
    }

    #[test]
    fn strict_canonical_input_is_unchanged_and_normalize_is_idempotent() {
        let f = Formula::new(4, vec![clause(&[1, 2, 3]), clause(&[-1, 2, 4])]);
        let norm = normalize(&f).unwrap();
        assert_eq!(norm, f);
        assert_eq!(normalize(&norm).unwrap(), norm);
    }

    #[test]
    fn empty_clause_is_trivially_unsat() {
        let f = Formula::new(2, vec![clause(&[1, 2]), vec![]]);
        assert!(matches!(normalize(&f), Err(CnfError::TriviallyUnsat { index: 1 })));
    }

    #[test]
    fn wide_clause_is_rejected() {
        let f = Formula::new(4, vec![clause(&[1, 2, 3, 4])]);
        assert!(matches!(
            normalize(&f),
            Err(CnfError::ClauseTooWide { index: 0, width: 4 })
        ));
    }

    #[test]
    fn duplicate_clauses_collapse() {
        let f = Formula::new(3, vec![clause(&[1, 2, 3]), clause(&[3, 2, 1])]);
        assert_eq!(normalize(&f).unwrap().clauses.len(), 1);
    }

    #[test]
    fn regularize_pads_and_duplicates() {
        // 3 variables pad to 4 with one dummy, then double to 8
        let f = Formula::new(3, vec![clause(&[1, 2, 3]), clause(&[-1, -2, 3])]);
        let reg = regularize(&f);
        assert_eq!(reg.num_vars(), 8);
        assert_eq!(reg.ell, 3);
        assert_eq!(reg.num_clauses(), 4);
        assert_eq!(reg.dup_offset, 4);
        assert_eq!(reg.orig_map, vec![1, 2, 3]);
    }

    #[test]
    fn power_of_two_input_doubles_the_padding() {
        let f = Formula::new(4, vec![clause(&[1, 2, 3]), clause(&[2, 3, 4])]);
        let reg = regularize(&f);
        assert_eq!(reg.num_vars(), 16);
        assert_eq!(reg.ell, 4);
        assert!(reg.dummy_indices.contains(&0));
    }

    #[test]
    fn dummy_variable_appears_in_no_clause() {
        let f = Formula::new(5, vec![clause(&[1, 2, 3]), clause(&[-3, -4, 5])]);
        let reg = regularize(&f);
        for clause in &reg.base.clauses {
            for lit in clause {
                assert_ne!(lit.var, 0);
            }
        }
    }

    #[test]
    fn mirror_clauses_are_negated_duplicates() {
        let f = Formula::new(3, vec![clause(&[1, -2, 3])]);
        let reg = regularize(&f);
        let m = reg.num_clauses();
        for j in 0..m / 2 {
            let orig = &reg.base.clauses[j];
            let mirror = &reg.base.clauses[j + m / 2];
            assert_eq!(orig.len(), mirror.len());
            for (a, b) in orig.iter().zip(mirror) {
                assert_eq!(b.var, a.var + reg.dup_offset);
                assert_eq!(b.positive, !a.positive);
            }
        }
    }

    #[test]
    fn evaluate_basics() {
        let f = Formula::new(1, vec![clause(&[1])]);
        assert!(evaluate(&f, &[true]).unwrap());
        assert!(!evaluate(&f, &[false]).unwrap());
        assert!(matches!(
            evaluate(&f, &[true, false]),
            Err(CnfError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn lifted_assignments_are_balanced_and_preserve_satisfaction() {
        let f = Formula::new(3, vec![clause(&[1, 2, 3]), clause(&[-1, -2, -3])]);
        let reg = regularize(&f);
        let witness = brute_force_sat(&f).unwrap().unwrap();
        let lifted = reg.lift_assignment(&witness).unwrap();
        assert!(is_balanced(&lifted));
        assert!(!lifted[0]);
        assert!(evaluate(&reg.base, &lifted).unwrap());
        assert_eq!(reg.project_original(&lifted), witness);
    }

    #[test]
    fn brute_force_examples() {
        let unsat = Formula::new(1, vec![clause(&[1]), clause(&[-1])]);
        assert!(brute_force_sat(&unsat).unwrap().is_none());

        let sat = Formula::new(3, vec![clause(&[1, 2, 3])]);
        let witness = brute_force_sat(&sat).unwrap().unwrap();
        assert!(evaluate(&sat, &witness).unwrap());

        let too_big = Formula::new(25, vec![]);
        assert!(matches!(
            brute_force_sat(&too_big),
            Err(CnfError::TooManyVariables { vars: 25 })
        ));
    }

    #[test]
    fn assignment_file_round_trip() {
        let a = vec![true, false, true, true];
        let text = write_assignment(&a);
        assert_eq!(text, "1 -2 3 4\n");
        assert_eq!(read_assignment(&text).unwrap(), Some(a));
        assert_eq!(read_assignment("UNSAT\n").unwrap(), None);
        assert!(read_assignment("1 3\n").is_err());
        assert!(read_assignment("1 -1\n").is_err());
    }
}
