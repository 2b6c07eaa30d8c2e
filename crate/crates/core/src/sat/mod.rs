//! (≤3,3)-SAT instances and the reduction to matching + bounded linear forest
//! decomposition.
//!
//! An instance is valid when every clause has two or three literals over
//! distinct variables and every variable occurs positively in exactly two
//! clauses and negatively in exactly one.

mod reduction;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{CnfError, SatError};

pub use reduction::{
    assignment_to_decomposition, build_reduction_graph, clashing_variables, decomposition_to_assignment, ClausePins,
    Connector, Reduction, ReductionPinMap, VariablePins,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    /// Zero-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }

    /// DIMACS form: one-based, negative for negated literals.
    pub fn dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

/// Clause positions of a variable's occurrences, in increasing clause order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Occurrences {
    pub positive: [usize; 2],
    pub negative: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfInstance {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
    occurrences: Vec<Occurrences>,
}

impl CnfInstance {
    /// Validates the (≤3,3) shape and builds the occurrence index.
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, CnfError> {
        let mut pos = vec![Vec::new(); num_vars];
        let mut neg = vec![Vec::new(); num_vars];
        for (c, clause) in clauses.iter().enumerate() {
            if !(2..=3).contains(&clause.len()) {
                return Err(CnfError::ClauseSize { clause: c, size: clause.len() });
            }
            for (i, lit) in clause.iter().enumerate() {
                if lit.var >= num_vars {
                    return Err(CnfError::VariableOutOfRange { var: lit.var, num_vars });
                }
                if clause[..i].iter().any(|l| l.var == lit.var) {
                    return Err(CnfError::RepeatedVariable { clause: c, var: lit.var });
                }
                if lit.positive {
                    pos[lit.var].push(c);
                } else {
                    neg[lit.var].push(c);
                }
            }
        }
        let mut occurrences = Vec::with_capacity(num_vars);
        for var in 0..num_vars {
            if pos[var].len() != 2 || neg[var].len() != 1 {
                return Err(CnfError::Occurrence { var, positive: pos[var].len(), negative: neg[var].len() });
            }
            occurrences.push(Occurrences { positive: [pos[var][0], pos[var][1]], negative: neg[var][0] });
        }
        Ok(CnfInstance { num_vars, clauses, occurrences })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn occurrences(&self, var: usize) -> Occurrences {
        self.occurrences[var]
    }

    pub fn satisfies(&self, assignment: &[bool]) -> bool {
        self.first_unsatisfied(assignment).is_none()
    }

    pub fn first_unsatisfied(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|c| !c.iter().any(|l| l.eval(assignment)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                out.push_str(&format!("{} ", l.dimacs()));
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Parses DIMACS CNF and validates the (≤3,3) shape.
pub fn load_instance(text: &str) -> Result<CnfInstance, CnfError> {
    let perr = |line: usize, m: String| CnfError::Parse { line, message: m };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let parts: Vec<&str> = t.split_whitespace().collect();
            if header.is_some() {
                return Err(perr(line, "duplicate header".into()));
            }
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(perr(line, "header must be `p cnf <vars> <clauses>`".into()));
            }
            let n = parts[2].parse().map_err(|_| perr(line, format!("bad variable count `{}`", parts[2])))?;
            let m = parts[3].parse().map_err(|_| perr(line, format!("bad clause count `{}`", parts[3])))?;
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or_else(|| perr(line, "clause before the `p cnf` header".into()))?;
        for tok in t.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| perr(line, format!("bad literal `{tok}`")))?;
            if x == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let var = x.unsigned_abs() as usize;
            if var > n {
                return Err(perr(line, format!("literal {x} exceeds the declared {n} variables")));
            }
            current.push(Literal { var: var - 1, positive: x > 0 });
        }
        last_line = line;
    }
    let (n, m) = header.ok_or_else(|| perr(0, "missing `p cnf` header".into()))?;
    if !current.is_empty() {
        return Err(perr(last_line, "last clause is not terminated by 0".into()));
    }
    if clauses.len() != m {
        return Err(perr(last_line, format!("header declares {m} clauses, found {}", clauses.len())));
    }
    CnfInstance::new(n, clauses)
}

pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Exhaustive search in increasing binary order (variable 0 is the low bit).
pub fn brute_force_sat(inst: &CnfInstance) -> Result<Option<Vec<bool>>, SatError> {
    let n = inst.num_vars();
    if n > BRUTE_FORCE_LIMIT {
        return Err(SatError::TooManyVariables { vars: n, limit: BRUTE_FORCE_LIMIT });
    }
    let masks: Vec<Vec<(u32, bool)>> =
        inst.clauses().iter().map(|c| c.iter().map(|l| (1u32 << l.var, l.positive)).collect()).collect();
    for a in 0u32..(1u32 << n) {
        let sat = masks.iter().all(|c| c.iter().any(|&(bit, p)| (a & bit != 0) == p));
        if sat {
            return Ok(Some((0..n).map(|i| a >> i & 1 == 1).collect()));
        }
    }
    Ok(None)
}

/// JSON assignment file: one-based variable names to truth values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentFile {
    pub assignment: BTreeMap<String, bool>,
}

impl AssignmentFile {
    pub fn from_values(values: &[bool]) -> Self {
        AssignmentFile { assignment: values.iter().enumerate().map(|(i, &b)| ((i + 1).to_string(), b)).collect() }
    }

    pub fn values(&self, num_vars: usize) -> Result<Vec<bool>, String> {
        let mut out = vec![None; num_vars];
        for (k, &b) in &self.assignment {
            let i: usize = k.parse().map_err(|_| format!("bad variable name `{k}`"))?;
            if i == 0 || i > num_vars {
                return Err(format!("variable {i} out of range 1..={num_vars}"));
            }
            out[i - 1] = Some(b);
        }
        out.into_iter().enumerate().map(|(i, b)| b.ok_or_else(|| format!("variable {} has no value", i + 1))).collect()
    }
}

/// The 6-variable, 7-clause instance drawn alongside the reduction:
/// (¬x1∨x2), (x1∨x3), (x1∨¬x2∨x3), (x2∨¬x4∨x5), (¬x3∨x4∨x6), (x4∨¬x5∨x6), (x5∨¬x6).
pub fn example_instance() -> CnfInstance {
    let (p, n) = (Literal::pos, Literal::neg);
    let clauses = vec![
        vec![n(0), p(1)],
        vec![p(0), p(2)],
        vec![p(0), n(1), p(2)],
        vec![p(1), n(3), p(4)],
        vec![n(2), p(3), p(5)],
        vec![p(3), n(4), p(5)],
        vec![p(4), n(5)],
    ];
    CnfInstance::new(6, clauses).expect("the example is (≤3,3)-shaped")
}

/// A small unsatisfiable (≤3,3) instance:
/// (x1∨x3), (x3∨x4), (¬x1∨x2), (¬x4∨¬x2), (¬x3∨x4), (x1∨x2).
pub fn unsatisfiable_instance() -> CnfInstance {
    let (p, n) = (Literal::pos, Literal::neg);
    let clauses = vec![
        vec![p(0), p(2)],
        vec![p(2), p(3)],
        vec![n(0), p(1)],
        vec![n(3), n(1)],
        vec![n(2), p(3)],
        vec![p(0), p(1)],
    ];
    CnfInstance::new(4, clauses).expect("(≤3,3)-shaped")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_parses_from_dimacs() {
        let text = "c example\np cnf 6 7\n-1 2 0\n1 3 0\n1 -2 3 0\n2 -4 5 0\n-3 4 6 0\n4 -5 6 0\n5 -6 0\n";
        let inst = load_instance(text).unwrap();
        assert_eq!(inst, example_instance());
        assert_eq!(load_instance(&inst.to_dimacs()).unwrap(), inst);
        assert_eq!(inst.occurrences(0), Occurrences { positive: [1, 2], negative: 0 });
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(load_instance("p cnf 1 1\n1 0\n"), Err(CnfError::ClauseSize { clause: 0, size: 1 })));
        let three_pos = "p cnf 2 3\n1 2 0\n1 -2 0\n1 2 -1 0\n";
        assert!(matches!(load_instance(three_pos), Err(CnfError::RepeatedVariable { clause: 2, var: 0 })));
        let too_many = "p cnf 2 3\n1 2 0\n1 -2 0\n1 2 0\n";
        assert!(matches!(load_instance(too_many), Err(CnfError::Occurrence { var: 0, positive: 3, negative: 0 })));
        assert!(matches!(load_instance("p cnf 1 1\n1 2 3 4 0\n"), Err(CnfError::Parse { .. })));
        assert!(matches!(load_instance("p cnf 4 1\n1 2 3 4 0\n"), Err(CnfError::ClauseSize { size: 4, .. })));
        assert!(matches!(load_instance("1 2 0\n"), Err(CnfError::Parse { line: 1, .. })));
    }

    #[test]
    fn empty_instance_is_satisfiable() {
        let inst = load_instance("p cnf 0 0\n").unwrap();
        assert_eq!(brute_force_sat(&inst).unwrap(), Some(vec![]));
    }

    #[test]
    fn brute_force_results() {
        let a = brute_force_sat(&example_instance()).unwrap().unwrap();
        assert!(example_instance().satisfies(&a));
        assert_eq!(brute_force_sat(&unsatisfiable_instance()).unwrap(), None);
    }

    #[test]
    fn unsatisfiable_by_exhaustion() {
        let inst = unsatisfiable_instance();
        for a in 0..16u32 {
            let v: Vec<bool> = (0..4).map(|i| a >> i & 1 == 1).collect();
            assert!(!inst.satisfies(&v));
        }
    }

    #[test]
    fn assignment_file_round_trip() {
        let f = AssignmentFile::from_values(&[true, false, true]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"assignment":{"1":true,"2":false,"3":true}}"#);
        assert_eq!(f.values(3).unwrap(), vec![true, false, true]);
        assert!(f.values(4).is_err());
    }
}
