//! 3-CNF formulas and DIMACS ingestion.
//!
//! DIMACS variables are 1-based; internally variable `k` becomes index `k - 1`.
//! Only formulas whose clauses have exactly three literals over three
//! distinct variables are accepted, with at least one clause and three
//! variables.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    /// 1-based signed DIMACS form.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(lit: i64) -> Option<Self> {
        if lit == 0 {
            return None;
        }
        Some(Literal {
            var: (lit.unsigned_abs() - 1) as usize,
            positive: lit > 0,
        })
    }

    pub fn is_satisfied_by(self, values: &[bool]) -> bool {
        values[self.var] == self.positive
    }
}

pub type Clause = [Literal; 3];

/// Truth values of a formula's original variables, indexed by variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Assignment {
    /// `T`/`F` per variable, e.g. `TFFT`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.0 {
            f.write_str(if v { "T" } else { "F" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(vars: usize, clauses: Vec<Clause>) -> Result<Self> {
        if vars < 3 {
            return Err(Error::Restriction(format!(
                "need at least 3 variables, got {vars}"
            )));
        }
        if clauses.is_empty() {
            return Err(Error::Restriction("formula has no clauses".into()));
        }
        for (i, clause) in clauses.iter().enumerate() {
            if let Some(l) = clause.iter().find(|l| l.var >= vars) {
                return Err(Error::Restriction(format!(
                    "clause {} uses variable {} but only {vars} are declared",
                    i + 1,
                    l.var + 1
                )));
            }
            let [a, b, c] = clause.map(|l| l.var);
            if a == b || b == c || a == c {
                return Err(Error::Restriction(format!(
                    "clause {} repeats a variable",
                    i + 1
                )));
            }
        }
        Ok(CnfFormula { vars, clauses })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Variables plus three auxiliaries per clause.
    pub fn total_vars(&self) -> usize {
        self.vars + 3 * self.clauses.len()
    }

    pub fn satisfied_literals(&self, clause: usize, values: &[bool]) -> usize {
        self.clauses[clause]
            .iter()
            .filter(|l| l.is_satisfied_by(values))
            .count()
    }

    /// Index of the first clause `values` falsifies.
    pub fn first_falsified(&self, values: &[bool]) -> Option<usize> {
        (0..self.clauses.len()).find(|&i| self.satisfied_literals(i, values) == 0)
    }

    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        values.len() == self.vars && self.first_falsified(values).is_none()
    }

    pub fn to_dimacs(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.vars, self.clauses.len())?;
        for clause in &self.clauses {
            for l in clause {
                write!(f, "{} ", l.to_dimacs())?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

/// Parses DIMACS CNF text.
///
/// Clauses may span lines; everything after a `%` line is ignored (a SATLIB
/// convention).
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<(i64, usize)> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
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
                return Err(parse_err(line_no, "duplicate problem line"));
            }
            header = Some(parse_header(line, line_no)?);
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(parse_err(line_no, "clause before the problem line"));
        };
        for token in line.split_whitespace() {
            let lit: i64 = token
                .parse()
                .map_err(|_| parse_err(line_no, &format!("invalid literal {token:?}")))?;
            if lit == 0 {
                clauses.push(finish_clause(&current, clauses.len() + 1)?);
                current.clear();
            } else {
                if lit.unsigned_abs() as usize > vars {
                    return Err(parse_err(
                        line_no,
                        &format!("literal {lit} exceeds declared variable count {vars}"),
                    ));
                }
                current.push((lit, line_no));
            }
        }
    }

    let Some((vars, declared)) = header else {
        return Err(parse_err(
            last_line.max(1),
            "missing problem line \"p cnf v m\"",
        ));
    };
    if let Some(&(_, line)) = current.first() {
        return Err(parse_err(line, "clause is not terminated by 0"));
    }
    if clauses.len() != declared {
        return Err(parse_err(
            last_line.max(1),
            &format!(
                "header declares {declared} clauses, found {}",
                clauses.len()
            ),
        ));
    }
    CnfFormula::new(vars, clauses)
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        ["p", "cnf", v, m] => {
            let v = v
                .parse()
                .map_err(|_| parse_err(line_no, &format!("invalid variable count {v:?}")))?;
            let m = m
                .parse()
                .map_err(|_| parse_err(line_no, &format!("invalid clause count {m:?}")))?;
            Ok((v, m))
        }
        _ => Err(parse_err(
            line_no,
            "malformed problem line, expected \"p cnf v m\"",
        )),
    }
}

fn finish_clause(lits: &[(i64, usize)], number: usize) -> Result<Clause> {
    if lits.len() != 3 {
        return Err(Error::Restriction(format!(
            "clause {number} has {} literals, expected exactly 3",
            lits.len()
        )));
    }
    let clause = [0, 1, 2].map(|i| Literal::from_dimacs(lits[i].0).expect("nonzero literal"));
    Ok(clause)
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}
