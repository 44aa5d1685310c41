//! CNF formulas and the DIMACS text format.

use std::io::{self, Write};

use thiserror::Error;

/// A clause: a disjunction of non-zero signed DIMACS literals.
pub type Clause = Vec<i32>;

/// A CNF formula over variables `1..=num_vars`.
#[derive(Debug, Clone, Default)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Grows the variable range to include `var`.
    pub fn ensure_var(&mut self, var: usize) {
        self.num_vars = self.num_vars.max(var);
    }

    pub fn push(&mut self, clause: Clause) {
        debug_assert!(!clause.is_empty(), "empty clause added at build time");
        debug_assert!(clause.iter().all(|&l| {
            l != 0 && l.unsigned_abs() as usize <= self.num_vars
        }));
        debug_assert!(
            {
                let mut lits = clause.clone();
                lits.sort_unstable();
                lits.windows(2).all(|w| w[0] != w[1])
            },
            "duplicate literal in clause"
        );
        self.clauses.push(clause);
    }

    pub fn push_unit(&mut self, lit: i32) {
        self.push(vec![lit]);
    }

    /// True iff `assignment` (indexed by variable, `assignment[v-1]`)
    /// satisfies every clause.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let val = assignment[lit.unsigned_abs() as usize - 1];
                (lit > 0) == val
            })
        })
    }

    /// Writes the formula in DIMACS format and returns the byte count.
    /// Output is deterministic byte-for-byte for a given formula.
    pub fn write_dimacs(&self, sink: &mut impl Write) -> io::Result<u64> {
        use std::fmt::Write as _;
        let mut count = CountingWriter { inner: sink, written: 0 };
        writeln!(count, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        let mut line = String::new();
        for clause in &self.clauses {
            line.clear();
            for lit in clause {
                write!(line, "{lit} ").unwrap();
            }
            line.push('0');
            writeln!(count, "{line}")?;
        }
        Ok(count.written)
    }

    pub fn to_dimacs_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_dimacs(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }
}

struct CountingWriter<'a, W: Write> {
    inner: &'a mut W,
    written: u64,
}

impl<W: Write> Write for CountingWriter<'_, W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.written += n as u64;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("malformed header line: {0:?}")]
    BadHeader(String),
    #[error("malformed literal: {0:?}")]
    BadLiteral(String),
    #[error("clause not terminated by 0")]
    UnterminatedClause,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Header of a DIMACS file: declared variable and clause counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimacsHeader {
    pub num_vars: usize,
    pub num_clauses: usize,
}

/// Parses just the `p cnf V C` header line.
pub fn parse_dimacs_header(text: &str) -> Result<DimacsHeader, DimacsError> {
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            let mut it = rest.split_whitespace();
            let nv = it.next().and_then(|t| t.parse().ok());
            let nc = it.next().and_then(|t| t.parse().ok());
            return match (nv, nc) {
                (Some(num_vars), Some(num_clauses)) => Ok(DimacsHeader { num_vars, num_clauses }),
                _ => Err(DimacsError::BadHeader(line.to_string())),
            };
        }
        return Err(DimacsError::MissingHeader);
    }
    Err(DimacsError::MissingHeader)
}

/// Parses a full DIMACS document into a formula.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let header = parse_dimacs_header(text)?;
    let mut formula = CnfFormula::new(header.num_vars);
    let mut clause = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('p') {
            continue;
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| DimacsError::BadLiteral(tok.to_string()))?;
            if lit == 0 {
                formula.ensure_var(clause.iter().map(|l: &i32| l.unsigned_abs() as usize).max().unwrap_or(0));
                formula.push(std::mem::take(&mut clause));
            } else {
                clause.push(lit);
            }
        }
    }
    if !clause.is_empty() {
        return Err(DimacsError::UnterminatedClause);
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_standard_form() {
        let mut f = CnfFormula::new(4);
        f.push(vec![1, 2, 3, 4]);
        f.push(vec![1, -3]);
        f.push(vec![-2, 3]);
        assert_eq!(f.to_dimacs_string(), "p cnf 4 3\n1 2 3 4 0\n1 -3 0\n-2 3 0\n");
    }

    #[test]
    fn empty_formula() {
        let f = CnfFormula::new(0);
        assert_eq!(f.to_dimacs_string(), "p cnf 0 0\n");
    }

    #[test]
    fn byte_count_matches() {
        let mut f = CnfFormula::new(2);
        f.push(vec![1, -2]);
        let mut buf = Vec::new();
        let n = f.write_dimacs(&mut buf).unwrap();
        assert_eq!(n as usize, buf.len());
    }

    #[test]
    fn parse_round_trip() {
        let mut f = CnfFormula::new(4);
        f.push(vec![1, 2, 3, 4]);
        f.push(vec![1, -3]);
        f.push(vec![-2, 3]);
        let text = f.to_dimacs_string();
        let parsed = parse_dimacs(&text).unwrap();
        assert_eq!(parsed.num_vars(), 4);
        assert_eq!(parsed.clauses(), f.clauses());
        let header = parse_dimacs_header(&text).unwrap();
        assert_eq!(header, DimacsHeader { num_vars: 4, num_clauses: 3 });
    }

    #[test]
    fn evaluator() {
        let mut f = CnfFormula::new(4);
        f.push(vec![1, 2, 3, 4]);
        f.push(vec![1, -3]);
        f.push(vec![-2, 3]);
        assert!(f.is_satisfied_by(&[true, false, true, false]));
        assert!(!f.is_satisfied_by(&[false, true, false, false]));
    }
}
