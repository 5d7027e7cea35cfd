//! Canonical clause-set representation.
//!
//! Variables are 1-based DIMACS ids. A [`Clause`] keeps its literals sorted by
//! `(var, polarity)` and never contains a variable twice, so structural
//! equality of clauses is logical identity of the literal sets. A [`Cnf`]
//! keeps its clauses in insertion order: position `i` is bit `i` of every
//! logical value vector computed against it.

use std::collections::HashMap;
use std::fmt;
use std::ops::Not;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Var = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: Var,
    positive: bool,
}

impl Literal {
    /// Panics if `var` is zero.
    pub fn new(var: Var, positive: bool) -> Self {
        assert!(var >= 1, "variable ids start at 1");
        Literal { var, positive }
    }

    pub fn pos(var: Var) -> Self {
        Literal::new(var, true)
    }

    pub fn neg(var: Var) -> Self {
        Literal::new(var, false)
    }

    /// `None` for the terminator `0` or values outside the `u32` range.
    pub fn from_dimacs(value: i64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        let var = Var::try_from(value.unsigned_abs()).ok()?;
        Some(Literal::new(var, value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            i64::from(self.var)
        } else {
            -i64::from(self.var)
        }
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    /// Truth value of the literal when its variable takes `value`.
    pub fn eval(self, value: bool) -> bool {
        value == self.positive
    }
}

impl Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "¬x{}", self.var)
        }
    }
}

impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.to_dimacs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HornKind {
    /// Only positive literals.
    Fact,
    /// Exactly one positive literal and at least one negative one.
    Rule,
    /// Only negative literals; includes the empty clause.
    Goal,
    /// Two or more positive literals.
    NonHorn,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    /// Sorts and deduplicates `raw`; rejects tautologies.
    pub fn new(raw: impl IntoIterator<Item = Literal>) -> Result<Self> {
        let mut lits: Vec<Literal> = raw.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        if let Some(w) = lits.windows(2).find(|w| w[0].var == w[1].var) {
            return Err(Error::TautologicalClause { var: w[0].var });
        }
        Ok(Clause { lits })
    }

    /// Builds a clause from signed DIMACS literals. Panics on `0`.
    pub fn from_dimacs(lits: &[i64]) -> Result<Self> {
        Clause::new(
            lits.iter()
                .map(|&l| Literal::from_dimacs(l).expect("0 is not a literal")),
        )
    }

    pub fn empty() -> Self {
        Clause::default()
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var)
    }

    pub fn max_var(&self) -> Var {
        self.lits.last().map_or(0, |l| l.var)
    }

    /// Polarity with which `var` occurs, if it occurs.
    pub fn polarity_of(&self, var: Var) -> Option<bool> {
        self.lits
            .binary_search_by_key(&var, |l| l.var)
            .ok()
            .map(|i| self.lits[i].positive)
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.polarity_of(lit.var) == Some(lit.positive)
    }

    /// `self ∨ lit`. Fails if `lit`'s variable already occurs.
    pub fn with_literal(&self, lit: Literal) -> Result<Clause> {
        match self.lits.binary_search_by_key(&lit.var, |l| l.var) {
            Ok(_) => Err(Error::VariableAlreadyPresent { var: lit.var }),
            Err(pos) => {
                let mut lits = self.lits.clone();
                lits.insert(pos, lit);
                Ok(Clause { lits })
            }
        }
    }

    /// `literals(self) ⊆ literals(other)`, i.e. `self` implies `other`.
    pub fn subsumes(&self, other: &Clause) -> bool {
        if self.lits.len() > other.lits.len() {
            return false;
        }
        let mut rest = other.lits.iter();
        'outer: for l in &self.lits {
            for m in rest.by_ref() {
                if m == l {
                    continue 'outer;
                }
                if m > l {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn horn_kind(&self) -> HornKind {
        let positives = self.lits.iter().filter(|l| l.positive).count();
        match positives {
            0 => HornKind::Goal,
            1 if self.lits.len() == 1 => HornKind::Fact,
            1 => HornKind::Rule,
            _ => HornKind::NonHorn,
        }
    }

    /// The unique positive literal of a fact or rule clause.
    pub fn horn_head(&self) -> Option<Var> {
        let mut it = self.lits.iter().filter(|l| l.positive);
        let head = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some(head.var)
    }

    pub fn negative_vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().filter(|l| !l.positive).map(|l| l.var)
    }

    /// True iff some literal holds under `value_of`.
    pub fn eval_with(&self, value_of: impl Fn(Var) -> bool) -> bool {
        self.lits.iter().any(|l| l.eval(value_of(l.var)))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∨ ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for Clause {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(&self.lits)
    }
}

/// Free-function form of [`Clause::new`].
pub fn normalize_clause(raw: impl IntoIterator<Item = Literal>) -> Result<Clause> {
    Clause::new(raw)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Cnf {
    num_vars: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    main_vars: Option<u32>,
    clauses: Vec<Clause>,
}

impl Cnf {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Self> {
        if let Some(var) = clauses.iter().map(Clause::max_var).max() {
            if var > num_vars {
                return Err(Error::VariableOutOfRange { var, num_vars });
            }
        }
        Ok(Cnf {
            num_vars,
            main_vars: None,
            clauses,
        })
    }

    /// `num_vars` is the largest variable referenced.
    pub fn from_clauses(clauses: Vec<Clause>) -> Self {
        let num_vars = clauses.iter().map(Clause::max_var).max().unwrap_or(0);
        Cnf {
            num_vars,
            main_vars: None,
            clauses,
        }
    }

    /// Test and example helper: clauses as signed DIMACS literal lists.
    pub fn from_dimacs_clauses(num_vars: u32, clauses: &[&[i64]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| Clause::from_dimacs(c))
            .collect::<Result<Vec<_>>>()?;
        Cnf::new(num_vars, clauses)
    }

    /// Marks the first `k` variables as "main"; the rest are auxiliary.
    pub fn with_main_vars(mut self, k: u32) -> Result<Self> {
        if k > self.num_vars {
            return Err(Error::VariableOutOfRange {
                var: k,
                num_vars: self.num_vars,
            });
        }
        self.main_vars = Some(k);
        Ok(self)
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, index: usize) -> Result<&Clause> {
        self.clauses.get(index).ok_or(Error::ClauseIndexOutOfRange {
            index,
            len: self.clauses.len(),
        })
    }

    pub fn into_clauses(self) -> Vec<Clause> {
        self.clauses
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn main_vars(&self) -> Option<u32> {
        self.main_vars
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn literal_count(&self) -> usize {
        self.clauses.iter().map(Clause::len).sum()
    }

    /// Same variable universe, clause `index` removed.
    pub fn without_clause(&self, index: usize) -> Cnf {
        let mut clauses = self.clauses.clone();
        clauses.remove(index);
        Cnf {
            num_vars: self.num_vars,
            main_vars: self.main_vars,
            clauses,
        }
    }

    /// Same variable universe, different clause list.
    pub fn with_clauses(&self, clauses: Vec<Clause>) -> Result<Cnf> {
        let mut out = Cnf::new(self.num_vars, clauses)?;
        out.main_vars = self.main_vars;
        Ok(out)
    }

    /// Index of the first clause equal to an earlier one.
    pub fn first_duplicate(&self) -> Option<usize> {
        let mut seen = HashMap::with_capacity(self.clauses.len());
        self.clauses
            .iter()
            .enumerate()
            .find_map(|(i, c)| seen.insert(c, i).map(|_| i))
    }

    pub fn is_horn(&self) -> bool {
        self.first_non_horn().is_none()
    }

    pub fn first_non_horn(&self) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| c.horn_kind() == HornKind::NonHorn)
    }

    pub(crate) fn require_horn(&self) -> Result<()> {
        match self.first_non_horn() {
            Some(clause) => Err(Error::NotHorn { clause }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("⊤");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∧ ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn horn_kind(c: &Clause) -> HornKind {
    c.horn_kind()
}

pub fn is_horn(cnf: &Cnf) -> bool {
    cnf.is_horn()
}

pub fn subsumes(a: &Clause, b: &Clause) -> bool {
    a.subsumes(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(lits: &[i64]) -> Clause {
        Clause::from_dimacs(lits).unwrap()
    }

    #[test]
    fn normalize_dedups_and_sorts() {
        let got = normalize_clause([Literal::pos(1), Literal::pos(1), Literal::neg(2)]).unwrap();
        assert_eq!(got.literals(), &[Literal::pos(1), Literal::neg(2)]);
        assert_eq!(c(&[-3, 1, 2]).literals()[0], Literal::pos(1));
    }

    #[test]
    fn normalize_empty() {
        assert!(normalize_clause([]).unwrap().is_empty());
    }

    #[test]
    fn normalize_rejects_tautology() {
        let err = normalize_clause([Literal::pos(1), Literal::neg(1)]).unwrap_err();
        assert!(matches!(err, Error::TautologicalClause { var: 1 }));
    }

    #[test]
    fn horn_kinds() {
        assert_eq!(c(&[1]).horn_kind(), HornKind::Fact);
        assert_eq!(c(&[-1, 2]).horn_kind(), HornKind::Rule);
        assert_eq!(c(&[1, 2, 3]).horn_kind(), HornKind::NonHorn);
        assert_eq!(c(&[-1, -2]).horn_kind(), HornKind::Goal);
        assert_eq!(Clause::empty().horn_kind(), HornKind::Goal);
        // two positives plus a negative is still non-Horn
        assert_eq!(c(&[1, 2, -3]).horn_kind(), HornKind::NonHorn);
    }

    #[test]
    fn is_horn_cases() {
        let chain = Cnf::from_dimacs_clauses(3, &[&[1], &[-1, 2], &[-2, 3], &[-3]]).unwrap();
        assert!(chain.is_horn());
        let o3 =
            Cnf::from_dimacs_clauses(3, &[&[1, 2, 3], &[1, -2, -3], &[-1, 2, -3], &[-1, -2, 3]])
                .unwrap();
        assert!(!o3.is_horn());
        assert_eq!(o3.first_non_horn(), Some(0));
        assert!(Cnf::default().is_horn());
    }

    #[test]
    fn subsumption_cases() {
        assert!(c(&[1]).subsumes(&c(&[1, -2, 3])));
        assert!(c(&[-1, 2]).subsumes(&c(&[-1, 2, -3])));
        assert!(!c(&[1]).subsumes(&c(&[-1])));
        assert!(Clause::empty().subsumes(&c(&[4])));
        assert!(!c(&[1, 3]).subsumes(&c(&[1, 2])));
    }

    #[test]
    fn with_literal_rejects_present_var() {
        assert!(matches!(
            c(&[1]).with_literal(Literal::neg(1)),
            Err(Error::VariableAlreadyPresent { var: 1 })
        ));
        assert_eq!(
            c(&[1, 3]).with_literal(Literal::neg(2)).unwrap(),
            c(&[1, -2, 3])
        );
    }

    #[test]
    fn cnf_rejects_out_of_range_var() {
        let err = Cnf::from_dimacs_clauses(2, &[&[3]]).unwrap_err();
        assert!(matches!(
            err,
            Error::VariableOutOfRange {
                var: 3,
                num_vars: 2
            }
        ));
    }

    #[test]
    fn duplicate_detection() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1], &[2, -1], &[-1, 2]]).unwrap();
        assert_eq!(f.first_duplicate(), Some(2));
    }
}
