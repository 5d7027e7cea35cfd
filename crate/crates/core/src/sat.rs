//! Satisfiability deciders and MUC checks.
//!
//! Three deciders with different reach: exhaustive enumeration (the oracle
//! every other routine is tested against), a plain DPLL, and linear-time unit
//! propagation for Horn formulas. MUC membership is decided two ways: by
//! clause deletion, and from the classification of all assignments (a CNF is
//! a MUC iff no assignment satisfies every clause while every clause is the
//! sole false clause under some assignment).

use serde::Serialize;

use crate::cnf::{Clause, Cnf, Var};
use crate::error::{Error, Result};
use crate::semantics::{self, Assignment, Budget};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SatResult {
    pub satisfiable: bool,
    pub witness: Option<Assignment>,
}

impl SatResult {
    fn sat(witness: Assignment) -> Self {
        SatResult {
            satisfiable: true,
            witness: Some(witness),
        }
    }

    fn unsat() -> Self {
        SatResult {
            satisfiable: false,
            witness: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    BruteForce(Budget),
    Dpll,
    Horn,
}

pub fn solve(f: &Cnf, solver: SolverChoice) -> Result<SatResult> {
    match solver {
        SolverChoice::BruteForce(budget) => brute_force_sat(f, budget),
        SolverChoice::Dpll => Ok(dpll_sat(f)),
        SolverChoice::Horn => horn_sat(f),
    }
}

/// First satisfying assignment in index order.
pub fn brute_force_sat(f: &Cnf, budget: Budget) -> Result<SatResult> {
    let points = budget.space(f.num_vars(), f.len())?;
    let masks = semantics::masks(f);
    Ok((0..points)
        .find(|&i| masks.iter().all(|m| m.eval(i)))
        .map_or_else(SatResult::unsat, |i| {
            SatResult::sat(Assignment::from_index(i, f.num_vars()))
        }))
}

/// DPLL with unit propagation. Branches on the lowest-numbered variable of
/// an unsatisfied clause, true first; unassigned variables end up false.
pub fn dpll_sat(f: &Cnf) -> SatResult {
    let mut values = vec![None; f.num_vars() as usize + 1];
    if dpll(f.clauses(), &mut values) {
        let bits = values[1..].iter().map(|v| v.unwrap_or(false)).collect();
        SatResult::sat(Assignment::new(bits))
    } else {
        SatResult::unsat()
    }
}

enum ClauseState {
    Satisfied,
    Conflict,
    Unit(Var, bool),
    Open,
}

fn clause_state(c: &Clause, values: &[Option<bool>]) -> ClauseState {
    let mut unassigned = None;
    let mut open = 0;
    for l in c.literals() {
        match values[l.var() as usize] {
            Some(v) if l.eval(v) => return ClauseState::Satisfied,
            Some(_) => {}
            None => {
                open += 1;
                unassigned = Some(*l);
            }
        }
    }
    match (open, unassigned) {
        (0, _) => ClauseState::Conflict,
        (1, Some(l)) => ClauseState::Unit(l.var(), l.is_positive()),
        _ => ClauseState::Open,
    }
}

fn dpll(clauses: &[Clause], values: &mut Vec<Option<bool>>) -> bool {
    loop {
        let mut propagated = false;
        for c in clauses {
            match clause_state(c, values) {
                ClauseState::Conflict => return false,
                ClauseState::Unit(var, value) => {
                    values[var as usize] = Some(value);
                    propagated = true;
                }
                ClauseState::Satisfied | ClauseState::Open => {}
            }
        }
        if !propagated {
            break;
        }
    }
    let branch_var = clauses
        .iter()
        .filter(|c| matches!(clause_state(c, values), ClauseState::Open))
        .flat_map(|c| c.vars())
        .filter(|&v| values[v as usize].is_none())
        .min();
    let Some(var) = branch_var else {
        return true;
    };
    for value in [true, false] {
        let mut trial = values.clone();
        trial[var as usize] = Some(value);
        if dpll(clauses, &mut trial) {
            *values = trial;
            return true;
        }
    }
    false
}

/// Unit propagation to fixpoint. The witness is the least model: exactly the
/// derived variables are true.
pub fn horn_sat(f: &Cnf) -> Result<SatResult> {
    f.require_horn()?;
    let n = f.num_vars() as usize;
    let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut remaining = Vec::with_capacity(f.len());
    for (i, c) in f.clauses().iter().enumerate() {
        let mut count = 0;
        for v in c.negative_vars() {
            watchers[v as usize].push(i);
            count += 1;
        }
        remaining.push(count);
    }

    let mut truth = vec![false; n + 1];
    let mut queue = Vec::new();
    let fire = |clause: usize, truth: &mut [bool], queue: &mut Vec<Var>| -> bool {
        match f.clauses()[clause].horn_head() {
            Some(head) => {
                if !truth[head as usize] {
                    truth[head as usize] = true;
                    queue.push(head);
                }
                true
            }
            None => false,
        }
    };
    for (i, &left) in remaining.iter().enumerate() {
        if left == 0 && !fire(i, &mut truth, &mut queue) {
            return Ok(SatResult::unsat());
        }
    }
    while let Some(v) = queue.pop() {
        for &i in &watchers[v as usize] {
            remaining[i] -= 1;
            if remaining[i] == 0 && !fire(i, &mut truth, &mut queue) {
                return Ok(SatResult::unsat());
            }
        }
    }
    Ok(SatResult::sat(Assignment::new(truth[1..].to_vec())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "failing_reason", content = "clause", rename_all = "kebab-case")]
pub enum MucReason {
    Ok,
    Satisfiable,
    NotMinimal(usize),
    DuplicateClause(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MucVerdict {
    pub is_muc: bool,
    #[serde(flatten)]
    pub reason: MucReason,
}

impl MucVerdict {
    fn from_reason(reason: MucReason) -> Self {
        MucVerdict {
            is_muc: reason == MucReason::Ok,
            reason,
        }
    }
}

/// Unsatisfiable, and satisfiable after deleting any one clause.
pub fn is_muc_deletion(f: &Cnf, solver: SolverChoice) -> Result<MucVerdict> {
    if let Some(i) = f.first_duplicate() {
        return Ok(MucVerdict::from_reason(MucReason::DuplicateClause(i)));
    }
    if solve(f, solver)?.satisfiable {
        return Ok(MucVerdict::from_reason(MucReason::Satisfiable));
    }
    for i in 0..f.len() {
        if !solve(&f.without_clause(i), solver)?.satisfiable {
            return Ok(MucVerdict::from_reason(MucReason::NotMinimal(i)));
        }
    }
    Ok(MucVerdict::from_reason(MucReason::Ok))
}

/// No assignment satisfies every clause, and for every clause some
/// assignment falsifies it alone.
pub fn is_muc_classification(f: &Cnf, budget: Budget) -> Result<MucVerdict> {
    if let Some(i) = f.first_duplicate() {
        return Ok(MucVerdict::from_reason(MucReason::DuplicateClause(i)));
    }
    let report = semantics::classify(f, budget)?;
    let reason = if report.has_all_true {
        MucReason::Satisfiable
    } else {
        match (0..f.len()).find(|i| !report.cyclic_realized.contains(i)) {
            Some(i) => MucReason::NotMinimal(i),
            None => MucReason::Ok,
        }
    };
    Ok(MucVerdict::from_reason(reason))
}

/// Deletion-based extraction: scans clauses in index order and drops each
/// one whose removal keeps the formula unsatisfiable.
pub fn shrink_to_muc(f: &Cnf, solver: SolverChoice) -> Result<Cnf> {
    if solve(f, solver)?.satisfiable {
        return Err(Error::InputSatisfiable);
    }
    let mut core = f.clone();
    let mut i = 0;
    while i < core.len() {
        let candidate = core.without_clause(i);
        if solve(&candidate, solver)?.satisfiable {
            i += 1;
        } else {
            core = candidate;
        }
    }
    Ok(core)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnf(n: u32, cs: &[&[i64]]) -> Cnf {
        Cnf::from_dimacs_clauses(n, cs).unwrap()
    }

    fn o3() -> Cnf {
        cnf(3, &[&[1, 2, 3], &[1, -2, -3], &[-1, 2, -3], &[-1, -2, 3]])
    }

    fn o3_and_e3() -> Cnf {
        let mut cs = o3().into_clauses();
        for c in [[-1, -2, -3], [-1, 2, 3], [1, -2, 3], [1, 2, -3]] {
            cs.push(Clause::from_dimacs(&c).unwrap());
        }
        Cnf::new(3, cs).unwrap()
    }

    fn chain() -> Cnf {
        cnf(3, &[&[1], &[-1, 2], &[-2, 3], &[-3]])
    }

    #[test]
    fn brute_force_cases() {
        let b = Budget::DEFAULT;
        assert!(
            !brute_force_sat(&cnf(1, &[&[1], &[-1]]), b)
                .unwrap()
                .satisfiable
        );
        let r = brute_force_sat(&o3(), b).unwrap();
        assert_eq!(r.witness.unwrap().to_string(), "100");
        assert!(!brute_force_sat(&o3_and_e3(), b).unwrap().satisfiable);
    }

    #[test]
    fn dpll_cases() {
        assert!(!dpll_sat(&cnf(1, &[&[1], &[-1]])).satisfiable);
        let r = dpll_sat(&o3());
        assert!(semantics::eval_cnf(&o3(), r.witness.as_ref().unwrap()).unwrap());
        assert!(!dpll_sat(&o3_and_e3()).satisfiable);
        assert!(dpll_sat(&Cnf::new(2, vec![]).unwrap()).satisfiable);
        assert!(!dpll_sat(&Cnf::new(0, vec![Clause::empty()]).unwrap()).satisfiable);
    }

    #[test]
    fn horn_cases() {
        assert!(!horn_sat(&chain()).unwrap().satisfiable);
        let r = horn_sat(&cnf(2, &[&[1], &[-1, 2]])).unwrap();
        assert_eq!(r.witness.unwrap().to_string(), "11");
        assert!(matches!(horn_sat(&o3()), Err(Error::NotHorn { clause: 0 })));
        // least model leaves underived variables false
        let r = horn_sat(&cnf(3, &[&[-2, 3], &[1]])).unwrap();
        assert_eq!(r.witness.unwrap().to_string(), "100");
    }

    #[test]
    fn deletion_checker() {
        let v = is_muc_deletion(&cnf(1, &[&[1], &[-1]]), SolverChoice::Dpll).unwrap();
        assert!(v.is_muc);
        let v = is_muc_deletion(&cnf(2, &[&[1], &[-1], &[2]]), SolverChoice::Dpll).unwrap();
        assert_eq!(v.reason, MucReason::NotMinimal(2));
        let split = cnf(
            4,
            &[
                &[1],
                &[-1, 2],
                &[-2, -3, -4],
                &[-2, 3, 4],
                &[3, -4],
                &[-3, 4],
            ],
        );
        assert!(
            is_muc_deletion(&split, SolverChoice::BruteForce(Budget::DEFAULT))
                .unwrap()
                .is_muc
        );
        let dup = cnf(1, &[&[1], &[-1], &[1]]);
        assert_eq!(
            is_muc_deletion(&dup, SolverChoice::Dpll).unwrap().reason,
            MucReason::DuplicateClause(2)
        );
    }

    #[test]
    fn classification_checker() {
        let b = Budget::DEFAULT;
        assert!(
            is_muc_classification(&cnf(1, &[&[1], &[-1]]), b)
                .unwrap()
                .is_muc
        );
        assert!(is_muc_classification(&chain(), b).unwrap().is_muc);
        assert_eq!(
            is_muc_classification(&o3(), b).unwrap().reason,
            MucReason::Satisfiable
        );
    }

    #[test]
    fn verdict_json() {
        let v = MucVerdict::from_reason(MucReason::NotMinimal(2));
        assert_eq!(
            serde_json::to_value(v).unwrap(),
            serde_json::json!({"is_muc": false, "failing_reason": "not-minimal", "clause": 2})
        );
        let v = MucVerdict::from_reason(MucReason::Ok);
        assert_eq!(
            serde_json::to_value(v).unwrap(),
            serde_json::json!({"is_muc": true, "failing_reason": "ok"})
        );
    }

    #[test]
    fn shrink_cases() {
        let f = cnf(2, &[&[1], &[-1], &[2]]);
        assert_eq!(
            shrink_to_muc(&f, SolverChoice::Dpll).unwrap(),
            cnf(2, &[&[1], &[-1]])
        );
        assert_eq!(
            shrink_to_muc(&chain(), SolverChoice::Dpll).unwrap(),
            chain()
        );
        assert!(matches!(
            shrink_to_muc(&o3(), SolverChoice::Dpll),
            Err(Error::InputSatisfiable)
        ));
    }
}
