//! Clause cutting and orthogonalization.
//!
//! A cut replaces `c` by the equivalent pair `(c ∨ v) ∧ (c ∨ ¬v)`. To make a
//! target clause orthogonal (in the inner-harmony sense) to a reference
//! clause, the target is cut successively at each reference literal it lacks;
//! every cut splits off a branch whose falsifying cube is disjoint from the
//! reference's, and the final branch contains the reference and is absorbed
//! by it.
//!
//! Every procedure here works on a [`Workspace`] that logs each edit, so the
//! resulting [`OrthogonalizationTrace`] can be replayed from the input.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::cnf::{Clause, Cnf, Literal, Var};
use crate::error::{Error, Result};
use crate::geometry::{self, phase_difference};
use crate::sat::{self, SolverChoice};
use crate::semantics::{self, Budget};

/// Default clause-count cap for [`orthogonalize_cnf`].
pub const DEFAULT_CLAUSE_CAP: usize = 1 << 16;

/// `(c ∨ v, c ∨ ¬v)`.
pub fn clause_cut(c: &Clause, v: Var) -> Result<(Clause, Clause)> {
    Ok((
        c.with_literal(Literal::pos(v))?,
        c.with_literal(Literal::neg(v))?,
    ))
}

/// Literals of `reference` missing from `target`, in canonical order, or
/// `None` when the two falsifying cubes are already disjoint.
fn missing_literals(target: &Clause, reference: &Clause) -> Option<Vec<Literal>> {
    if phase_difference(target, reference) > 0 {
        return None;
    }
    Some(
        reference
            .literals()
            .iter()
            .copied()
            .filter(|l| target.polarity_of(l.var()).is_none())
            .collect(),
    )
}

/// Splits `target` into clauses orthogonal to `reference`. With `l1..lk` the
/// reference literals absent from the target, the result is
/// `[t ∨ ¬l1, t ∨ l1 ∨ ¬l2, …, t ∨ l1 ∨ … ∨ ¬lk]`; the residual
/// `t ∨ l1 ∨ … ∨ lk` is implied by the reference and dropped.
pub fn orthogonalize_pair(target: &Clause, reference: &Clause) -> Result<Vec<Clause>> {
    let Some(missing) = missing_literals(target, reference) else {
        return Ok(vec![target.clone()]);
    };
    let mut out = Vec::with_capacity(missing.len());
    let mut rest = target.clone();
    for l in missing {
        out.push(rest.with_literal(!l)?);
        rest = rest.with_literal(l)?;
    }
    if !reference.subsumes(&rest) {
        return Err(Error::NotAbsorbable);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Step {
    /// Clause at `clause` becomes `c ∨ (var, polarity)`; its complement
    /// branch is inserted right after it.
    Cut {
        clause: usize,
        var: Var,
        polarity: bool,
    },
    /// `removed` is dropped because clause `by` subsumes it. Indices are
    /// positions before the removal.
    Absorb { removed: usize, by: usize },
    /// `clause` is dropped as an exact copy of clause `of`.
    Dedupe { clause: usize, of: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalizationTrace {
    pub input: Cnf,
    pub output: Cnf,
    pub steps: Vec<Step>,
}

impl OrthogonalizationTrace {
    pub fn cuts(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Cut { .. }))
            .count()
    }

    /// Re-applies the steps to the input.
    pub fn replay(&self) -> Result<Cnf> {
        replay(&self.input, &self.steps)
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("steps serialize"));
            out.push('\n');
        }
        out
    }
}

pub fn steps_from_jsonl(text: &str) -> Result<Vec<Step>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(Error::from))
        .collect()
}

pub fn replay(input: &Cnf, steps: &[Step]) -> Result<Cnf> {
    let mut ws = Workspace::new(input.clauses().to_vec());
    for (n, &step) in steps.iter().enumerate() {
        ws.apply(step).map_err(|e| Error::Replay {
            step: n,
            message: e.to_string(),
        })?;
    }
    input.with_clauses(ws.clauses)
}

/// Clause list under edit, recording every step.
#[derive(Debug)]
struct Workspace {
    clauses: Vec<Clause>,
    steps: Vec<Step>,
}

impl Workspace {
    fn new(clauses: Vec<Clause>) -> Self {
        Workspace {
            clauses,
            steps: Vec::new(),
        }
    }

    fn get(&self, index: usize) -> Result<&Clause> {
        self.clauses.get(index).ok_or(Error::ClauseIndexOutOfRange {
            index,
            len: self.clauses.len(),
        })
    }

    fn apply(&mut self, step: Step) -> Result<()> {
        match step {
            Step::Cut {
                clause,
                var,
                polarity,
            } => {
                let lit = Literal::new(var, polarity);
                let c = self.get(clause)?;
                let (first, second) = (c.with_literal(lit)?, c.with_literal(!lit)?);
                self.clauses[clause] = first;
                self.clauses.insert(clause + 1, second);
            }
            Step::Absorb { removed, by } => {
                let (r, b) = (self.get(removed)?, self.get(by)?);
                if removed == by || !b.subsumes(r) {
                    return Err(Error::NotAbsorbable);
                }
                self.clauses.remove(removed);
            }
            Step::Dedupe { clause, of } => {
                if clause == of || self.get(clause)? != self.get(of)? {
                    return Err(Error::Replay {
                        step: self.steps.len(),
                        message: format!("clause {clause} is not a copy of {of}"),
                    });
                }
                self.clauses.remove(clause);
            }
        }
        self.steps.push(step);
        Ok(())
    }

    fn cut(&mut self, clause: usize, lit: Literal) -> Result<()> {
        self.apply(Step::Cut {
            clause,
            var: lit.var(),
            polarity: lit.is_positive(),
        })
    }

    fn absorb(&mut self, removed: usize, by: usize) -> Result<()> {
        self.apply(Step::Absorb { removed, by })
    }

    fn dedupe(&mut self, clause: usize, of: usize) -> Result<()> {
        self.apply(Step::Dedupe { clause, of })
    }
}

fn require_muc(f: &Cnf, solver: SolverChoice) -> Result<()> {
    let verdict = sat::is_muc_deletion(f, solver)?;
    if verdict.is_muc {
        Ok(())
    } else {
        Err(Error::NotMuc {
            reason: serde_json::to_string(&verdict.reason)?,
        })
    }
}

/// Orthogonalizes a Horn MUC clause by clause, from the facts toward the
/// goal. Each clause is cut against every clause already finished, in the
/// order they were finished, and the residual branch of every cut is
/// absorbed by the clause it was cut against. Pieces stay at the position of
/// the clause they came from.
pub fn orthogonalize_horn_muc(f: &Cnf) -> Result<(Cnf, OrthogonalizationTrace)> {
    f.require_horn()?;
    require_muc(f, SolverChoice::Horn)?;
    let order = geometry::topological_order(&geometry::horn_order(f)?)?;

    let mut ws = Workspace::new(f.clauses().to_vec());
    // original clause index of every piece in the workspace
    let mut owner: Vec<usize> = (0..f.len()).collect();
    let mut finished: Vec<usize> = Vec::with_capacity(f.len());

    for &current in order.iter().rev() {
        let references: Vec<Clause> = finished
            .iter()
            .flat_map(|&o| {
                owner
                    .iter()
                    .zip(&ws.clauses)
                    .filter(move |(&w, _)| w == o)
                    .map(|(_, c)| c.clone())
            })
            .collect();
        for reference in &references {
            let mut p = 0;
            while p < ws.clauses.len() {
                if owner[p] != current {
                    p += 1;
                    continue;
                }
                let Some(missing) = missing_literals(&ws.clauses[p], reference) else {
                    p += 1;
                    continue;
                };
                for l in missing {
                    ws.cut(p, !l)?;
                    owner.insert(p + 1, current);
                    p += 1;
                }
                let by = (0..ws.clauses.len())
                    .find(|&q| owner[q] != current && ws.clauses[q] == *reference)
                    .expect("reference clause is in the workspace");
                ws.absorb(p, by)?;
                owner.remove(p);
            }
        }
        finished.push(current);
    }

    let output = f.with_clauses(ws.clauses)?;
    let trace = OrthogonalizationTrace {
        input: f.clone(),
        output: output.clone(),
        steps: ws.steps,
    };
    Ok((output, trace))
}

/// Clauses can be lined up so that each one's negative-variable set strictly
/// contains the previous one's.
pub fn total_order_check(f: &Cnf) -> bool {
    let mut negs: Vec<Vec<Var>> = f
        .clauses()
        .iter()
        .map(|c| c.negative_vars().collect())
        .collect();
    negs.sort_by_key(Vec::len);
    negs.windows(2)
        .all(|w| w[0].len() < w[1].len() && w[0].iter().all(|v| w[1].binary_search(v).is_ok()))
}

/// Literal set as bit masks, for the quadratic pair scans of the generic
/// procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
struct LitMask {
    pos: Vec<u64>,
    neg: Vec<u64>,
}

impl LitMask {
    fn of(c: &Clause, words: usize) -> Self {
        let mut m = LitMask {
            pos: vec![0; words],
            neg: vec![0; words],
        };
        for l in c.literals() {
            let i = (l.var() - 1) as usize;
            let side = if l.is_positive() {
                &mut m.pos
            } else {
                &mut m.neg
            };
            side[i / 64] |= 1 << (i % 64);
        }
        m
    }

    /// Opposite polarity on some shared variable (disjoint cubes).
    fn conflicts(&self, other: &LitMask) -> bool {
        (0..self.pos.len())
            .any(|w| self.pos[w] & other.neg[w] != 0 || self.neg[w] & other.pos[w] != 0)
    }

    fn subset_of(&self, other: &LitMask) -> bool {
        (0..self.pos.len())
            .all(|w| self.pos[w] & !other.pos[w] == 0 && self.neg[w] & !other.neg[w] == 0)
    }
}

/// Cuts and absorbs until no two clauses share a falsifying assignment.
///
/// Clauses are settled left to right. For the next unsettled clause `j`, the
/// lowest settled clause `i` whose cube meets `j`'s is handled:
/// a copy of `i` is deduplicated, a clause subsumed by `i` is absorbed, a
/// settled clause subsumed by `j` is absorbed, and otherwise `j` is cut at the
/// lowest variable of `i` it lacks, keeping the branch that conflicts with
/// `i` in place and deferring the other one.
pub fn orthogonalize_cnf(f: &Cnf, clause_cap: usize) -> Result<(Cnf, OrthogonalizationTrace)> {
    if sat::dpll_sat(f).satisfiable {
        return Err(Error::InputSatisfiable);
    }
    let words = (f.num_vars() as usize).div_ceil(64).max(1);
    let mut ws = Workspace::new(f.clauses().to_vec());
    let mut masks: Vec<LitMask> = ws.clauses.iter().map(|c| LitMask::of(c, words)).collect();

    let mut j = 0;
    'settle: while j < ws.clauses.len() {
        let mut i = 0;
        while i < j {
            if masks[i].conflicts(&masks[j]) {
                i += 1;
                continue;
            }
            if masks[i].subset_of(&masks[j]) {
                if masks[i] == masks[j] {
                    ws.dedupe(j, i)?;
                } else {
                    ws.absorb(j, i)?;
                }
                masks.remove(j);
                continue 'settle;
            }
            if masks[j].subset_of(&masks[i]) {
                ws.absorb(i, j)?;
                masks.remove(i);
                j -= 1;
                continue;
            }
            let split = ws.clauses[i]
                .literals()
                .iter()
                .copied()
                .find(|l| ws.clauses[j].polarity_of(l.var()).is_none())
                .expect("clause not contained in j has a variable j lacks");
            ws.cut(j, !split)?;
            masks[j] = LitMask::of(&ws.clauses[j], words);
            masks.insert(j + 1, LitMask::of(&ws.clauses[j + 1], words));
            if ws.clauses.len() > clause_cap {
                return Err(Error::ClauseCapExceeded { cap: clause_cap });
            }
            i += 1;
        }
        j += 1;
    }

    let output = f.with_clauses(ws.clauses)?;
    let trace = OrthogonalizationTrace {
        input: f.clone(),
        output: output.clone(),
        steps: ws.steps,
    };
    Ok((output, trace))
}

/// Every assignment falsifies exactly one clause. Exhaustive over the
/// assignment space via falsifying-cube enumeration.
pub fn verify_orthogonal_muc(f: &Cnf, budget: Budget) -> Result<bool> {
    Ok(semantics::falsification_counts(f, budget)?
        .iter()
        .all(|&c| c == 1))
}

/// One measured orthogonalization run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthRecord {
    pub n: u32,
    pub input_clauses: usize,
    pub input_vars: u32,
    pub output_clauses: usize,
    pub steps: usize,
    #[serde(with = "duration_ms")]
    pub wall_time: Duration,
}

mod duration_ms {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64() * 1e3)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let ms = f64::deserialize(d)?;
        Ok(Duration::from_secs_f64(ms.max(0.0) / 1e3))
    }
}
