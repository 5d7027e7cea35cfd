//! Clause geometry on the boolean cube.
//!
//! A clause is false on exactly one subcube: every clause variable fixed to
//! the complement of its literal. The clause *cycle* is the number of fixed
//! coordinates, and the *phase difference* of two clauses is the Hamming
//! distance between their falsifying subcubes, which is the number of shared
//! variables on which the two clauses have opposite polarity.
//!
//! Two inner products are defined on clause pairs. The inner product asks for
//! a common satisfying assignment; the inner harmony asks that no assignment
//! falsifies both. Both are decided here by enumeration over the union of the
//! two clauses' variables, independently of the combinatorial phase count.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use serde::Serialize;

use crate::cnf::{Clause, Cnf, Var};
use crate::error::{Error, Result};
use crate::semantics::{self, Budget};

/// The falsifying subcube of a clause; the empty map is the whole space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cube {
    pub fixed: BTreeMap<Var, bool>,
}

impl Cube {
    pub fn contains(&self, value_of: impl Fn(Var) -> bool) -> bool {
        self.fixed.iter().all(|(&v, &b)| value_of(v) == b)
    }
}

pub fn clause_cycle(c: &Clause) -> usize {
    c.len()
}

pub fn falsifying_cube(c: &Clause) -> Cube {
    Cube {
        fixed: c
            .literals()
            .iter()
            .map(|l| (l.var(), !l.is_positive()))
            .collect(),
    }
}

/// Shared variables on which `a` and `b` have opposite polarity.
pub fn phase_difference(a: &Clause, b: &Clause) -> usize {
    let (mut i, mut j) = (0, 0);
    let (la, lb) = (a.literals(), b.literals());
    let mut diff = 0;
    while i < la.len() && j < lb.len() {
        match la[i].var().cmp(&lb[j].var()) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if la[i].is_positive() != lb[j].is_positive() {
                    diff += 1;
                }
                i += 1;
                j += 1;
            }
        }
    }
    diff
}

/// Enumerates assignments over `vars(a) ∪ vars(b)`, calling `hit` with the
/// truth values of `a` and `b`; stops when `hit` returns true.
fn any_joint(
    a: &Clause,
    b: &Clause,
    budget: Budget,
    hit: impl Fn(bool, bool) -> bool,
) -> Result<bool> {
    let vars: Vec<Var> = a
        .vars()
        .chain(b.vars())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let points = budget.space(vars.len() as u32, 2)?;
    let slot: BTreeMap<Var, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    Ok((0..points).any(|index| {
        let value_of = |v: Var| index >> slot[&v] & 1 == 1;
        hit(a.eval_with(value_of), b.eval_with(value_of))
    }))
}

/// True iff some assignment satisfies both clauses.
pub fn inner_product(a: &Clause, b: &Clause, budget: Budget) -> Result<bool> {
    any_joint(a, b, budget, |x, y| x && y)
}

/// True iff no assignment falsifies both clauses.
pub fn inner_harmony(a: &Clause, b: &Clause, budget: Budget) -> Result<bool> {
    Ok(!any_joint(a, b, budget, |x, y| !x && !y)?)
}

/// Inner product of a whole CNF: some assignment satisfies every clause.
pub fn cnf_inner_product(f: &Cnf, budget: Budget) -> Result<bool> {
    let points = budget.space(f.num_vars(), f.len())?;
    let masks = semantics::masks(f);
    Ok((0..points).any(|i| masks.iter().all(|m| m.eval(i))))
}

/// Inner harmony of a whole CNF: no assignment falsifies two or more clauses.
pub fn cnf_inner_harmony(f: &Cnf, budget: Budget) -> Result<bool> {
    let points = budget.space(f.num_vars(), f.len())?;
    let masks = semantics::masks(f);
    Ok((0..points).all(|i| masks.iter().filter(|m| !m.eval(i)).nth(1).is_none()))
}

/// Edges `i -> j` where clause `i` contains `¬v` and `v` is the head (unique
/// positive literal) of clause `j`. Goal clauses are sources, facts sinks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HornOrderGraph {
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl HornOrderGraph {
    pub fn successors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .filter(move |(s, _)| *s == node)
            .map(|&(_, t)| t)
    }

    pub fn is_acyclic(&self) -> bool {
        topological_order(self).is_ok()
    }
}

pub fn horn_order(f: &Cnf) -> Result<HornOrderGraph> {
    f.require_horn()?;
    let mut heads: BTreeMap<Var, Vec<usize>> = BTreeMap::new();
    for (j, c) in f.clauses().iter().enumerate() {
        if let Some(h) = c.horn_head() {
            heads.entry(h).or_default().push(j);
        }
    }
    let mut edges = Vec::new();
    for (i, c) in f.clauses().iter().enumerate() {
        for v in c.negative_vars() {
            for &j in heads.get(&v).into_iter().flatten() {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(HornOrderGraph {
        nodes: (0..f.len()).collect(),
        edges,
    })
}

/// Kahn's algorithm, smallest ready clause index first. Goal-side clauses
/// come before the facts they depend on.
pub fn topological_order(g: &HornOrderGraph) -> Result<Vec<usize>> {
    let mut indegree: BTreeMap<usize, usize> = g.nodes.iter().map(|&n| (n, 0)).collect();
    for &(_, t) in &g.edges {
        *indegree.get_mut(&t).expect("edge target is a node") += 1;
    }
    let mut ready: BinaryHeap<Reverse<usize>> = indegree
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&n, _)| Reverse(n))
        .collect();
    let mut order = Vec::with_capacity(g.nodes.len());
    while let Some(Reverse(n)) = ready.pop() {
        order.push(n);
        for t in g.successors(n) {
            let d = indegree.get_mut(&t).expect("edge target is a node");
            *d -= 1;
            if *d == 0 {
                ready.push(Reverse(t));
            }
        }
    }
    if order.len() < g.nodes.len() {
        let stuck = indegree
            .iter()
            .find(|(n, &d)| d > 0 && !order.contains(n))
            .map_or(0, |(&n, _)| n);
        return Err(Error::CyclicOrder { clause: stuck });
    }
    Ok(order)
}
