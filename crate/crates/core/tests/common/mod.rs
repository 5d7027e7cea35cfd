//! Brute-force reference implementations. Deliberately naive: they walk
//! literals one assignment at a time and share no code with the library's
//! mask-based evaluators.
#![allow(dead_code)]

use muclab::{Clause, Cnf, Literal};
use rand::Rng;

pub fn lit_true(l: &Literal, idx: u64) -> bool {
    let bit = (idx >> (l.var() - 1)) & 1 == 1;
    bit == l.is_positive()
}

pub fn clause_true(c: &Clause, idx: u64) -> bool {
    c.literals().iter().any(|l| lit_true(l, idx))
}

pub fn cnf_true(f: &Cnf, idx: u64) -> bool {
    f.clauses().iter().all(|c| clause_true(c, idx))
}

pub fn false_count(f: &Cnf, idx: u64) -> usize {
    f.clauses().iter().filter(|c| !clause_true(c, idx)).count()
}

pub fn space(n: u32) -> std::ops::Range<u64> {
    0..1u64 << n
}

pub fn satisfiable(f: &Cnf) -> bool {
    space(f.num_vars()).any(|a| cnf_true(f, a))
}

fn dropped(f: &Cnf, i: usize) -> Vec<&Clause> {
    f.clauses()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, c)| c)
        .collect()
}

/// (is_muc, reason, clause) in the library's verdict vocabulary.
pub fn muc_verdict(f: &Cnf) -> (bool, &'static str, Option<usize>) {
    let cs = f.clauses();
    for j in 0..cs.len() {
        if (0..j).any(|i| cs[i] == cs[j]) {
            return (false, "duplicate-clause", Some(j));
        }
    }
    if satisfiable(f) {
        return (false, "satisfiable", None);
    }
    for i in 0..cs.len() {
        let rest = dropped(f, i);
        let sat = space(f.num_vars()).any(|a| rest.iter().all(|c| clause_true(c, a)));
        if !sat {
            return (false, "not-minimal", Some(i));
        }
    }
    (true, "ok", None)
}

/// Same truth table over the wider of the two variable sets.
pub fn equivalent(f: &Cnf, g: &Cnf) -> bool {
    let n = f.num_vars().max(g.num_vars());
    space(n).all(|a| cnf_true(f, a) == cnf_true(g, a))
}

/// Every assignment falsifies exactly one clause.
pub fn orthogonal_muc(f: &Cnf) -> bool {
    space(f.num_vars()).all(|a| false_count(f, a) == 1)
}

/// Falsifying points of `c` over the variables in `vars`, as bit masks
/// indexed by position in `vars`.
fn falsifiers(c: &Clause, vars: &[u32]) -> Vec<u64> {
    (0..1u64 << vars.len())
        .filter(|&p| {
            c.literals().iter().all(|l| {
                let k = vars.iter().position(|&v| v == l.var()).unwrap();
                ((p >> k) & 1 == 1) != l.is_positive()
            })
        })
        .collect()
}

pub fn union_vars(a: &Clause, b: &Clause) -> Vec<u32> {
    let mut vars: Vec<u32> = a.vars().chain(b.vars()).collect();
    vars.sort_unstable();
    vars.dedup();
    vars
}

/// Minimum Hamming distance between the falsifying sets of `a` and `b`.
pub fn cube_distance(a: &Clause, b: &Clause) -> u32 {
    let vars = union_vars(a, b);
    let fa = falsifiers(a, &vars);
    let fb = falsifiers(b, &vars);
    let mut best = u32::MAX;
    for &p in &fa {
        for &q in &fb {
            best = best.min((p ^ q).count_ones());
        }
    }
    best
}

/// No point of the joint space falsifies both.
pub fn disjoint_falsifiers(a: &Clause, b: &Clause) -> bool {
    let vars = union_vars(a, b);
    let fb = falsifiers(b, &vars);
    falsifiers(a, &vars).iter().all(|p| !fb.contains(p))
}

pub fn random_clause(rng: &mut impl Rng, num_vars: u32, max_len: usize) -> Clause {
    let len = rng.gen_range(0..=max_len.min(num_vars as usize));
    let mut vars: Vec<u32> = (1..=num_vars).collect();
    for i in 0..len {
        let j = rng.gen_range(i..vars.len());
        vars.swap(i, j);
    }
    Clause::new(vars[..len].iter().map(|&v| Literal::new(v, rng.gen()))).unwrap()
}

pub fn random_cnf(rng: &mut impl Rng, max_vars: u32, max_clauses: usize, max_len: usize) -> Cnf {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(0..=max_clauses);
    let clauses = (0..m).map(|_| random_clause(rng, n, max_len)).collect();
    Cnf::new(n, clauses).unwrap()
}

/// Every non-tautological clause over `1..=n`, the empty clause included.
pub fn all_clauses(n: u32) -> Vec<Clause> {
    let mut out = Vec::new();
    for code in 0..3u32.pow(n) {
        let mut lits = Vec::new();
        let mut rest = code;
        for v in 1..=n {
            match rest % 3 {
                1 => lits.push(Literal::pos(v)),
                2 => lits.push(Literal::neg(v)),
                _ => {}
            }
            rest /= 3;
        }
        out.push(Clause::new(lits).unwrap());
    }
    out
}

/// Horn clauses over `1..=n`: all goals, then each head with every body.
pub fn all_horn_clauses(n: u32) -> Vec<Clause> {
    all_clauses(n)
        .into_iter()
        .filter(|c| c.literals().iter().filter(|l| l.is_positive()).count() <= 1)
        .collect()
}

pub fn dimacs(n: u32, cs: &[&[i64]]) -> Cnf {
    Cnf::from_dimacs_clauses(n, cs).unwrap()
}
