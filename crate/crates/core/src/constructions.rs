//! Generators for the example families: three-variable parity blocks, their
//! recursive extension with auxiliary variables, Horn chains, parity
//! contradictions, and a catalog of fixed worked examples.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cnf::{Clause, Cnf, Literal, Var};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn accepts(self, popcount: usize) -> bool {
        match self {
            Parity::Odd => popcount % 2 == 1,
            Parity::Even => popcount.is_multiple_of(2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityBlock {
    pub main_vars: Vec<Var>,
    pub aux_vars: Vec<Var>,
    pub parity: Parity,
    pub cnf: Cnf,
}

/// Hands out fresh variable ids in increasing order.
#[derive(Debug, Clone)]
pub struct VarAllocator {
    next: Var,
}

impl VarAllocator {
    /// The first id handed out is `above + 1`.
    pub fn above(above: Var) -> Self {
        VarAllocator { next: above + 1 }
    }

    pub fn fresh(&mut self) -> Var {
        let v = self.next;
        self.next += 1;
        v
    }

    pub fn peek(&self) -> Var {
        self.next
    }
}

fn require_distinct(vars: &[Var]) -> Result<()> {
    let set: BTreeSet<_> = vars.iter().collect();
    if set.len() != vars.len() || vars.contains(&0) {
        return Err(Error::DuplicateVars);
    }
    Ok(())
}

fn parity3_clauses(parity: Parity, [a, b, c]: [Var; 3]) -> Vec<Clause> {
    // sign patterns of the four excluded assignments
    let patterns: [[bool; 3]; 4] = match parity {
        Parity::Odd => [
            [true, true, true],
            [true, false, false],
            [false, true, false],
            [false, false, true],
        ],
        Parity::Even => [
            [false, false, false],
            [false, true, true],
            [true, false, true],
            [true, true, false],
        ],
    };
    patterns
        .iter()
        .map(|p| {
            Clause::new([
                Literal::new(a, p[0]),
                Literal::new(b, p[1]),
                Literal::new(c, p[2]),
            ])
            .expect("distinct variables")
        })
        .collect()
}

/// The four-clause block true exactly on assignments of `vars` with the
/// given parity of true values.
pub fn gen_parity3(parity: Parity, vars: [Var; 3]) -> Result<ParityBlock> {
    require_distinct(&vars)?;
    let clauses = parity3_clauses(parity, vars);
    Ok(ParityBlock {
        main_vars: vars.to_vec(),
        aux_vars: Vec::new(),
        parity,
        cnf: Cnf::from_clauses(clauses),
    })
}

/// Parity over `n ≥ 3` main variables through the recursion
/// `P_{n+1}(x0..xn) = P_n(x, x0..x_{n-2}) ∧ E_3(x, x_{n-1}, x_n)`, with `x`
/// a fresh auxiliary variable. Auxiliaries are allocated outermost first.
pub fn gen_parity_n(
    parity: Parity,
    main_vars: &[Var],
    alloc: &mut VarAllocator,
) -> Result<ParityBlock> {
    require_distinct(main_vars)?;
    if main_vars.len() < 3 {
        return Err(Error::Config(format!(
            "parity blocks need at least 3 variables, got {}",
            main_vars.len()
        )));
    }
    if let Some(&max) = main_vars.iter().max() {
        if alloc.peek() <= max {
            return Err(Error::Config(
                "auxiliary variables must be allocated above the main variables".into(),
            ));
        }
    }
    let mut aux_vars = Vec::new();
    let clauses = parity_rec(parity, main_vars, alloc, &mut aux_vars);
    let num_vars = main_vars
        .iter()
        .chain(&aux_vars)
        .copied()
        .max()
        .unwrap_or(0);
    Ok(ParityBlock {
        main_vars: main_vars.to_vec(),
        aux_vars,
        parity,
        cnf: Cnf::new(num_vars, clauses)?,
    })
}

fn parity_rec(
    parity: Parity,
    vars: &[Var],
    alloc: &mut VarAllocator,
    aux: &mut Vec<Var>,
) -> Vec<Clause> {
    let n = vars.len();
    if n == 3 {
        return parity3_clauses(parity, [vars[0], vars[1], vars[2]]);
    }
    let x = alloc.fresh();
    aux.push(x);
    let mut head = vec![x];
    head.extend_from_slice(&vars[..n - 2]);
    let mut clauses = parity_rec(parity, &head, alloc, aux);
    clauses.extend(parity3_clauses(Parity::Even, [x, vars[n - 2], vars[n - 1]]));
    clauses
}

/// `(x0) ∧ (¬x0 ∨ x1) ∧ … ∧ (¬x_{k-1} ∨ x_k) ∧ (¬x_k)` over variables
/// `1..=k+1`.
pub fn gen_horn_chain(k: u32) -> Cnf {
    let mut clauses = vec![Clause::new([Literal::pos(1)]).expect("unit")];
    for v in 1..=k {
        clauses.push(Clause::new([Literal::neg(v), Literal::pos(v + 1)]).expect("binary"));
    }
    clauses.push(Clause::new([Literal::neg(k + 1)]).expect("unit"));
    Cnf::from_clauses(clauses)
}

/// Odd and even parity blocks over the same `n` main variables (variables
/// `1..=n`), which together are unsatisfiable; auxiliaries of the odd block
/// come first. With `disjoint`, the even block gets its own main variables
/// `n+1..=2n` instead and the result is satisfiable.
pub fn gen_parity_contradiction(n: u32, disjoint: bool) -> Result<Cnf> {
    if n < 3 {
        return Err(Error::Config(format!(
            "parity contradiction needs n >= 3, got {n}"
        )));
    }
    let odd_main: Vec<Var> = (1..=n).collect();
    let even_main: Vec<Var> = if disjoint {
        (n + 1..=2 * n).collect()
    } else {
        odd_main.clone()
    };
    let main_count = if disjoint { 2 * n } else { n };
    let mut alloc = VarAllocator::above(main_count);
    let odd = gen_parity_n(Parity::Odd, &odd_main, &mut alloc)?;
    let even = gen_parity_n(Parity::Even, &even_main, &mut alloc)?;
    let mut clauses = odd.cnf.into_clauses();
    clauses.extend(even.cnf.into_clauses());
    Cnf::new(alloc.peek() - 1, clauses)?.with_main_vars(main_count)
}

/// Names accepted by [`catalog_example`].
pub const EXAMPLES: &[&str] = &[
    "split-muc",
    "cut-pair",
    "horn-chain",
    "horn-chain-orthogonal",
    "disjoint-parity",
    "parity-completion",
];

/// Fixed example formulas. Variable `i + 1` stands for `x_i`.
pub fn catalog_example(name: &str) -> Result<Cnf> {
    let cnf = |n: u32, cs: &[&[i64]]| Cnf::from_dimacs_clauses(n, cs);
    match name {
        // (x0)(¬x0∨x1)(¬x1∨¬x2∨¬x3)(¬x1∨x2∨x3)(x2∨¬x3)(¬x2∨x3)
        "split-muc" => cnf(
            4,
            &[
                &[1],
                &[-1, 2],
                &[-2, -3, -4],
                &[-2, 3, 4],
                &[3, -4],
                &[-3, 4],
            ],
        ),
        // (x0∨¬x1∨¬x2)(x0∨x3∨x4)
        "cut-pair" => cnf(5, &[&[1, -2, -3], &[1, 4, 5]]),
        "horn-chain" => Ok(gen_horn_chain(2)),
        "horn-chain-orthogonal" => cnf(3, &[&[1], &[-1, 2], &[-1, -2, 3], &[-1, -2, -3]]),
        "disjoint-parity" => gen_parity_contradiction(3, true),
        "parity-completion" => Ok(parity_completion()),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

/// `O3(x0,x1,x2) ∧ (E3(x3,x4,x5) ∨ E3(x0,x1,x2))` with the disjunction
/// distributed into 16 clauses, ordered by the first block's clause.
fn parity_completion() -> Cnf {
    let mut clauses = parity3_clauses(Parity::Odd, [1, 2, 3]);
    let far = parity3_clauses(Parity::Even, [4, 5, 6]);
    let near = parity3_clauses(Parity::Even, [1, 2, 3]);
    for a in &far {
        for b in &near {
            clauses.push(
                Clause::new(a.literals().iter().chain(b.literals()).copied())
                    .expect("disjoint variables"),
            );
        }
    }
    Cnf::from_clauses(clauses)
}
