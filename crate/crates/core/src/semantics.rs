//! Truth-table semantics: assignment evaluation, logical value vectors, the
//! classification of all assignments by the clause values they induce, and
//! Hamming connectivity of assignment sets.
//!
//! Everything here enumerates the full assignment space, guarded by a
//! [`Budget`]. Assignment indices put variable `v` at bit `v - 1`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::cnf::{Clause, Cnf, Var};
use crate::error::{Error, Result};

pub const BUDGET_ENV: &str = "MUCLAB_BUDGET";

/// Upper bound on enumeration work, counted in clause evaluations (or
/// visited assignments, for cube-based routines).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 24);

    /// `MUCLAB_BUDGET` if set and numeric, otherwise [`Budget::DEFAULT`].
    pub fn from_env() -> Budget {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget)
            .unwrap_or(Budget::DEFAULT)
    }

    pub fn require(self, required: u128) -> Result<()> {
        if required > u128::from(self.0) {
            Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }

    /// Checks `2^num_vars * per_assignment` and returns `2^num_vars`.
    pub(crate) fn space(self, num_vars: u32, per_assignment: usize) -> Result<u64> {
        let per = per_assignment.max(1) as u128;
        if num_vars >= 64 {
            return Err(Error::BudgetExceeded {
                required: u128::MAX,
                budget: self.0,
            });
        }
        let points = 1u128 << num_vars;
        self.require(points * per)?;
        Ok(points as u64)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// A total truth assignment over variables `1..=width`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    /// Variable `v` takes bit `v - 1` of `index`.
    pub fn from_index(index: u64, width: u32) -> Self {
        Assignment {
            bits: (0..width).map(|i| index >> i & 1 == 1).collect(),
        }
    }

    /// Parses a bitstring such as `"100"` (first character is variable 1).
    pub fn from_bitstring(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Assignment::new)
    }

    /// Inverse of [`Assignment::from_index`]; `None` for widths above 64.
    pub fn index(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(
            self.bits
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &b)| acc | (u64::from(b) << i)),
        )
    }

    pub fn width(&self) -> u32 {
        self.bits.len() as u32
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn value(&self, var: Var) -> Option<bool> {
        let i = usize::try_from(var).ok()?.checked_sub(1)?;
        self.bits.get(i).copied()
    }

    pub fn hamming(&self, other: &Assignment) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    pub fn count_true(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Per-clause truth values for one assignment; bit `i` belongs to clause `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LogicalValueVector {
    len: usize,
    words: Vec<u64>,
}

impl LogicalValueVector {
    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = LogicalValueVector {
            len: bits.len(),
            words: vec![0; bits.len().div_ceil(64)],
        };
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.words[i / 64] |= 1 << (i % 64);
            }
        }
        v
    }

    /// The vector with every bit true except `index`.
    pub fn cyclic(len: usize, index: usize) -> Self {
        let mut bits = vec![true; len];
        bits[index] = false;
        Self::from_bools(&bits)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn false_count(&self) -> usize {
        self.len
            - self
                .words
                .iter()
                .map(|w| w.count_ones() as usize)
                .sum::<usize>()
    }

    pub fn is_all_true(&self) -> bool {
        self.false_count() == 0
    }

    /// Index of the single false clause when exactly one clause is false.
    pub fn cyclic_index(&self) -> Option<usize> {
        if self.false_count() != 1 {
            return None;
        }
        (0..self.len).find(|&i| !self.get(i))
    }

    pub fn is_cyclic(&self) -> bool {
        self.false_count() == 1
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for LogicalValueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

/// Partition of the assignment space by induced logical value vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub realized: BTreeSet<LogicalValueVector>,
    pub class_sizes: BTreeMap<LogicalValueVector, u64>,
    pub has_all_true: bool,
    pub cyclic_realized: BTreeSet<usize>,
}

impl ClassificationReport {
    pub fn total_assignments(&self) -> u64 {
        self.class_sizes.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut realized: Vec<String> = self.realized.iter().map(|v| v.to_bitstring()).collect();
        realized.sort();
        let sizes: BTreeMap<String, u64> = self
            .class_sizes
            .iter()
            .map(|(k, &v)| (k.to_bitstring(), v))
            .collect();
        serde_json::json!({
            "realized": realized,
            "class_sizes": sizes,
            "has_all_true": self.has_all_true,
            "cyclic_realized": self.cyclic_realized,
        })
    }
}

impl Serialize for ClassificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Bit masks of a clause over assignment indices.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ClauseMask {
    pub pos: u64,
    pub neg: u64,
}

impl ClauseMask {
    pub fn of(c: &Clause) -> Self {
        let mut m = ClauseMask { pos: 0, neg: 0 };
        for l in c.literals() {
            let bit = 1u64 << (l.var() - 1);
            if l.is_positive() {
                m.pos |= bit;
            } else {
                m.neg |= bit;
            }
        }
        m
    }

    #[inline]
    pub fn eval(self, index: u64) -> bool {
        index & self.pos != 0 || !index & self.neg != 0
    }
}

pub(crate) fn masks(f: &Cnf) -> Vec<ClauseMask> {
    f.clauses().iter().map(ClauseMask::of).collect()
}

fn check_width(c: &Clause, a: &Assignment) -> Result<()> {
    let var = c.max_var();
    if var > a.width() {
        return Err(Error::VariableOutOfRange {
            var,
            num_vars: a.width(),
        });
    }
    Ok(())
}

pub fn eval_clause(c: &Clause, a: &Assignment) -> Result<bool> {
    check_width(c, a)?;
    Ok(c.eval_with(|v| a.bits[(v - 1) as usize]))
}

pub fn eval_cnf(f: &Cnf, a: &Assignment) -> Result<bool> {
    for c in f.clauses() {
        if !eval_clause(c, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn logical_value_vector(f: &Cnf, a: &Assignment) -> Result<LogicalValueVector> {
    let bits = f
        .clauses()
        .iter()
        .map(|c| eval_clause(c, a))
        .collect::<Result<Vec<_>>>()?;
    Ok(LogicalValueVector::from_bools(&bits))
}

fn vector_at(masks: &[ClauseMask], index: u64) -> LogicalValueVector {
    let mut words = vec![0u64; masks.len().div_ceil(64)];
    for (i, m) in masks.iter().enumerate() {
        if m.eval(index) {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    LogicalValueVector {
        len: masks.len(),
        words,
    }
}

/// Exhaustive classification; costs `2^num_vars * clauses` evaluations.
pub fn classify(f: &Cnf, budget: Budget) -> Result<ClassificationReport> {
    let points = budget.space(f.num_vars(), f.len())?;
    let masks = masks(f);
    let mut class_sizes: HashMap<LogicalValueVector, u64> = HashMap::new();
    for index in 0..points {
        *class_sizes.entry(vector_at(&masks, index)).or_default() += 1;
    }
    let class_sizes: BTreeMap<_, _> = class_sizes.into_iter().collect();
    let realized: BTreeSet<_> = class_sizes.keys().cloned().collect();
    let has_all_true = realized.iter().any(LogicalValueVector::is_all_true);
    let cyclic_realized = realized
        .iter()
        .filter_map(LogicalValueVector::cyclic_index)
        .collect();
    Ok(ClassificationReport {
        realized,
        class_sizes,
        has_all_true,
        cyclic_realized,
    })
}

pub fn satisfying_set(f: &Cnf, budget: Budget) -> Result<BTreeSet<Assignment>> {
    let points = budget.space(f.num_vars(), f.len())?;
    let masks = masks(f);
    Ok((0..points)
        .filter(|&i| masks.iter().all(|m| m.eval(i)))
        .map(|i| Assignment::from_index(i, f.num_vars()))
        .collect())
}

/// Components of `points` under Hamming-distance-1 adjacency. Each component
/// is sorted, and components are ordered by their smallest member.
pub fn connected_components(points: &BTreeSet<Assignment>) -> Vec<Vec<Assignment>> {
    let pts: Vec<&Assignment> = points.iter().collect();
    if let Some(first) = pts.first() {
        assert!(
            pts.iter().all(|p| p.width() == first.width()),
            "assignments must share one width"
        );
    }
    let pos: HashMap<&Assignment, usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..pts.len()).collect();

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    for (i, p) in pts.iter().enumerate() {
        let mut neighbour = (*p).clone();
        for b in 0..neighbour.bits.len() {
            neighbour.bits[b] = !neighbour.bits[b];
            if let Some(&j) = pos.get(&neighbour) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
            neighbour.bits[b] = !neighbour.bits[b];
        }
    }

    let mut groups: BTreeMap<usize, Vec<Assignment>> = BTreeMap::new();
    for (i, p) in pts.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push((*p).clone());
    }
    // roots are minimal indices and points iterate in order, so both levels
    // come out sorted
    groups.into_values().collect()
}

/// Restriction of each point to `main_vars` (in the given order), deduplicated.
pub fn project(points: &BTreeSet<Assignment>, main_vars: &[Var]) -> BTreeSet<Assignment> {
    points
        .iter()
        .map(|p| {
            Assignment::new(
                main_vars
                    .iter()
                    .map(|&v| p.value(v).expect("projection variable out of range"))
                    .collect(),
            )
        })
        .collect()
}

/// Visits every assignment index in the falsifying cube of `m` over
/// `num_vars` variables.
pub(crate) fn for_each_falsifier(m: ClauseMask, num_vars: u32, mut visit: impl FnMut(u64)) {
    let all = if num_vars == 64 {
        u64::MAX
    } else {
        (1u64 << num_vars) - 1
    };
    let fixed_true = m.neg;
    let free = all & !(m.pos | m.neg);
    let mut sub = 0u64;
    loop {
        visit(fixed_true | sub);
        if sub == free {
            break;
        }
        sub = (sub.wrapping_sub(free)) & free;
    }
}

/// Number of assignments falsifying each clause, summed: `Σ 2^(n - |c|)`.
pub(crate) fn cube_volume(f: &Cnf) -> u128 {
    let n = f.num_vars();
    f.clauses()
        .iter()
        .map(|c| 1u128 << (n as usize - c.len()))
        .sum()
}

/// How many clauses each assignment falsifies, saturating at 255. Costs the
/// total cube volume plus the table size.
pub fn falsification_counts(f: &Cnf, budget: Budget) -> Result<Vec<u8>> {
    let points = budget.space(f.num_vars(), 1)?;
    budget.require(cube_volume(f) + u128::from(points))?;
    let mut counts = vec![0u8; points as usize];
    for c in f.clauses() {
        for_each_falsifier(ClauseMask::of(c), f.num_vars(), |i| {
            let slot = &mut counts[i as usize];
            *slot = slot.saturating_add(1);
        });
    }
    Ok(counts)
}

/// Whether `f` and `g` agree under every assignment of the wider universe.
pub fn equivalent(f: &Cnf, g: &Cnf, budget: Budget) -> Result<bool> {
    let n = f.num_vars().max(g.num_vars());
    let widen = |h: &Cnf| Cnf::new(n, h.clauses().to_vec());
    let (f, g) = (widen(f)?, widen(g)?);
    let a = falsification_counts(&f, budget)?;
    let b = falsification_counts(&g, budget)?;
    Ok(a.iter().zip(&b).all(|(x, y)| (*x == 0) == (*y == 0)))
}
