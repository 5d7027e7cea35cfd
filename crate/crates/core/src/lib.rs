//! CNF structure lab.
//!
//! Tools for studying minimal unsatisfiable cores (MUCs) through the clause
//! values they induce on the boolean cube: classification of assignments by
//! logical value vector, clause phase and inner products, clause cutting and
//! orthogonalization into cube partitions, plus generators for Horn chains and
//! parity constructions and an experiment runner that measures how large the
//! orthogonalized cores become.

pub mod cli;
pub mod cnf;
pub mod constructions;
pub mod dimacs;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod orthogonalize;
pub mod sat;
pub mod semantics;

pub use cnf::{Clause, Cnf, HornKind, Literal, Var};
pub use error::{Error, Result};
pub use semantics::{Assignment, Budget, LogicalValueVector};
