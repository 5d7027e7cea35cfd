use std::io;

use crate::cnf::Var;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("clause contains variable {var} with both polarities")]
    TautologicalClause { var: Var },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("variable {var} out of range (num_vars = {num_vars})")]
    VariableOutOfRange { var: Var, num_vars: u32 },

    #[error("enumeration needs {required} units of work, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("clause count reached the cap of {cap}")]
    ClauseCapExceeded { cap: usize },

    #[error("clause {clause} is not a Horn clause")]
    NotHorn { clause: usize },

    #[error("input is not a minimal unsatisfiable core ({reason})")]
    NotMuc { reason: String },

    #[error("clause {clause} duplicates an earlier clause")]
    DuplicateClause { clause: usize },

    #[error("Horn order graph has a cycle through clause {clause}")]
    CyclicOrder { clause: usize },

    #[error("variable {var} already occurs in the clause")]
    VariableAlreadyPresent { var: Var },

    #[error("residual branch is not subsumed by the reference clause")]
    NotAbsorbable,

    #[error("input formula is satisfiable")]
    InputSatisfiable,

    #[error("variable list contains duplicates")]
    DuplicateVars,

    #[error("clause index {index} out of range ({len} clauses)")]
    ClauseIndexOutOfRange { index: usize, len: usize },

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("trace replay failed at step {step}: {message}")]
    Replay { step: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
