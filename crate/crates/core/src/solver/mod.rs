//! LP relaxation solver, branch-and-bound over the policy binaries, and the
//! single-policy-updating baseline.

mod bnb;
mod log;
mod lp;
mod pipeline;
mod spu;

use thiserror::Error;

use crate::credal::CredalError;
use crate::model::ModelError;
use crate::reform::ReformError;

pub use bnb::{
    branch_and_bound, BnbOutcome, Incumbent, Oracle, SearchOrder, SolveOptions, SolveStatus, WarmStart, PRUNE_TOLERANCE,
};
pub use log::{gap_percent, LogEvent, RunLog, RUN_LOG_HEADER};
pub use lp::{solve_lp, LpProblem, LpSolution, LpStatus, Simplex};
pub use pipeline::{solve_meu, SolveResult, WARM_START_SWEEPS};
pub use spu::{spu, SpuInit, SpuResult};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("invalid LP: {0}")]
    InvalidProblem(String),
    #[error("LP is unbounded")]
    Unbounded,
    #[error("no integer-feasible point exists")]
    Infeasible,
    #[error("numerical failure in the simplex: {0}")]
    Numerical(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Credal(#[from] CredalError),
    #[error(transparent)]
    Reform(#[from] ReformError),
}
