mod ebo;
mod random;
mod runner;

use thiserror::Error;

pub use ebo::{build_ebo, build_ebo_with, ebo_mapping_variants, EboConfig, WorkabilityRule, EBO_ACTIONS};
pub use random::{gen_random_diagram, RandomSpec};
pub use runner::{
    ebo_spu_record, run_benchmark, BenchReport, BenchRow, EboSpuRecord, SpecSummary, BENCH_MEAN_HEADER,
    BENCH_ROW_HEADER,
};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid generator spec: {0}")]
    Spec(String),
}
