//! Serialization, rendering, witness replay and the solver-versus-oracle
//! campaign behind the command-line tool.

mod format;
mod playout;
mod render;
mod replay;
mod verify;

use thiserror::Error;

use crate::compiler::CompileError;
use crate::engine::EngineError;
use crate::solver::SolveError;

pub use format::{
    parse_instance, parse_state, parse_witness, to_canonical_json, StateFile, WitnessFile,
    SCHEMA_VERSION,
};
pub use playout::{random_plan, random_playout, PlayoutStep};
pub use render::render;
pub use replay::{format_ledger, replay, LedgerRow, ReplayReport};
pub use verify::{
    campaign_instances, campaign_size, check_instance, theorem_for, verify, VerifyRow,
    MAX_VERIFY_INSTANCES,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("step {index} ({action}) is illegal: {source}")]
    Replay {
        index: usize,
        action: String,
        source: EngineError,
    },
    #[error("campaign of {count} instances exceeds the limit of {limit}")]
    TooManyInstances { count: u64, limit: u64 },
    #[error("no legal action in {0}")]
    Stuck(String),
}
