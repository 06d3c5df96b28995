use thiserror::Error;

use crate::model::{JobId, MachineId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmcError {
    #[error("job has zero system time (b1 = p = b2 = 0)")]
    EmptyJob,
    #[error("machine id {0} out of range")]
    UnknownMachine(MachineId),
    #[error("job id {0} out of range")]
    UnknownJob(JobId),
    #[error("job {0} appears more than once in the schedule")]
    DuplicateJob(JobId),
    #[error("self-loop on machine {0}")]
    SelfLoop(MachineId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(MachineId, MachineId),
    #[error("negative start time for job {0}")]
    NegativeStart(JobId),
    #[error("schedule is not conflict-free")]
    InvalidSchedule,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("{what} exceeds the configured limit {limit}")]
    SizeLimit { what: &'static str, limit: usize },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
}

pub type Result<T> = std::result::Result<T, SmcError>;
