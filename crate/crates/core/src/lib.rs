//! Makespan minimization for jobs with blocking times on machines linked by
//! a conflict graph.
//!
//! Every job `j` has a first blocking time `b1`, a processing time `p` and a
//! second blocking time `b2`. Jobs on adjacent machines of the conflict graph
//! may not have overlapping blocking intervals. The crate provides a
//! conflict-free validator, an exact branch-and-bound oracle, and the
//! specialised solvers for long blocking times ([`longblock`]), identical jobs
//! with short blocking times ([`shortblock`]) and unit jobs ([`unit`]).

pub mod error;
pub mod exact;
pub mod graph;
pub mod longblock;
pub mod model;
pub mod shortblock;
pub mod unit;
pub mod validate;

pub use error::{Result, SmcError};
pub use model::{ConflictGraph, Entry, Instance, Job, JobId, MachineId, Schedule, Time};
pub use validate::{validate_schedule, ValidationReport, Violation, ViolationKind};
