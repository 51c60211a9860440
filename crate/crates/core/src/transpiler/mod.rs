//! Circuit compilation: decomposition to {u1, u3, cx}, single-qubit fusion,
//! and partitioning into clock steps.

mod decompose;
mod merge;
mod schedule;

pub use decompose::{decompose, is_select};
pub use merge::{merge, yzy_to_zyz, Z_ONLY_TOL};
pub use schedule::{
    build_stack, check_schedule, insert_category_barriers, partition, schedule, Partition, QubitStack,
    Schedule, Slot,
};

use crate::circuit_ir::Circuit;
use crate::error::Result;
use crate::Real;

/// Instruction counts through the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompileStats {
    pub source: usize,
    pub decomposed: usize,
    pub merged: usize,
    pub partitions: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Compiled<T> {
    pub merged: Circuit<T>,
    pub schedule: Schedule<T>,
    pub stats: CompileStats,
}

/// Decompose, merge and schedule; barriers are not counted as instructions.
pub fn compile<T: Real>(circuit: &Circuit<T>) -> Result<Compiled<T>> {
    let decomposed = decompose(circuit)?;
    let merged = merge(&decomposed);
    let schedule = schedule(&merged)?;
    let stats = CompileStats {
        source: circuit.operation_count(),
        decomposed: decomposed.operation_count(),
        merged: merged.operation_count(),
        partitions: schedule.len(),
    };
    Ok(Compiled {
        merged,
        schedule,
        stats,
    })
}
