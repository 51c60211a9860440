//! End-to-end pipeline: initial states, circuit generators, single runs,
//! parameter sweeps and oracle verification.

mod generators;
mod init;
mod report;
mod sweep;
mod verify;

pub use generators::{adder_success_pattern, controlled_phase, gen_adder, gen_qft, AdderLayout};
pub use init::InitOption;
pub use report::{run, RunOptions, RunReport};
pub use sweep::{is_sweepable, noiseless_reference, parse_values, sweep, Metric, SweepRow, SweepTable};
pub use verify::{verify, VerifyReport, VERIFY_TOL};

use crate::Error;

/// Process exit status for each error class.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Parse { .. } => 3,
        Error::Circuit(_) | Error::Compile(_) | Error::Shape(_) | Error::Index { .. } => 4,
        Error::Capacity { .. } => 5,
        Error::Parameter { .. } => 6,
        Error::Io(_) | Error::Format { .. } => 7,
        Error::Consistency(_) | Error::Scheduler(_) => 70,
    }
}

/// Exit status when `verify` finds a divergence above tolerance.
pub const EXIT_DIVERGENCE: i32 = 8;
