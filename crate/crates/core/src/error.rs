use thiserror::Error;

/// Errors raised anywhere in the simulator pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("capacity: {n} qubits exceeds the configured limit of {max}")]
    Capacity { n: usize, max: usize },

    #[error("parameter {name} = {value} is outside its allowed range {range}")]
    Parameter {
        name: String,
        value: f64,
        range: &'static str,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("qubit index {index} out of range for {n} qubits")]
    Index { index: usize, n: usize },

    #[error("{msg}, line {line}")]
    Parse { line: usize, msg: String },

    #[error("coefficient file, entry {index}: {msg}")]
    Format { index: usize, msg: String },

    #[error("circuit: {0}")]
    Circuit(String),

    #[error("compile: {0}")]
    Compile(String),

    #[error("internal consistency: {0}")]
    Consistency(String),

    #[error("scheduler deadlock: {0}")]
    Scheduler(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_unit<T: crate::Real>(name: &str, value: T) -> Result<()> {
    if value >= T::zero() && value <= T::one() {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: name.to_string(),
            value: value.to_f64().unwrap_or(f64::NAN),
            range: "[0, 1]",
        })
    }
}

pub(crate) fn check_qubit(index: usize, n: usize) -> Result<()> {
    if index < n {
        Ok(())
    } else {
        Err(Error::Index { index, n })
    }
}
