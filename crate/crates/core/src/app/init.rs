use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::{Capacity, PauliState, Real};

/// Initial-state selector: `zero | uniform | bitstring:S | thermal | file:PATH`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum InitOption {
    Zero,
    Uniform,
    Bits(String),
    /// Every qubit in `diag(p, 1 - p)` with `p` from the noise model.
    #[default]
    Thermal,
    File(PathBuf),
}

impl FromStr for InitOption {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "zero" => return Ok(InitOption::Zero),
            "uniform" => return Ok(InitOption::Uniform),
            "thermal" => return Ok(InitOption::Thermal),
            _ => {}
        }
        if let Some(bits) = s.strip_prefix("bitstring:") {
            if bits.is_empty() || !bits.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::Parameter {
                    name: format!("init bitstring `{bits}`"),
                    value: f64::NAN,
                    range: "non-empty over {0, 1}",
                });
            }
            return Ok(InitOption::Bits(bits.to_string()));
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(InitOption::File(PathBuf::from(path)));
        }
        Err(Error::Parameter {
            name: format!("init `{s}`"),
            value: f64::NAN,
            range: "zero | uniform | bitstring:S | thermal | file:PATH",
        })
    }
}

impl fmt::Display for InitOption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitOption::Zero => f.write_str("zero"),
            InitOption::Uniform => f.write_str("uniform"),
            InitOption::Bits(b) => write!(f, "bitstring:{b}"),
            InitOption::Thermal => f.write_str("thermal"),
            InitOption::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl InitOption {
    /// Builds the `n`-qubit initial state; `p` is the thermal population.
    pub fn build<T: Real>(&self, n: usize, p: T, cap: Capacity) -> Result<PauliState<T>> {
        let state = match self {
            InitOption::Zero => PauliState::zero_within(n, cap)?,
            InitOption::Uniform => PauliState::uniform_within(n, cap)?,
            InitOption::Thermal => PauliState::thermal_within(n, p, cap)?,
            InitOption::Bits(bits) => {
                if bits.len() != n {
                    return Err(Error::Shape(format!("init bitstring has {} bits for {n} qubits", bits.len())));
                }
                PauliState::from_bits_within(bits, cap)?
            }
            InitOption::File(path) => {
                let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                let s = PauliState::load_within(BufReader::new(file), cap)?;
                if s.n() != n {
                    return Err(Error::Shape(format!("state file holds {} qubits, circuit has {n}", s.n())));
                }
                s
            }
        };
        Ok(state)
    }
}
