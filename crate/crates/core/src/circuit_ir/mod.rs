//! Circuit and noise-configuration text formats.
//!
//! Circuit grammar, one statement per line, `#` starts a comment:
//!
//! ```text
//! qubits N
//! x|y|z|h|s|sdg|t|tdg q[i]
//! u1(λ) q[i]      u2(φ,λ) q[i]      u3(θ,φ,λ) q[i]
//! cx q[i],q[j]    ccx q[i],q[j],q[k]
//! measure q[i]    measure_x q[i]    measure_y q[i]
//! expect PAULISTRING        (length N over IXYZ, qubit 0 rightmost)
//! ensemble
//! bell q[i],q[j]
//! reset q[i]
//! barrier
//! ```
//!
//! Angles are decimal literals, `pi`, or `pi/INT`, optionally negated.

mod noise_config;
mod parse;

use std::fmt;

pub use noise_config::{NoiseModel, NOISE_KEYS};
pub use parse::parse_circuit;

use crate::gates::NamedGate;
use crate::pauli_state::{Pauli, PauliString};
use crate::Real;

/// One circuit operation on explicit qubit indices.
#[derive(Debug, Clone, PartialEq)]
pub enum Instruction<T> {
    Named { gate: NamedGate, q: usize },
    U1 { lambda: T, q: usize },
    U2 { phi: T, lambda: T, q: usize },
    U3 { theta: T, phi: T, lambda: T, q: usize },
    Cx { control: usize, target: usize },
    Ccx { controls: [usize; 2], target: usize },
    /// Single-qubit projective measurement along X, Y or Z.
    Measure { q: usize, basis: Pauli },
    Expect { string: PauliString },
    Ensemble,
    Bell { a: usize, b: usize },
    Reset { q: usize },
    Barrier,
}

/// Scheduling class of an instruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    Gate,
    Measurement,
    /// Expectation, ensemble and Bell measurements run in a partition of their own.
    Solo,
    Barrier,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Gate => "gate",
            Category::Measurement => "measurement",
            Category::Solo => "solo",
            Category::Barrier => "barrier",
        })
    }
}

impl<T: Real> Instruction<T> {
    pub fn category(&self) -> Category {
        use Instruction::*;
        match self {
            Named { .. } | U1 { .. } | U2 { .. } | U3 { .. } | Cx { .. } | Ccx { .. } => Category::Gate,
            Measure { .. } | Reset { .. } => Category::Measurement,
            Expect { .. } | Ensemble | Bell { .. } => Category::Solo,
            Barrier => Category::Barrier,
        }
    }

    /// Operand qubits; solo measurements and barriers act on the whole register.
    pub fn qubits(&self, n: usize) -> Vec<usize> {
        use Instruction::*;
        match self {
            Named { q, .. } | U1 { q, .. } | U2 { q, .. } | U3 { q, .. } | Measure { q, .. } | Reset { q } => {
                vec![*q]
            }
            Cx { control, target } => vec![*control, *target],
            Ccx { controls, target } => vec![controls[0], controls[1], *target],
            Bell { a, b } => vec![*a, *b],
            Expect { .. } | Ensemble | Barrier => (0..n).collect(),
        }
    }

    /// True for u1/u2/u3 and named one-qubit gates.
    pub fn is_single_qubit_gate(&self) -> bool {
        matches!(
            self,
            Instruction::Named { .. } | Instruction::U1 { .. } | Instruction::U2 { .. } | Instruction::U3 { .. }
        )
    }
}

fn q(i: usize) -> String {
    format!("q[{i}]")
}

impl<T: Real> fmt::Display for Instruction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Instruction::*;
        match self {
            Named { gate, q: i } => write!(f, "{gate} {}", q(*i)),
            U1 { lambda, q: i } => write!(f, "u1({lambda}) {}", q(*i)),
            U2 { phi, lambda, q: i } => write!(f, "u2({phi},{lambda}) {}", q(*i)),
            U3 { theta, phi, lambda, q: i } => write!(f, "u3({theta},{phi},{lambda}) {}", q(*i)),
            Cx { control, target } => write!(f, "cx {},{}", q(*control), q(*target)),
            Ccx { controls, target } => {
                write!(f, "ccx {},{},{}", q(controls[0]), q(controls[1]), q(*target))
            }
            Measure { q: i, basis } => match basis {
                Pauli::X => write!(f, "measure_x {}", q(*i)),
                Pauli::Y => write!(f, "measure_y {}", q(*i)),
                _ => write!(f, "measure {}", q(*i)),
            },
            Expect { string } => write!(f, "expect {string}"),
            Ensemble => f.write_str("ensemble"),
            Bell { a, b } => write!(f, "bell {},{}", q(*a), q(*b)),
            Reset { q: i } => write!(f, "reset {}", q(*i)),
            Barrier => f.write_str("barrier"),
        }
    }
}

/// A register size plus its time-ordered instructions.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit<T> {
    pub n: usize,
    pub instructions: Vec<Instruction<T>>,
}

impl<T: Real> Circuit<T> {
    pub fn new(n: usize) -> Self {
        Circuit {
            n,
            instructions: Vec::new(),
        }
    }

    pub fn push(&mut self, instruction: Instruction<T>) -> &mut Self {
        self.instructions.push(instruction);
        self
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// Operand range and distinctness, and `expect` string length.
    pub fn validate(&self) -> crate::Result<()> {
        if self.n == 0 {
            return Err(crate::Error::Circuit("circuit has no qubits".into()));
        }
        for (pos, instr) in self.instructions.iter().enumerate() {
            if let Instruction::Expect { string } = instr {
                if string.len() != self.n {
                    return Err(crate::Error::Circuit(format!(
                        "instruction {pos} `{instr}`: Pauli string length {} for {} qubits",
                        string.len(),
                        self.n
                    )));
                }
            }
            let ops = instr.qubits(self.n);
            for (i, q) in ops.iter().enumerate() {
                if *q >= self.n {
                    return Err(crate::Error::Circuit(format!(
                        "instruction {pos} `{instr}`: qubit index {q} out of range for {} qubits",
                        self.n
                    )));
                }
                if ops[..i].contains(q) {
                    return Err(crate::Error::Circuit(format!(
                        "instruction {pos} `{instr}`: duplicate operand q[{q}]"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Instructions excluding barriers.
    pub fn operation_count(&self) -> usize {
        self.instructions
            .iter()
            .filter(|i| i.category() != Category::Barrier)
            .count()
    }
}

impl<T: Real> fmt::Display for Circuit<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n)?;
        for i in &self.instructions {
            writeln!(f, "{i}")?;
        }
        Ok(())
    }
}

impl<T: Real> std::str::FromStr for Circuit<T> {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        parse_circuit(s)
    }
}
