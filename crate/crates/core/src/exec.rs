//! Runs compiled schedules on a Pauli-basis state.

use crate::circuit_ir::{Circuit, Instruction, NoiseModel};
use crate::error::{Error, Result};
use crate::gates::{apply_single, apply_two, cnot_transfer, u1_transfer, u3_transfer, TransferMatrix2Q};
use crate::measurement::{
    bell_measure, ensemble_distribution, expect_pauli_string, measure_pauli, reset_qubit,
    OutcomeDistribution,
};
use crate::memory_noise::end_of_partition;
use crate::pauli_state::{Pauli, PauliString};
use crate::transpiler::{decompose, Schedule};
use crate::{PauliState, Real};

/// Result of one measurement-type instruction, in execution order.
#[derive(Debug, Clone, PartialEq)]
pub enum Record<T> {
    Measure { q: usize, basis: Pauli, plus: T, minus: T },
    Expect { string: PauliString, value: T },
    Ensemble(OutcomeDistribution<T>),
    Bell { a: usize, b: usize, outcomes: OutcomeDistribution<T> },
    Reset { q: usize },
}

/// Applies one select-set or measurement instruction.
struct Executor<'a, T> {
    noise: &'a NoiseModel<T>,
    cnot: TransferMatrix2Q<T>,
}

impl<'a, T: Real> Executor<'a, T> {
    fn new(noise: &'a NoiseModel<T>) -> Result<Self> {
        Ok(Executor {
            noise,
            cnot: cnot_transfer(&noise.gate.cx)?,
        })
    }

    fn apply(&self, state: &mut PauliState<T>, instr: &Instruction<T>, records: &mut Vec<Record<T>>) -> Result<()> {
        let noise = self.noise;
        match instr {
            Instruction::U1 { lambda, q } => apply_single(state, *q, &u1_transfer(*lambda, &noise.gate)?)?,
            Instruction::U3 { theta, phi, lambda, q } => {
                apply_single(state, *q, &u3_transfer(*theta, *phi, *lambda, &noise.gate)?)?
            }
            Instruction::Cx { control, target } => apply_two(state, *control, *target, &self.cnot)?,
            Instruction::Measure { q, basis } => {
                let (plus, minus) = measure_pauli(state, *q, *basis, &noise.measure)?;
                records.push(Record::Measure { q: *q, basis: *basis, plus, minus });
            }
            Instruction::Expect { string } => {
                let value = expect_pauli_string(state, string, &noise.measure)?;
                records.push(Record::Expect { string: string.clone(), value });
            }
            Instruction::Ensemble => records.push(Record::Ensemble(ensemble_distribution(state, &noise.measure)?)),
            Instruction::Bell { a, b } => {
                let outcomes = bell_measure(state, *a, *b, &noise.measure)?;
                records.push(Record::Bell { a: *a, b: *b, outcomes });
            }
            Instruction::Reset { q } => {
                reset_qubit(state, *q)?;
                records.push(Record::Reset { q: *q });
            }
            Instruction::Barrier => {}
            other => {
                return Err(Error::Compile(format!("`{other}` is not in the select set")));
            }
        }
        Ok(())
    }
}

/// Executes partitions in order, with memory noise after each one.
pub fn execute_schedule<T: Real>(
    state: &mut PauliState<T>,
    schedule: &Schedule<T>,
    noise: &NoiseModel<T>,
) -> Result<Vec<Record<T>>> {
    if schedule.n != state.n() {
        return Err(Error::Shape(format!(
            "schedule on {} qubits, state on {}",
            schedule.n,
            state.n()
        )));
    }
    let exec = Executor::new(noise)?;
    let mut records = Vec::new();
    for partition in &schedule.partitions {
        for instr in &partition.instructions {
            exec.apply(state, instr, &mut records)?;
        }
        end_of_partition(state, &noise.memory_for(partition.category))?;
    }
    Ok(records)
}

/// Executes the decomposed circuit instruction by instruction without
/// partitioning or memory noise.
pub fn execute_sequential<T: Real>(
    state: &mut PauliState<T>,
    circuit: &Circuit<T>,
    noise: &NoiseModel<T>,
) -> Result<Vec<Record<T>>> {
    if circuit.n != state.n() {
        return Err(Error::Shape(format!("circuit on {} qubits, state on {}", circuit.n, state.n())));
    }
    let decomposed = decompose(circuit)?;
    let exec = Executor::new(noise)?;
    let mut records = Vec::new();
    for instr in &decomposed.instructions {
        exec.apply(state, instr, &mut records)?;
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit_ir::parse_circuit;
    use crate::transpiler::compile;

    #[test]
    fn bell_pair_ensemble() {
        let c: Circuit<f64> = parse_circuit("qubits 2\nh q[0]\ncx q[0],q[1]\nensemble").unwrap();
        let compiled = compile(&c).unwrap();
        let mut s = PauliState::zero(2).unwrap();
        let records = execute_schedule(&mut s, &compiled.schedule, &NoiseModel::noiseless()).unwrap();
        match &records[..] {
            [Record::Ensemble(d)] => {
                assert!((d.get("00").unwrap() - 0.5).abs() < 1e-15);
                assert!((d.get("11").unwrap() - 0.5).abs() < 1e-15);
                assert!(d.get("01").unwrap().abs() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn scheduled_matches_sequential_noiselessly() {
        let c: Circuit<f64> = parse_circuit(
            "qubits 3\nh q[0]\nt q[0]\nccx q[0],q[1],q[2]\nu2(0.3,0.1) q[1]\nmeasure_x q[1]\ns q[2]\nexpect XZY",
        )
        .unwrap();
        let noise = NoiseModel::noiseless();
        let mut a = PauliState::zero(3).unwrap();
        let ra = execute_schedule(&mut a, &compile(&c).unwrap().schedule, &noise).unwrap();
        let mut b = PauliState::zero(3).unwrap();
        let rb = execute_sequential(&mut b, &c, &noise).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
        assert_eq!(ra.len(), rb.len());
    }

    #[test]
    fn memory_noise_runs_once_per_partition() {
        let c: Circuit<f64> = parse_circuit("qubits 1\nh q[0]\nbarrier\nu1(0) q[0]").unwrap();
        let mut noise = NoiseModel::noiseless();
        noise.set("f", 0.5).unwrap();
        let compiled = compile(&c).unwrap();
        assert_eq!(compiled.schedule.len(), 2);
        let mut s = PauliState::zero(1).unwrap();
        execute_schedule(&mut s, &compiled.schedule, &noise).unwrap();
        assert!((s.coeffs()[1] - 0.125).abs() < 1e-15);
    }

    #[test]
    fn unscheduled_instruction_is_rejected() {
        let schedule = Schedule {
            n: 1,
            partitions: vec![crate::transpiler::Partition {
                category: crate::circuit_ir::Category::Gate,
                instructions: vec![Instruction::Named { gate: crate::gates::NamedGate::H, q: 0 }],
            }],
        };
        let mut s = PauliState::<f64>::zero(1).unwrap();
        assert!(matches!(
            execute_schedule(&mut s, &schedule, &NoiseModel::noiseless()),
            Err(Error::Compile(_))
        ));
    }
}
