use crate::circuit_ir::{Circuit, Instruction, NoiseModel};
use crate::error::{Error, Result};
use crate::exec::Record;
use crate::gates::Axis;
use crate::measurement::{bitstring, OutcomeDistribution};
use crate::oracle::channels::*;
use crate::oracle::{dense_apply, embed, pauli_matrix, CMatrix, DenseState};
use crate::pauli_state::Pauli;
use crate::transpiler::Schedule;

/// Measurement records of a dense run; same shape as the Pauli-basis ones.
pub type DenseRecord = Record<f64>;

fn axis_of(p: Pauli) -> Result<Axis> {
    match p {
        Pauli::X => Ok(Axis::X),
        Pauli::Y => Ok(Axis::Y),
        Pauli::Z => Ok(Axis::Z),
        Pauli::I => Err(Error::Circuit("cannot measure along the identity".into())),
    }
}

fn noisy_u3(theta: f64, phi: f64, lambda: f64, noise: &NoiseModel<f64>) -> Vec<CMatrix> {
    let g = &noise.gate;
    let first = noisy_rotation(Axis::Z, lambda, g.z.mean_offset, g.z.damping);
    let middle = noisy_rotation(Axis::Y, theta, g.y.mean_offset, g.y.damping);
    let last = noisy_rotation(Axis::Z, phi, g.z.mean_offset, g.z.damping);
    compose(&compose(&first, &middle), &last)
}

fn expectation(state: &DenseState, observable: &CMatrix) -> f64 {
    (&state.rho * observable).trace().re
}

fn apply_instruction(
    state: &mut DenseState,
    instr: &Instruction<f64>,
    noise: &NoiseModel<f64>,
    records: &mut Vec<DenseRecord>,
) -> Result<()> {
    let n = state.n;
    let d1 = noise.measure.d1;
    let g = &noise.gate;
    match instr {
        Instruction::Named { gate, q } => dense_apply(state, &[named(*gate)], &[*q])?,
        Instruction::U1 { lambda, q } => {
            dense_apply(state, &noisy_rotation(Axis::Z, *lambda, g.z.mean_offset, g.z.damping), &[*q])?
        }
        Instruction::U2 { phi, lambda, q } => {
            dense_apply(state, &noisy_u3(std::f64::consts::FRAC_PI_2, *phi, *lambda, noise), &[*q])?
        }
        Instruction::U3 { theta, phi, lambda, q } => {
            dense_apply(state, &noisy_u3(*theta, *phi, *lambda, noise), &[*q])?
        }
        Instruction::Cx { control, target } => {
            dense_apply(state, &noisy_cnot(g.cx.mean_offset, g.cx.damping), &[*control, *target])?
        }
        Instruction::Ccx { controls, target } => {
            dense_apply(state, &[toffoli()], &[controls[0], controls[1], *target])?
        }
        Instruction::Measure { q, basis } => {
            let s = sigma(axis_of(*basis)?);
            let id = identity(1);
            let keep = (1.0 + d1) / 2.0;
            let flip = (1.0 - d1) / 2.0;
            let proj_plus = (&id + &s) * c64(0.5);
            let proj_minus = (&id - &s) * c64(0.5);
            let effect_plus = &proj_plus * c64(keep) + &proj_minus * c64(flip);
            let plus = expectation(state, &embed(&effect_plus, &[*q], n)?);
            dense_apply(state, &noisy_projective(axis_of(*basis)?, d1), &[*q])?;
            records.push(Record::Measure { q: *q, basis: *basis, plus, minus: 1.0 - plus });
        }
        Instruction::Expect { string } => {
            if string.len() != n {
                return Err(Error::Shape(format!("Pauli string {string} on {n} qubits")));
            }
            let raw = expectation(state, &pauli_matrix(string.index(), n));
            let value = raw * d1.powi(string.weight() as i32);
            for (k, p) in string.0.iter().enumerate() {
                if *p != Pauli::I {
                    dense_apply(state, &noisy_projective(axis_of(*p)?, d1), &[k])?;
                }
            }
            records.push(Record::Expect { string: string.clone(), value });
        }
        Instruction::Ensemble => {
            for k in 0..n {
                dense_apply(state, &noisy_projective(Axis::Z, d1), &[k])?;
            }
            let entries = state
                .diagonal()
                .into_iter()
                .enumerate()
                .map(|(b, p)| (bitstring(b, n), p))
                .collect();
            records.push(Record::Ensemble(OutcomeDistribution::from_raw(entries)?));
        }
        Instruction::Bell { a, b } => {
            dense_apply(state, &noisy_bell(noise.measure.d2), &[*a, *b])?;
            let mut entries = Vec::new();
            for (label, ket) in bell_states() {
                let proj = &ket * ket.adjoint();
                entries.push((label.to_string(), expectation(state, &embed(&proj, &[*a, *b], n)?)));
            }
            records.push(Record::Bell { a: *a, b: *b, outcomes: OutcomeDistribution::from_raw(entries)? });
        }
        Instruction::Reset { q } => {
            dense_apply(state, &reset(), &[*q])?;
            records.push(Record::Reset { q: *q });
        }
        Instruction::Barrier => {}
    }
    Ok(())
}

fn c64(x: f64) -> num_complex::Complex64 {
    num_complex::Complex64::new(x, 0.0)
}

/// Runs the circuit instruction by instruction with no memory noise. Named
/// gates and Toffoli act as exact unitaries.
pub fn run_dense_circuit(
    state: &mut DenseState,
    circuit: &Circuit<f64>,
    noise: &NoiseModel<f64>,
) -> Result<Vec<DenseRecord>> {
    if circuit.n != state.n {
        return Err(Error::Shape(format!("circuit on {} qubits, state on {}", circuit.n, state.n)));
    }
    circuit.validate()?;
    let mut records = Vec::new();
    for instr in &circuit.instructions {
        apply_instruction(state, instr, noise, &mut records)?;
    }
    Ok(records)
}

/// Runs partitions in order with the per-qubit memory channel after each.
pub fn run_dense_schedule(
    state: &mut DenseState,
    schedule: &Schedule<f64>,
    noise: &NoiseModel<f64>,
) -> Result<Vec<DenseRecord>> {
    if schedule.n != state.n {
        return Err(Error::Shape(format!("schedule on {} qubits, state on {}", schedule.n, state.n)));
    }
    let mut records = Vec::new();
    for partition in &schedule.partitions {
        for instr in &partition.instructions {
            apply_instruction(state, instr, noise, &mut records)?;
        }
        let mem = noise.memory_for(partition.category);
        if mem.f != 1.0 || mem.g != 1.0 {
            let kraus = memory_step(mem.f, mem.g, mem.p);
            for k in 0..state.n {
                dense_apply(state, &kraus, &[k])?;
            }
        }
    }
    Ok(records)
}
