#![allow(dead_code)]

use num_complex::Complex64;
use paulisim::circuit_ir::{Circuit, Instruction};
use paulisim::gates::NamedGate;
use paulisim::oracle::{self, from_dense, CMatrix, DenseState};
use paulisim::{Pauli, PauliState, PauliString};
use rand::Rng;

/// Which instruction kinds a random circuit may contain.
#[derive(Debug, Clone, Copy)]
pub struct Mix {
    pub named: bool,
    pub measurements: bool,
    pub barriers: bool,
}

pub const SELECT_ONLY: Mix = Mix { named: false, measurements: false, barriers: false };
pub const EVERYTHING: Mix = Mix { named: true, measurements: true, barriers: true };

fn angle(rng: &mut impl Rng) -> f64 {
    rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)
}

fn distinct(rng: &mut impl Rng, n: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let q = rng.gen_range(0..n);
        if !out.contains(&q) {
            out.push(q);
        }
    }
    out
}

pub fn random_instruction(rng: &mut impl Rng, n: usize, mix: Mix) -> Instruction<f64> {
    loop {
        let kind = rng.gen_range(0..14);
        let instr = match kind {
            0 | 1 => Instruction::U1 { lambda: angle(rng), q: rng.gen_range(0..n) },
            2 | 3 | 4 => Instruction::U3 { theta: angle(rng), phi: angle(rng), lambda: angle(rng), q: rng.gen_range(0..n) },
            5 | 6 if n >= 2 => {
                let ops = distinct(rng, n, 2);
                Instruction::Cx { control: ops[0], target: ops[1] }
            }
            7 if mix.named => Instruction::Named { gate: NamedGate::ALL[rng.gen_range(0..8)], q: rng.gen_range(0..n) },
            8 if mix.named => Instruction::U2 { phi: angle(rng), lambda: angle(rng), q: rng.gen_range(0..n) },
            9 if mix.named && n >= 3 => {
                let ops = distinct(rng, n, 3);
                Instruction::Ccx { controls: [ops[0], ops[1]], target: ops[2] }
            }
            10 if mix.measurements => {
                let basis = [Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..3)];
                if rng.gen_bool(0.25) {
                    Instruction::Reset { q: rng.gen_range(0..n) }
                } else {
                    Instruction::Measure { q: rng.gen_range(0..n), basis }
                }
            }
            11 if mix.measurements => match rng.gen_range(0..3) {
                0 => Instruction::Ensemble,
                1 if n >= 2 => {
                    let ops = distinct(rng, n, 2);
                    Instruction::Bell { a: ops[0], b: ops[1] }
                }
                _ => Instruction::Expect {
                    string: PauliString((0..n).map(|_| Pauli::ALL[rng.gen_range(0..4)]).collect()),
                },
            },
            12 if mix.barriers => Instruction::Barrier,
            _ => continue,
        };
        return instr;
    }
}

pub fn random_circuit(rng: &mut impl Rng, n: usize, len: usize, mix: Mix) -> Circuit<f64> {
    Circuit { n, instructions: (0..len).map(|_| random_instruction(rng, n, mix)).collect() }
}

/// Dense unitary of a gate-only circuit.
pub fn circuit_unitary(circuit: &Circuit<f64>) -> CMatrix {
    let n = circuit.n;
    let mut u = CMatrix::identity(1 << n, 1 << n);
    for instr in &circuit.instructions {
        let (op, operands): (CMatrix, Vec<usize>) = match *instr {
            Instruction::U1 { lambda, q } => (oracle::u1(lambda), vec![q]),
            Instruction::U2 { phi, lambda, q } => (oracle::u3(std::f64::consts::FRAC_PI_2, phi, lambda), vec![q]),
            Instruction::U3 { theta, phi, lambda, q } => (oracle::u3(theta, phi, lambda), vec![q]),
            Instruction::Named { gate, q } => (oracle::named(gate), vec![q]),
            Instruction::Cx { control, target } => (oracle::cnot(), vec![control, target]),
            Instruction::Ccx { controls, target } => (oracle::toffoli(), vec![controls[0], controls[1], target]),
            Instruction::Barrier => continue,
            ref other => panic!("not a gate: {other}"),
        };
        u = oracle::embed(&op, &operands, n).unwrap() * u;
    }
    u
}

/// Unitary DFT with qubit `n-1` as the most significant bit.
pub fn dft(n: usize) -> CMatrix {
    let d = 1usize << n;
    let scale = 1.0 / (d as f64).sqrt();
    CMatrix::from_fn(d, d, |y, x| {
        Complex64::from_polar(scale, 2.0 * std::f64::consts::PI * (x * y) as f64 / d as f64)
    })
}

/// Random mixed state of random rank, drawn as `A A† / Tr`.
pub fn random_state(rng: &mut impl Rng, n: usize) -> PauliState<f64> {
    let d = 1 << n;
    let rank = rng.gen_range(1..=d);
    let a = CMatrix::from_fn(d, rank, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let rho = &a * a.adjoint();
    let tr = rho.trace();
    from_dense(&DenseState::new(rho / tr).unwrap()).unwrap()
}

pub fn random_bits(rng: &mut impl Rng, n: usize) -> String {
    (0..n).map(|_| if rng.gen_bool(0.5) { '1' } else { '0' }).collect()
}
