use crate::circuit_ir::{Circuit, Instruction};
use crate::error::Result;
use crate::gates::NamedGate;
use crate::Real;

/// True if `instr` is already in the select set {u1, u3, cx} or is a
/// measurement, reset or barrier.
pub fn is_select<T: Real>(instr: &Instruction<T>) -> bool {
    !matches!(
        instr,
        Instruction::Named { .. } | Instruction::U2 { .. } | Instruction::Ccx { .. }
    )
}

/// Named gate as a u3, or as a u1 when it is a pure phase.
fn named_as_select<T: Real>(gate: NamedGate, q: usize) -> Instruction<T> {
    let pi = T::PI();
    let half = T::FRAC_PI_2();
    let quarter = T::FRAC_PI_4();
    let z = T::zero();
    let u3 = |theta, phi, lambda| Instruction::U3 { theta, phi, lambda, q };
    let u1 = |lambda| Instruction::U1 { lambda, q };
    match gate {
        NamedGate::X => u3(pi, z, pi),
        NamedGate::Y => u3(pi, half, half),
        NamedGate::Z => u1(pi),
        NamedGate::H => u3(half, z, pi),
        NamedGate::S => u1(half),
        NamedGate::Sdg => u1(-half),
        NamedGate::T => u1(quarter),
        NamedGate::Tdg => u1(-quarter),
    }
}

/// Toffoli as six C-NOTs with Hadamard and T/T† phases on the target.
fn toffoli<R: Real>(a: usize, b: usize, c: usize, out: &mut Vec<Instruction<R>>) {
    use NamedGate::*;
    let g = |gate, q| named_as_select::<R>(gate, q);
    let cx = |control, target| Instruction::Cx { control, target };
    out.extend([
        g(H, c),
        cx(b, c),
        g(Tdg, c),
        cx(a, c),
        g(T, c),
        cx(b, c),
        g(Tdg, c),
        cx(a, c),
        g(T, b),
        g(T, c),
        g(H, c),
        cx(a, b),
        g(T, a),
        g(Tdg, b),
        cx(a, b),
    ]);
}

/// Rewrites every gate into u1, u3 and cx.
pub fn decompose<T: Real>(circuit: &Circuit<T>) -> Result<Circuit<T>> {
    circuit.validate()?;
    let mut out = Vec::with_capacity(circuit.len());
    for instr in &circuit.instructions {
        match instr {
            Instruction::Named { gate, q } => out.push(named_as_select(*gate, *q)),
            Instruction::U2 { phi, lambda, q } => out.push(Instruction::U3 {
                theta: T::FRAC_PI_2(),
                phi: *phi,
                lambda: *lambda,
                q: *q,
            }),
            Instruction::Ccx { controls, target } => toffoli(controls[0], controls[1], *target, &mut out),
            other => out.push(other.clone()),
        }
    }
    Ok(Circuit {
        n: circuit.n,
        instructions: out,
    })
}
