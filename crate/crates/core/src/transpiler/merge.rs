use num_complex::Complex;

use crate::circuit_ir::{Circuit, Instruction};
use crate::scalar::wrap_angle;
use crate::Real;

/// Below this `|β|` a fused rotation is emitted as a pure `u1`.
pub const Z_ONLY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
enum Rot<T> {
    Z(T),
    U3(T, T, T),
}

fn as_rot<T: Real>(instr: &Instruction<T>) -> Option<Rot<T>> {
    match *instr {
        Instruction::U1 { lambda, .. } => Some(Rot::Z(lambda)),
        Instruction::U3 { theta, phi, lambda, .. } => Some(Rot::U3(theta, phi, lambda)),
        _ => None,
    }
}

type C<T> = Complex<T>;

fn mul2<T: Real>(a: &[[C<T>; 2]; 2], b: &[[C<T>; 2]; 2]) -> [[C<T>; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

fn ry<T: Real>(theta: T) -> [[C<T>; 2]; 2] {
    let h = T::lit(0.5);
    let (s, c) = (theta * h).sin_cos();
    let r = |x| C::new(x, T::zero());
    [[r(c), r(-s)], [r(s), r(c)]]
}

fn rz<T: Real>(angle: T) -> [[C<T>; 2]; 2] {
    let h = T::lit(0.5);
    let z = C::new(T::zero(), T::zero());
    [[C::from_polar(T::one(), -angle * h), z], [z, C::from_polar(T::one(), angle * h)]]
}

/// `R_y(b2) R_z(mid) R_y(b1) = R_z(α) R_y(β) R_z(γ)`; returns `(α, β, γ)`.
pub fn yzy_to_zyz<T: Real>(b1: T, mid: T, b2: T) -> (T, T, T) {
    let m = mul2(&ry(b2), &mul2(&rz(mid), &ry(b1)));
    let (m10, m11) = (m[1][0], m[1][1]);
    let beta = T::lit(2.0) * m10.norm().atan2(m11.norm());
    let tiny = T::lit(Z_ONLY_TOL);
    let (alpha, gamma) = if m10.norm() < tiny {
        (T::lit(2.0) * m11.arg(), T::zero())
    } else if m11.norm() < tiny {
        (T::lit(2.0) * m10.arg(), T::zero())
    } else {
        (m11.arg() + m10.arg(), m11.arg() - m10.arg())
    };
    (alpha, beta, gamma)
}

/// Composite of `first` followed by `second`.
fn compose<T: Real>(first: Rot<T>, second: Rot<T>) -> Rot<T> {
    match (first, second) {
        (Rot::Z(a), Rot::Z(b)) => Rot::Z(a + b),
        (Rot::Z(a), Rot::U3(t, p, l)) => Rot::U3(t, p, l + a),
        (Rot::U3(t, p, l), Rot::Z(a)) => Rot::U3(t, p + a, l),
        (Rot::U3(t1, p1, l1), Rot::U3(t2, p2, l2)) => {
            let (alpha, beta, gamma) = yzy_to_zyz(t1, l2 + p1, t2);
            Rot::U3(beta, p2 + alpha, gamma + l1)
        }
    }
}

fn emit<T: Real>(rot: Rot<T>, q: usize) -> Instruction<T> {
    match rot {
        Rot::Z(a) => Instruction::U1 { lambda: wrap_angle(a), q },
        Rot::U3(theta, phi, lambda) if theta.abs() < T::lit(Z_ONLY_TOL) => Instruction::U1 {
            lambda: wrap_angle(phi + lambda),
            q,
        },
        Rot::U3(theta, phi, lambda) => Instruction::U3 {
            theta: wrap_angle(theta),
            phi: wrap_angle(phi),
            lambda: wrap_angle(lambda),
            q,
        },
    }
}

struct Run<T> {
    first: Instruction<T>,
    net: Rot<T>,
    len: usize,
}

fn flush<T: Real>(pending: &mut [Option<Run<T>>], q: usize, out: &mut Vec<Instruction<T>>) {
    if let Some(run) = pending[q].take() {
        if run.len == 1 {
            out.push(run.first);
        } else {
            out.push(emit(run.net, q));
        }
    }
}

/// Fuses every maximal run of consecutive u1/u3 gates on a qubit into one
/// gate, emitted where the run is interrupted. Runs of length one are kept
/// verbatim, so the pass is idempotent.
pub fn merge<T: Real>(circuit: &Circuit<T>) -> Circuit<T> {
    let n = circuit.n;
    let mut pending: Vec<Option<Run<T>>> = (0..n).map(|_| None).collect();
    let mut out = Vec::with_capacity(circuit.len());
    for instr in &circuit.instructions {
        if let Some(rot) = as_rot(instr) {
            let q = instr.qubits(n)[0];
            pending[q] = Some(match pending[q].take() {
                None => Run {
                    first: instr.clone(),
                    net: rot,
                    len: 1,
                },
                Some(run) => Run {
                    first: run.first,
                    net: compose(run.net, rot),
                    len: run.len + 1,
                },
            });
            continue;
        }
        let mut touched = instr.qubits(n);
        touched.sort_unstable();
        for q in touched {
            flush(&mut pending, q, &mut out);
        }
        out.push(instr.clone());
    }
    for q in 0..n {
        flush(&mut pending, q, &mut out);
    }
    Circuit {
        n,
        instructions: out,
    }
}
