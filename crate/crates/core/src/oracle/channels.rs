use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::gates::{Axis, NamedGate};
use crate::oracle::{c, CMatrix};

fn m2(a: [[Complex64; 2]; 2]) -> CMatrix {
    DMatrix::from_fn(2, 2, |i, j| a[i][j])
}

pub fn identity(qubits: usize) -> CMatrix {
    CMatrix::identity(1 << qubits, 1 << qubits)
}

pub fn sigma(axis: Axis) -> CMatrix {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    match axis {
        Axis::X => m2([[z, o], [o, z]]),
        Axis::Y => m2([[z, c(0.0, -1.0)], [c(0.0, 1.0), z]]),
        Axis::Z => m2([[o, z], [z, -o]]),
    }
}

/// `exp(-i θ σ/2)`.
pub fn rotation(axis: Axis, theta: f64) -> CMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    identity(1) * c(co, 0.0) - sigma(axis) * c(0.0, s)
}

pub fn u1(lambda: f64) -> CMatrix {
    m2([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), Complex64::from_polar(1.0, lambda)]])
}

/// The three-angle single-qubit gate in its matrix form.
pub fn u3(theta: f64, phi: f64, lambda: f64) -> CMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    m2([
        [c(co, 0.0), -Complex64::from_polar(s, lambda)],
        [Complex64::from_polar(s, phi), Complex64::from_polar(co, phi + lambda)],
    ])
}

pub fn named(gate: NamedGate) -> CMatrix {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    let r = std::f64::consts::FRAC_1_SQRT_2;
    match gate {
        NamedGate::X => sigma(Axis::X),
        NamedGate::Y => sigma(Axis::Y),
        NamedGate::Z => sigma(Axis::Z),
        NamedGate::H => m2([[c(r, 0.0), c(r, 0.0)], [c(r, 0.0), c(-r, 0.0)]]),
        NamedGate::S => m2([[o, z], [z, c(0.0, 1.0)]]),
        NamedGate::Sdg => m2([[o, z], [z, c(0.0, -1.0)]]),
        NamedGate::T => m2([[o, z], [z, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]]),
        NamedGate::Tdg => m2([[o, z], [z, Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)]]),
    }
}

/// Controlled-NOT with the control on the high local bit.
pub fn cnot() -> CMatrix {
    let mut m = identity(2);
    m.swap_rows(2, 3);
    m
}

/// Toffoli with the controls on the two high local bits.
pub fn toffoli() -> CMatrix {
    let mut m = identity(3);
    m.swap_rows(6, 7);
    m
}

/// C-NOT pulse with over-rotation `α`: `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ R_x(α) σ_x`.
pub fn cnot_pulse(alpha: f64) -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    let lower = rotation(Axis::X, alpha) * sigma(Axis::X);
    m[(0, 0)] = c(1.0, 0.0);
    m[(1, 1)] = c(1.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            m[(2 + i, 2 + j)] = lower[(i, j)];
        }
    }
    m
}

fn scaled(m: CMatrix, weight: f64) -> CMatrix {
    m * c(weight.sqrt(), 0.0)
}

fn two_point(make: impl Fn(f64) -> CMatrix, centre: f64, damping: f64) -> Vec<CMatrix> {
    let delta = damping.min(1.0).acos();
    vec![scaled(make(centre + delta), 0.5), scaled(make(centre - delta), 0.5)]
}

/// Equal mixture of rotations by `θ + ᾱ ± arccos(r)`.
pub fn noisy_rotation(axis: Axis, theta: f64, mean_offset: f64, damping: f64) -> Vec<CMatrix> {
    two_point(|a| rotation(axis, a), theta + mean_offset, damping)
}

pub fn noisy_cnot(mean_offset: f64, damping: f64) -> Vec<CMatrix> {
    two_point(cnot_pulse, mean_offset, damping)
}

/// Kraus list of `second ∘ first`.
pub fn compose(first: &[CMatrix], second: &[CMatrix]) -> Vec<CMatrix> {
    second.iter().flat_map(|b| first.iter().map(move |a| b * a)).collect()
}

/// Pure dephasing: off-diagonal elements scaled by `f`.
pub fn dephasing(f: f64) -> Vec<CMatrix> {
    vec![scaled(identity(1), (1.0 + f) / 2.0), scaled(sigma(Axis::Z), (1.0 - f) / 2.0)]
}

/// Generalized amplitude damping toward `diag(p, 1 - p)` with survival `g`.
pub fn thermal_decay(g: f64, p: f64) -> Vec<CMatrix> {
    let z = c(0.0, 0.0);
    let (sg, sl) = (g.sqrt(), (1.0 - g).sqrt());
    vec![
        scaled(m2([[c(1.0, 0.0), z], [z, c(sg, 0.0)]]), p),
        scaled(m2([[z, c(sl, 0.0)], [z, z]]), p),
        scaled(m2([[c(sg, 0.0), z], [z, c(1.0, 0.0)]]), 1.0 - p),
        scaled(m2([[z, z], [c(sl, 0.0), z]]), 1.0 - p),
    ]
}

/// Dephasing followed by thermal decay on one qubit.
pub fn memory_step(f: f64, g: f64, p: f64) -> Vec<CMatrix> {
    compose(&dephasing(f), &thermal_decay(g, p))
}

/// Non-selective measurement along `σ` with symmetric readout flip `(1 - d1)/2`.
pub fn noisy_projective(axis: Axis, d1: f64) -> Vec<CMatrix> {
    let s = sigma(axis);
    // a Pauli anticommuting with σ exchanges the two outcomes
    let swap = sigma(if axis == Axis::Z { Axis::X } else { Axis::Z });
    let plus = (identity(1) + &s) * c(0.5, 0.0);
    let minus = (identity(1) - &s) * c(0.5, 0.0);
    let keep = (1.0 + d1) / 2.0;
    let flip = (1.0 - d1) / 2.0;
    vec![
        scaled(plus.clone(), keep),
        scaled(minus.clone(), keep),
        scaled(&swap * plus, flip),
        scaled(&swap * minus, flip),
    ]
}

/// Bell states `Φ+, Φ-, Ψ+, Ψ-` as column vectors on two qubits.
pub fn bell_states() -> [(&'static str, CMatrix); 4] {
    let r = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let ket = |a: usize, b: usize, sign: f64| {
        let mut v = CMatrix::zeros(4, 1);
        v[(a, 0)] = r;
        v[(b, 0)] = r * sign;
        v
    };
    [
        ("Phi+", ket(0, 3, 1.0)),
        ("Phi-", ket(0, 3, -1.0)),
        ("Psi+", ket(1, 2, 1.0)),
        ("Psi-", ket(1, 2, -1.0)),
    ]
}

/// Bell-basis dephasing followed by the local Pauli mixture that scales the
/// correlations by `d2`.
pub fn noisy_bell(d2: f64) -> Vec<CMatrix> {
    let projectors: Vec<CMatrix> = bell_states().iter().map(|(_, v)| v * v.adjoint()).collect();
    let i = identity(1);
    let local = |m: &CMatrix| m.kronecker(&i);
    let mix = vec![
        scaled(identity(2), (1.0 + 3.0 * d2) / 4.0),
        scaled(local(&sigma(Axis::X)), (1.0 - d2) / 4.0),
        scaled(local(&sigma(Axis::Y)), (1.0 - d2) / 4.0),
        scaled(local(&sigma(Axis::Z)), (1.0 - d2) / 4.0),
    ];
    compose(&projectors, &mix)
}

/// Reset to `|0⟩`.
pub fn reset() -> Vec<CMatrix> {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    vec![m2([[o, z], [z, z]]), m2([[z, o], [z, z]])]
}

/// Equality up to a global phase, measured entrywise.
pub fn phase_aligned_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let (mut best, mut idx) = (0.0, (0, 0));
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            if b[(i, j)].norm() > best {
                best = b[(i, j)].norm();
                idx = (i, j);
            }
        }
    }
    if best == 0.0 {
        return a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    }
    let ratio = a[idx] / b[idx];
    let phase = ratio / ratio.norm();
    (a - b * phase).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
