//! Gate application through real Pauli transfer matrices.
//!
//! A one-qubit channel acts on the 4-tuple `(a_I, a_X, a_Y, a_Z)` of the target
//! digit, a two-qubit channel on the 16-tuple of a digit pair. The first row
//! of every transfer matrix is `e_0`, so traces are preserved exactly.
//!
//! Rotation errors follow a two-point angle distribution: a rotation by `θ`
//! is executed as the equal mixture of exact rotations by
//! `θ + ᾱ ± arccos(r)`. For one-qubit rotations this turns `cos θ`, `sin θ`
//! into `r cos(θ+ᾱ)`, `r sin(θ+ᾱ)`; for C-NOT the same mixture is applied to
//! the `R_x(α)σ_x` block of the pulse.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{check_qubit, check_unit, Error, Result};
use crate::kernels::{map_pairs, map_quads};
use crate::{PauliState, Real};

/// Fixed rotation axis of the select gate set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// Perpendicular Pauli digits `(u, v)` in right-handed order.
    fn transverse(self) -> (usize, usize) {
        match self {
            Axis::X => (2, 3),
            Axis::Y => (3, 1),
            Axis::Z => (1, 2),
        }
    }

    pub fn digit(self) -> usize {
        match self {
            Axis::X => 1,
            Axis::Y => 2,
            Axis::Z => 3,
        }
    }
}

/// Angle error of a rotation: mean offset `ᾱ` and damping `r = ⟨cos(α-ᾱ)⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationNoise<T> {
    pub mean_offset: T,
    pub damping: T,
}

impl<T: Real> Default for RotationNoise<T> {
    fn default() -> Self {
        Self::exact()
    }
}

impl<T: Real> RotationNoise<T> {
    pub fn exact() -> Self {
        RotationNoise {
            mean_offset: T::zero(),
            damping: T::one(),
        }
    }

    pub fn new(mean_offset: T, damping: T) -> Result<Self> {
        check_unit("r", damping)?;
        if !mean_offset.is_finite() {
            return Err(Error::Parameter {
                name: "alpha".into(),
                value: mean_offset.as_f64(),
                range: "finite",
            });
        }
        Ok(RotationNoise {
            mean_offset,
            damping,
        })
    }

    /// Half-width `δ₀ = arccos(r)` of the two-point angle distribution.
    pub fn spread(&self) -> T {
        self.damping.min(T::one()).acos()
    }

    pub fn is_exact(&self) -> bool {
        self.mean_offset == T::zero() && self.damping == T::one()
    }
}

/// Rotation noise for every axis of the select set plus the C-NOT pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateNoise<T> {
    pub x: RotationNoise<T>,
    pub y: RotationNoise<T>,
    pub z: RotationNoise<T>,
    pub cx: RotationNoise<T>,
}

impl<T: Real> Default for GateNoise<T> {
    fn default() -> Self {
        Self::uniform(RotationNoise::exact())
    }
}

impl<T: Real> GateNoise<T> {
    pub fn axis(&self, axis: Axis) -> &RotationNoise<T> {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
            Axis::Z => &self.z,
        }
    }

    pub fn uniform(noise: RotationNoise<T>) -> Self {
        GateNoise {
            x: noise,
            y: noise,
            z: noise,
            cx: noise,
        }
    }
}

/// 4×4 real transfer matrix of a one-qubit channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix1Q<T>([[T; 4]; 4]);

impl<T: Real> TransferMatrix1Q<T> {
    pub fn identity() -> Self {
        TransferMatrix1Q(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { T::one() } else { T::zero() })
        }))
    }

    /// Accepts any matrix whose first row is `(1, 0, 0, 0)`.
    pub fn new(m: [[T; 4]; 4]) -> Result<Self> {
        if m[0] != [T::one(), T::zero(), T::zero(), T::zero()] {
            return Err(Error::Consistency(
                "transfer matrix first row must be e_0".into(),
            ));
        }
        Ok(TransferMatrix1Q(m))
    }

    pub fn matrix(&self) -> &[[T; 4]; 4] {
        &self.0
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Self) -> Self {
        let mut out = [[T::zero(); 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..4).map(|m| self.0[i][m] * first.0[m][j]).sum();
            }
        }
        TransferMatrix1Q(out)
    }

    pub fn apply(&self, a: [T; 4]) -> [T; 4] {
        std::array::from_fn(|i| (0..4).map(|j| self.0[i][j] * a[j]).sum())
    }

    fn average(a: &Self, b: &Self) -> Self {
        let h = T::lit(0.5);
        TransferMatrix1Q(std::array::from_fn(|i| {
            std::array::from_fn(|j| (a.0[i][j] + b.0[i][j]) * h)
        }))
    }
}

/// 16×16 real transfer matrix of a two-qubit channel on tuple index `i_a + 4 i_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferMatrix2Q<T> {
    dense: Box<[[T; 16]; 16]>,
    // (row, col, value) of every nonzero entry
    sparse: Vec<(u8, u8, T)>,
}

impl<T: Real> TransferMatrix2Q<T> {
    pub fn new(m: [[T; 16]; 16]) -> Result<Self> {
        if (0..16).any(|j| m[0][j] != if j == 0 { T::one() } else { T::zero() }) {
            return Err(Error::Consistency(
                "transfer matrix first row must be e_0".into(),
            ));
        }
        Ok(Self::from_dense(m))
    }

    fn from_dense(m: [[T; 16]; 16]) -> Self {
        let mut sparse = Vec::new();
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if *v != T::zero() {
                    sparse.push((i as u8, j as u8, *v));
                }
            }
        }
        TransferMatrix2Q {
            dense: Box::new(m),
            sparse,
        }
    }

    pub fn matrix(&self) -> &[[T; 16]; 16] {
        &self.dense
    }

    pub fn apply(&self, a: &[T; 16]) -> [T; 16] {
        let mut out = [T::zero(); 16];
        for &(i, j, v) in &self.sparse {
            out[i as usize] += v * a[j as usize];
        }
        out
    }

    /// True when every row has exactly one `±1` entry.
    pub fn is_signed_permutation(&self) -> bool {
        self.dense.iter().all(|row| {
            let nz: Vec<_> = row.iter().filter(|v| **v != T::zero()).collect();
            nz.len() == 1 && nz[0].abs() == T::one()
        })
    }
}

fn exact_rotation<T: Real>(axis: Axis, angle: T) -> TransferMatrix1Q<T> {
    let mut m = TransferMatrix1Q::identity().0;
    let (u, v) = axis.transverse();
    let (s, c) = angle.sin_cos();
    m[u][u] = c;
    m[u][v] = -s;
    m[v][u] = s;
    m[v][v] = c;
    TransferMatrix1Q(m)
}

/// Transfer matrix of `R_axis(θ)` under the given angle error.
pub fn rotation_transfer<T: Real>(
    axis: Axis,
    theta: T,
    noise: &RotationNoise<T>,
) -> Result<TransferMatrix1Q<T>> {
    check_unit("r", noise.damping)?;
    let delta = noise.spread();
    let centre = theta + noise.mean_offset;
    Ok(TransferMatrix1Q::average(
        &exact_rotation(axis, centre + delta),
        &exact_rotation(axis, centre - delta),
    ))
}

/// `u1(λ) = R_z(λ)` up to phase.
pub fn u1_transfer<T: Real>(lambda: T, noise: &GateNoise<T>) -> Result<TransferMatrix1Q<T>> {
    rotation_transfer(Axis::Z, lambda, &noise.z)
}

/// `u3(θ, φ, λ) = R_z(φ) R_y(θ) R_z(λ)`, each factor with its own axis noise.
pub fn u3_transfer<T: Real>(
    theta: T,
    phi: T,
    lambda: T,
    noise: &GateNoise<T>,
) -> Result<TransferMatrix1Q<T>> {
    let first = rotation_transfer(Axis::Z, lambda, &noise.z)?;
    let middle = rotation_transfer(Axis::Y, theta, &noise.y)?;
    let last = rotation_transfer(Axis::Z, phi, &noise.z)?;
    Ok(last.after(&middle.after(&first)))
}

/// Replaces every qubit-`k` coefficient 4-tuple by `T · tuple`.
pub fn apply_single<T: Real>(
    state: &mut PauliState<T>,
    k: usize,
    transfer: &TransferMatrix1Q<T>,
) -> Result<()> {
    check_qubit(k, state.n())?;
    let m = transfer.0;
    map_quads(state.coeffs_mut(), k, move |a| {
        std::array::from_fn(|r| {
            let row = &m[r + 1];
            row[0] * a[0] + row[1] * a[1] + row[2] * a[2] + row[3] * a[3]
        })
    });
    Ok(())
}

pub fn apply_u1<T: Real>(
    state: &mut PauliState<T>,
    k: usize,
    lambda: T,
    noise: &GateNoise<T>,
) -> Result<()> {
    apply_single(state, k, &u1_transfer(lambda, noise)?)
}

pub fn apply_u3<T: Real>(
    state: &mut PauliState<T>,
    k: usize,
    theta: T,
    phi: T,
    lambda: T,
    noise: &GateNoise<T>,
) -> Result<()> {
    apply_single(state, k, &u3_transfer(theta, phi, lambda, noise)?)
}

type C<T> = Complex<T>;

fn pauli_2x2<T: Real>(d: usize) -> [[C<T>; 2]; 2] {
    let (o, z, i) = (C::new(T::one(), T::zero()), C::new(T::zero(), T::zero()), C::new(T::zero(), T::one()));
    match d {
        0 => [[o, z], [z, o]],
        1 => [[z, o], [o, z]],
        2 => [[z, -i], [i, z]],
        _ => [[o, z], [z, -o]],
    }
}

/// `σ_{d_hi} ⊗ σ_{d_lo}` in the local basis `|b_hi b_lo⟩` (index `2 b_hi + b_lo`).
fn pauli_4x4<T: Real>(d_hi: usize, d_lo: usize) -> [[C<T>; 4]; 4] {
    let a = pauli_2x2::<T>(d_hi);
    let b = pauli_2x2::<T>(d_lo);
    std::array::from_fn(|r| std::array::from_fn(|c| a[r >> 1][c >> 1] * b[r & 1][c & 1]))
}

fn matmul4<T: Real>(x: &[[C<T>; 4]; 4], y: &[[C<T>; 4]; 4]) -> [[C<T>; 4]; 4] {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| (0..4).fold(C::new(T::zero(), T::zero()), |acc, m| acc + x[r][m] * y[m][c]))
    })
}

fn dagger4<T: Real>(x: &[[C<T>; 4]; 4]) -> [[C<T>; 4]; 4] {
    std::array::from_fn(|r| std::array::from_fn(|c| x[c][r].conj()))
}

/// Pauli transfer matrix `T_{QP} = Tr(Q U P U†) / 4` of a 4×4 unitary.
///
/// Tuple index `i_hi + 4 i_lo`, where `hi` is the high bit of the local basis index.
fn ptm_from_unitary<T: Real>(u: &[[C<T>; 4]; 4]) -> [[T; 16]; 16] {
    let ud = dagger4(u);
    let quarter = T::lit(0.25);
    let mut out = [[T::zero(); 16]; 16];
    for col in 0..16 {
        let p = pauli_4x4::<T>(col & 3, col >> 2);
        let conj = matmul4(&matmul4(u, &p), &ud);
        for (row, out_row) in out.iter_mut().enumerate() {
            let q = pauli_4x4::<T>(row & 3, row >> 2);
            let mut tr = C::new(T::zero(), T::zero());
            for r in 0..4 {
                for c in 0..4 {
                    tr += q[r][c] * conj[c][r];
                }
            }
            let v = tr.re * quarter;
            // rounding residue would otherwise densify the sparse form
            out_row[col] = if v.abs() < T::lit(8.0) * T::epsilon() { T::zero() } else { v };
        }
    }
    // unitary conjugation preserves the trace exactly
    out[0] = std::array::from_fn(|j| if j == 0 { T::one() } else { T::zero() });
    out
}

/// `U(α) = |0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ R_x(α) σ_x`, control = high bit.
fn cnot_pulse<T: Real>(alpha: T) -> [[C<T>; 4]; 4] {
    let zero = C::new(T::zero(), T::zero());
    let one = C::new(T::one(), T::zero());
    let (s, c) = (alpha * T::lit(0.5)).sin_cos();
    // R_x(α) σ_x = cos(α/2) σ_x − i sin(α/2) I
    let diag = C::new(T::zero(), -s);
    let off = C::new(c, T::zero());
    [
        [one, zero, zero, zero],
        [zero, one, zero, zero],
        [zero, zero, diag, off],
        [zero, zero, off, diag],
    ]
}

/// Transfer matrix of the (possibly noisy) C-NOT; tuple index `i_control + 4 i_target`.
pub fn cnot_transfer<T: Real>(noise: &RotationNoise<T>) -> Result<TransferMatrix2Q<T>> {
    check_unit("r_cx", noise.damping)?;
    let delta = noise.spread();
    let plus = ptm_from_unitary(&cnot_pulse(noise.mean_offset + delta));
    let minus = ptm_from_unitary(&cnot_pulse(noise.mean_offset - delta));
    let h = T::lit(0.5);
    let m: [[T; 16]; 16] =
        std::array::from_fn(|i| std::array::from_fn(|j| (plus[i][j] + minus[i][j]) * h));
    TransferMatrix2Q::new(m)
}

pub fn apply_two<T: Real>(
    state: &mut PauliState<T>,
    a: usize,
    b: usize,
    transfer: &TransferMatrix2Q<T>,
) -> Result<()> {
    check_qubit(a, state.n())?;
    check_qubit(b, state.n())?;
    if a == b {
        return Err(Error::Circuit(format!("two-qubit gate with repeated operand q[{a}]")));
    }
    map_pairs(state.coeffs_mut(), a, b, |t| transfer.apply(t));
    Ok(())
}

pub fn apply_cnot<T: Real>(
    state: &mut PauliState<T>,
    control: usize,
    target: usize,
    noise: &RotationNoise<T>,
) -> Result<()> {
    if control == target {
        return Err(Error::Circuit(format!("cx control and target are both q[{control}]")));
    }
    apply_two(state, control, target, &cnot_transfer(noise)?)
}

/// Common one-qubit gates with closed-form Pauli-basis actions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedGate {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
}

impl NamedGate {
    pub const ALL: [NamedGate; 8] = [
        NamedGate::X,
        NamedGate::Y,
        NamedGate::Z,
        NamedGate::H,
        NamedGate::S,
        NamedGate::Sdg,
        NamedGate::T,
        NamedGate::Tdg,
    ];

    pub fn mnemonic(self) -> &'static str {
        match self {
            NamedGate::X => "x",
            NamedGate::Y => "y",
            NamedGate::Z => "z",
            NamedGate::H => "h",
            NamedGate::S => "s",
            NamedGate::Sdg => "sdg",
            NamedGate::T => "t",
            NamedGate::Tdg => "tdg",
        }
    }
}

impl fmt::Display for NamedGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

impl FromStr for NamedGate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        NamedGate::ALL
            .into_iter()
            .find(|g| g.mnemonic() == s)
            .ok_or_else(|| format!("unknown gate `{s}`"))
    }
}

/// Exact noiseless transfer matrix of a named gate.
pub fn named_gate_transfer<T: Real>(gate: NamedGate) -> TransferMatrix1Q<T> {
    let (o, z) = (T::one(), T::zero());
    let r = T::FRAC_1_SQRT_2();
    let m = match gate {
        NamedGate::X => [[o, z, z, z], [z, o, z, z], [z, z, -o, z], [z, z, z, -o]],
        NamedGate::Y => [[o, z, z, z], [z, -o, z, z], [z, z, o, z], [z, z, z, -o]],
        NamedGate::Z => [[o, z, z, z], [z, -o, z, z], [z, z, -o, z], [z, z, z, o]],
        NamedGate::H => [[o, z, z, z], [z, z, z, o], [z, z, -o, z], [z, o, z, z]],
        NamedGate::S => [[o, z, z, z], [z, z, -o, z], [z, o, z, z], [z, z, z, o]],
        NamedGate::Sdg => [[o, z, z, z], [z, z, o, z], [z, -o, z, z], [z, z, z, o]],
        NamedGate::T => [[o, z, z, z], [z, r, -r, z], [z, r, r, z], [z, z, z, o]],
        NamedGate::Tdg => [[o, z, z, z], [z, r, r, z], [z, -r, r, z], [z, z, z, o]],
    };
    TransferMatrix1Q(m)
}
