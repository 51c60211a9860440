//! Dense reference simulator on `2^n × 2^n` complex density matrices.
//!
//! Everything here is built from explicit unitaries and Kraus operators and
//! shares no arithmetic with the Pauli-basis kernels, so agreement between
//! the two is a meaningful check. Basis index bit `k` is qubit `k`.

mod channels;
mod choi;
mod run;

pub use channels::*;
pub use choi::{choi_from_kraus, choi_from_map, choi_from_pauli_map, min_eigenvalue};
pub use run::{run_dense_circuit, run_dense_schedule, DenseRecord};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::PauliState;

pub type CMatrix = DMatrix<Complex64>;

/// Largest register the oracle accepts.
pub const MAX_DENSE_QUBITS: usize = 8;

const HERMITIAN_TOL: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    pub n: usize,
    pub rho: CMatrix,
}

/// `(row, phase)` of the single nonzero in column `col` of a Pauli string matrix.
fn pauli_column(index: usize, n: usize, col: usize) -> (usize, Complex64) {
    let mut row = col;
    let mut phase = c(1.0, 0.0);
    for k in 0..n {
        let bit = (col >> k) & 1;
        match (index >> (2 * k)) & 3 {
            1 => row ^= 1 << k,
            2 => {
                row ^= 1 << k;
                phase *= if bit == 0 { c(0.0, 1.0) } else { c(0.0, -1.0) };
            }
            3 => {
                if bit == 1 {
                    phase = -phase;
                }
            }
            _ => {}
        }
    }
    (row, phase)
}

/// Dense matrix of the Pauli string with base-4 index `index`.
pub fn pauli_matrix(index: usize, n: usize) -> CMatrix {
    let d = 1 << n;
    let mut m = CMatrix::zeros(d, d);
    for col in 0..d {
        let (row, phase) = pauli_column(index, n, col);
        m[(row, col)] = phase;
    }
    m
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DENSE_QUBITS {
        return Err(Error::Capacity {
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

impl DenseState {
    pub fn new(rho: CMatrix) -> Result<Self> {
        let d = rho.nrows();
        if d != rho.ncols() || !d.is_power_of_two() || d < 2 {
            return Err(Error::Shape(format!("density matrix is {}x{}", rho.nrows(), rho.ncols())));
        }
        let n = d.trailing_zeros() as usize;
        check_size(n)?;
        Ok(DenseState { n, rho })
    }

    /// `|b⟩⟨b|` for a bitstring with qubit 0 rightmost.
    pub fn basis(bits: &str) -> Result<Self> {
        let n = bits.len();
        check_size(n)?;
        let b = usize::from_str_radix(bits, 2)
            .map_err(|_| Error::Parse { line: 1, msg: format!("`{bits}` is not a bitstring") })?;
        let mut rho = CMatrix::zeros(1 << n, 1 << n);
        rho[(b, b)] = c(1.0, 0.0);
        Ok(DenseState { n, rho })
    }

    pub fn trace(&self) -> Complex64 {
        self.rho.trace()
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.rho - self.rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `Tr(ρ P)` for a Pauli string index.
    pub fn pauli_expectation(&self, index: usize) -> Complex64 {
        let d = 1 << self.n;
        (0..d)
            .map(|col| {
                let (row, phase) = pauli_column(index, self.n, col);
                self.rho[(col, row)] * phase
            })
            .sum()
    }

    /// Diagonal of `ρ` as real probabilities.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..1 << self.n).map(|i| self.rho[(i, i)].re).collect()
    }
}

/// `ρ = Σ a_P P`.
pub fn to_dense(state: &PauliState<f64>) -> Result<DenseState> {
    let n = state.n();
    check_size(n)?;
    let d = 1 << n;
    let mut rho = CMatrix::zeros(d, d);
    for (index, a) in state.coeffs().iter().enumerate() {
        if *a == 0.0 {
            continue;
        }
        for col in 0..d {
            let (row, phase) = pauli_column(index, n, col);
            rho[(row, col)] += phase * *a;
        }
    }
    Ok(DenseState { n, rho })
}

/// `a_P = 2^{-n} Tr(ρ P)`; rejects non-Hermitian input.
pub fn from_dense(dense: &DenseState) -> Result<PauliState<f64>> {
    let err = dense.hermiticity_error();
    if err > HERMITIAN_TOL {
        return Err(Error::Consistency(format!("density matrix is not Hermitian (deviation {err:e})")));
    }
    let n = dense.n;
    let scale = 1.0 / (1u64 << n) as f64;
    let coeffs = (0..1usize << (2 * n))
        .map(|index| dense.pauli_expectation(index).re * scale)
        .collect();
    PauliState::from_coeffs(n, coeffs)
}

fn check_operands(op: &CMatrix, operands: &[usize], n: usize) -> Result<()> {
    let k = operands.len();
    if op.nrows() != 1 << k || op.ncols() != 1 << k {
        return Err(Error::Shape(format!("{k}-qubit operator is {}x{}", op.nrows(), op.ncols())));
    }
    for (i, q) in operands.iter().enumerate() {
        if *q >= n || operands[..i].contains(q) {
            return Err(Error::Circuit(format!("invalid operand list {operands:?} for {n} qubits")));
        }
    }
    Ok(())
}

/// Global index offset of each local basis index; the first operand is the
/// most significant local bit.
fn local_offsets(operands: &[usize]) -> Vec<usize> {
    let k = operands.len();
    (0..1usize << k)
        .map(|l| operands.iter().enumerate().map(|(j, q)| ((l >> (k - 1 - j)) & 1) << q).sum())
        .collect()
}

/// Full-register operator of `op` acting on `operands`; the first operand is
/// the most significant bit of the operator's local index.
pub fn embed(op: &CMatrix, operands: &[usize], n: usize) -> Result<CMatrix> {
    check_operands(op, operands, n)?;
    let k = operands.len();
    let mask: usize = operands.iter().map(|q| 1 << q).sum();
    let local = |full: usize| -> usize {
        operands
            .iter()
            .enumerate()
            .map(|(j, q)| ((full >> q) & 1) << (k - 1 - j))
            .sum()
    };
    let offsets = local_offsets(operands);
    let d = 1 << n;
    let mut out = CMatrix::zeros(d, d);
    for col in 0..d {
        let lc = local(col);
        let rest = col & !mask;
        for lr in 0..1usize << k {
            let v = op[(lr, lc)];
            if v == c(0.0, 0.0) {
                continue;
            }
            out[(rest | offsets[lr], col)] = v;
        }
    }
    Ok(out)
}

/// Checks `Σ M†M = I` within tolerance.
pub fn check_completeness(kraus: &[CMatrix]) -> Result<()> {
    let Some(first) = kraus.first() else {
        return Err(Error::Consistency("empty Kraus list".into()));
    };
    let d = first.nrows();
    let sum = kraus.iter().fold(CMatrix::zeros(d, d), |acc, m| acc + m.adjoint() * m);
    let dev = (sum - CMatrix::identity(d, d)).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if dev > HERMITIAN_TOL {
        return Err(Error::Consistency(format!("Kraus completeness violated by {dev:e}")));
    }
    Ok(())
}

/// `ρ ← Σ M ρ M†` with each `M` embedded on `operands`.
pub fn dense_apply(state: &mut DenseState, kraus: &[CMatrix], operands: &[usize]) -> Result<()> {
    check_completeness(kraus)?;
    let d = 1 << state.n;
    let mut next = CMatrix::zeros(d, d);
    for m in kraus {
        check_operands(m, operands, state.n)?;
        // K ρ K† = K (K ρ†)†
        let half = apply_left(m, operands, &state.rho.adjoint());
        next += apply_left(m, operands, &half.adjoint());
    }
    state.rho = next;
    Ok(())
}

/// `(op ⊗ I) m` without forming the embedded operator.
fn apply_left(op: &CMatrix, operands: &[usize], m: &CMatrix) -> CMatrix {
    let (d, cols) = m.shape();
    let mask: usize = operands.iter().map(|q| 1 << q).sum();
    let offsets = local_offsets(operands);
    let mut out = CMatrix::zeros(d, cols);
    for rest in (0..d).filter(|r| r & mask == 0) {
        for col in 0..cols {
            for (lr, &row) in offsets.iter().enumerate() {
                let mut acc = c(0.0, 0.0);
                for (lc, &src) in offsets.iter().enumerate() {
                    acc += op[(lr, lc)] * m[(rest | src, col)];
                }
                out[(rest | row, col)] = acc;
            }
        }
    }
    out
}

/// Overlap `Tr(ρ σ)` of two dense states.
pub fn dense_overlap(a: &DenseState, b: &DenseState) -> f64 {
    (&a.rho * &b.rho).trace().re
}
