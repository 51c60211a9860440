//! Non-selective projective measurements with depolarizing readout error.
//!
//! Every measurement returns outcome probabilities and replaces the state by
//! the mixture over all outcomes. Readout error `d1` scales the measured
//! component of each measured qubit (and the returned signal); Bell readout
//! error `d2` scales the correlated `σ_j ⊗ σ_j` components of the pair.

use std::fmt;

use crate::error::{check_qubit, check_unit, Error, Result};
use crate::kernels::{map_pairs, map_quads, scale_by_index, stride};
use crate::pauli_state::{Pauli, PauliString};
use crate::{PauliState, Real};

/// Readout error parameters; `d1 = d2 = 1` is ideal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementNoise<T> {
    pub d1: T,
    pub d2: T,
}

impl<T: Real> Default for MeasurementNoise<T> {
    fn default() -> Self {
        MeasurementNoise {
            d1: T::one(),
            d2: T::one(),
        }
    }
}

impl<T: Real> MeasurementNoise<T> {
    pub fn new(d1: T, d2: T) -> Result<Self> {
        check_unit("d1", d1)?;
        check_unit("d2", d2)?;
        Ok(MeasurementNoise { d1, d2 })
    }
}

/// Ordered outcome → probability table.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution<T> {
    entries: Vec<(String, T)>,
}

impl<T: Real> OutcomeDistribution<T> {
    /// Clamps rounding-level negatives, rejects real negativity and broken sums,
    /// and renormalizes.
    pub fn from_raw(entries: Vec<(String, T)>) -> Result<Self> {
        let tol = T::loose_tol();
        let mut entries = entries;
        for (label, p) in entries.iter_mut() {
            if *p < -tol || *p > T::one() + tol {
                return Err(Error::Consistency(format!(
                    "probability of outcome {label} is {p}"
                )));
            }
            if *p < T::zero() {
                *p = T::zero();
            }
        }
        let sum: T = entries.iter().map(|(_, p)| *p).sum();
        if (sum - T::one()).abs() > T::consistency_tol() {
            return Err(Error::Consistency(format!(
                "outcome probabilities sum to {sum}"
            )));
        }
        if sum != T::one() {
            for (_, p) in entries.iter_mut() {
                *p /= sum;
            }
        }
        Ok(OutcomeDistribution { entries })
    }

    pub fn entries(&self) -> &[(String, T)] {
        &self.entries
    }

    pub fn get(&self, label: &str) -> Option<T> {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, p)| *p)
    }

    pub fn total(&self) -> T {
        self.entries.iter().map(|(_, p)| *p).sum()
    }

    /// Total probability of labels matching `pattern`, where `x` matches either bit.
    pub fn marginal(&self, pattern: &str) -> Result<T> {
        let mut total = T::zero();
        for (label, p) in &self.entries {
            if label.len() != pattern.len() {
                return Err(Error::Shape(format!(
                    "pattern `{pattern}` does not match outcome width {}",
                    label.len()
                )));
            }
            if label
                .chars()
                .zip(pattern.chars())
                .all(|(l, q)| q == 'x' || q == 'X' || l == q)
            {
                total += *p;
            }
        }
        Ok(total)
    }
}

impl<T: Real> fmt::Display for OutcomeDistribution<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, p) in &self.entries {
            writeln!(f, "{label}\t{p}")?;
        }
        Ok(())
    }
}

/// The four Bell projectors, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellOutcome {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [
        BellOutcome::PhiPlus,
        BellOutcome::PhiMinus,
        BellOutcome::PsiPlus,
        BellOutcome::PsiMinus,
    ];

    /// Signs of `(σ1σ1, σ2σ2, σ3σ3)` in `¼(I⊗I ± σ1⊗σ1 ± σ2⊗σ2 ± σ3⊗σ3)`.
    pub fn signs(self) -> [f64; 3] {
        match self {
            BellOutcome::PhiPlus => [1.0, -1.0, 1.0],
            BellOutcome::PhiMinus => [-1.0, 1.0, 1.0],
            BellOutcome::PsiPlus => [1.0, 1.0, -1.0],
            BellOutcome::PsiMinus => [-1.0, -1.0, -1.0],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BellOutcome::PhiPlus => "Phi+",
            BellOutcome::PhiMinus => "Phi-",
            BellOutcome::PsiPlus => "Psi+",
            BellOutcome::PsiMinus => "Psi-",
        }
    }
}

/// Keeps the component of the qubit-`k` Bloch vector along `axis`, scaled by `d1`.
fn project_qubit<T: Real>(state: &mut PauliState<T>, k: usize, axis: [T; 3], d1: T) {
    map_quads(state.coeffs_mut(), k, move |a| {
        let along = d1 * (axis[0] * a[1] + axis[1] * a[2] + axis[2] * a[3]);
        [along * axis[0], along * axis[1], along * axis[2]]
    });
}

fn unit_axis<T: Real>(p: Pauli) -> [T; 3] {
    let mut v = [T::zero(); 3];
    v[p.digit() - 1] = T::one();
    v
}

/// `⟨σ_string⟩` with readout damping `d1^w`; projects every measured qubit.
pub fn expect_pauli_string<T: Real>(
    state: &mut PauliState<T>,
    string: &PauliString,
    noise: &MeasurementNoise<T>,
) -> Result<T> {
    check_unit("d1", noise.d1)?;
    if string.len() != state.n() {
        return Err(Error::Shape(format!(
            "Pauli string {string} has {} labels for {} qubits",
            string.len(),
            state.n()
        )));
    }
    let raw = state.coeff(string) / T::inv_pow2(state.n());
    let value = raw * noise.d1.powi(string.weight() as i32);
    for (k, p) in string.0.iter().enumerate() {
        if *p != Pauli::I {
            project_qubit(state, k, unit_axis(*p), noise.d1);
        }
    }
    Ok(value)
}

/// Measures qubit `k` along the unit vector `axis`; returns `(p_plus, p_minus)`.
pub fn measure_qubit<T: Real>(
    state: &mut PauliState<T>,
    k: usize,
    axis: [T; 3],
    noise: &MeasurementNoise<T>,
) -> Result<(T, T)> {
    check_qubit(k, state.n())?;
    check_unit("d1", noise.d1)?;
    let norm = axis.iter().map(|x| *x * *x).sum::<T>().sqrt();
    if (norm - T::one()).abs() > T::loose_tol() {
        return Err(Error::Parameter {
            name: "axis norm".into(),
            value: norm.as_f64(),
            range: "1",
        });
    }
    let s = stride(k);
    let c = state.coeffs();
    let scale = T::one() / T::inv_pow2(state.n());
    let signal = scale * noise.d1 * (axis[0] * c[s] + axis[1] * c[2 * s] + axis[2] * c[3 * s]);
    let h = T::lit(0.5);
    let plus = h * (T::one() + signal);
    let minus = h * (T::one() - signal);
    project_qubit(state, k, axis, noise.d1);
    Ok((plus, minus))
}

/// Measures qubit `k` in the eigenbasis of `label` (X, Y or Z).
pub fn measure_pauli<T: Real>(
    state: &mut PauliState<T>,
    k: usize,
    label: Pauli,
    noise: &MeasurementNoise<T>,
) -> Result<(T, T)> {
    if label == Pauli::I {
        return Err(Error::Circuit("cannot measure along the identity".into()));
    }
    measure_qubit(state, k, unit_axis(label), noise)
}

fn walsh_hadamard<T: Real>(v: &mut [T]) {
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Formats outcome `b` (bit `k` = qubit `k`) with qubit 0 rightmost.
pub fn bitstring(b: usize, n: usize) -> String {
    (0..n)
        .rev()
        .map(|k| if (b >> k) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Simultaneous computational-basis measurement of every qubit.
pub fn ensemble_distribution<T: Real>(
    state: &mut PauliState<T>,
    noise: &MeasurementNoise<T>,
) -> Result<OutcomeDistribution<T>> {
    check_unit("d1", noise.d1)?;
    let n = state.n();
    let d1 = noise.d1;
    let coeffs = state.coeffs();
    // w[S] = d1^|S| a_{digit 3 on S, 0 elsewhere}
    let mut w: Vec<T> = (0..1usize << n)
        .map(|set| {
            let idx: usize = (0..n).filter(|k| (set >> k) & 1 == 1).map(|k| 3 * stride(k)).sum();
            coeffs[idx] * d1.powi(set.count_ones() as i32)
        })
        .collect();
    walsh_hadamard(&mut w);
    let entries = w
        .into_iter()
        .enumerate()
        .map(|(b, p)| (bitstring(b, n), p))
        .collect();
    let dist = OutcomeDistribution::from_raw(entries)?;

    scale_by_index(state.coeffs_mut(), |idx| {
        let transverse = (idx ^ (idx >> 1)) & 0x5555_5555_5555_5555;
        if transverse != 0 {
            T::zero()
        } else {
            let longitudinal = (idx & (idx >> 1) & 0x5555_5555_5555_5555).count_ones();
            d1.powi(longitudinal as i32)
        }
    });
    Ok(dist)
}

/// Bell-basis measurement of qubits `k`, `l`.
pub fn bell_measure<T: Real>(
    state: &mut PauliState<T>,
    k: usize,
    l: usize,
    noise: &MeasurementNoise<T>,
) -> Result<OutcomeDistribution<T>> {
    check_qubit(k, state.n())?;
    check_qubit(l, state.n())?;
    check_unit("d2", noise.d2)?;
    if k == l {
        return Err(Error::Circuit(format!("bell measurement on repeated qubit q[{k}]")));
    }
    let scale = T::one() / T::inv_pow2(state.n());
    let c = state.coeffs();
    let corr: [T; 3] = std::array::from_fn(|j| {
        let d = j + 1;
        noise.d2 * scale * c[d * stride(k) + d * stride(l)]
    });
    let quarter = T::lit(0.25);
    let entries = BellOutcome::ALL
        .iter()
        .map(|o| {
            let s = o.signs();
            let p = quarter
                * (T::one() + T::lit(s[0]) * corr[0] + T::lit(s[1]) * corr[1] + T::lit(s[2]) * corr[2]);
            (o.label().to_string(), p)
        })
        .collect();
    let dist = OutcomeDistribution::from_raw(entries)?;

    let d2 = noise.d2;
    map_pairs(state.coeffs_mut(), k, l, move |t| {
        std::array::from_fn(|i| {
            let (ik, il) = (i & 3, i >> 2);
            if ik != il {
                T::zero()
            } else if ik == 0 {
                t[i]
            } else {
                d2 * t[i]
            }
        })
    });
    Ok(dist)
}

/// Resets qubit `k` to `|0⟩` via `ρ → P0 ρ P0 + σ1 P1 ρ P1 σ1`.
pub fn reset_qubit<T: Real>(state: &mut PauliState<T>, k: usize) -> Result<()> {
    check_qubit(k, state.n())?;
    map_quads(state.coeffs_mut(), k, |a| [T::zero(), T::zero(), a[0]]);
    Ok(())
}
