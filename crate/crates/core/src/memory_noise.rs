//! Per-clock-step decoherence and decay of idle and active qubits alike.

use crate::error::{check_unit, Result};
use crate::gates::{apply_single, TransferMatrix1Q};
use crate::kernels::{scale_by_index, transverse_weight};
use crate::{PauliState, Real};

/// Per-step memory error: `f = exp(-Δt/T2)`, `g = exp(-Δt/T1)`, thermal population `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryNoise<T> {
    pub f: T,
    pub g: T,
    pub p: T,
}

impl<T: Real> Default for MemoryNoise<T> {
    fn default() -> Self {
        MemoryNoise {
            f: T::one(),
            g: T::one(),
            p: T::one(),
        }
    }
}

impl<T: Real> MemoryNoise<T> {
    pub fn new(f: T, g: T, p: T) -> Result<Self> {
        check_unit("f", f)?;
        check_unit("g", g)?;
        check_unit("p", p)?;
        Ok(MemoryNoise { f, g, p })
    }

    pub fn is_noiseless(&self) -> bool {
        self.f == T::one() && self.g == T::one()
    }

    /// Single-qubit transfer matrix of decoherence followed by decay.
    pub fn step_transfer(&self) -> TransferMatrix1Q<T> {
        let z = T::zero();
        let transverse = self.f * self.g.sqrt();
        let pull = (T::lit(2.0) * self.p - T::one()) * (T::one() - self.g);
        TransferMatrix1Q::new([
            [T::one(), z, z, z],
            [z, transverse, z, z],
            [z, z, transverse, z],
            [pull, z, z, self.g],
        ])
        .expect("first row is e_0")
    }
}

/// Scales every coefficient by `f^m`, `m` = number of its X/Y digits.
pub fn decohere<T: Real>(state: &mut PauliState<T>, f: T) -> Result<()> {
    check_unit("f", f)?;
    if f == T::one() {
        return Ok(());
    }
    let powers: Vec<T> = (0..=state.n()).map(|m| f.powi(m as i32)).collect();
    scale_by_index(state.coeffs_mut(), |idx| powers[transverse_weight(idx) as usize]);
    Ok(())
}

/// Relaxation toward `diag(p, 1-p)` on every qubit.
pub fn decay<T: Real>(state: &mut PauliState<T>, g: T, p: T) -> Result<()> {
    check_unit("g", g)?;
    check_unit("p", p)?;
    if g == T::one() {
        return Ok(());
    }
    let transfer = MemoryNoise { f: T::one(), g, p }.step_transfer();
    for k in 0..state.n() {
        apply_single(state, k, &transfer)?;
    }
    Ok(())
}

/// Memory noise elapsed over one partition: decoherence, then decay.
pub fn end_of_partition<T: Real>(state: &mut PauliState<T>, noise: &MemoryNoise<T>) -> Result<()> {
    check_unit("f", noise.f)?;
    check_unit("g", noise.g)?;
    check_unit("p", noise.p)?;
    if noise.is_noiseless() {
        return Ok(());
    }
    if noise.g == T::one() {
        return decohere(state, noise.f);
    }
    let transfer = noise.step_transfer();
    for k in 0..state.n() {
        apply_single(state, k, &transfer)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{apply_cnot, named_gate_transfer, NamedGate, RotationNoise};

    fn bell() -> PauliState<f64> {
        let mut s = PauliState::zero(2).unwrap();
        apply_single(&mut s, 0, &named_gate_transfer(NamedGate::H)).unwrap();
        apply_cnot(&mut s, 0, 1, &RotationNoise::exact()).unwrap();
        s
    }

    #[test]
    fn decohere_examples() {
        let mut s = PauliState::<f64>::uniform(1).unwrap();
        decohere(&mut s, 0.9).unwrap();
        assert_eq!(s.coeffs(), &[0.5, 0.45, 0.0, 0.0]);
        let mut z = PauliState::<f64>::zero(3).unwrap();
        decohere(&mut z, 0.3).unwrap();
        assert_eq!(z, PauliState::zero(3).unwrap());
        let mut b = bell();
        decohere(&mut b, 0.5).unwrap();
        let xx = 1 + 4;
        let yy = 2 + 8;
        let zz = 3 + 12;
        assert_eq!(b.coeffs()[xx], 0.25 * 0.25);
        assert_eq!(b.coeffs()[yy], -0.25 * 0.25);
        assert_eq!(b.coeffs()[zz], 0.25);
        assert!(decohere(&mut b, 1.1).is_err());
    }

    #[test]
    fn decay_examples() {
        let mut s = PauliState::<f64>::thermal(1, 0.5).unwrap();
        decay(&mut s, 0.8, 1.0).unwrap();
        assert!((s.coeffs()[3] - 0.1).abs() < 1e-15);
        for p in [0.0, 0.3, 0.9] {
            let mut t = PauliState::<f64>::thermal(2, p).unwrap();
            let before = t.clone();
            decay(&mut t, 0.37, p).unwrap();
            assert!(t.max_abs_diff(&before) < 1e-15);
        }
        let mut s = PauliState::<f64>::uniform(1).unwrap();
        decay(&mut s, 0.81, 1.0).unwrap();
        assert!((s.coeffs()[1] - 0.45).abs() < 1e-15);
        assert!(decay(&mut s, 0.5, -0.1).is_err());
    }

    #[test]
    fn end_of_partition_examples() {
        let mut s = bell();
        let before = s.clone();
        end_of_partition(&mut s, &MemoryNoise::default()).unwrap();
        assert_eq!(s, before);

        let mut s = PauliState::<f64>::uniform(1).unwrap();
        end_of_partition(&mut s, &MemoryNoise::new(0.9, 0.81, 0.5).unwrap()).unwrap();
        assert!((s.coeffs()[1] - 0.405).abs() < 1e-15);
        assert_eq!(s.coeffs()[3], 0.0);

        let mut s = PauliState::<f64>::uniform(3).unwrap();
        end_of_partition(&mut s, &MemoryNoise::new(0.0, 0.6, 0.2).unwrap()).unwrap();
        for (idx, c) in s.coeffs().iter().enumerate() {
            if transverse_weight(idx) > 0 {
                assert_eq!(*c, 0.0);
            }
        }
    }

    #[test]
    fn decay_order_is_irrelevant() {
        let mut s = bell();
        apply_single(&mut s, 1, &crate::gates::u3_transfer(0.3, 0.7, -0.2, &Default::default()).unwrap()).unwrap();
        let transfer = MemoryNoise { f: 0.8, g: 0.7, p: 0.6 }.step_transfer();
        let mut forward = s.clone();
        let mut backward = s.clone();
        for k in 0..2 {
            apply_single(&mut forward, k, &transfer).unwrap();
        }
        for k in (0..2).rev() {
            apply_single(&mut backward, k, &transfer).unwrap();
        }
        assert!(forward.max_abs_diff(&backward) < 1e-15);
    }

    #[test]
    fn decohere_semigroup() {
        let mut a = bell();
        let mut b = a.clone();
        decohere(&mut a, 0.7).unwrap();
        decohere(&mut a, 0.6).unwrap();
        decohere(&mut b, 0.42).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
    }
}
