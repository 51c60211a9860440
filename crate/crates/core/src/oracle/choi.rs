use nalgebra::SymmetricEigen;

use crate::error::Result;
use crate::oracle::{c, pauli_matrix, CMatrix};
use crate::PauliState;

/// `J = Σ_ij |i⟩⟨j| ⊗ E(|i⟩⟨j|)` for a linear map on `d × d` matrices.
pub fn choi_from_map(d: usize, map: impl Fn(&CMatrix) -> CMatrix) -> CMatrix {
    let mut j = CMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            let mut unit = CMatrix::zeros(d, d);
            unit[(a, b)] = c(1.0, 0.0);
            let image = map(&unit);
            j.view_mut((a * d, b * d), (d, d)).copy_from(&image);
        }
    }
    j
}

pub fn choi_from_kraus(kraus: &[CMatrix]) -> CMatrix {
    let d = kraus[0].nrows();
    choi_from_map(d, |x| kraus.iter().fold(CMatrix::zeros(d, d), |acc, m| acc + m * x * m.adjoint()))
}

/// Choi matrix of a channel given as an action on Pauli-basis states.
///
/// The action on each Pauli string `P` is recovered from two valid states,
/// `E(P) = d E((I + P)/d) - d E(I/d)`, and `J = (1/d) Σ_P P^T ⊗ E(P)`.
pub fn choi_from_pauli_map(
    n: usize,
    map: impl Fn(&mut PauliState<f64>) -> Result<()>,
) -> Result<CMatrix> {
    let d = 1usize << n;
    let df = d as f64;
    let len = 1usize << (2 * n);
    let mut maximally_mixed = vec![0.0; len];
    maximally_mixed[0] = 1.0 / df;
    let mut mixed = PauliState::from_coeffs(n, maximally_mixed)?;
    map(&mut mixed)?;
    let mut j = CMatrix::zeros(d * d, d * d);
    for p in 0..len {
        let image: Vec<f64> = if p == 0 {
            mixed.coeffs().iter().map(|a| a * df).collect()
        } else {
            let mut coeffs = vec![0.0; len];
            coeffs[0] = 1.0 / df;
            coeffs[p] = 1.0 / df;
            let mut s = PauliState::from_coeffs(n, coeffs)?;
            map(&mut s)?;
            s.coeffs()
                .iter()
                .zip(mixed.coeffs())
                .map(|(a, m)| df * (a - m))
                .collect()
        };
        let mut ep = CMatrix::zeros(d, d);
        for (q, t) in image.iter().enumerate() {
            if *t != 0.0 {
                ep += pauli_matrix(q, n) * c(*t, 0.0);
            }
        }
        j += pauli_matrix(p, n).transpose().kronecker(&ep) * c(1.0 / df, 0.0);
    }
    Ok(j)
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    let herm = (m + m.adjoint()) * c(0.5, 0.0);
    SymmetricEigen::new(herm)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::memory_noise::decohere;
    use crate::oracle::{dephasing, identity};

    #[test]
    fn identity_channel_is_psd_and_rank_one() {
        let j = choi_from_kraus(&[identity(1)]);
        assert!(min_eigenvalue(&j).abs() < 1e-12);
    }

    #[test]
    fn transpose_map_is_caught() {
        let j = choi_from_map(2, |x| x.transpose());
        assert!((min_eigenvalue(&j) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn pauli_route_matches_kraus_route() {
        let f = 0.5;
        let from_pauli = choi_from_pauli_map(1, |s| decohere(s, f)).unwrap();
        let from_kraus = choi_from_kraus(&dephasing(f));
        let diff = (&from_pauli - &from_kraus).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(diff < 1e-14, "{diff}");
        assert!(min_eigenvalue(&from_pauli) >= -1e-12);
    }
}
