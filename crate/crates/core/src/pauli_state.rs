//! Density matrices as real Pauli-basis coefficient arrays.
//!
//! An `n`-qubit density matrix is stored as its `4^n` real coefficients
//! `ρ = Σ a_{i} σ_{i_0} ⊗ … ⊗ σ_{i_{n-1}}`. The flat index is `Σ i_k 4^k`
//! with `i_k ∈ {0: I, 1: X, 2: Y, 3: Z}`, so qubit 0 is the least significant
//! base-4 digit. Bitstrings and Pauli strings are written with qubit 0 as the
//! rightmost character.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::error::{check_qubit, check_unit, Error, Result};
use crate::kernels::{digit, stride};
use crate::Real;

/// Default largest register accepted by the state constructors.
pub const DEFAULT_MAX_QUBITS: usize = 14;

/// First line of a coefficient file, followed by `n=<n>`.
pub const FILE_MAGIC: &str = "pauli-dm v1";

/// One-qubit Pauli label; the discriminant is the base-4 digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn digit(self) -> usize {
        self as usize
    }

    pub fn from_digit(d: usize) -> Pauli {
        Self::ALL[d & 3]
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        ['I', 'X', 'Y', 'Z'][self.digit()]
    }
}

/// Tensor product of single-qubit Paulis, indexed by qubit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString(pub Vec<Pauli>);

impl PauliString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Flat coefficient index of this string.
    pub fn index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(k, p)| p.digit() * stride(k))
            .sum()
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|p| **p != Pauli::I).count()
    }
}

impl FromStr for PauliString {
    type Err = String;

    /// Parses `"XIZ"` with the rightmost character acting on qubit 0.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut labels = s
            .chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| format!("bad Pauli label '{c}'")))
            .collect::<Result<Vec<_>, _>>()?;
        labels.reverse();
        Ok(PauliString(labels))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.0.iter().rev() {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

/// Memory guard for `4^n` coefficient arrays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capacity {
    pub max_qubits: usize,
}

impl Default for Capacity {
    fn default() -> Self {
        Capacity {
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

impl Capacity {
    pub fn check(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.max_qubits {
            return Err(Error::Capacity {
                n,
                max: self.max_qubits,
            });
        }
        Ok(())
    }
}

/// Pauli-basis density matrix of `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliState<T> {
    n: usize,
    coeffs: Vec<T>,
}

impl<T: Real> PauliState<T> {
    /// Tensor product of per-qubit `(a_I, a_X, a_Y, a_Z)` factors; each `a_I` must be ½.
    pub fn product(factors: &[[T; 4]], cap: Capacity) -> Result<Self> {
        let n = factors.len();
        cap.check(n)?;
        let mut coeffs = Vec::with_capacity(1 << (2 * n));
        coeffs.push(T::one());
        for (k, f) in factors.iter().enumerate() {
            let s = stride(k);
            coeffs.resize(4 * s, T::zero());
            for d in (0..4).rev() {
                for j in 0..s {
                    coeffs[d * s + j] = coeffs[j] * f[d];
                }
            }
        }
        Ok(PauliState { n, coeffs })
    }

    fn repeated(n: usize, factor: [T; 4], cap: Capacity) -> Result<Self> {
        cap.check(n)?;
        Self::product(&vec![factor; n], cap)
    }

    /// `2^-n (I + Z)^{⊗n}`, the all-zero computational state.
    pub fn zero(n: usize) -> Result<Self> {
        Self::zero_within(n, Capacity::default())
    }

    pub fn zero_within(n: usize, cap: Capacity) -> Result<Self> {
        let h = T::lit(0.5);
        Self::repeated(n, [h, T::zero(), T::zero(), h], cap)
    }

    /// `2^-n (I + X)^{⊗n}`, the uniform superposition.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::uniform_within(n, Capacity::default())
    }

    pub fn uniform_within(n: usize, cap: Capacity) -> Result<Self> {
        let h = T::lit(0.5);
        Self::repeated(n, [h, h, T::zero(), T::zero()], cap)
    }

    /// Computational basis state; the rightmost character is qubit 0.
    pub fn from_bits(bits: &str) -> Result<Self> {
        Self::from_bits_within(bits, Capacity::default())
    }

    pub fn from_bits_within(bits: &str, cap: Capacity) -> Result<Self> {
        let h = T::lit(0.5);
        let mut factors = Vec::with_capacity(bits.len());
        for (pos, c) in bits.chars().rev().enumerate() {
            let z = match c {
                '0' => h,
                '1' => -h,
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("non-binary character '{other}' at position {pos} of bitstring"),
                    })
                }
            };
            factors.push([h, T::zero(), T::zero(), z]);
        }
        Self::product(&factors, cap)
    }

    /// Factorized thermal state `diag(p, 1-p)^{⊗n}`.
    pub fn thermal(n: usize, p: T) -> Result<Self> {
        Self::thermal_within(n, p, Capacity::default())
    }

    pub fn thermal_within(n: usize, p: T, cap: Capacity) -> Result<Self> {
        check_unit("p", p)?;
        let h = T::lit(0.5);
        Self::repeated(n, [h, T::zero(), T::zero(), p - h], cap)
    }

    /// Wraps raw coefficients after validating both state invariants.
    pub fn from_coeffs(n: usize, coeffs: Vec<T>) -> Result<Self> {
        if n == 0 || coeffs.len() != 1usize << (2 * n) {
            return Err(Error::Shape(format!(
                "{} coefficients do not describe a register of {n} qubits",
                coeffs.len()
            )));
        }
        let mut state = PauliState { n, coeffs };
        state.validate()?;
        state.coeffs[0] = T::inv_pow2(n);
        Ok(state)
    }

    /// Checks trace normalization and the purity bound, reporting the first offending entry.
    pub fn validate(&self) -> Result<()> {
        let trace_tol = T::lit(1e-12).max(T::epsilon());
        let target = T::inv_pow2(self.n);
        if let Some(index) = self.coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::Format {
                index,
                msg: "coefficient is not finite".into(),
            });
        }
        if (self.coeffs[0] - target).abs() > trace_tol {
            return Err(Error::Format {
                index: 0,
                msg: format!("normalization: a_0 = {} but must equal 2^-{} = {target}", self.coeffs[0], self.n),
            });
        }
        let scale = T::one() / target;
        let bound = T::one() + T::loose_tol();
        let mut acc = T::zero();
        for (index, c) in self.coeffs.iter().enumerate() {
            acc += *c * *c * scale;
            if acc > bound {
                return Err(Error::Format {
                    index,
                    msg: format!("purity bound: 2^n Σ a² exceeds 1 (reached {acc})"),
                });
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [T] {
        &mut self.coeffs
    }

    pub fn coeff(&self, string: &PauliString) -> T {
        self.coeffs[string.index()]
    }

    /// `Tr(ρ₁ρ₂) = 2^n Σ a_i b_i`.
    pub fn overlap(&self, other: &Self) -> Result<T> {
        if self.n != other.n {
            return Err(Error::Shape(format!(
                "overlap of {}-qubit and {}-qubit states",
                self.n, other.n
            )));
        }
        let dot: T = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| *a * *b).sum();
        Ok(dot / T::inv_pow2(self.n))
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> T {
        self.overlap(self).expect("same register")
    }

    /// Traces out qubit `k`; remaining qubits keep their relative order.
    pub fn partial_trace(&self, k: usize) -> Result<Self> {
        check_qubit(k, self.n)?;
        if self.n < 2 {
            return Err(Error::Shape("cannot trace out the only qubit".into()));
        }
        let s = stride(k);
        let two = T::lit(2.0);
        let mut out = Vec::with_capacity(self.coeffs.len() / 4);
        for hi in 0..self.coeffs.len() / (4 * s) {
            let base = hi * 4 * s;
            out.extend(self.coeffs[base..base + s].iter().map(|c| two * *c));
        }
        Ok(PauliState {
            n: self.n - 1,
            coeffs: out,
        })
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.n, other.n, "register size mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max)
    }

    pub fn cast<U: Real>(&self) -> PauliState<U> {
        PauliState {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| U::lit(c.as_f64())).collect(),
        }
    }

    /// Writes the line-oriented coefficient file.
    pub fn save<W: Write>(&self, mut sink: W) -> Result<()> {
        writeln!(sink, "{FILE_MAGIC} n={}", self.n)?;
        for c in &self.coeffs {
            writeln!(sink, "{c}")?;
        }
        sink.flush()?;
        Ok(())
    }

    /// Reads a coefficient file written by [`PauliState::save`].
    pub fn load<R: BufRead>(source: R) -> Result<Self> {
        Self::load_within(source, Capacity::default())
    }

    pub fn load_within<R: BufRead>(source: R, cap: Capacity) -> Result<Self> {
        let mut lines = source.lines();
        let header = lines.next().transpose()?.unwrap_or_default();
        let n: usize = header
            .trim()
            .strip_prefix(FILE_MAGIC)
            .and_then(|rest| rest.trim().strip_prefix("n="))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("expected header `{FILE_MAGIC} n=<n>`, found `{header}`"),
            })?;
        cap.check(n)?;
        let expected = 1usize << (2 * n);
        let mut coeffs = Vec::with_capacity(expected);
        for line in lines {
            let line = line?;
            let text = line.trim();
            if text.is_empty() {
                continue;
            }
            let index = coeffs.len();
            if index >= expected {
                return Err(Error::Format {
                    index,
                    msg: format!("more than the {expected} coefficients declared by n={n}"),
                });
            }
            let value: T = text.parse().map_err(|_| Error::Format {
                index,
                msg: format!("`{text}` is not a real number"),
            })?;
            coeffs.push(value);
        }
        if coeffs.len() != expected {
            return Err(Error::Format {
                index: coeffs.len(),
                msg: format!("found {} coefficients, expected {expected}", coeffs.len()),
            });
        }
        Self::from_coeffs(n, coeffs)
    }
}

/// Digit of qubit `k` in a flat index.
pub fn index_digit(index: usize, k: usize) -> Pauli {
    Pauli::from_digit(digit(index, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> usize {
        s.parse::<PauliString>().unwrap().index()
    }

    #[test]
    fn zero_state_coefficients() {
        let s = PauliState::<f64>::zero(1).unwrap();
        assert_eq!(s.coeffs(), &[0.5, 0.0, 0.0, 0.5]);
        let s = PauliState::<f64>::zero(2).unwrap();
        for (idx, c) in s.coeffs().iter().enumerate() {
            let expect = if [st("II"), st("IZ"), st("ZI"), st("ZZ")].contains(&idx) { 0.25 } else { 0.0 };
            assert_eq!(*c, expect);
        }
        assert_eq!(PauliState::<f64>::zero(1).unwrap().purity(), 1.0);
        assert_eq!(PauliState::<f64>::zero(3).unwrap().purity(), 1.0);
    }

    #[test]
    fn uniform_state_coefficients() {
        assert_eq!(PauliState::<f64>::uniform(1).unwrap().coeffs(), &[0.5, 0.5, 0.0, 0.0]);
        let s = PauliState::<f64>::uniform(2).unwrap();
        for (idx, c) in s.coeffs().iter().enumerate() {
            let expect = if [st("II"), st("IX"), st("XI"), st("XX")].contains(&idx) { 0.25 } else { 0.0 };
            assert_eq!(*c, expect);
        }
    }

    #[test]
    fn bitstring_states() {
        assert_eq!(PauliState::<f64>::from_bits("0").unwrap().coeffs(), &[0.5, 0.0, 0.0, 0.5]);
        assert_eq!(PauliState::<f64>::from_bits("1").unwrap().coeffs(), &[0.5, 0.0, 0.0, -0.5]);
        let s = PauliState::<f64>::from_bits("10").unwrap();
        assert_eq!(s.coeffs()[st("ZZ")], -0.25);
        // qubit 0 is '0', qubit 1 is '1'
        assert_eq!(s.coeffs()[st("IZ")], 0.25);
        assert_eq!(s.coeffs()[st("ZI")], -0.25);
        assert!(matches!(PauliState::<f64>::from_bits("102"), Err(Error::Parse { .. })));
    }

    #[test]
    fn thermal_states() {
        assert_eq!(PauliState::<f64>::thermal(1, 0.5).unwrap().coeffs(), &[0.5, 0.0, 0.0, 0.0]);
        assert_eq!(PauliState::<f64>::thermal(1, 0.75).unwrap().coeffs()[3], 0.25);
        assert_eq!(PauliState::<f64>::thermal(1, 1.0).unwrap(), PauliState::zero(1).unwrap());
        assert_eq!(PauliState::<f64>::thermal(1, 0.5).unwrap().purity(), 0.5);
        assert!((PauliState::<f64>::thermal(2, 0.75).unwrap().purity() - 0.390625).abs() < 1e-15);
        assert!(matches!(
            PauliState::<f64>::thermal(1, 1.5),
            Err(Error::Parameter { .. })
        ));
    }

    #[test]
    fn capacity_guard() {
        assert!(matches!(PauliState::<f64>::zero(0), Err(Error::Capacity { .. })));
        assert!(matches!(PauliState::<f64>::zero(15), Err(Error::Capacity { n: 15, max: 14 })));
        let cap = Capacity { max_qubits: 3 };
        assert!(PauliState::<f64>::zero_within(4, cap).is_err());
        assert!(PauliState::<f64>::uniform_within(3, cap).is_ok());
    }

    #[test]
    fn overlap_examples() {
        let z = PauliState::<f64>::zero(1).unwrap();
        let one = PauliState::<f64>::from_bits("1").unwrap();
        let plus = PauliState::<f64>::uniform(1).unwrap();
        assert_eq!(z.overlap(&z).unwrap(), 1.0);
        assert_eq!(z.overlap(&one).unwrap(), 0.0);
        assert_eq!(z.overlap(&plus).unwrap(), 0.5);
        let two = PauliState::<f64>::zero(2).unwrap();
        assert!(matches!(z.overlap(&two), Err(Error::Shape(_))));
    }

    #[test]
    fn partial_trace_product_state() {
        let s = PauliState::<f64>::from_bits("01").unwrap();
        let r = s.partial_trace(0).unwrap();
        assert_eq!(r, PauliState::from_bits("0").unwrap());
        let r = s.partial_trace(1).unwrap();
        assert_eq!(r, PauliState::from_bits("1").unwrap());
        assert!(matches!(s.partial_trace(2), Err(Error::Index { index: 2, n: 2 })));
        assert!(PauliState::<f64>::zero(1).unwrap().partial_trace(0).is_err());
    }

    #[test]
    fn partial_trace_down_to_one_qubit() {
        let s = PauliState::<f64>::thermal(3, 0.3).unwrap();
        let r = s.partial_trace(1).unwrap().partial_trace(0).unwrap();
        assert_eq!(r.n(), 1);
        assert_eq!(r.coeffs()[0], 0.5);
    }

    #[test]
    fn save_load_round_trip() {
        let s = PauliState::<f64>::thermal(2, 0.3).unwrap();
        let mut buf = Vec::new();
        s.save(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("pauli-dm v1 n=2\n"));
        assert_eq!(text.lines().count(), 17);
        let back = PauliState::<f64>::load(buf.as_slice()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn load_rejects_broken_files() {
        let bad_norm = "pauli-dm v1 n=1\n0.3\n0\n0\n0\n";
        match PauliState::<f64>::load(bad_norm.as_bytes()) {
            Err(Error::Format { index: 0, msg }) => assert!(msg.contains("normalization")),
            other => panic!("{other:?}"),
        }
        let mut too_pure = String::from("pauli-dm v1 n=2\n");
        for _ in 0..16 {
            too_pure.push_str("0.25\n");
        }
        match PauliState::<f64>::load(too_pure.as_bytes()) {
            Err(Error::Format { msg, .. }) => assert!(msg.contains("purity")),
            other => panic!("{other:?}"),
        }
        let short = "pauli-dm v1 n=1\n0.5\n0\n0\n";
        assert!(matches!(
            PauliState::<f64>::load(short.as_bytes()),
            Err(Error::Format { index: 3, .. })
        ));
        let long = "pauli-dm v1 n=1\n0.5\n0\n0\n0\n0\n";
        assert!(matches!(
            PauliState::<f64>::load(long.as_bytes()),
            Err(Error::Format { index: 4, .. })
        ));
        let junk = "pauli-dm v1 n=1\n0.5\nabc\n0\n0\n";
        assert!(matches!(
            PauliState::<f64>::load(junk.as_bytes()),
            Err(Error::Format { index: 1, .. })
        ));
        assert!(matches!(
            PauliState::<f64>::load("hello\n".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn pauli_string_convention() {
        let p: PauliString = "XZ".parse().unwrap();
        assert_eq!(p.0, vec![Pauli::Z, Pauli::X]);
        assert_eq!(p.index(), 3 + 4);
        assert_eq!(p.to_string(), "XZ");
        assert_eq!(p.weight(), 2);
        assert!("XQ".parse::<PauliString>().is_err());
    }

    #[test]
    fn f32_states() {
        let s = PauliState::<f32>::thermal(2, 0.75).unwrap();
        assert!((s.purity() - 0.390625).abs() < 1e-6);
        let mut buf = Vec::new();
        s.save(&mut buf).unwrap();
        assert_eq!(PauliState::<f32>::load(buf.as_slice()).unwrap(), s);
    }
}
