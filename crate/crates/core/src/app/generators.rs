use crate::circuit_ir::{Circuit, Instruction};
use crate::error::{Error, Result};
use crate::gates::NamedGate;
use crate::{Capacity, Real};

/// Qubit layout of the ripple-carry adder for `m`-bit operands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdderLayout {
    pub m: usize,
}

impl AdderLayout {
    pub fn carry_in(&self) -> usize {
        0
    }
    pub fn a(&self, i: usize) -> usize {
        1 + i
    }
    pub fn b(&self, i: usize) -> usize {
        1 + self.m + i
    }
    pub fn carry_out(&self) -> usize {
        1 + 2 * self.m
    }
    pub fn qubits(&self) -> usize {
        2 * self.m + 2
    }
}

fn parse_operand(name: &str, bits: &str) -> Result<()> {
    if bits.is_empty() || !bits.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::Parameter {
            name: format!("adder operand {name} `{bits}`"),
            value: f64::NAN,
            range: "non-empty over {0, 1}",
        });
    }
    Ok(())
}

fn pad(bits: &str, m: usize) -> String {
    format!("{bits:0>m$}")
}

fn cx<T>(control: usize, target: usize) -> Instruction<T> {
    Instruction::Cx { control, target }
}

fn ccx<T>(a: usize, b: usize, target: usize) -> Instruction<T> {
    Instruction::Ccx { controls: [a, b], target }
}

/// Ripple-carry adder computing `b ← a + b` with carry-in and carry-out
/// qubits, followed by an ensemble measurement. Operands are MSB-first.
pub fn gen_adder<T: Real>(a: &str, b: &str, cap: Capacity) -> Result<Circuit<T>> {
    parse_operand("a", a)?;
    parse_operand("b", b)?;
    let m = a.len().max(b.len());
    let layout = AdderLayout { m };
    cap.check(layout.qubits())?;
    let (a, b) = (pad(a, m), pad(b, m));
    let mut c = Circuit::new(layout.qubits());
    let bit = |s: &str, i: usize| s.as_bytes()[m - 1 - i] == b'1';
    for i in 0..m {
        if bit(&a, i) {
            c.push(Instruction::Named { gate: NamedGate::X, q: layout.a(i) });
        }
        if bit(&b, i) {
            c.push(Instruction::Named { gate: NamedGate::X, q: layout.b(i) });
        }
    }
    let maj = |c: &mut Circuit<T>, x: usize, y: usize, w: usize| {
        c.push(cx(w, y)).push(cx(w, x)).push(ccx(x, y, w));
    };
    let uma = |c: &mut Circuit<T>, x: usize, y: usize, w: usize| {
        c.push(ccx(x, y, w)).push(cx(w, x)).push(cx(x, y));
    };
    let carry = |i: usize| if i == 0 { layout.carry_in() } else { layout.a(i - 1) };
    for i in 0..m {
        maj(&mut c, carry(i), layout.b(i), layout.a(i));
    }
    c.push(cx(layout.a(m - 1), layout.carry_out()));
    for i in (0..m).rev() {
        uma(&mut c, carry(i), layout.b(i), layout.a(i));
    }
    c.push(Instruction::Ensemble);
    Ok(c)
}

/// Ensemble pattern (MSB-first, `x` = any) selecting the correct sum on the
/// carry-out and `b` register.
pub fn adder_success_pattern(a: &str, b: &str) -> Result<String> {
    parse_operand("a", a)?;
    parse_operand("b", b)?;
    let m = a.len().max(b.len());
    if m >= 64 {
        return Err(Error::Parameter { name: "adder width".into(), value: m as f64, range: "< 64" });
    }
    let value = |s: &str| u64::from_str_radix(s, 2).expect("validated bits");
    let sum = value(a) + value(b);
    Ok(format!("{sum:0w$b}{}", "x".repeat(m + 1), w = m + 1))
}

/// Controlled phase `diag(1, 1, 1, e^{iθ})` from two C-NOTs and three phases.
pub fn controlled_phase<T: Real>(theta: T, control: usize, target: usize, out: &mut Circuit<T>) {
    let half = theta / T::lit(2.0);
    out.push(Instruction::U1 { lambda: half, q: control })
        .push(cx(control, target))
        .push(Instruction::U1 { lambda: -half, q: target })
        .push(cx(control, target))
        .push(Instruction::U1 { lambda: half, q: target });
}

/// Quantum Fourier transform with qubit `n-1` as the most significant bit,
/// terminal swaps as three C-NOTs each, optionally followed by an ensemble.
pub fn gen_qft<T: Real>(n: usize, measured: bool, cap: Capacity) -> Result<Circuit<T>> {
    cap.check(n)?;
    let mut c = Circuit::new(n);
    for j in (0..n).rev() {
        c.push(Instruction::Named { gate: NamedGate::H, q: j });
        for k in (0..j).rev() {
            let theta = T::PI() / T::lit((1u64 << (j - k)) as f64);
            controlled_phase(theta, k, j, &mut c);
        }
    }
    for i in 0..n / 2 {
        let (x, y) = (i, n - 1 - i);
        c.push(cx(x, y)).push(cx(y, x)).push(cx(x, y));
    }
    if measured {
        c.push(Instruction::Ensemble);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adder_shape() {
        let c: Circuit<f64> = gen_adder("110", "011", Capacity::default()).unwrap();
        assert_eq!(c.n, 8);
        assert_eq!(adder_success_pattern("110", "011").unwrap(), "1001xxxx");
        assert_eq!(adder_success_pattern("0", "0").unwrap(), "00xx");
        assert_eq!(adder_success_pattern("1", "1").unwrap(), "10xx");
        assert!(gen_adder::<f64>("1111111", "1", Capacity::default()).is_err());
        assert!(gen_adder::<f64>("12", "1", Capacity::default()).is_err());
    }

    #[test]
    fn qft_of_one_qubit_is_hadamard() {
        let c: Circuit<f64> = gen_qft(1, false, Capacity::default()).unwrap();
        assert_eq!(c.instructions, vec![Instruction::Named { gate: NamedGate::H, q: 0 }]);
    }
}
