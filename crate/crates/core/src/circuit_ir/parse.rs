use crate::circuit_ir::{Circuit, Instruction};
use crate::error::{Error, Result};
use crate::gates::NamedGate;
use crate::pauli_state::{Pauli, PauliString};
use crate::Real;

fn err<V>(line: usize, msg: impl Into<String>) -> Result<V> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}

fn parse_angle<T: Real>(text: &str, line: usize) -> Result<T> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t),
    };
    let value = if body == "pi" {
        Some(T::PI())
    } else if let Some(den) = body.strip_prefix("pi/") {
        den.trim()
            .parse::<u64>()
            .ok()
            .filter(|d| *d > 0)
            .map(|d| T::PI() / T::lit(d as f64))
    } else if body.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
        body.parse::<f64>().ok().filter(|v| v.is_finite()).map(T::lit)
    } else {
        None
    };
    match value {
        Some(v) if neg => Ok(-v),
        Some(v) => Ok(v),
        None => err(line, format!("malformed angle `{t}`")),
    }
}

fn parse_qubit(text: &str, n: usize, line: usize) -> Result<usize> {
    let t = text.trim();
    let idx = t
        .strip_prefix("q[")
        .and_then(|r| r.strip_suffix(']'))
        .and_then(|d| d.trim().parse::<usize>().ok());
    match idx {
        Some(i) if i < n => Ok(i),
        Some(i) => err(line, format!("qubit index {i} out of range for {n} qubits")),
        None => err(line, format!("malformed operand `{t}`")),
    }
}

fn split_list(s: &str) -> Vec<&str> {
    if s.trim().is_empty() {
        Vec::new()
    } else {
        s.split(',').map(str::trim).collect()
    }
}

/// Parses the circuit text format; diagnostics carry 1-based line numbers.
pub fn parse_circuit<T: Real>(text: &str) -> Result<Circuit<T>> {
    let mut circuit: Option<Circuit<T>> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let stmt = raw.split('#').next().unwrap_or("").trim();
        if stmt.is_empty() {
            continue;
        }
        let Some(c) = circuit.as_mut() else {
            let mut words = stmt.split_whitespace();
            let n = match (words.next(), words.next(), words.next()) {
                (Some("qubits"), Some(v), None) => v.parse::<usize>().ok().filter(|n| *n >= 1),
                _ => None,
            };
            match n {
                Some(n) => circuit = Some(Circuit::new(n)),
                None => return err(line, "expected header `qubits N`"),
            }
            continue;
        };
        let instruction = parse_statement(stmt, c.n, line)?;
        c.instructions.push(instruction);
    }
    circuit.ok_or(Error::Parse {
        line: 1,
        msg: "missing header `qubits N`".into(),
    })
}

fn parse_statement<T: Real>(stmt: &str, n: usize, line: usize) -> Result<Instruction<T>> {
    let (head, params, rest) = match stmt.find('(') {
        Some(open) => {
            let close = match stmt[open..].find(')') {
                Some(c) => open + c,
                None => return err(line, "unbalanced parenthesis"),
            };
            (stmt[..open].trim(), Some(&stmt[open + 1..close]), stmt[close + 1..].trim())
        }
        None => match stmt.split_once(char::is_whitespace) {
            Some((h, r)) => (h, None, r.trim()),
            None => (stmt, None, ""),
        },
    };

    let angles: Vec<T> = match params {
        Some(p) => split_list(p)
            .into_iter()
            .map(|a| parse_angle(a, line))
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    let expect_params = |want: usize| -> Result<()> {
        if angles.len() == want {
            Ok(())
        } else {
            err(line, format!("`{head}` expects {want} angle parameters, found {}", angles.len()))
        }
    };

    if head == "expect" {
        expect_params(0)?;
        let string: PauliString = rest
            .parse()
            .or_else(|e: String| err(line, e))?;
        if string.len() != n {
            return err(line, format!("Pauli string `{rest}` has length {} for {n} qubits", string.len()));
        }
        return Ok(Instruction::Expect { string });
    }

    let operands: Vec<usize> = split_list(rest)
        .into_iter()
        .map(|o| parse_qubit(o, n, line))
        .collect::<Result<_>>()?;
    let arity = |want: usize| -> Result<()> {
        if operands.len() != want {
            return err(line, format!("`{head}` expects {want} operands, found {}", operands.len()));
        }
        for (i, a) in operands.iter().enumerate() {
            if operands[..i].contains(a) {
                return err(line, "duplicate operand");
            }
        }
        Ok(())
    };

    let instruction = match head {
        "u1" => {
            expect_params(1)?;
            arity(1)?;
            Instruction::U1 { lambda: angles[0], q: operands[0] }
        }
        "u2" => {
            expect_params(2)?;
            arity(1)?;
            Instruction::U2 { phi: angles[0], lambda: angles[1], q: operands[0] }
        }
        "u3" => {
            expect_params(3)?;
            arity(1)?;
            Instruction::U3 { theta: angles[0], phi: angles[1], lambda: angles[2], q: operands[0] }
        }
        "cx" => {
            expect_params(0)?;
            arity(2)?;
            Instruction::Cx { control: operands[0], target: operands[1] }
        }
        "ccx" => {
            expect_params(0)?;
            arity(3)?;
            Instruction::Ccx { controls: [operands[0], operands[1]], target: operands[2] }
        }
        "measure" | "measure_z" | "measure_x" | "measure_y" => {
            expect_params(0)?;
            arity(1)?;
            let basis = match head {
                "measure_x" => Pauli::X,
                "measure_y" => Pauli::Y,
                _ => Pauli::Z,
            };
            Instruction::Measure { q: operands[0], basis }
        }
        "ensemble" => {
            expect_params(0)?;
            arity(0)?;
            Instruction::Ensemble
        }
        "barrier" => {
            expect_params(0)?;
            arity(0)?;
            Instruction::Barrier
        }
        "bell" => {
            expect_params(0)?;
            arity(2)?;
            Instruction::Bell { a: operands[0], b: operands[1] }
        }
        "reset" => {
            expect_params(0)?;
            arity(1)?;
            Instruction::Reset { q: operands[0] }
        }
        other => match other.parse::<NamedGate>() {
            Ok(gate) => {
                expect_params(0)?;
                arity(1)?;
                Instruction::Named { gate, q: operands[0] }
            }
            Err(_) => return err(line, format!("unknown mnemonic `{other}`")),
        },
    };
    Ok(instruction)
}
