use crate::app::InitOption;
use crate::circuit_ir::{Circuit, NoiseModel};
use crate::error::{Error, Result};
use crate::exec::{execute_schedule, Record};
use crate::oracle::{from_dense, run_dense_schedule, to_dense, MAX_DENSE_QUBITS};
use crate::transpiler::compile;
use crate::Capacity;

/// Default agreement threshold between the Pauli-basis and dense runs.
pub const VERIFY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    /// Largest final-state coefficient difference.
    pub state_divergence: f64,
    /// Largest difference across all reported probabilities and expectations.
    pub record_divergence: f64,
}

impl VerifyReport {
    pub fn max_divergence(&self) -> f64 {
        self.state_divergence.max(self.record_divergence)
    }

    pub fn render(&self) -> String {
        format!(
            "state_divergence\t{:e}\nrecord_divergence\t{:e}\nmax_divergence\t{:e}\n",
            self.state_divergence,
            self.record_divergence,
            self.max_divergence()
        )
    }
}

fn record_values(r: &Record<f64>) -> Vec<(String, f64)> {
    match r {
        Record::Measure { plus, minus, .. } => vec![("+".into(), *plus), ("-".into(), *minus)],
        Record::Expect { value, .. } => vec![("expect".into(), *value)],
        Record::Ensemble(d) | Record::Bell { outcomes: d, .. } => d.entries().to_vec(),
        Record::Reset { .. } => Vec::new(),
    }
}

/// Runs the same schedule through the Pauli-basis engine and the dense
/// oracle and reports their largest disagreement.
pub fn verify(circuit: &Circuit<f64>, noise: &NoiseModel<f64>, init: &InitOption) -> Result<VerifyReport> {
    let cap = Capacity {
        max_qubits: MAX_DENSE_QUBITS,
    };
    cap.check(circuit.n)?;
    let schedule = compile(circuit)?.schedule;
    let mut pauli = init.build(circuit.n, noise.p(), cap)?;
    let mut dense = to_dense(&pauli)?;
    let fast = execute_schedule(&mut pauli, &schedule, noise)?;
    let slow = run_dense_schedule(&mut dense, &schedule, noise)?;
    if fast.len() != slow.len() {
        return Err(Error::Consistency(format!(
            "{} measurement records against {} from the oracle",
            fast.len(),
            slow.len()
        )));
    }
    let mut record_divergence: f64 = 0.0;
    for (a, b) in fast.iter().zip(&slow) {
        let (va, vb) = (record_values(a), record_values(b));
        if va.len() != vb.len() {
            return Err(Error::Consistency("record kinds differ from the oracle".into()));
        }
        for ((la, xa), (lb, xb)) in va.iter().zip(&vb) {
            if la != lb {
                return Err(Error::Consistency(format!("outcome label {la} against {lb}")));
            }
            record_divergence = record_divergence.max((xa - xb).abs());
        }
    }
    let state_divergence = pauli.max_abs_diff(&from_dense(&dense)?);
    Ok(VerifyReport {
        state_divergence,
        record_divergence,
    })
}
