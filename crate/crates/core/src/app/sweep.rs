use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::app::{run, InitOption, RunOptions};
use crate::circuit_ir::{Circuit, NoiseModel};
use crate::error::{Error, Result};
use crate::{Capacity, PauliState, Real};

/// Figure of merit for one sweep row.
#[derive(Debug, Clone, PartialEq)]
pub enum Metric<T> {
    /// Ensemble probability of a pattern, `x` matching either bit.
    SuccessProbability(String),
    /// `Tr(ρ σ)` against a fixed reference state.
    Fidelity(PauliState<T>),
}

impl<T: Real> Metric<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::SuccessProbability(_) => "success_prob",
            Metric::Fidelity(_) => "fidelity",
        }
    }
}

/// Noise parameters a sweep may vary: every config key plus `r` and `alpha`.
pub fn is_sweepable(name: &str) -> bool {
    name == "r" || name == "alpha" || crate::circuit_ir::NOISE_KEYS.contains(&name)
}

/// Parses a comma-separated value list.
pub fn parse_values<T: Real>(text: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|v| {
            let v = v.trim();
            f64::from_str(v).map(T::lit).map_err(|_| Error::Parameter {
                name: format!("sweep value `{v}`"),
                value: f64::NAN,
                range: "a decimal number",
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub value: T,
    pub metric: T,
    pub partitions: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable<T> {
    pub parameter: String,
    pub metric: &'static str,
    pub rows: Vec<SweepRow<T>>,
}

impl<T: Real> fmt::Display for SweepTable<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}\t{}\tpartitions", self.parameter, self.metric)?;
        for r in &self.rows {
            writeln!(f, "{}\t{}\t{}", r.value, r.metric, r.partitions)?;
        }
        Ok(())
    }
}

/// Runs the circuit once per value of `parameter`, all other noise fixed.
/// Rows are computed in parallel and reported in input order.
pub fn sweep<T: Real>(
    circuit: &Circuit<T>,
    base: &NoiseModel<T>,
    init: &InitOption,
    capacity: Capacity,
    parameter: &str,
    values: &[T],
    metric: &Metric<T>,
) -> Result<SweepTable<T>> {
    if !is_sweepable(parameter) {
        return Err(Error::Parameter {
            name: format!("sweep parameter `{parameter}`"),
            value: f64::NAN,
            range: "a noise key, `r` or `alpha`",
        });
    }
    let rows = values
        .par_iter()
        .map(|&value| {
            let mut noise = *base;
            noise.set(parameter, value)?;
            let options = RunOptions {
                init: init.clone(),
                capacity,
                shots: None,
                seed: 0,
                reference: match metric {
                    Metric::Fidelity(r) => Some(r.clone()),
                    Metric::SuccessProbability(_) => None,
                },
            };
            let report = run(circuit, &noise, &options)?;
            let m = match metric {
                Metric::SuccessProbability(pattern) => report.success_probability(pattern)?,
                Metric::Fidelity(_) => report.fidelity.expect("reference was supplied"),
            };
            Ok(SweepRow {
                value,
                metric: m,
                partitions: report.stats.partitions,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        parameter: parameter.to_string(),
        metric: metric.name(),
        rows,
    })
}

/// Final state of a noiseless run, used as the fidelity reference.
pub fn noiseless_reference<T: Real>(circuit: &Circuit<T>, init: &InitOption, capacity: Capacity) -> Result<PauliState<T>> {
    let options = RunOptions {
        init: init.clone(),
        capacity,
        ..Default::default()
    };
    Ok(run(circuit, &NoiseModel::noiseless(), &options)?.final_state)
}
