use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::distributions::WeightedIndex;
use rand::prelude::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::app::InitOption;
use crate::circuit_ir::{Circuit, NoiseModel};
use crate::error::Result;
use crate::exec::{execute_schedule, Record};
use crate::measurement::{ensemble_distribution, OutcomeDistribution};
use crate::transpiler::{compile, CompileStats, Compiled};
use crate::{Capacity, PauliState, Real};

/// Knobs of a single run besides the circuit and noise model.
#[derive(Debug, Clone, Default)]
pub struct RunOptions<T> {
    pub init: InitOption,
    pub capacity: Capacity,
    /// Draw this many samples from the final outcome distribution.
    pub shots: Option<usize>,
    pub seed: u64,
    /// Report `Tr(ρ σ)` against this state.
    pub reference: Option<PauliState<T>>,
}

#[derive(Debug, Clone)]
pub struct RunReport<T> {
    pub n: usize,
    pub stats: CompileStats,
    pub records: Vec<Record<T>>,
    pub fidelity: Option<T>,
    /// `(outcome, count)` for outcomes drawn at least once.
    pub samples: Option<Vec<(String, usize)>>,
    pub final_state: PauliState<T>,
    pub elapsed: Duration,
}

/// Compiles and executes a circuit; the result is deterministic for fixed
/// inputs, with the seed used only for shot sampling.
pub fn run<T: Real>(circuit: &Circuit<T>, noise: &NoiseModel<T>, options: &RunOptions<T>) -> Result<RunReport<T>> {
    let start = Instant::now();
    options.capacity.check(circuit.n)?;
    let Compiled { schedule, stats, .. } = compile(circuit)?;
    let mut state = options.init.build(circuit.n, noise.p(), options.capacity)?;
    let records = execute_schedule(&mut state, &schedule, noise)?;
    let fidelity = match &options.reference {
        Some(r) => Some(state.overlap(r)?),
        None => None,
    };
    let samples = match options.shots {
        Some(k) => Some(sample(&records, &state, noise, k, options.seed)?),
        None => None,
    };
    Ok(RunReport {
        n: circuit.n,
        stats,
        records,
        fidelity,
        samples,
        final_state: state,
        elapsed: start.elapsed(),
    })
}

/// Samples the last ensemble distribution, or the final state read out in the
/// computational basis if the circuit has none.
fn sample<T: Real>(
    records: &[Record<T>],
    state: &PauliState<T>,
    noise: &NoiseModel<T>,
    shots: usize,
    seed: u64,
) -> Result<Vec<(String, usize)>> {
    let last = records.iter().rev().find_map(|r| match r {
        Record::Ensemble(d) => Some(d.clone()),
        _ => None,
    });
    let dist: OutcomeDistribution<T> = match last {
        Some(d) => d,
        None => ensemble_distribution(&mut state.clone(), &noise.measure)?,
    };
    let weights: Vec<f64> = dist.entries().iter().map(|(_, p)| p.as_f64().max(0.0)).collect();
    let index = WeightedIndex::new(&weights).map_err(|e| crate::Error::Consistency(format!("sampling: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0usize; weights.len()];
    for _ in 0..shots {
        counts[index.sample(&mut rng)] += 1;
    }
    Ok(dist
        .entries()
        .iter()
        .zip(counts)
        .filter(|(_, k)| *k > 0)
        .map(|((label, _), k)| (label.clone(), k))
        .collect())
}

impl<T: Real> RunReport<T> {
    /// Probability of the last ensemble matching `pattern` (`x` = any bit).
    pub fn success_probability(&self, pattern: &str) -> Result<T> {
        let dist = self
            .records
            .iter()
            .rev()
            .find_map(|r| match r {
                Record::Ensemble(d) => Some(d),
                _ => None,
            })
            .ok_or_else(|| crate::Error::Circuit("circuit has no ensemble measurement".into()))?;
        dist.marginal(pattern)
    }

    /// Tab-separated report without the timing line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let s = &self.stats;
        let _ = writeln!(out, "qubits\t{}", self.n);
        let _ = writeln!(out, "instructions\t{}", s.source);
        let _ = writeln!(out, "decomposed\t{}", s.decomposed);
        let _ = writeln!(out, "merged\t{}", s.merged);
        let _ = writeln!(out, "partitions\t{}", s.partitions);
        for r in &self.records {
            match r {
                Record::Measure { q, basis, plus, minus } => {
                    let _ = writeln!(out, "measure\tq[{q}]\t{}\t+\t{plus}\t-\t{minus}", basis.as_char());
                }
                Record::Expect { string, value } => {
                    let _ = writeln!(out, "expect\t{string}\t{value}");
                }
                Record::Ensemble(d) => {
                    for (label, p) in d.entries() {
                        let _ = writeln!(out, "ensemble\t{label}\t{p}");
                    }
                }
                Record::Bell { a, b, outcomes } => {
                    for (label, p) in outcomes.entries() {
                        let _ = writeln!(out, "bell\tq[{a}],q[{b}]\t{label}\t{p}");
                    }
                }
                Record::Reset { q } => {
                    let _ = writeln!(out, "reset\tq[{q}]");
                }
            }
        }
        if let Some(f) = self.fidelity {
            let _ = writeln!(out, "fidelity\t{f}");
        }
        if let Some(samples) = &self.samples {
            for (label, k) in samples {
                let _ = writeln!(out, "sample\t{label}\t{k}");
            }
        }
        out
    }

    pub fn timing_line(&self) -> String {
        format!("elapsed_s\t{:.6}\n", self.elapsed.as_secs_f64())
    }
}
