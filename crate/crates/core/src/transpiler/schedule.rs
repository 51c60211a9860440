use std::collections::VecDeque;
use std::fmt;

use crate::circuit_ir::{Category, Circuit, Instruction};
use crate::error::{Error, Result};
use crate::Real;

/// Entry in a qubit column. Instructions are referenced by their position in
/// the barrier-augmented instruction list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Op(usize),
    /// Placeholder for a measurement or reset on another qubit.
    Dummy(usize),
    Barrier,
}

/// One FIFO column of instruction slots per qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitStack<T> {
    pub instructions: Vec<Instruction<T>>,
    pub columns: Vec<VecDeque<Slot>>,
}

/// Inserts a barrier wherever the instruction category changes between
/// gates, measurements and solo measurements.
pub fn insert_category_barriers<T: Real>(circuit: &Circuit<T>) -> Circuit<T> {
    let mut out = Vec::with_capacity(circuit.len());
    let mut last: Option<Category> = None;
    for instr in &circuit.instructions {
        let cat = instr.category();
        if cat == Category::Barrier {
            if !matches!(out.last(), Some(Instruction::Barrier)) {
                out.push(Instruction::Barrier);
            }
            continue;
        }
        if let Some(prev) = last {
            if prev != cat && !matches!(out.last(), Some(Instruction::Barrier)) {
                out.push(Instruction::Barrier);
            }
        }
        last = Some(cat);
        out.push(instr.clone());
    }
    Circuit {
        n: circuit.n,
        instructions: out,
    }
}

/// Distributes instructions over per-qubit columns in source order.
pub fn build_stack<T: Real>(circuit: &Circuit<T>) -> QubitStack<T> {
    let n = circuit.n;
    let mut columns = vec![VecDeque::new(); n];
    for (i, instr) in circuit.instructions.iter().enumerate() {
        match instr.category() {
            Category::Barrier => columns.iter_mut().for_each(|c| c.push_back(Slot::Barrier)),
            Category::Measurement => {
                let q = instr.qubits(n)[0];
                for (k, c) in columns.iter_mut().enumerate() {
                    c.push_back(if k == q { Slot::Op(i) } else { Slot::Dummy(i) });
                }
            }
            Category::Solo => columns.iter_mut().for_each(|c| c.push_back(Slot::Op(i))),
            Category::Gate => {
                for q in instr.qubits(n) {
                    columns[q].push_back(Slot::Op(i));
                }
            }
        }
    }
    QubitStack {
        instructions: circuit.instructions.clone(),
        columns,
    }
}

/// Instructions executed in one clock step.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition<T> {
    pub category: Category,
    pub instructions: Vec<Instruction<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Schedule<T> {
    pub n: usize,
    pub partitions: Vec<Partition<T>>,
}

impl<T: Real> Schedule<T> {
    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn instruction_count(&self) -> usize {
        self.partitions.iter().map(|p| p.instructions.len()).sum()
    }
}

impl<T: Real> fmt::Display for Schedule<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.partitions.iter().enumerate() {
            let body: Vec<String> = p.instructions.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{i}\t{}\t{}", p.category, body.join("; "))?;
        }
        Ok(())
    }
}

fn front_category<T: Real>(stack: &QubitStack<T>) -> Option<Category> {
    stack.columns.iter().find_map(|c| match c.front() {
        Some(Slot::Op(i)) => Some(stack.instructions[*i].category()),
        Some(Slot::Dummy(_)) => Some(Category::Measurement),
        _ => None,
    })
}

/// Greedy earliest-fit partitioning of the stack into clock steps.
pub fn partition<T: Real>(mut stack: QubitStack<T>) -> Result<Schedule<T>> {
    let n = stack.columns.len();
    let mut partitions = Vec::new();
    while stack.columns.iter().any(|c| !c.is_empty()) {
        let Some(category) = front_category(&stack) else {
            // every non-empty column is waiting at a barrier
            for c in stack.columns.iter_mut() {
                if c.front() == Some(&Slot::Barrier) {
                    c.pop_front();
                }
            }
            continue;
        };
        let mut taken: Vec<usize> = Vec::new();
        let mut used = vec![false; n];
        let mut progress = false;
        match category {
            Category::Gate => {
                for q in 0..n {
                    if used[q] {
                        continue;
                    }
                    let Some(Slot::Op(i)) = stack.columns[q].front().copied() else {
                        continue;
                    };
                    let instr = &stack.instructions[i];
                    if instr.category() != Category::Gate {
                        continue;
                    }
                    let ops = instr.qubits(n);
                    let ready = ops
                        .iter()
                        .all(|&o| !used[o] && stack.columns[o].front() == Some(&Slot::Op(i)));
                    if ready {
                        for &o in &ops {
                            stack.columns[o].pop_front();
                            used[o] = true;
                        }
                        taken.push(i);
                        progress = true;
                    }
                }
            }
            Category::Measurement => {
                for q in 0..n {
                    let col = &mut stack.columns[q];
                    while let Some(Slot::Dummy(_)) = col.front() {
                        col.pop_front();
                        progress = true;
                    }
                    if let Some(Slot::Op(i)) = col.front().copied() {
                        if stack.instructions[i].category() == Category::Measurement {
                            col.pop_front();
                            taken.push(i);
                            progress = true;
                        }
                    }
                }
            }
            Category::Solo => {
                let i = stack
                    .columns
                    .iter()
                    .find_map(|c| match c.front() {
                        Some(Slot::Op(i)) if stack.instructions[*i].category() == Category::Solo => Some(*i),
                        _ => None,
                    })
                    .expect("front category is solo");
                if stack.columns.iter().all(|c| c.front() == Some(&Slot::Op(i))) {
                    stack.columns.iter_mut().for_each(|c| {
                        c.pop_front();
                    });
                    taken.push(i);
                    progress = true;
                }
            }
            Category::Barrier => unreachable!("barriers are never column operations"),
        }
        if !progress {
            return Err(Error::Scheduler(format!(
                "no poppable instruction with {} non-empty columns",
                stack.columns.iter().filter(|c| !c.is_empty()).count()
            )));
        }
        if !taken.is_empty() {
            partitions.push(Partition {
                category,
                instructions: taken.iter().map(|&i| stack.instructions[i].clone()).collect(),
            });
        }
    }
    Ok(Schedule { n, partitions })
}

/// Barrier pre-pass, stack construction and partitioning.
pub fn schedule<T: Real>(circuit: &Circuit<T>) -> Result<Schedule<T>> {
    partition(build_stack(&insert_category_barriers(circuit)))
}

fn per_qubit_order<'a, T: Real>(
    n: usize,
    instructions: impl Iterator<Item = &'a Instruction<T>>,
) -> Vec<Vec<&'a Instruction<T>>> {
    let mut order = vec![Vec::new(); n];
    for instr in instructions {
        if instr.category() == Category::Barrier {
            continue;
        }
        for q in instr.qubits(n) {
            order[q].push(instr);
        }
    }
    order
}

/// Checks partition legality and per-qubit order against `source`.
pub fn check_schedule<T: Real>(schedule: &Schedule<T>, source: &Circuit<T>) -> Result<()> {
    let n = schedule.n;
    let fail = |msg: String| Err(Error::Scheduler(msg));
    if n != source.n {
        return fail(format!("schedule has {n} qubits, source {}", source.n));
    }
    for (pi, p) in schedule.partitions.iter().enumerate() {
        if p.instructions.is_empty() {
            return fail(format!("partition {pi} is empty"));
        }
        if p.category == Category::Solo && p.instructions.len() != 1 {
            return fail(format!("solo partition {pi} holds {} instructions", p.instructions.len()));
        }
        let mut seen = vec![false; n];
        for instr in &p.instructions {
            if instr.category() != p.category {
                return fail(format!("partition {pi} ({}) contains `{instr}`", p.category));
            }
            for q in instr.qubits(n) {
                if seen[q] {
                    return fail(format!("partition {pi} uses q[{q}] twice"));
                }
                seen[q] = true;
            }
        }
    }
    let flat = schedule.partitions.iter().flat_map(|p| p.instructions.iter());
    if per_qubit_order(n, flat) != per_qubit_order(n, source.instructions.iter()) {
        return fail("per-qubit instruction order differs from the source".into());
    }
    Ok(())
}
