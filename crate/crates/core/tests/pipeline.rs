//! Compiler and generator behaviour checked against the dense oracle.

mod common;

use common::*;
use paulisim::app::{adder_success_pattern, gen_adder, gen_qft, run, InitOption, RunOptions};
use paulisim::circuit_ir::{parse_circuit, Circuit, Instruction, NoiseModel};
use paulisim::exec::{execute_schedule, execute_sequential};
use paulisim::oracle::{self, phase_aligned_distance, run_dense_circuit, DenseState};
use paulisim::transpiler::{check_schedule, compile, decompose, insert_category_barriers, merge, schedule};
use paulisim::{Capacity, PauliState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn toffoli_decomposition_is_exact_up_to_phase() {
    let c: Circuit<f64> = parse_circuit("qubits 3\nccx q[2],q[0],q[1]").unwrap();
    let d = decompose(&c).unwrap();
    assert_eq!(d.len(), 15);
    let dist = phase_aligned_distance(&circuit_unitary(&d), &circuit_unitary(&c));
    assert!(dist < 1e-12, "{dist:e}");
}

#[test]
fn every_named_gate_decomposes_exactly() {
    for gate in paulisim::gates::NamedGate::ALL {
        let mut c = Circuit::new(1);
        c.push(Instruction::Named { gate, q: 0 });
        let dist = phase_aligned_distance(&circuit_unitary(&decompose(&c).unwrap()), &circuit_unitary(&c));
        assert!(dist < 1e-12, "{gate}: {dist:e}");
    }
}

#[test]
fn fused_runs_match_unfused_unitaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        let mut c = Circuit::new(1);
        for _ in 0..rng.gen_range(2..6) {
            c.push(random_instruction(&mut rng, 1, SELECT_ONLY));
        }
        let m = merge(&c);
        assert_eq!(m.len(), 1);
        let dist = phase_aligned_distance(&circuit_unitary(&m), &circuit_unitary(&c));
        assert!(dist < 1e-10, "{dist:e} for {c}");
    }
}

#[test]
fn hadamard_pair_fuses_to_identity_map() {
    let c: Circuit<f64> = parse_circuit("qubits 1\nu3(pi/2,0,pi) q[0]\nu3(pi/2,0,pi) q[0]").unwrap();
    let m = merge(&c);
    assert_eq!(m.len(), 1);
    let t = match m.instructions[0] {
        Instruction::U1 { lambda, .. } => paulisim::gates::u1_transfer(lambda, &Default::default()).unwrap(),
        ref other => panic!("{other}"),
    };
    let id = paulisim::gates::TransferMatrix1Q::<f64>::identity();
    for (r, row) in t.matrix().iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            assert!((v - id.matrix()[r][c]).abs() < 1e-12);
        }
    }
}

#[test]
fn schedules_preserve_semantics() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let noise = NoiseModel::noiseless();
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let len = rng.gen_range(0..=40);
        let c = random_circuit(&mut rng, n, len, EVERYTHING);
        let compiled = compile(&c).unwrap_or_else(|e| panic!("{e}\n{c}"));
        check_schedule(&compiled.schedule, &insert_category_barriers(&compiled.merged)).unwrap();
        assert!(compiled.schedule.len() <= c.len().max(1) * 15);
        assert!(compiled.stats.merged <= compiled.stats.decomposed);

        let init = PauliState::from_bits(&"0".repeat(n)).unwrap();
        let mut a = init.clone();
        execute_schedule(&mut a, &compiled.schedule, &noise).unwrap();
        let mut b = init;
        execute_sequential(&mut b, &c, &noise).unwrap();
        let diff = a.max_abs_diff(&b);
        assert!(diff < 1e-10, "{diff:e} for\n{c}");
    }
}

#[test]
fn merge_is_idempotent_and_never_grows() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let c = decompose(&random_circuit(&mut rng, n, 30, EVERYTHING)).unwrap();
        let once = merge(&c);
        assert!(once.len() <= c.len());
        assert_eq!(merge(&once), once);
    }
}

#[test]
fn partition_count_never_exceeds_instruction_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let c = merge(&decompose(&random_circuit(&mut rng, n, 40, EVERYTHING)).unwrap());
        let s = schedule(&c).unwrap();
        assert!(s.len() <= c.operation_count());
        assert_eq!(s.instruction_count(), c.operation_count());
    }
}

fn noiseless_adder(a: &str, b: &str) -> f64 {
    let c = gen_adder::<f64>(a, b, Capacity::default()).unwrap();
    let report = run(&c, &NoiseModel::noiseless(), &RunOptions { init: InitOption::Zero, ..Default::default() }).unwrap();
    report.success_probability(&adder_success_pattern(a, b).unwrap()).unwrap()
}

#[test]
fn adder_examples() {
    assert!((noiseless_adder("110", "011") - 1.0).abs() < 1e-10);
    assert!((noiseless_adder("0", "0") - 1.0).abs() < 1e-10);
    assert!((noiseless_adder("1", "1") - 1.0).abs() < 1e-10);
    assert!((noiseless_adder("101", "111") - 1.0).abs() < 1e-10);
}

#[test]
fn adder_matches_dense_oracle() {
    let c = gen_adder::<f64>("1", "1", Capacity::default()).unwrap();
    let mut dense = DenseState::basis("0000").unwrap();
    let records = run_dense_circuit(&mut dense, &c, &NoiseModel::noiseless()).unwrap();
    match records.last() {
        Some(paulisim::exec::Record::Ensemble(d)) => {
            assert!((d.marginal("10xx").unwrap() - 1.0).abs() < 1e-12);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn adder_is_exhaustively_correct_for_two_bits() {
    for a in 0..4u32 {
        for b in 0..4u32 {
            let (sa, sb) = (format!("{a:02b}"), format!("{b:02b}"));
            assert!((noiseless_adder(&sa, &sb) - 1.0).abs() < 1e-10, "{sa}+{sb}");
        }
    }
}

#[test]
fn qft_unitary_is_the_dft() {
    for n in 1..=4 {
        let c = gen_qft::<f64>(n, false, Capacity::default()).unwrap();
        let dist = phase_aligned_distance(&circuit_unitary(&c), &dft(n));
        assert!(dist < 1e-10, "n={n}: {dist:e}");
        let merged = merge(&decompose(&c).unwrap());
        let dist = phase_aligned_distance(&circuit_unitary(&merged), &dft(n));
        assert!(dist < 1e-10, "merged n={n}: {dist:e}");
    }
}

#[test]
fn qft_of_zero_is_uniform() {
    let c = gen_qft::<f64>(3, true, Capacity::default()).unwrap();
    let report = run(&c, &NoiseModel::noiseless(), &RunOptions { init: InitOption::Zero, ..Default::default() }).unwrap();
    match report.records.last() {
        Some(paulisim::exec::Record::Ensemble(d)) => {
            for (_, p) in d.entries() {
                assert!((p - 0.125).abs() < 1e-12);
            }
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn printer_round_trips_random_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..50 {
        let n = rng.gen_range(1..=5);
        let c = random_circuit(&mut rng, n, 30, EVERYTHING);
        let back: Circuit<f64> = parse_circuit(&c.to_string()).unwrap();
        assert_eq!(back, c);
        decompose(&back).unwrap();
    }
}

#[test]
fn bell_circuit_matches_oracle_distribution() {
    let c: Circuit<f64> = parse_circuit("qubits 2\nh q[0]\ncx q[0],q[1]\nensemble").unwrap();
    let report = run(&c, &NoiseModel::noiseless(), &RunOptions::default()).unwrap();
    let mut dense = DenseState::basis("00").unwrap();
    let records = run_dense_circuit(&mut dense, &c, &NoiseModel::noiseless()).unwrap();
    assert_eq!(report.records.len(), records.len());
    let _ = oracle::to_dense(&report.final_state).unwrap();
    match (&report.records[0], &records[0]) {
        (paulisim::exec::Record::Ensemble(a), paulisim::exec::Record::Ensemble(b)) => {
            for ((la, pa), (lb, pb)) in a.entries().iter().zip(b.entries()) {
                assert_eq!(la, lb);
                assert!((pa - pb).abs() < 1e-12);
            }
            assert!((a.get("00").unwrap() - 0.5).abs() < 1e-12);
        }
        other => panic!("{other:?}"),
    }
}
