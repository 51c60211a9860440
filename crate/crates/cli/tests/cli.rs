use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn paulisim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paulisim")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn rows<'a>(text: &'a str, tag: &str) -> Vec<Vec<&'a str>> {
    text.lines().map(|l| l.split('\t').collect::<Vec<_>>()).filter(|f| f[0] == tag).collect()
}

const BELL: &str = "qubits 2\nh q[0]\ncx q[0],q[1]\nensemble\n";

#[test]
fn bell_pair_report() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "bell.qasm", BELL);
    let o = paulisim(&["run", "--circuit", &c]);
    assert!(o.status.success());
    let text = stdout(&o);
    let probs: Vec<(String, f64)> =
        rows(&text, "ensemble").iter().map(|f| (f[1].to_string(), f[2].parse().unwrap())).collect();
    for (label, p) in probs {
        let expected = if label == "00" || label == "11" { 0.5 } else { 0.0 };
        assert!((p - expected).abs() < 1e-12, "{label} {p}");
    }
    assert_eq!(rows(&text, "partitions")[0][1], "3");
}

#[test]
fn generated_adder_adds() {
    let dir = TempDir::new().unwrap();
    let c = dir.path().join("adder.qasm");
    assert!(paulisim(&["gen", "adder", "110", "011", "--out", c.to_str().unwrap()]).status.success());
    let text = stdout(&paulisim(&["run", "--circuit", c.to_str().unwrap()]));
    let success: f64 = rows(&text, "ensemble")
        .iter()
        .filter(|f| f[1].starts_with("1001"))
        .map(|f| f[2].parse::<f64>().unwrap())
        .sum();
    assert!((success - 1.0).abs() < 1e-10);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "bell.qasm", BELL);
    let n = write(&dir, "noise", "f = 0.95\ng = 0.97\nr_z = 0.9\nd1 = 0.9\n");
    let args = ["run", "--circuit", &c, "--noise", &n, "--shots", "100", "--seed", "7"];
    let (a, b) = (paulisim(&args), paulisim(&args));
    assert_eq!(a.stdout, b.stdout);
    let total: usize = rows(&stdout(&a), "sample").iter().map(|f| f[2].parse::<usize>().unwrap()).sum();
    assert_eq!(total, 100);
}

#[test]
fn state_files_round_trip_with_reference() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "bell.qasm", "qubits 2\nh q[0]\ncx q[0],q[1]\n");
    let state = dir.path().join("state.txt");
    let state = state.to_str().unwrap();
    assert!(paulisim(&["run", "--circuit", &c, "--save-state", state]).status.success());
    let o = paulisim(&["run", "--circuit", &c, "--init", "zero", "--reference", state]);
    let f: f64 = rows(&stdout(&o), "fidelity")[0][1].parse().unwrap();
    assert!((f - 1.0).abs() < 1e-12);

    let undo = write(&dir, "undo.qasm", "qubits 2\ncx q[0],q[1]\nh q[0]\nexpect ZZ\n");
    let o = paulisim(&["run", "--circuit", &undo, "--init-file", state]);
    assert!(o.status.success());
    let z: f64 = rows(&stdout(&o), "expect")[0][2].parse().unwrap();
    assert!((z - 1.0).abs() < 1e-12);
}

#[test]
fn schedule_dump_and_timing() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.qasm", "qubits 2\nh q[0]\nh q[1]\nensemble\n");
    let dump = dir.path().join("dump.txt");
    let o = paulisim(&["run", "--circuit", &c, "--schedule-dump", dump.to_str().unwrap(), "--timing"]);
    assert!(o.status.success());
    let text = fs::read_to_string(&dump).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("0\tgate\t"));
    assert_eq!(lines[1], "1\tsolo\tensemble");
    assert_eq!(rows(&stdout(&o), "elapsed_s").len(), 1);
}

#[test]
fn output_file() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "bell.qasm", BELL);
    let out = dir.path().join("report.tsv");
    let o = paulisim(&["run", "--circuit", &c, "--out", out.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert!(fs::read_to_string(out).unwrap().starts_with("qubits\t2\n"));
}

#[test]
fn sweep_tables() {
    let o = paulisim(&["sweep", "--gen", "adder:110,011", "--param", "f", "--values", "1,0.99,0.9"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "f\tsuccess_prob\tpartitions");
    let m: Vec<f64> = lines[1..].iter().map(|l| l.split('\t').nth(1).unwrap().parse().unwrap()).collect();
    assert!((m[0] - 1.0).abs() < 1e-10);
    assert!(m[1] < m[0] && m[2] < m[1]);

    let o = paulisim(&["sweep", "--gen", "qft:3", "--param", "r", "--values", "1,0.99", "--metric", "fidelity"]);
    let text = stdout(&o);
    assert!(text.starts_with("r\tfidelity\tpartitions\n"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn sweep_over_a_circuit_file_needs_a_pattern() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "bell.qasm", BELL);
    let o = paulisim(&["sweep", "--circuit", &c, "--param", "d1", "--values", "1,0.5"]);
    assert_eq!(o.status.code(), Some(6));
    let o = paulisim(&["sweep", "--circuit", &c, "--param", "d1", "--values", "1,0.5", "--pattern", "00"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("0.5\t0.3125\t3\n"));
}

#[test]
fn generators_print_circuits() {
    let o = paulisim(&["gen", "qft", "1"]);
    assert_eq!(stdout(&o), "qubits 1\nh q[0]\n");
    let o = paulisim(&["gen", "qft", "3", "--measure"]);
    assert!(stdout(&o).ends_with("ensemble\n"));
}

#[test]
fn verify_agrees_under_noise() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.qasm", "qubits 3\nh q[0]\nccx q[0],q[1],q[2]\nmeasure_x q[1]\nbell q[0],q[2]\nensemble\n");
    let n = write(&dir, "noise", "p = 0.97\nalpha_y = 0.05\nr_y = 0.9\nr_cx = 0.95\nd1 = 0.9\nd2 = 0.8\nf = 0.9\ng = 0.95\n");
    let o = paulisim(&["verify", "--circuit", &c, "--noise", &n]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let d: f64 = rows(&stdout(&o), "max_divergence")[0][1].parse().unwrap();
    assert!(d < 1e-10);
}

fn code(args: &[&str]) -> Option<i32> {
    paulisim(args).status.code()
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bell = write(&dir, "bell.qasm", BELL);
    let bad = write(&dir, "bad.qasm", "qubits 2\nfoo q[0]\n");
    let dup = write(&dir, "dup", "f = 0.9\nf = 0.8\n");
    let range = write(&dir, "range", "g = 1.5\n");
    let missing = Path::new("/nonexistent/circuit.qasm").to_str().unwrap();

    assert_eq!(code(&["run", "--circuit", &bad]), Some(3));
    assert_eq!(code(&["run", "--circuit", &bell, "--noise", &dup]), Some(3));
    assert_eq!(code(&["run", "--circuit", &bell, "--init", "bitstring:101"]), Some(4));
    assert_eq!(code(&["run", "--circuit", &bell, "--max-qubits", "1"]), Some(5));
    assert_eq!(code(&["run", "--circuit", &bell, "--noise", &range]), Some(6));
    assert_eq!(code(&["run", "--circuit", &bell, "--init", "hot"]), Some(6));
    assert_eq!(code(&["sweep", "--circuit", &bell, "--param", "zeta", "--values", "1", "--pattern", "00"]), Some(6));
    assert_eq!(code(&["run", "--circuit", missing]), Some(7));
    assert_eq!(code(&["run"]), Some(2));
}
