//! `paulisim` command-line front end.

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use paulisim::app::{
    adder_success_pattern, exit_code, gen_adder, gen_qft, noiseless_reference, parse_values, run, sweep, verify,
    InitOption, Metric, RunOptions, EXIT_DIVERGENCE,
};
use paulisim::circuit_ir::{parse_circuit, Circuit, NoiseModel};
use paulisim::transpiler::compile;
use paulisim::{Capacity, Error, PauliState, Result};

#[derive(Parser)]
#[command(name = "paulisim", version, about = "Noisy quantum circuit simulator on Pauli-basis density matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile and execute a circuit, printing a tab-separated report.
    Run(RunArgs),
    /// Re-run a circuit once per value of one noise parameter.
    Sweep(SweepArgs),
    /// Emit a generated circuit.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Execute through both the Pauli engine and the dense oracle and compare.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// Noise configuration file; noiseless when omitted.
    #[arg(long)]
    noise: Option<PathBuf>,
    /// zero | uniform | thermal | bitstring:S | file:PATH
    #[arg(long, default_value = "thermal")]
    init: String,
    /// Shorthand for `--init file:PATH`.
    #[arg(long, conflicts_with = "init")]
    init_file: Option<PathBuf>,
    #[arg(long, default_value_t = paulisim::pauli_state::DEFAULT_MAX_QUBITS)]
    max_qubits: usize,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn init(&self) -> Result<InitOption> {
        match &self.init_file {
            Some(path) => Ok(InitOption::File(path.clone())),
            None => self.init.parse(),
        }
    }

    fn noise(&self) -> Result<NoiseModel<f64>> {
        match &self.noise {
            Some(path) => NoiseModel::parse(&read(path)?),
            None => Ok(NoiseModel::noiseless()),
        }
    }

    fn capacity(&self) -> Capacity {
        Capacity { max_qubits: self.max_qubits }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[command(flatten)]
    common: Common,
    /// Write the final state as a coefficient file.
    #[arg(long)]
    save_state: Option<PathBuf>,
    /// Write the partition schedule, one partition per line.
    #[arg(long)]
    schedule_dump: Option<PathBuf>,
    /// Sample this many shots from the final outcome distribution.
    #[arg(long)]
    shots: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report the overlap with this state file.
    #[arg(long)]
    reference: Option<PathBuf>,
    /// Append the wall-clock line to the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricKind {
    SuccessProb,
    Fidelity,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, required_unless_present = "gen", conflicts_with = "gen")]
    circuit: Option<PathBuf>,
    /// Built-in circuit: `adder:A,B` or `qft:N`.
    #[arg(long)]
    gen: Option<String>,
    #[command(flatten)]
    common: Common,
    /// Noise key, or `r` / `alpha` for all rotation channels.
    #[arg(long)]
    param: String,
    /// Comma-separated values.
    #[arg(long)]
    values: String,
    #[arg(long, value_enum, default_value = "success-prob")]
    metric: MetricKind,
    /// Ensemble pattern for success-prob, MSB first, `x` for any bit.
    #[arg(long)]
    pattern: Option<String>,
    /// Reference state file for fidelity; the noiseless final state by default.
    #[arg(long)]
    reference: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Ripple-carry adder for two MSB-first bitstrings.
    Adder {
        a: String,
        b: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quantum Fourier transform.
    Qft {
        n: usize,
        /// Append an ensemble measurement.
        #[arg(long)]
        measure: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = paulisim::app::VERIFY_TOL)]
    tol: f64,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            let mut w = create(path)?;
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_state(path: &Path, cap: Capacity) -> Result<PauliState<f64>> {
    let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    PauliState::load_within(BufReader::new(file), cap)
}

fn load_circuit(path: &Path) -> Result<Circuit<f64>> {
    parse_circuit(&read(path)?)
}

fn cmd_run(args: &RunArgs) -> Result<i32> {
    let common = &args.common;
    let circuit = load_circuit(&args.circuit)?;
    let cap = common.capacity();
    let options = RunOptions {
        init: common.init()?,
        capacity: cap,
        shots: args.shots,
        seed: args.seed,
        reference: args.reference.as_deref().map(|p| load_state(p, cap)).transpose()?,
    };
    let report = run(&circuit, &common.noise()?, &options)?;
    if let Some(path) = &args.schedule_dump {
        let schedule = compile(&circuit)?.schedule;
        emit(Some(path), &schedule.to_string())?;
    }
    if let Some(path) = &args.save_state {
        let mut w = create(path)?;
        report.final_state.save(&mut w)?;
        w.flush()?;
    }
    let mut text = report.render();
    if args.timing {
        text.push_str(&report.timing_line());
    }
    emit(common.out.as_deref(), &text)?;
    Ok(0)
}

fn bad_gen(recipe: &str) -> Error {
    Error::Parameter { name: format!("generator `{recipe}`"), value: f64::NAN, range: "adder:A,B or qft:N" }
}

/// Circuit and default success pattern for `--gen`.
fn generated(recipe: &str, cap: Capacity) -> Result<(Circuit<f64>, Option<String>)> {
    if let Some(operands) = recipe.strip_prefix("adder:") {
        let (a, b) = operands.split_once(',').ok_or_else(|| bad_gen(recipe))?;
        let (a, b) = (a.trim(), b.trim());
        return Ok((gen_adder(a, b, cap)?, Some(adder_success_pattern(a, b)?)));
    }
    if let Some(n) = recipe.strip_prefix("qft:") {
        let n: usize = n.trim().parse().map_err(|_| bad_gen(recipe))?;
        return Ok((gen_qft(n, false, cap)?, None));
    }
    Err(bad_gen(recipe))
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    let common = &args.common;
    let cap = common.capacity();
    let init = common.init()?;
    let (circuit, default_pattern) = match (&args.circuit, &args.gen) {
        (Some(path), _) => (load_circuit(path)?, None),
        (None, Some(recipe)) => generated(recipe, cap)?,
        (None, None) => unreachable!("clap requires one of --circuit and --gen"),
    };
    let metric = match args.metric {
        MetricKind::SuccessProb => {
            let pattern = args.pattern.clone().or(default_pattern).ok_or_else(|| Error::Parameter {
                name: "success-prob pattern".into(),
                value: f64::NAN,
                range: "given with --pattern",
            })?;
            Metric::SuccessProbability(pattern)
        }
        MetricKind::Fidelity => Metric::Fidelity(match &args.reference {
            Some(path) => load_state(path, cap)?,
            None => noiseless_reference(&circuit, &init, cap)?,
        }),
    };
    let values = parse_values(&args.values)?;
    let table = sweep(&circuit, &common.noise()?, &init, cap, &args.param, &values, &metric)?;
    emit(common.out.as_deref(), &table.to_string())?;
    Ok(0)
}

fn cmd_gen(command: &GenCommand) -> Result<i32> {
    let cap = Capacity::default();
    let (circuit, out): (Circuit<f64>, _) = match command {
        GenCommand::Adder { a, b, out } => (gen_adder(a, b, cap)?, out),
        GenCommand::Qft { n, measure, out } => (gen_qft(*n, *measure, cap)?, out),
    };
    emit(out.as_deref(), &circuit.to_string())?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let common = &args.common;
    let circuit = load_circuit(&args.circuit)?;
    let report = verify(&circuit, &common.noise()?, &common.init()?)?;
    emit(common.out.as_deref(), &report.render())?;
    Ok(if report.max_divergence() <= args.tol { 0 } else { EXIT_DIVERGENCE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Gen(command) => cmd_gen(command),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
