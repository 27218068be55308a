use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use cluster_rsp::circuit::{build_cluster_circuit, export_qasm};
use cluster_rsp::noise::NoiseKind;
use cluster_rsp::protocol::Outcome;
use cluster_rsp_cli::report::{run_report, RunInputs};
use cluster_rsp_cli::sweep::{self, Axis, Param, SweepSpec, PRESET_NAMES};
use cluster_rsp_cli::CliError;

/// Remote preparation of a one-qubit and a two-qubit state over a five-qubit
/// cluster channel, with and without local noise.
#[derive(Parser)]
#[command(name = "cluster-rsp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one parameter point and print a JSON report.
    Run(RunArgs),
    /// Write a fidelity grid as CSV.
    Sweep(SweepArgs),
    /// Export the cluster-state preparation circuit as OpenQASM 2.0.
    Qasm(QasmArgs),
}

#[derive(Args)]
struct RunArgs {
    /// α², the weight of |0⟩ in the one-qubit target.
    #[arg(long)]
    alpha2: f64,
    /// γ², the weight of |00⟩ in the two-qubit target.
    #[arg(long)]
    gamma2: f64,
    /// ad, pf or bf.
    #[arg(long)]
    noise: NoiseKind,
    #[arg(long)]
    rate: f64,
    /// Also draw one measurement outcome with this seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Leave out `generated_at_unix`, making the output byte-reproducible.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// One of fig3a..fig3d, fig4a..fig4d, fig5a..fig5d.
    #[arg(long, conflicts_with_all = ["noise", "axis", "alpha2", "gamma2", "rate", "outcome"])]
    preset: Option<String>,
    #[arg(long, required_unless_present_any = ["preset", "list"])]
    noise: Option<NoiseKind>,
    /// Varied parameter as name:min:max:steps, given once or twice.
    #[arg(long, value_name = "SPEC", required_unless_present_any = ["preset", "list"])]
    axis: Vec<String>,
    #[arg(long)]
    alpha2: Option<f64>,
    #[arg(long)]
    gamma2: Option<f64>,
    #[arg(long)]
    rate: Option<f64>,
    #[arg(long, default_value_t = 2)]
    outcome: usize,
    /// Destination file; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Print the preset names and exit.
    #[arg(long, exclusive = true)]
    list: bool,
}

#[derive(Args)]
struct QasmArgs {
    #[arg(long, short, default_value = "cluster.qasm", conflicts_with = "stdout")]
    output: PathBuf,
    #[arg(long)]
    stdout: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Qasm(args) => cmd_qasm(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn cmd_run(args: RunArgs) -> Result<(), CliError> {
    let mut report = run_report(RunInputs {
        alpha2: args.alpha2,
        gamma2: args.gamma2,
        noise: args.noise.short_name().into(),
        rate: args.rate,
        seed: args.seed,
    })?;
    if !args.no_timestamp {
        let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        report.generated_at_unix = Some(now);
    }
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    emit(None, text.as_bytes())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    if args.list {
        return emit(None, format!("{}\n", PRESET_NAMES.join("\n")).as_bytes());
    }
    let (spec, metadata) = match &args.preset {
        Some(name) => {
            let preset = sweep::preset(name).ok_or_else(|| {
                CliError::Invalid(format!("unknown preset `{name}`; try --list"))
            })?;
            let metadata = preset.metadata();
            (preset.spec, metadata)
        }
        None => {
            let axes = args.axis.iter().map(|s| s.parse()).collect::<Result<Vec<Axis>, _>>()?;
            let fixed = [
                (Param::Alpha2, args.alpha2),
                (Param::Gamma2, args.gamma2),
                (Param::Rate, args.rate),
            ]
            .into_iter()
            .filter_map(|(p, v)| v.map(|v| (p, v)))
            .collect();
            let kind = args.noise.expect("required by clap");
            let spec = SweepSpec::new(kind, axes, fixed, Outcome::new(args.outcome)?)?;
            let metadata = spec.metadata();
            (spec, metadata)
        }
    };
    let rows = sweep::evaluate(&spec)?;
    let mut buf = Vec::new();
    sweep::write_csv(&mut buf, &spec, &metadata, &rows).expect("writing to memory");
    emit(args.output.as_deref(), &buf)
}

fn cmd_qasm(args: QasmArgs) -> Result<(), CliError> {
    let text = export_qasm(&build_cluster_circuit());
    let path = (!args.stdout).then_some(args.output.as_path());
    emit(path, text.as_bytes())
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    let (path, result) = match path {
        Some(p) => (p.to_path_buf(), fs::write(p, bytes)),
        None => (PathBuf::from("<stdout>"), io::stdout().lock().write_all(bytes)),
    };
    result.map_err(|source| CliError::Write { path, source })
}
