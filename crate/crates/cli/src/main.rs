use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use clifford_synth::architecture::{benchmark_architectures, builtin_names};
use clifford_synth::bench::{self, ExperimentRow, ExperimentSpec, DEFAULT_TRIALS};
use clifford_synth::verify::{check_circuit_implements, check_connectivity};
use clifford_synth::{
    synthesize, Circuit, CliffordTableau, CouplingGraph, PivotRule, Placement, SynthesisConfig,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "clifford-synth",
    version,
    about = "Architecture-aware Clifford synthesis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a tableau or circuit for a coupling graph.
    Synth(SynthArgs),
    /// Check a synthesized circuit against a tableau and a coupling graph.
    Verify(VerifyArgs),
    /// Inspect coupling graphs.
    #[command(subcommand)]
    Arch(ArchCommand),
    /// Run random-circuit benchmark sweeps.
    Bench(BenchArgs),
    /// Print a random {H, S, CX} circuit.
    Random(RandomArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum PlacementArg {
    Lazy,
    Identity,
}

impl From<PlacementArg> for Placement {
    fn from(p: PlacementArg) -> Self {
        match p {
            PlacementArg::Lazy => Placement::Lazy,
            PlacementArg::Identity => Placement::Identity,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PivotArg {
    Heuristic,
    FixedOrder,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Gatelist,
    Qasm,
}

#[derive(Args)]
struct SynthArgs {
    /// Builtin architecture name or coupling-graph JSON file.
    #[arg(long)]
    arch: String,
    /// Tableau text file or gate-list circuit file.
    #[arg(long = "in", visible_alias = "tableau-in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "lazy")]
    placement: PlacementArg,
    #[arg(long, value_enum, default_value = "heuristic")]
    pivot: PivotArg,
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "gatelist")]
    format: OutputFormat,
    /// Write counts, mapping and wall time as JSON.
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    arch: String,
    /// Target tableau (tableau text or gate-list circuit).
    #[arg(long)]
    tableau: PathBuf,
    /// Synthesized circuit on physical qubits.
    #[arg(long)]
    circuit: PathBuf,
    /// JSON array `mapping[logical] = physical`, or a stats file with a
    /// `mapping` field; identity if omitted.
    #[arg(long)]
    mapping: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ArchCommand {
    /// List builtin architectures.
    List,
    /// Print vertices, edges and diameter.
    Show {
        name: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(
        long,
        required_unless_present = "all_paper_archs",
        conflicts_with = "all_paper_archs"
    )]
    arch: Option<String>,
    /// `start:stop:step`, a single count, or a comma list.
    #[arg(long, required_unless_present = "all_paper_archs")]
    gates: Option<String>,
    /// Run the six benchmark devices, each up to twice its convergence threshold.
    #[arg(long)]
    all_paper_archs: bool,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "lazy")]
    placement: PlacementArg,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    qubits: usize,
    #[arg(long)]
    gates: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the circuit's tableau instead of the gate list.
    #[arg(long)]
    tableau: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_or_stdout(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).map_err(Into::into),
    }
}

/// Accepts either tableau text (`n=` header) or a gate list (`qubits` header).
fn load_tableau(path: &Path) -> Result<CliffordTableau> {
    let text = read(path)?;
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let tableau = if header.starts_with("n=") || header.starts_with("n =") {
        CliffordTableau::parse_text(&text)
    } else {
        Circuit::parse_gatelist(&text).and_then(|c| CliffordTableau::from_circuit(&c))
    };
    tableau.with_context(|| format!("parsing {}", path.display()))
}

fn load_mapping(path: &Path) -> Result<Vec<usize>> {
    let value: serde_json::Value = serde_json::from_str(&read(path)?)
        .with_context(|| format!("parsing {}", path.display()))?;
    let mapping = value.get("mapping").cloned().unwrap_or(value);
    serde_json::from_value(mapping).context("mapping must be an array of vertex indices")
}

fn synth(args: SynthArgs) -> Result<ExitCode> {
    let graph = CouplingGraph::load(&args.arch)?;
    let tableau = load_tableau(&args.input)?;
    let cfg = SynthesisConfig {
        placement: args.placement.into(),
        pivot_rule: match args.pivot {
            PivotArg::Heuristic => PivotRule::Heuristic,
            PivotArg::FixedOrder => PivotRule::FixedOrder,
        },
        seed: None,
    };
    let start = Instant::now();
    let result = synthesize(&tableau, &graph, cfg)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    let text = match args.format {
        OutputFormat::Gatelist => result.circuit.to_gatelist(),
        OutputFormat::Qasm => result.circuit.to_qasm(),
    };
    write_or_stdout(args.out.as_deref(), &text)?;
    if let Some(path) = args.stats {
        let stats = json!({
            "arch": graph.name(),
            "num_qubits": graph.num_qubits(),
            "placement": cfg.placement,
            "counts": result.counts,
            "mapping": result.mapping,
            "wall_time_ms": wall_time_ms,
        });
        fs::write(&path, serde_json::to_string_pretty(&stats)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let graph = CouplingGraph::load(&args.arch)?;
    let tableau = load_tableau(&args.tableau)?;
    let circuit = Circuit::parse_gatelist(&read(&args.circuit)?)
        .with_context(|| format!("parsing {}", args.circuit.display()))?;
    let mapping = match &args.mapping {
        Some(p) => load_mapping(p)?,
        None => (0..circuit.num_qubits()).collect(),
    };
    if circuit.num_qubits() != graph.num_qubits() {
        bail!(
            "circuit has {} qubits, {} has {}",
            circuit.num_qubits(),
            graph.name(),
            graph.num_qubits()
        );
    }

    let mut ok = true;
    for v in check_connectivity(&circuit, &graph) {
        ok = false;
        println!(
            "violation: gate {} cx {} {} is not an edge",
            v.index, v.control, v.target
        );
    }
    if !check_circuit_implements(&tableau, &circuit, &mapping)? {
        ok = false;
        println!("mismatch: circuit does not implement the tableau");
    }
    if ok {
        println!("ok");
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}

fn arch(cmd: ArchCommand) -> Result<ExitCode> {
    match cmd {
        ArchCommand::List => {
            for name in builtin_names() {
                println!("{name}");
            }
        }
        ArchCommand::Show { name, json } => {
            let g = CouplingGraph::load(&name)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&g.to_spec())?);
            } else {
                println!("name: {}", g.name());
                println!("vertices: {}", g.num_qubits());
                println!("edges: {}", g.edges().len());
                for (u, v) in g.edges() {
                    println!("  {u} {v}");
                }
                println!("diameter: {}", g.diameter());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn bench_cmd(args: BenchArgs) -> Result<ExitCode> {
    let plan: Vec<(String, Vec<usize>)> = if args.all_paper_archs {
        benchmark_architectures()
            .iter()
            .map(|&(name, threshold)| (name.to_string(), bench::sweep_gate_counts(threshold)))
            .collect()
    } else {
        let arch = args.arch.expect("required by clap");
        let gates = bench::parse_gate_counts(args.gates.as_deref().expect("required by clap"))?;
        vec![(arch, gates)]
    };

    let mut rows: Vec<ExperimentRow> = Vec::new();
    let mut summary = Vec::new();
    for (arch, gate_counts) in plan {
        let graph = CouplingGraph::load(&arch)?;
        let spec = ExperimentSpec {
            arch,
            gate_counts,
            circuits_per_point: args.trials,
            rng_seed: args.seed,
            placement: args.placement.into(),
        };
        let arch_rows = bench::run_experiment_on(&spec, &graph)?;
        let arch_summary = bench::summarize(&arch_rows, graph.num_qubits());
        for s in &arch_summary {
            eprintln!(
                "{} gates={} median_cx={} median_cx_fc={} routing={}",
                s.arch,
                s.input_gates,
                s.median_cx,
                s.median_cx_fc,
                s.routing_portion
                    .map_or("-".into(), |r| format!("{:.2}%", r * 100.0)),
            );
        }
        rows.extend(arch_rows);
        summary.extend(arch_summary);
    }

    match &args.out {
        Some(p) => bench::write_rows(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
            &rows,
        )?,
        None => bench::write_rows(io::stdout().lock(), &rows)?,
    }
    if let Some(p) = &args.summary {
        bench::write_summary(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
            &summary,
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

fn random(args: RandomArgs) -> Result<ExitCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let c = bench::random_clifford_circuit(args.qubits, args.gates, &mut rng)?;
    let text = if args.tableau {
        CliffordTableau::from_circuit(&c)?.to_text()
    } else {
        c.to_gatelist()
    };
    write_or_stdout(None, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Synth(a) => synth(a),
        Command::Verify(a) => verify(a),
        Command::Arch(a) => arch(a),
        Command::Bench(a) => bench_cmd(a),
        Command::Random(a) => random(a),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
