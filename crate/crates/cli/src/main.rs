use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use semistream::format::{EdgeReader, EdgeWriter, Encoding, FormatError};
use semistream::generate::{generate, GeneratorConfig, Model, Order};
use semistream::oracle::ConnectivityCheck;
use semistream::{
    postprocess, postprocess_both, CertificateKind, MetricsLedger, StreamConfig, StreamError, StreamState, Verdict,
};

#[derive(Parser)]
#[command(name = "semistream", version, about = "One-pass graph stream processing in bounded memory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stream a graph through the engine and print the verdict.
    Run(RunArgs),
    /// Write a synthetic edge stream.
    Generate(GenerateArgs),
    /// Re-encode a stream as text or binary.
    Convert(ConvertArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Problem {
    /// Connected components.
    Cc,
    Bipartite,
    /// k-vertex connectivity.
    Kvconn,
    /// k-edge connectivity.
    Keconn,
    /// Minimum spanning forest.
    Msf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MetricsFormat {
    Json,
    Human,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Binary,
}

impl From<Format> for Encoding {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => Encoding::Text,
            Format::Binary => Encoding::Binary,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    /// Connectivity threshold, required for kvconn and keconn.
    #[arg(long)]
    k: Option<u32>,
    /// Edges per group; defaults to n (n·⌈log₂ n⌉ for msf).
    #[arg(long)]
    group_size: Option<usize>,
    /// Drop loop edges instead of failing with exit code 3.
    #[arg(long)]
    skip_loops: bool,
    /// Recompute over the last partial group instead of appending it.
    #[arg(long)]
    final_recompute: bool,
    #[arg(long, value_enum, default_value = "json")]
    metrics: MetricsFormat,
    /// Echoed in the report; the run itself is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// For kvconn/keconn: answer both vertex and edge connectivity.
    #[arg(long)]
    both: bool,
    /// Decimal places accepted in text weights; weights are scaled to integers.
    #[arg(long, default_value_t = 0)]
    weight_decimals: u32,
    /// Input file; standard input when absent or `-`.
    input: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    /// Edge count; defaults to the model's full edge set (2n for gnm).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value = "gnm")]
    model: Model,
    #[arg(long, default_value = "random")]
    order: Order,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Allow repeated edges.
    #[arg(long)]
    multigraph: bool,
    /// Attach uniform integer weights in 0..=MAX_WEIGHT.
    #[arg(long)]
    max_weight: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long, value_enum)]
    to: Format,
    #[arg(long, default_value_t = 0)]
    weight_decimals: u32,
    #[arg(long, short)]
    output: Option<PathBuf>,
    input: Option<PathBuf>,
}

/// Failure with the exit code it maps to.
#[derive(Debug)]
enum Failure {
    /// Malformed input or arguments that contradict the input.
    Input(String),
    Loop(String),
    Invariant(String),
    Io(io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Input(_) => 2,
            Failure::Loop(_) => 3,
            Failure::Invariant(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(s) | Failure::Loop(s) | Failure::Invariant(s) => f.write_str(s),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Io(e) => Failure::Io(e),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<StreamError> for Failure {
    fn from(e: StreamError) -> Self {
        match e {
            StreamError::LoopEdge { .. } => Failure::Loop(e.to_string()),
            StreamError::Invariant(_) => Failure::Invariant(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

#[derive(Serialize)]
struct ConfigEcho {
    problem: Problem,
    k: Option<u32>,
    n: usize,
    group_size: usize,
    final_recompute: bool,
    skip_loops: bool,
    seed: u64,
}

#[derive(Serialize)]
struct MetricsReport {
    #[serde(flatten)]
    ledger: MetricsLedger,
    mean_ingest_work: f64,
}

#[derive(Serialize)]
struct RunReport {
    config: ConfigEcho,
    verdict: Verdict,
    /// The other connectivity verdict, with `--both`.
    #[serde(skip_serializing_if = "Option::is_none")]
    companion: Option<Verdict>,
    certificate_edges: usize,
    metrics: MetricsReport,
}

fn open_input(path: &Option<PathBuf>) -> Result<Box<dyn BufRead>, Failure> {
    Ok(match path {
        Some(p) if p.as_os_str() != "-" => Box::new(BufReader::new(File::open(p)?)),
        _ => Box::new(BufReader::new(io::stdin().lock())),
    })
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn kind_for(problem: Problem, k: Option<u32>) -> Result<CertificateKind, Failure> {
    let need_k = || match k {
        Some(0) => Err(Failure::Input("--k must be at least 1".into())),
        Some(k) => Ok(k),
        None => Err(Failure::Input(format!("--k is required for {problem:?}").to_lowercase())),
    };
    Ok(match problem {
        Problem::Cc => CertificateKind::SpanningForest,
        Problem::Bipartite => CertificateKind::Bipartite,
        Problem::Kvconn => CertificateKind::KConnVertex(need_k()?),
        Problem::Keconn => CertificateKind::KConnEdge(need_k()?),
        Problem::Msf => CertificateKind::Msf,
    })
}

fn run(args: &RunArgs) -> Result<RunReport, Failure> {
    let kind = kind_for(args.problem, args.k)?;
    if args.both && kind.k().is_none() {
        return Err(Failure::Input("--both applies to kvconn and keconn only".into()));
    }
    let reader = EdgeReader::open(open_input(&args.input)?, args.weight_decimals)?;
    let header = reader.header();
    if kind.is_weighted() && !header.weighted {
        return Err(Failure::Input("msf needs a weighted stream (header `n <N> weighted`)".into()));
    }
    let config = StreamConfig {
        group_size: args.group_size,
        final_recompute: args.final_recompute,
        skip_loops: args.skip_loops,
    };
    let mut state = StreamState::open(kind, header.n, config)?;
    for record in reader {
        let r = record?;
        state.ingest(r.u, r.v, r.weight)?;
    }
    let group_size = state.group_size();
    let cert = state.finalize()?;
    let verdict = postprocess(&cert).map_err(|e| Failure::Input(e.to_string()))?;
    let companion = if args.both {
        let (vertex, edge) = postprocess_both(&cert).map_err(|e| Failure::Input(e.to_string()))?;
        Some(match kind {
            CertificateKind::KConnVertex(_) => Verdict::EdgeConnectivity(edge),
            _ => Verdict::VertexConnectivity(vertex),
        })
    } else {
        None
    };
    let ledger = state.metrics();
    Ok(RunReport {
        config: ConfigEcho {
            problem: args.problem,
            k: kind.k(),
            n: header.n,
            group_size,
            final_recompute: args.final_recompute,
            skip_loops: args.skip_loops,
            seed: args.seed,
        },
        verdict,
        companion,
        certificate_edges: cert.len(),
        metrics: MetricsReport {
            mean_ingest_work: ledger.mean_ingest_work(),
            ledger,
        },
    })
}

fn describe_check(out: &mut dyn Write, what: &str, c: &ConnectivityCheck) -> io::Result<()> {
    writeln!(
        out,
        "{what}: {} (k = {}, connectivity capped at k = {})",
        if c.connected { "yes" } else { "no" },
        c.k,
        c.value
    )?;
    if let Some(w) = &c.witness {
        writeln!(out, "witness: {}", serde_json::to_string(w).expect("witness serializes"))?;
    }
    Ok(())
}

fn describe_verdict(out: &mut dyn Write, v: &Verdict) -> io::Result<()> {
    match v {
        Verdict::Components { labels, count } => {
            writeln!(out, "components: {count}")?;
            writeln!(out, "labels: {labels:?}")
        }
        Verdict::Bipartition(b) => {
            writeln!(out, "bipartite: {}", if b.is_bipartite() { "yes" } else { "no" })?;
            writeln!(out, "witness: {}", serde_json::to_string(b).expect("verdict serializes"))
        }
        Verdict::VertexConnectivity(c) => describe_check(out, "k-vertex-connected", c),
        Verdict::EdgeConnectivity(c) => describe_check(out, "k-edge-connected", c),
        Verdict::Msf { edges, weight } => {
            writeln!(out, "msf weight: {weight}")?;
            writeln!(out, "msf edges: {}", edges.len())?;
            for e in edges {
                writeln!(out, "  {} {} {}", e.u, e.v, e.weight)?;
            }
            Ok(())
        }
    }
}

fn print_report(report: &RunReport, format: MetricsFormat) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        MetricsFormat::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)
        }
        MetricsFormat::Human => {
            describe_verdict(&mut out, &report.verdict)?;
            if let Some(c) = &report.companion {
                describe_verdict(&mut out, c)?;
            }
            let m = &report.metrics.ledger;
            writeln!(out, "certificate edges: {}", report.certificate_edges)?;
            writeln!(out, "edges: {} (loops skipped: {})", m.total_edges, m.skipped_loops)?;
            writeln!(out, "peak stored edges: {} of {}", m.peak_stored_edges, m.storage_limit)?;
            writeln!(out, "recomputes: {}", m.recompute_count)?;
            writeln!(
                out,
                "work per ingest: max {}, mean {:.2}; finalize {}",
                m.max_ingest_work, report.metrics.mean_ingest_work, m.finalize_work
            )
        }
    }
}

fn generate_cmd(args: &GenerateArgs) -> Result<(), Failure> {
    let cfg = GeneratorConfig {
        n: args.n,
        m: args.m,
        model: args.model,
        order: args.order,
        seed: args.seed,
        multigraph: args.multigraph,
        max_weight: args.max_weight,
    };
    let (header, records) = generate(&cfg).map_err(|e| Failure::Input(e.to_string()))?;
    let mut writer = EdgeWriter::new(open_output(&args.output)?, args.format.into(), header)?;
    for r in &records {
        writer.write(r)?;
    }
    writer.finish()?.flush()?;
    Ok(())
}

fn convert_cmd(args: &ConvertArgs) -> Result<(), Failure> {
    let reader = EdgeReader::open(open_input(&args.input)?, args.weight_decimals)?;
    let mut writer = EdgeWriter::new(open_output(&args.output)?, args.to.into(), reader.header())?;
    for record in reader {
        writer.write(&record?)?;
    }
    writer.finish()?.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => run(args).and_then(|report| Ok(print_report(&report, args.metrics)?)),
        Command::Generate(args) => generate_cmd(args),
        Command::Convert(args) => convert_cmd(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("semistream: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
