use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde::Serialize;
use tracenum::enumerate::admits_antiparallel_strong;
use tracenum::known::KNOWN_COUNTS;
use tracenum::oracle::{self, OraclePool, Scope, Subgroup};
use tracenum::{
    admits_d_stable, admits_parallel_strong, automorphisms, normalize_base_edge, parse_edge_list,
    parse_graph6, DoubleTrace, EnumerationConfig, EnumerationOptions, Enumerator, Error, Graph,
    NamedGraph, Orientation, TraceKind,
};

#[derive(Parser)]
#[command(name = "tracenum", version, about = "Enumerate non-equivalent double traces of a graph")]
struct Cli {
    /// More log output (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or count canonical traces.
    Enumerate(EnumerateArgs),
    /// Compare the enumerator against the brute-force oracle.
    Verify(VerifyArgs),
    /// Orbit statistics of all trace sequences under a symmetry subgroup.
    Orbits(OrbitsArgs),
    /// Recompute the published strong trace counts.
    Tables(TablesArgs),
    /// Print the automorphism group.
    Automorphisms(GraphSource),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Graph in graph6 format.
    #[arg(long)]
    graph6: Option<String>,
    /// File with one `u v` edge per line.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// tetrahedron, cube, octahedron, dodecahedron, icosahedron, prism:k,
    /// pyramid:k or bipyramid:k.
    #[arg(long)]
    named: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Double,
    Strong,
    Stable,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Any,
    Parallel,
    Antiparallel,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Any => Orientation::Any,
            OrientationArg::Parallel => Orientation::Parallel,
            OrientationArg::Antiparallel => Orientation::Antiparallel,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SubgroupArg {
    Gamma,
    Aut,
    Reversal,
    Shift,
}

impl From<SubgroupArg> for Subgroup {
    fn from(s: SubgroupArg) -> Self {
        match s {
            SubgroupArg::Gamma => Subgroup::Gamma,
            SubgroupArg::Aut => Subgroup::Aut,
            SubgroupArg::Reversal => Subgroup::Reversal,
            SubgroupArg::Shift => Subgroup::Shift,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct KindArgs {
    #[arg(long, value_enum, default_value = "strong")]
    kind: KindArg,
    /// Stability parameter, required with `--kind stable`.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, value_enum, default_value = "any")]
    orientation: OrientationArg,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    kind: KindArgs,
    /// Print only the number of traces.
    #[arg(long)]
    count_only: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write traces here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (1 = sequential).
    #[arg(long)]
    jobs: Option<usize>,
    /// Skip symmetry pruning (slow; for testing).
    #[arg(long)]
    no_symmetry: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Only this kind (default: double, strong, stable 1 and stable 2).
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long)]
    d: Option<usize>,
    /// Only this orientation (default: all three).
    #[arg(long, value_enum)]
    orientation: Option<OrientationArg>,
}

#[derive(Args)]
struct OrbitsArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    kind: KindArgs,
    #[arg(long, value_enum, default_value = "gamma")]
    subgroup: SubgroupArg,
    /// Also write the orbit graph in DOT format.
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct TablesArgs {
    /// Include rows that take minutes to hours.
    #[arg(long)]
    include_slow: bool,
    #[arg(long)]
    jobs: Option<usize>,
}

/// Failure with an exit code attached.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeGuard { .. } => 3,
            Error::Parse { .. }
            | Error::LoopEdge(_)
            | Error::NoEdges
            | Error::Disconnected(_)
            | Error::Graph6(_)
            | Error::UnknownGraph(_)
            | Error::InvalidParameter(_)
            | Error::NotNormalized => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CmdResult = std::result::Result<u8, Failure>;

fn load(source: &GraphSource) -> Result<(String, Graph), Failure> {
    if let Some(text) = &source.graph6 {
        return Ok((format!("graph6:{text}"), parse_graph6(text)?));
    }
    if let Some(path) = &source.edges {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        return Ok((path.display().to_string(), parse_edge_list(&text)?));
    }
    let name = source.named.as_deref().expect("clap enforces one source");
    let named: NamedGraph = name.parse()?;
    Ok((named.to_string(), named.build()?))
}

fn kind_of(kind: KindArg, d: Option<usize>) -> Result<TraceKind, Failure> {
    match (kind, d) {
        (KindArg::Double, None) => Ok(TraceKind::Any),
        (KindArg::Strong, None) => Ok(TraceKind::Strong),
        (KindArg::Stable, Some(0)) => Err(usage("--d must be at least 1")),
        (KindArg::Stable, Some(d)) => Ok(TraceKind::Stable(d)),
        (KindArg::Stable, None) => Err(usage("--kind stable needs --d")),
        (_, Some(_)) => Err(usage("--d only applies to --kind stable")),
    }
}

fn config_of(args: &KindArgs) -> Result<EnumerationConfig, Failure> {
    Ok(EnumerationConfig::new(kind_of(args.kind, args.d)?, args.orientation.into()))
}

#[derive(Serialize)]
struct RunReport {
    graph: String,
    n: usize,
    m: usize,
    config: String,
    count: u64,
    seconds: f64,
    /// `relabeling[v]` is the new label of input vertex `v`.
    #[serde(skip_serializing_if = "Option::is_none")]
    relabeling: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

impl RunReport {
    fn text(&self) -> String {
        let mut s = format!(
            "# graph {} (n={}, m={}), {} traces: {} in {:.3}s\n",
            self.graph, self.n, self.m, self.config, self.count, self.seconds
        );
        if let Some(r) = &self.relabeling {
            let image: Vec<String> = r.iter().map(usize::to_string).collect();
            s.push_str(&format!("# relabeled input vertices to: {}\n", image.join(" ")));
        }
        if let Some(out) = &self.output {
            s.push_str(&format!("# traces written to {out}\n"));
        }
        if let Some(note) = &self.note {
            s.push_str(&format!("# note: {note}\n"));
        }
        s
    }
}

/// Explains an empty result when a structural criterion rules the setting out.
fn infeasibility_note(graph: &Graph, config: &EnumerationConfig) -> Option<String> {
    match (config.kind, config.orientation) {
        (TraceKind::Strong, Orientation::Parallel) if !admits_parallel_strong(graph) => {
            Some("no parallel strong trace exists because the graph is not Eulerian".into())
        }
        (TraceKind::Strong, Orientation::Antiparallel) => match admits_antiparallel_strong(graph) {
            Ok(false) => Some(
                "no antiparallel strong trace exists: no spanning tree leaves only even co-tree components"
                    .into(),
            ),
            _ => None,
        },
        (TraceKind::Stable(d), _) if !admits_d_stable(graph, d) => {
            Some(format!("minimum degree is below {d}"))
        }
        _ => None,
    }
}

fn cmd_enumerate(args: EnumerateArgs) -> CmdResult {
    let (name, input) = load(&args.source)?;
    let config = config_of(&args.kind)?;
    let (graph, perm) = normalize_base_edge(&input);
    let relabeling = (!perm.is_identity()).then(|| perm.image().to_vec());
    let options = EnumerationOptions {
        symmetry: !args.no_symmetry,
        jobs: args.jobs,
        ..EnumerationOptions::default()
    };
    let enumerator = Enumerator::new(&graph, config)?.options(options);
    let start = Instant::now();
    let (count, traces) = if args.count_only {
        (enumerator.count()?, None)
    } else {
        let traces = enumerator.traces()?;
        (traces.len() as u64, Some(traces))
    };
    let report = RunReport {
        graph: name,
        n: graph.n(),
        m: graph.m(),
        config: config.to_string(),
        count,
        seconds: start.elapsed().as_secs_f64(),
        relabeling,
        output: args.out.as_ref().map(|p| p.display().to_string()),
        note: if count == 0 { infeasibility_note(&graph, &config) } else { None },
    };

    let body = match args.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                report: &'a RunReport,
                #[serde(skip_serializing_if = "Option::is_none")]
                traces: Option<&'a [DoubleTrace]>,
            }
            let doc = Doc { report: &report, traces: traces.as_deref() };
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Text => match &traces {
            None => format!("{count}\n"),
            Some(traces) => traces.iter().map(|t| t.to_line() + "\n").collect(),
        },
    };
    match &args.out {
        Some(path) => fs::write(path, &body)?,
        None => io::stdout().write_all(body.as_bytes())?,
    }
    if args.format == Format::Text {
        eprint!("{}", report.text());
    } else if args.out.is_some() {
        println!("{}", serde_json::to_string(&report)?);
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let (name, input) = load(&args.source)?;
    let kinds = match args.kind {
        Some(k) => vec![kind_of(k, args.d)?],
        None if args.d.is_some() => return Err(usage("--d needs --kind stable")),
        None => vec![TraceKind::Any, TraceKind::Strong, TraceKind::Stable(1), TraceKind::Stable(2)],
    };
    let orientations = match args.orientation {
        Some(o) => vec![o.into()],
        None => vec![Orientation::Any, Orientation::Parallel, Orientation::Antiparallel],
    };
    let (graph, _) = normalize_base_edge(&input);
    let pool = OraclePool::new(&graph)?;
    println!("# verifying {name} (n={}, m={})", graph.n(), graph.m());
    let mut all_equal = true;
    for &kind in &kinds {
        for &orientation in &orientations {
            let config = EnumerationConfig::new(kind, orientation);
            let report = pool.verify(config, EnumerationOptions::default())?;
            println!("{report}");
            for t in &report.missing {
                println!("  missing {}", t.to_line());
            }
            for t in &report.extra {
                println!("  extra   {}", t.to_line());
            }
            all_equal &= report.is_equal();
        }
    }
    Ok(if all_equal { 0 } else { 1 })
}

fn cmd_orbits(args: OrbitsArgs) -> CmdResult {
    let (name, graph) = load(&args.source)?;
    let config = config_of(&args.kind)?;
    let traces = oracle::brute_enumerate(&graph, config, Scope::AllStarts)?;
    let auts = oracle::brute_automorphisms(&graph);
    let subgroup: Subgroup = args.subgroup.into();
    let report = oracle::orbit_partition(&traces, &auts, subgroup)?;
    if let Some(path) = &args.dot {
        fs::write(path, oracle::emit_orbit_graph(&traces, &auts, subgroup)?)?;
        info!("orbit graph written to {}", path.display());
    }
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Text => {
            println!("# {name}: {} {config} sequences, subgroup {subgroup} of order {}", report.total, report.group_order);
            println!("{}", report.summary());
        }
    }
    Ok(0)
}

fn cmd_tables(args: TablesArgs) -> CmdResult {
    let options = EnumerationOptions { jobs: args.jobs, ..EnumerationOptions::default() };
    let mut failures = 0;
    println!("{:<14} {:<20} {:>10} {:>10} {:>9}  result", "graph", "setting", "expected", "computed", "seconds");
    for row in KNOWN_COUNTS.iter().filter(|r| args.include_slow || !r.slow) {
        let graph = row.graph.build()?;
        let start = Instant::now();
        let count = Enumerator::new(&graph, row.config)?.options(options).count()?;
        let ok = count == row.expected;
        failures += usize::from(!ok);
        println!(
            "{:<14} {:<20} {:>10} {:>10} {:>9.3}  {}",
            row.graph.to_string(),
            row.config.to_string(),
            row.expected,
            count,
            start.elapsed().as_secs_f64(),
            if ok { "pass" } else { "FAIL" }
        );
    }
    Ok(if failures == 0 { 0 } else { 1 })
}

fn cmd_automorphisms(source: GraphSource) -> CmdResult {
    let (_, graph) = load(&source)?;
    print!("{}", automorphisms(&graph).to_text());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let result = match cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Orbits(a) => cmd_orbits(a),
        Command::Tables(a) => cmd_tables(a),
        Command::Automorphisms(a) => cmd_automorphisms(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
