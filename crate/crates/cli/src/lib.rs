//! Command implementations behind the `equirefine` binary.
//!
//! Exit codes: 0 success, 1 negative answer (not equitable, not isomorphic,
//! no witness found), 2 bad input, 3 refinement hit its step cap.

use clap::{Args, Parser, Subcommand, ValueEnum};
use equirefine::analysis::{colorings_isomorphic, equitable_violation};
use equirefine::graph::{random_graph, Graph};
use equirefine::io::{
    coloring_vertex_count, emit_coloring, emit_dot, emit_edge_list, parse_coloring, parse_dimacs,
    parse_edge_list, TraceDocument,
};
use equirefine::oracle::{search, SearchConfig, StartSpace, ViolationKind};
use equirefine::refine::{default_max_iters, refine_to_fixpoint, zero_coloring, Coloring};
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "equirefine",
    version,
    about = "Iterative color refinement to the stable equitable partition"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Refine a graph's coloring until it stops changing
    Refine(RefineArgs),
    /// Check whether a coloring is equitable
    Verify(VerifyArgs),
    /// Check whether two colorings differ only by a renaming of colors
    Compare(CompareArgs),
    /// Search small graphs for a start whose first steps merge color classes
    Search(SearchArgs),
    /// Write a random G(n, p) graph as an edge list
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
}

impl GraphFormat {
    /// `.dimacs`, `.col` and `.clq` files are DIMACS; anything else is an
    /// edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("dimacs" | "col" | "clq") => GraphFormat::Dimacs,
            _ => GraphFormat::EdgeList,
        }
    }

    fn name(self) -> &'static str {
        match self {
            GraphFormat::EdgeList => "edge-list",
            GraphFormat::Dimacs => "dimacs",
        }
    }
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph file
    pub graph: PathBuf,
    /// Input format; inferred from the extension when omitted
    #[arg(long, value_enum)]
    pub format: Option<GraphFormat>,
}

impl GraphInput {
    fn resolved_format(&self) -> GraphFormat {
        self.format
            .unwrap_or_else(|| GraphFormat::from_path(&self.graph))
    }
}

#[derive(Debug, Args)]
pub struct RefineArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// Initial coloring file ("vertex color" lines); zero start when omitted
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    /// Step cap; defaults to n + 2
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Subdivide every edge with a virtual vertex before refining
    #[arg(long)]
    pub expand_edges: bool,
    /// Trace output path; defaults to <graph>.trace.json
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// DOT rendering of the final coloring
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Recorded in the trace for reproduction; refinement itself is
    /// deterministic
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long)]
    pub coloring: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    /// Vertex count; inferred from the first file when omitted
    #[arg(long)]
    pub vertices: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchKind {
    /// Two differently colored vertices share a color one step later
    Merge,
    /// The palette shrinks across a step
    PaletteDecrease,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 5)]
    pub max_n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub attempts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SearchKind::Merge)]
    pub kind: SearchKind,
    /// Only try the all-zero start
    #[arg(long)]
    pub zero_start: bool,
    /// Directory receiving graph.txt, coloring.txt and replay.txt
    #[arg(long, default_value = "witness")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
pub struct InputError(String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input_error(path: &Path, err: impl fmt::Display) -> InputError {
    InputError(format!("{}: {err}", path.display()))
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| input_error(path, e))
}

pub fn load_graph(input: &GraphInput) -> Result<Graph, InputError> {
    let text = read(&input.graph)?;
    match input.resolved_format() {
        GraphFormat::EdgeList => parse_edge_list(&text),
        GraphFormat::Dimacs => parse_dimacs(&text),
    }
    .map_err(|e| input_error(&input.graph, e))
}

fn load_coloring(path: &Path, vertex_count: usize) -> Result<Coloring, InputError> {
    parse_coloring(&read(path)?, vertex_count).map_err(|e| input_error(path, e))
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run never leaves a partial file behind.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), InputError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| input_error(path, e))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| input_error(path, e))?;
    tmp.persist(path).map_err(|e| input_error(path, e.error))?;
    Ok(())
}

fn default_trace_path(graph: &Path) -> PathBuf {
    let mut name: OsString = graph.as_os_str().to_owned();
    name.push(".trace.json");
    PathBuf::from(name)
}

pub fn cmd_refine(args: &RefineArgs, out: &mut dyn Write) -> Result<i32, InputError> {
    let original = load_graph(&args.input)?;
    let expanded = args.expand_edges.then(|| original.expand_edges());
    let g = expanded.as_ref().map_or(&original, |x| &x.graph);

    let initial = match &args.coloring {
        Some(path) => load_coloring(path, g.vertex_count())?,
        None => zero_coloring(g),
    };
    let max_iters = args
        .max_iters
        .unwrap_or_else(|| default_max_iters(g.vertex_count()));
    let trace =
        refine_to_fixpoint(g, &initial, max_iters).map_err(|e| InputError(e.to_string()))?;

    let mut run = BTreeMap::new();
    run.insert("command".to_string(), "refine".to_string());
    run.insert("graph".to_string(), args.input.graph.display().to_string());
    run.insert(
        "format".to_string(),
        args.input.resolved_format().name().to_string(),
    );
    run.insert(
        "coloring".to_string(),
        args.coloring
            .as_ref()
            .map_or("zero".to_string(), |p| p.display().to_string()),
    );
    run.insert("max_iters".to_string(), max_iters.to_string());
    run.insert("expand_edges".to_string(), args.expand_edges.to_string());
    run.insert("seed".to_string(), args.seed.to_string());

    let mut doc = TraceDocument::new(&trace, g).with_run(run);
    if let Some(x) = &expanded {
        doc = doc.with_edge_colors(&trace, x);
    }
    let trace_path = args
        .trace
        .clone()
        .unwrap_or_else(|| default_trace_path(&args.input.graph));
    let dot = args
        .dot
        .as_ref()
        .map(|p| (p, emit_dot(g, trace.final_coloring())));
    write_atomic(&trace_path, &doc.to_text())?;
    if let Some((path, text)) = dot {
        write_atomic(path, &text)?;
    }

    let converged = match trace.converged_at {
        Some(t) => t.to_string(),
        None => "none".to_string(),
    };
    writeln!(
        out,
        "n={} m={} K_final={} converged_at={}",
        g.vertex_count(),
        g.edge_count(),
        trace.final_coloring().palette_size(),
        converged
    )
    .map_err(|e| InputError(e.to_string()))?;
    Ok(if trace.converged() {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    })
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, InputError> {
    let g = load_graph(&args.input)?;
    let c = load_coloring(&args.coloring, g.vertex_count())?;
    let result = match equitable_violation(&g, &c) {
        None => writeln!(out, "equitable").map(|_| EXIT_OK),
        Some((u, v)) => writeln!(out, "not equitable ({u},{v})").map(|_| EXIT_NEGATIVE),
    };
    result.map_err(|e| InputError(e.to_string()))
}

pub fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> Result<i32, InputError> {
    let n = match args.vertices {
        Some(n) => n,
        None => {
            coloring_vertex_count(&read(&args.first)?).map_err(|e| input_error(&args.first, e))?
        }
    };
    let a = load_coloring(&args.first, n)?;
    let b = load_coloring(&args.second, n)?;
    let witness = colorings_isomorphic(&a, &b).map_err(|e| InputError(e.to_string()))?;
    let result = match witness {
        Some(w) => {
            let pairs: Vec<String> = w
                .forward()
                .iter()
                .enumerate()
                .map(|(from, to)| format!("{from}->{to}"))
                .collect();
            writeln!(out, "{}", pairs.join(" ")).map(|_| EXIT_OK)
        }
        None => writeln!(out, "not isomorphic").map(|_| EXIT_NEGATIVE),
    };
    result.map_err(|e| InputError(e.to_string()))
}

pub fn cmd_search(args: &SearchArgs, out: &mut dyn Write) -> Result<i32, InputError> {
    if args.max_n < 2 {
        return Err(InputError("--max-n must be at least 2".to_string()));
    }
    let config = SearchConfig {
        max_n: args.max_n,
        seed: args.seed,
        attempts: args.attempts,
        start: if args.zero_start {
            StartSpace::Zero
        } else {
            StartSpace::RandomNonZero
        },
        kind: match args.kind {
            SearchKind::Merge => ViolationKind::RefinementFailure,
            SearchKind::PaletteDecrease => ViolationKind::PaletteDecrease,
        },
    };
    let io_err = |e: std::io::Error| InputError(e.to_string());
    let Some(w) = search(&config) else {
        writeln!(out, "no witness found").map_err(io_err)?;
        return Ok(EXIT_NEGATIVE);
    };
    fs::create_dir_all(&args.out).map_err(|e| input_error(&args.out, e))?;
    let (u, v) = w.merged_pair;
    let replay = format!(
        "equirefine refine graph.txt --coloring coloring.txt\n\
         vertices {u} and {v} have different colors after step {step} \
         and share a color after step {next}\n",
        step = w.step,
        next = w.step + 1,
    );
    write_atomic(&args.out.join("graph.txt"), &emit_edge_list(&w.graph))?;
    write_atomic(&args.out.join("coloring.txt"), &emit_coloring(&w.initial))?;
    write_atomic(&args.out.join("replay.txt"), &replay)?;
    writeln!(
        out,
        "witness n={} m={} step={} merged=({u},{v})",
        w.graph.vertex_count(),
        w.graph.edge_count(),
        w.step
    )
    .map_err(io_err)?;
    Ok(EXIT_OK)
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32, InputError> {
    let g = random_graph(args.n, args.p, args.seed).map_err(|e| InputError(e.to_string()))?;
    let text = emit_edge_list(&g);
    match &args.out {
        Some(path) => write_atomic(path, &text)?,
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| InputError(e.to_string()))?,
    }
    Ok(EXIT_OK)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Refine(a) => cmd_refine(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Search(a) => cmd_search(a, out),
        Command::Gen(a) => cmd_gen(a, out),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_INPUT
    })
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli, out, err),
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{}", e.render());
            EXIT_INPUT
        }
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            EXIT_OK
        }
    }
}
