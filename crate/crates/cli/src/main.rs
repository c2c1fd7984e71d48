use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use spread_core::bounds::{self, BoundsCell, TABLE_MAX};
use spread_core::codec::{decode_any, decode_lines, graph6_decode, graph6_encode, sparse6_decode, sparse6_encode};
use spread_core::constructions::Family;
use spread_core::format::raw;
use spread_core::search::{exhaustive, hill_climb, ClimbParams, Space};
use spread_core::spectral::{decompose_with_tolerance, Solver, RESIDUAL_TOL};
use spread_core::verify::{self, Suite, VerifyOptions};
use spread_core::{LoopedGraph, SpreadQuery};

const FAMILY_HELP: &str = "\
Construction names:
  p4*                          path on 4 vertices, loops on both ends
  q3*                          ½(K⊗H_4 + J_8), 8 vertices
  clique-union:j=J             K_{J+2} ∪ K*_{J+1}
  half-closed-bipartite:i=I    K_{(I+1)*,I}, loops on the larger side
  clique-loops:n=N,t=T         K_N with loops on T vertices
  hadamard-equality:k=K        ½(K⊗H_{2K} + J_{4K}), K a power of two";

#[derive(Parser)]
#[command(name = "spread", version, about = "Spectral gaps λ_{i+1} − λ_{n−j} of graphs with loops", after_help = FAMILY_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the degrees and the adjacency spectrum of a graph
    Spectrum(SpectrumArgs),
    /// Print λ_{i+1} − λ_{n−j} and its ratio to n
    Spread(SpreadArgs),
    /// Build a named construction and print it as sparse6
    #[command(after_help = FAMILY_HELP)]
    Construct(ConstructArgs),
    /// Print the table of lower and upper bounds on s_{i,j}
    BoundsTable(TableArgs),
    /// Maximize the (i,j)-spread over all graphs on n vertices
    Search(SearchArgs),
    /// Run verification suites; exits nonzero if any check fails
    Verify(VerifyArgs),
    /// Re-encode a graph as sparse6 or graph6
    Encode(EncodeArgs),
    /// Decode a sparse6 or graph6 string and list its edges
    Decode(DecodeArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// sparse6 string (leading ':')
    #[arg(long)]
    sparse6: Option<String>,
    /// graph6 string
    #[arg(long)]
    graph6: Option<String>,
    /// File with one sparse6 or graph6 graph per line
    #[arg(long)]
    file: Option<PathBuf>,
    /// Named construction, e.g. `clique-union:j=3` (see `spread construct --help`)
    #[arg(long)]
    construct: Option<String>,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    source: Source,
    /// Replace each vertex by an independent set of this size
    #[arg(long)]
    blowup: Option<usize>,
}

impl GraphArgs {
    fn load(&self) -> Result<Vec<LoopedGraph>> {
        let s = &self.source;
        let graphs = if let Some(text) = &s.sparse6 {
            vec![sparse6_decode(text)?]
        } else if let Some(text) = &s.graph6 {
            vec![graph6_decode(text)?]
        } else if let Some(path) = &s.file {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let graphs = decode_lines(&text)?;
            if graphs.is_empty() {
                bail!("{} contains no graphs", path.display());
            }
            graphs
        } else if let Some(spec) = &s.construct {
            vec![spec.parse::<Family>()?.build()?]
        } else {
            unreachable!("clap requires one source")
        };
        match self.blowup {
            Some(t) => Ok(graphs.iter().map(|g| g.blowup(t)).collect::<Result<_, _>>()?),
            None => Ok(graphs),
        }
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let tol: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if tol >= 1e-14 && tol.is_finite() {
        Ok(tol)
    } else {
        Err("tolerance must be a finite number >= 1e-14".to_string())
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Relative residual tolerance for the eigendecomposition
    #[arg(long, default_value_t = RESIDUAL_TOL, value_parser = parse_tol)]
    tol: f64,
}

#[derive(Args)]
struct SpreadArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    i: usize,
    #[arg(long)]
    j: usize,
    #[arg(long, default_value_t = RESIDUAL_TOL, value_parser = parse_tol)]
    tol: f64,
}

#[derive(Args)]
struct ConstructArgs {
    /// Construction name with parameters
    name: String,
    #[arg(long)]
    blowup: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Markdown,
}

#[derive(Args)]
struct TableArgs {
    /// Use closed forms only (no certificate graphs); allows indices beyond 4
    #[arg(long)]
    formulas_only: bool,
    #[arg(long, default_value_t = TABLE_MAX)]
    imax: usize,
    #[arg(long, default_value_t = TABLE_MAX)]
    jmax: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    format: TableFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    /// L_n: loops allowed
    Looped,
    /// S_n: no loops
    Simple,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Exhaustive when at most 2^24 graphs, hill climbing otherwise
    Auto,
    Exhaustive,
    HillClimb,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    i: usize,
    #[arg(long)]
    j: usize,
    #[arg(long, value_enum, default_value_t = SpaceArg::Looped)]
    space: SpaceArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Worker threads (default: all cores)
    #[arg(long, env = "SPREAD_THREADS")]
    threads: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    /// Steps per restart
    #[arg(long, default_value_t = 200)]
    iters: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: tables, hadamard, uniqueness, blowup, interlacing, families,
    /// loop-removal, upper-bounds, codec, determinism, all
    #[arg(long, default_value = "all")]
    suite: String,
    /// Hadamard parameters to check (repeatable); default 1, 2, 4, 8
    #[arg(long = "k")]
    k: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodecFormat {
    Sparse6,
    Graph6,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_enum, default_value_t = CodecFormat::Sparse6)]
    format: CodecFormat,
}

#[derive(Args)]
struct DecodeArgs {
    /// sparse6 (leading ':') or graph6 string
    input: String,
}

fn header(graphs: &[LoopedGraph], k: usize) {
    if graphs.len() > 1 {
        println!("# graph {}", k + 1);
    }
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<()> {
    let graphs = args.graph.load()?;
    for (k, g) in graphs.iter().enumerate() {
        header(&graphs, k);
        let s = decompose_with_tolerance(&g.to_matrix(), Solver::Tridiagonal, false, args.tol)?;
        let profile = g.degree_profile();
        let degrees: Vec<String> = profile.degrees.iter().map(ToString::to_string).collect();
        println!("n: {}", g.n());
        println!("edges: {}", g.edge_count());
        println!("loops: {}", g.loop_count());
        println!("degrees: {}", degrees.join(" "));
        println!("average degree: {}", raw(profile.average));
        println!("eigenvalues:");
        for (idx, x) in s.values().iter().enumerate() {
            println!("  λ{} = {}", idx + 1, raw(*x));
        }
        println!("residual: {:.3e}", s.residual());
    }
    Ok(())
}

fn cmd_spread(args: &SpreadArgs) -> Result<()> {
    let graphs = args.graph.load()?;
    let q = SpreadQuery::new(args.i, args.j);
    for (k, g) in graphs.iter().enumerate() {
        header(&graphs, k);
        q.validate(g.n())?;
        let s = decompose_with_tolerance(&g.to_matrix(), Solver::Tridiagonal, false, args.tol)?;
        let value = s.spread(q)?;
        println!("n: {}", g.n());
        println!("λ{} − λ{}: {}", q.i + 1, g.n() - q.j, raw(value));
        println!("ratio: {}", raw(value / g.n() as f64));
    }
    Ok(())
}

fn cmd_construct(args: &ConstructArgs) -> Result<()> {
    let family: Family = args.name.parse()?;
    let mut g = family.build()?;
    if let Some(t) = args.blowup {
        g = g.blowup(t)?;
    }
    println!("name: {}", family.label());
    println!("n: {}", g.n());
    println!("edges: {}", g.edge_count());
    println!("loops: {}", g.loop_count());
    println!("sparse6: {}", sparse6_encode(&g));
    Ok(())
}

fn cmd_bounds_table(args: &TableArgs) -> Result<()> {
    let cells: Vec<BoundsCell> = if args.formulas_only {
        bounds::formula_table(args.imax, args.jmax)
    } else {
        if args.imax > TABLE_MAX || args.jmax > TABLE_MAX {
            bail!("certificates exist only for i, j <= {TABLE_MAX}; use --formulas-only for larger tables");
        }
        bounds::best_known_table(args.imax, args.jmax)?
    };
    match args.format {
        TableFormat::Text => {
            print!("{}", bounds::render_text(&cells));
            println!("cells show lower/upper; a single symbol is an exact value");
        }
        TableFormat::Csv => print!("{}", bounds::render_csv(&cells)?),
        TableFormat::Markdown => print!("{}", bounds::render_markdown(&cells)),
    }
    Ok(())
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn cmd_search(args: &SearchArgs) -> Result<()> {
    let space = match args.space {
        SpaceArg::Looped => Space::Looped,
        SpaceArg::Simple => Space::Simple,
    };
    let q = SpreadQuery::new(args.i, args.j);
    let threads = args.threads.unwrap_or_else(default_threads);
    let exhaustive_method = match args.method {
        MethodArg::Exhaustive => true,
        MethodArg::HillClimb => false,
        MethodArg::Auto => space.positions(args.n).len() <= 24,
    };
    let record = if exhaustive_method {
        exhaustive(args.n, q, space, threads)?
    } else {
        let params = ClimbParams {
            seed: args.seed,
            restarts: args.restarts,
            iters: args.iters,
            threads,
        };
        hill_climb(args.n, q, space, params)?
    };
    println!("method: {}", record.method);
    println!("value: {}", raw(record.best_value));
    println!("ratio: {}", raw(record.best_ratio));
    println!("work: {}", record.work);
    println!("witnesses: {}", record.witnesses.len());
    for w in &record.witnesses {
        println!("  {}", sparse6_encode(w));
    }
    println!("record: {}", record.to_line());
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let suite: Suite = args.suite.parse().map_err(anyhow::Error::msg)?;
    let mut opts = VerifyOptions {
        seed: args.seed,
        ..VerifyOptions::default()
    };
    if !args.k.is_empty() {
        opts.hadamard_ks.clone_from(&args.k);
    }
    let report = verify::run(suite, &opts);
    print!("{}", report.render());
    Ok(report.passed())
}

fn cmd_encode(args: &EncodeArgs) -> Result<()> {
    for g in args.graph.load()? {
        match args.format {
            CodecFormat::Sparse6 => println!("{}", sparse6_encode(&g)),
            CodecFormat::Graph6 => println!("{}", graph6_encode(&g)?),
        }
    }
    Ok(())
}

fn cmd_decode(args: &DecodeArgs) -> Result<()> {
    let g = decode_any(&args.input)?;
    let format = if args.input.trim_start().starts_with(':') || args.input.contains(">>sparse6<<") {
        "sparse6"
    } else {
        "graph6"
    };
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
    let loops: Vec<String> = g.loops().map(|v| v.to_string()).collect();
    println!("format: {format}");
    println!("n: {}", g.n());
    println!("edges ({}): {}", edges.len(), edges.join(" "));
    println!("loops ({}): {}", loops.len(), loops.join(" "));
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a)?,
        Command::Spread(a) => cmd_spread(a)?,
        Command::Construct(a) => cmd_construct(a)?,
        Command::BoundsTable(a) => cmd_bounds_table(a)?,
        Command::Search(a) => cmd_search(a)?,
        Command::Verify(a) => return cmd_verify(a),
        Command::Encode(a) => cmd_encode(a)?,
        Command::Decode(a) => cmd_decode(a)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
