use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use tempsep::generate::{generate, GenParams, GraphClass};
use tempsep::reductions::{
    reduce_disc_sc, reduce_disc_sc_k, reduce_multiway_cut, reduce_set_cover, reduce_vertex_cover,
    DiscScInstance, MultiwayCutInstance, ReducedInstance, SetCoverInstance, VertexCoverInstance,
};
use tempsep::structured::{is_treelike, rts, tree_separator};
use tempsep::{
    approx_separator_deadline_threads, approx_separator_tau, min_separator_exact, Deadline, Error,
    PathQuery, SeparatorResult, TemporalGraph,
};

/// Exact and approximate temporal separators.
#[derive(Parser)]
#[command(name = "tempsep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a separator query on a `tg` instance file.
    Solve(SolveArgs),
    /// Compile a covering instance into a separator instance.
    Reduce(ReduceArgs),
    /// Write a seeded random instance.
    Gen(GenArgs),
}

#[derive(clap::Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long)]
    source: Option<usize>,
    #[arg(long)]
    sink: Option<usize>,
    /// A positive integer or `inf`.
    #[arg(long)]
    deadline: Option<Deadline>,
    #[arg(long)]
    strict: bool,
    /// Read source, sink, deadline and strictness from a query file instead.
    #[arg(long, conflicts_with_all = ["source", "sink", "deadline", "strict"])]
    query: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SolveMode::Auto)]
    mode: SolveMode,
    /// Report wall time in milliseconds.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMode {
    Exact,
    Approx,
    Rts,
    Tree,
    Auto,
}

impl SolveMode {
    fn as_str(self) -> &'static str {
        match self {
            SolveMode::Exact => "exact",
            SolveMode::Approx => "approx",
            SolveMode::Rts => "rts",
            SolveMode::Tree => "tree",
            SolveMode::Auto => "auto",
        }
    }
}

#[derive(clap::Args)]
struct ReduceArgs {
    #[arg(value_enum)]
    kind: ReduceKind,
    #[arg(long = "in")]
    input: PathBuf,
    /// Deadline for set-cover and the disc problems; the other reductions fix their own.
    #[arg(long, default_value_t = 1)]
    deadline: u32,
    /// Segment length bound for disc-sc-k.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    SetCover,
    VertexCover,
    MultiwayCut,
    DiscSc,
    DiscScK,
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(value_parser = parse_class)]
    class: GraphClass,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    tau: u32,
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_class(s: &str) -> Result<GraphClass, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// One line of JSON per solve; keys stay in this order.
#[derive(Serialize)]
struct RunRecord {
    command: String,
    digest: String,
    mode: String,
    separator: Option<Vec<usize>>,
    size: Option<usize>,
    guarantee: Option<u64>,
    feasible: bool,
    wall_ms: Option<f64>,
}

enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Reduce(args) => reduce(args),
        Command::Gen(args) => gen(args),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(1)
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error[E_IO]: {}: {e}", path.display());
            ExitCode::from(1)
        }
    }
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn threads() -> usize {
    std::env::var("TEMPSEP_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or(1)
}

fn solve(args: SolveArgs) -> Result<ExitCode, Failure> {
    let text = read(&args.file)?;
    let digest = format!("{:x}", Sha256::digest(text.as_bytes()));
    let g: TemporalGraph = text.parse()?;
    let q = match &args.query {
        Some(path) => read(path)?.parse()?,
        None => {
            let missing = |flag: &str| Error::PreconditionViolated(format!("missing --{flag}"));
            PathQuery::new(
                args.source.ok_or_else(|| missing("source"))?,
                args.sink.ok_or_else(|| missing("sink"))?,
                args.deadline.ok_or_else(|| missing("deadline"))?,
                args.strict,
            )?
        }
    };
    let start = Instant::now();
    let result = run_mode(&g, &q, args.mode);
    let wall_ms = args.timing.then(|| start.elapsed().as_secs_f64() * 1000.0);
    let (record, code) = match result {
        Ok(r) => (
            RunRecord {
                command: command_echo(),
                digest,
                mode: r.mode.as_str().into(),
                size: Some(r.size()),
                separator: Some(r.separator.into_iter().collect()),
                guarantee: r.guarantee,
                feasible: true,
                wall_ms,
            },
            ExitCode::SUCCESS,
        ),
        Err(e @ Error::Infeasible { .. }) => {
            eprintln!("error[{}]: {e}", e.code());
            (
                RunRecord {
                    command: command_echo(),
                    digest,
                    mode: args.mode.as_str().into(),
                    separator: None,
                    size: None,
                    guarantee: None,
                    feasible: false,
                    wall_ms,
                },
                ExitCode::from(2),
            )
        }
        Err(e) => return Err(e.into()),
    };
    println!("{}", serde_json::to_string(&record).expect("record serializes"));
    Ok(code)
}

fn run_mode(g: &TemporalGraph, q: &PathQuery, mode: SolveMode) -> tempsep::Result<SeparatorResult> {
    match mode {
        SolveMode::Exact => min_separator_exact(g, q),
        SolveMode::Rts => rts(g, q),
        SolveMode::Tree => tree_separator(g, q),
        SolveMode::Approx => approx(g, q),
        SolveMode::Auto => {
            if is_treelike(g, q.source, q.sink) {
                return tree_separator(g, q);
            }
            match rts(g, q) {
                Err(Error::WidthExceeded) => {}
                other => return other,
            }
            if g.n() <= 20 {
                min_separator_exact(g, q)
            } else {
                approx(g, q)
            }
        }
    }
}

fn approx(g: &TemporalGraph, q: &PathQuery) -> tempsep::Result<SeparatorResult> {
    let t = q.deadline.resolve(g.tau());
    if t >= g.tau() {
        approx_separator_tau(g, q.source, q.sink, q.strict)
    } else {
        approx_separator_deadline_threads(g, q.source, q.sink, t, q.strict, threads())
    }
}

fn reduce(args: ReduceArgs) -> Result<ExitCode, Failure> {
    let text = read(&args.input)?;
    let t = args.deadline;
    let mut pd = None;
    let reduced: ReducedInstance = match args.kind {
        ReduceKind::SetCover => reduce_set_cover(&text.parse::<SetCoverInstance>()?, t)?,
        ReduceKind::VertexCover => reduce_vertex_cover(&text.parse::<VertexCoverInstance>()?)?,
        ReduceKind::MultiwayCut => reduce_multiway_cut(&text.parse::<MultiwayCutInstance>()?)?,
        ReduceKind::DiscSc => reduce_disc_sc(&text.parse::<DiscScInstance>()?, t)?,
        ReduceKind::DiscScK => {
            let k = args
                .k
                .ok_or_else(|| Error::PreconditionViolated("disc-sc-k needs --k".into()))?;
            let r = reduce_disc_sc_k(&text.parse::<DiscScInstance>()?, t, k)?;
            pd = Some((r.decomposition, r.width));
            r.reduced
        }
    };
    let sidecar = |ext: &str| {
        let mut name = args.out.clone().into_os_string();
        name.push(ext);
        PathBuf::from(name)
    };
    write(&args.out, &reduced.graph.to_string())?;
    write(&sidecar(".query"), &format!("{}\n", reduced.query))?;
    println!(
        "vertices {} lifetime {} edges {}",
        reduced.graph.n(),
        reduced.graph.tau(),
        reduced.graph.edge_count()
    );
    println!("{}", reduced.query);
    if let Some((pd, width)) = pd {
        write(&sidecar(".pd"), &pd.to_string())?;
        println!("width {width}");
    }
    Ok(ExitCode::SUCCESS)
}

fn gen(args: GenArgs) -> Result<ExitCode, Failure> {
    let params = GenParams {
        n: args.n,
        tau: args.tau,
        p: args.p,
        seed: args.seed,
    };
    let text = generate(args.class, params)?.to_string();
    match &args.out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
