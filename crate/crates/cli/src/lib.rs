//! `setminer` command-line frontend. [`run`] parses arguments, dispatches to
//! the library and returns the process exit code: 0 on success, 1 on usage
//! errors, 2 on runtime errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use setminer::benchkit::{
    load_input, run_pipeline, scaling_sweep, with_threads, write_csv, BenchReport, InputSpec, KernelSpec,
    PipelineConfig,
};
use setminer::cliqueminer::{canonicalize, list_k_cliques, maximal_cliques, write_cliques, BkOptions, ParallelMode, Sink};
use setminer::graphlearn::{
    evaluate_link_prediction, jarvis_patrick, make_split, similarity, write_predictions, SimilarityMeasure,
};
use setminer::graphstore::{build_graph, erdos_renyi_edges, kronecker_edges, write_edge_list, EdgeList, SetGraph};
use setminer::ordering::{compute_rank, OrderKind, DEFAULT_EPSILON};
use setminer::setcore::{SetKind, SortedArraySet, VertexId, VertexSet};
use setminer::with_set_kind;

#[derive(Parser, Debug)]
#[command(name = "setminer", version, about = "Set-centric graph mining: generators, orderings, kernels and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a synthetic edge list.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Compute a vertex order and write the rank of every vertex.
    Order(OrderCommand),
    /// Run a mining kernel and report its pattern count and timings.
    #[command(subcommand)]
    Mine(MineCommand),
    /// Vertex similarity, link prediction and clustering.
    #[command(subcommand)]
    Learn(LearnCommand),
    /// Repeated, timed pipeline runs.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Erdős-Rényi G(n, p).
    Er {
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'p', long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kronecker power-law graph with 2^scale vertices.
    Kron {
        #[arg(long)]
        scale: u32,
        #[arg(long, default_value_t = 16)]
        edge_factor: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct GraphArgs {
    /// Edge-list file, or a generator spec such as `er:n=1000,p=0.01` or
    /// `kron:scale=12,edge_factor=16`.
    #[arg(long)]
    input: InputSpec,
    /// Neighborhood set implementation.
    #[arg(long = "set", default_value = "hybrid")]
    set_impl: SetKind,
    /// Worker threads; defaults to every available core.
    #[arg(long, env = "SETMINER_THREADS")]
    threads: Option<usize>,
    /// Seed for generator inputs and random splits.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct OrderArgs {
    /// none, deg, dgr or adg.
    #[arg(long, default_value = "dgr")]
    order: OrderKind,
    /// Slack of the adg order.
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    #[arg(long, default_value_t = 1)]
    repetitions: usize,
}

#[derive(Args, Debug, Clone)]
struct BkArgs {
    /// Disable pivoting.
    #[arg(long)]
    no_pivot: bool,
    /// Disable the per-seed subgraph.
    #[arg(long)]
    no_subgraph_h: bool,
}

#[derive(Args, Debug)]
struct OrderCommand {
    /// deg, dgr or adg.
    #[arg(value_parser = ["deg", "dgr", "adg"])]
    kind: String,
    #[arg(long)]
    epsilon: Option<f64>,
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand, Debug)]
enum MineCommand {
    /// Maximal cliques (Bron-Kerbosch).
    Mc {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        order: OrderArgs,
        #[command(flatten)]
        bk: BkArgs,
        /// Also write every clique to this file, one per line.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// k-clique count.
    Kclique {
        #[arg(short = 'k')]
        k: usize,
        #[arg(long, default_value = "vertex")]
        mode: ParallelMode,
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long)]
        emit: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// k-cliques with a non-empty star set.
    Kcliquestar {
        #[arg(short = 'k')]
        k: usize,
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Triangle count.
    Triangles {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Number of vertices in the k-core; the innermost core without -k.
    Kcore {
        #[arg(short = 'k')]
        k: Option<u32>,
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand, Debug)]
enum LearnCommand {
    /// Similarity of one vertex pair.
    Sim {
        #[arg(short = 'u')]
        u: VertexId,
        #[arg(short = 'v')]
        v: VertexId,
        /// One measure; every measure when absent.
        #[arg(long)]
        measure: Option<SimilarityMeasure>,
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Hold out edges and predict them back.
    Linkpred {
        #[arg(long, default_value = "jaccard")]
        measure: SimilarityMeasure,
        /// Fraction of edges held out.
        #[arg(long, default_value_t = 0.1)]
        fraction: f64,
        /// Also write the predicted pairs as `u v score` lines.
        #[arg(long)]
        predictions: Option<PathBuf>,
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Jarvis-Patrick clustering.
    Jp {
        /// Minimum common neighbors for an edge to be kept.
        #[arg(long, default_value_t = 1)]
        tau: usize,
        /// Also write `vertex label` lines.
        #[arg(long)]
        labels: Option<PathBuf>,
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
struct KernelArgs {
    /// mc, kclique, kcliquestar, triangles, kcore, jp or linkpred.
    #[arg(long, value_parser = ["mc", "kclique", "kcliquestar", "triangles", "kcore", "jp", "linkpred"])]
    kernel: String,
    #[arg(short = 'k')]
    k: Option<usize>,
    #[arg(long)]
    mode: Option<ParallelMode>,
    #[arg(long)]
    tau: Option<usize>,
    #[arg(long)]
    measure: Option<SimilarityMeasure>,
    #[arg(long)]
    fraction: Option<f64>,
    #[command(flatten)]
    bk: BkArgs,
    #[command(flatten)]
    order: OrderArgs,
}

#[derive(Subcommand, Debug)]
enum BenchCommand {
    /// Timed repetitions of one configuration.
    Run {
        #[command(flatten)]
        kernel: KernelArgs,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = setminer::benchkit::DEFAULT_REPETITIONS)]
        repetitions: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The same configuration at several thread counts.
    Sweep {
        #[command(flatten)]
        kernel: KernelArgs,
        #[command(flatten)]
        graph: GraphArgs,
        /// Comma-separated thread counts.
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
        thread_counts: Vec<usize>,
        #[arg(long, default_value_t = setminer::benchkit::DEFAULT_REPETITIONS)]
        repetitions: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

enum CliError {
    Usage(String),
    Runtime(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

type CliResult<T = ()> = Result<T, CliError>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(CliError::Runtime(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> CliResult {
    match command {
        Command::Gen(cmd) => generate(cmd, stdout),
        Command::Order(cmd) => order(cmd, stdout),
        Command::Mine(cmd) => mine(cmd, stdout),
        Command::Learn(cmd) => learn(cmd, stdout),
        Command::Bench(cmd) => bench(cmd, stdout),
    }
}

/// Writes through `--out` when given, otherwise to stdout.
fn with_output(out: Option<&Path>, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> CliResult) -> CliResult {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| runtime(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush().map_err(runtime)
        }
        None => f(stdout),
    }
}

fn write_file(path: &Path, f: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> CliResult {
    let file = File::create(path).map_err(|e| runtime(format!("cannot create {}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    f(&mut w).and_then(|_| w.flush()).map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))
}

fn threads(graph: &GraphArgs) -> CliResult<usize> {
    match graph.threads {
        Some(0) => Err(usage("--threads must be at least 1")),
        Some(t) => Ok(t),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn resolve_order(order: OrderKind, epsilon: Option<f64>) -> CliResult<OrderKind> {
    match (order, epsilon) {
        (OrderKind::ApproxDegeneracy { .. }, Some(eps)) if !(eps.is_finite() && eps >= 0.0) => {
            Err(usage(format!("--epsilon must be a non-negative number, got {eps}")))
        }
        (OrderKind::ApproxDegeneracy { .. }, Some(eps)) => Ok(OrderKind::ApproxDegeneracy { epsilon: eps }),
        (_, Some(_)) => Err(usage("--epsilon only applies to --order adg")),
        (kind, None) => Ok(kind),
    }
}

fn generate(cmd: GenCommand, stdout: &mut dyn Write) -> CliResult {
    let (edges, out) = match cmd {
        GenCommand::Er { n, p, seed, out } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(usage(format!("-p must lie in [0, 1], got {p}")));
            }
            (erdos_renyi_edges(n, p, seed).map_err(runtime)?, out)
        }
        GenCommand::Kron { scale, edge_factor, seed, out } => {
            if !(1..=31).contains(&scale) {
                return Err(usage(format!("--scale must lie in 1..=31, got {scale}")));
            }
            (kronecker_edges(scale, edge_factor, seed).map_err(runtime)?, out)
        }
    };
    let g: SetGraph<SortedArraySet> = build_graph(&edges);
    with_output(out.as_deref(), stdout, |w| write_edge_list(&g, w).map_err(runtime))
}

fn load_graph<S: VertexSet>(graph: &GraphArgs) -> CliResult<SetGraph<S>> {
    let edges: EdgeList = load_input(&graph.input, graph.seed).map_err(runtime)?;
    Ok(build_graph(&edges))
}

fn order(cmd: OrderCommand, stdout: &mut dyn Write) -> CliResult {
    let kind = match (cmd.kind.as_str(), cmd.epsilon) {
        ("adg", eps) => resolve_order(OrderKind::adg(eps.unwrap_or(DEFAULT_EPSILON)), eps)?,
        (_, Some(_)) => return Err(usage("--epsilon only applies to `order adg`")),
        ("deg", None) => OrderKind::Degree,
        _ => OrderKind::Degeneracy,
    };
    let threads = threads(&cmd.graph)?;
    let rank = with_threads(threads, || {
        with_set_kind!(cmd.graph.set_impl, S => {
            let g: SetGraph<S> = load_graph(&cmd.graph)?;
            compute_rank(&g, kind).map_err(runtime)
        })
    })
    .map_err(runtime)??;
    with_output(cmd.output.out.as_deref(), stdout, |w| {
        match cmd.output.format {
            Format::Table => rank.write_text(w),
            Format::Csv => {
                writeln!(w, "vertex,rank,batch").and_then(|_| {
                    (0..rank.len() as VertexId)
                        .try_for_each(|v| writeln!(w, "{v},{},{}", rank.rank(v), rank.batch_of(v)))
                })
            }
            Format::Json => {
                let doc = json!({
                    "ordering": kind.to_string(),
                    "n": rank.len(),
                    "ranks": rank.ranks(),
                    "batches": rank.batches(),
                });
                writeln!(w, "{}", serde_json::to_string_pretty(&doc).expect("json value"))
            }
        }
        .map_err(runtime)
    })
}

fn config(graph: &GraphArgs, kernel: KernelSpec, ordering: OrderKind, repetitions: usize) -> CliResult<PipelineConfig> {
    let cfg = PipelineConfig {
        input: graph.input.clone(),
        set_impl: graph.set_impl,
        ordering,
        kernel,
        threads: threads(graph)?,
        repetitions,
        seed: graph.seed,
    };
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    Ok(cfg)
}

fn bk_options(bk: &BkArgs) -> BkOptions {
    BkOptions { pivot: !bk.no_pivot, subgraph_h: !bk.no_subgraph_h }
}

fn mine(cmd: MineCommand, stdout: &mut dyn Write) -> CliResult {
    // (config, output, clique file)
    let (cfg, output, emit) = match cmd {
        MineCommand::Mc { graph, order, bk, emit, run, output } => {
            let ordering = resolve_order(order.order, order.epsilon)?;
            (config(&graph, KernelSpec::MaximalCliques(bk_options(&bk)), ordering, run.repetitions)?, output, emit)
        }
        MineCommand::Kclique { k, mode, graph, order, emit, run, output } => {
            let ordering = resolve_order(order.order, order.epsilon)?;
            (config(&graph, KernelSpec::KCliques { k, mode }, ordering, run.repetitions)?, output, emit)
        }
        MineCommand::Kcliquestar { k, graph, run, output } => {
            (config(&graph, KernelSpec::KCliqueStars { k }, OrderKind::Degree, run.repetitions)?, output, None)
        }
        MineCommand::Triangles { graph, run, output } => {
            (config(&graph, KernelSpec::Triangles, OrderKind::Degree, run.repetitions)?, output, None)
        }
        MineCommand::Kcore { k, graph, run, output } => {
            (config(&graph, KernelSpec::KCore { k }, OrderKind::Identity, run.repetitions)?, output, None)
        }
    };
    let report = run_pipeline(&cfg).map_err(runtime)?;
    if let Some(path) = emit {
        emit_cliques(&cfg, &path)?;
    }
    write_reports(&[report], &output, stdout)
}

fn emit_cliques(cfg: &PipelineConfig, path: &Path) -> CliResult {
    let cliques = with_threads(cfg.threads, || {
        with_set_kind!(cfg.set_impl, S => {
            let edges = load_input(&cfg.input, cfg.seed).map_err(runtime)?;
            let g: SetGraph<S> = build_graph(&edges);
            let sink = Sink::collecting();
            match &cfg.kernel {
                KernelSpec::MaximalCliques(opts) => {
                    maximal_cliques(&g, cfg.ordering, *opts, &sink).map(|_| ()).map_err(runtime)?
                }
                KernelSpec::KCliques { k, mode } => list_k_cliques(&g, *k, cfg.ordering, *mode, &sink).map_err(runtime)?,
                _ => unreachable!("only clique kernels emit"),
            }
            Ok(canonicalize(sink.into_items()))
        })
    })
    .map_err(runtime)??;
    write_file(path, |w| write_cliques(&cliques, w))
}

fn learn(cmd: LearnCommand, stdout: &mut dyn Write) -> CliResult {
    match cmd {
        LearnCommand::Sim { u, v, measure, graph, output } => {
            let measures: Vec<SimilarityMeasure> = measure.map_or(SimilarityMeasure::ALL.to_vec(), |m| vec![m]);
            let threads = threads(&graph)?;
            let scores = with_threads(threads, || {
                with_set_kind!(graph.set_impl, S => {
                    let g: SetGraph<S> = load_graph(&graph)?;
                    let n = g.num_vertices();
                    if u as usize >= n || v as usize >= n {
                        return Err(runtime(format!("vertex out of range: the graph has {n} vertices")));
                    }
                    Ok(measures.iter().map(|&m| (m, similarity(&g, u, v, m))).collect::<Vec<_>>())
                })
            })
            .map_err(runtime)??;
            with_output(output.out.as_deref(), stdout, |w| {
                match output.format {
                    Format::Table => scores.iter().try_for_each(|(m, s)| writeln!(w, "{:<24} {s}", m.name())),
                    Format::Csv => writeln!(w, "u,v,measure,score")
                        .and_then(|_| scores.iter().try_for_each(|(m, s)| writeln!(w, "{u},{v},{m},{s}"))),
                    Format::Json => {
                        let map: serde_json::Map<String, serde_json::Value> =
                            scores.iter().map(|(m, s)| (m.name().to_string(), json!(s))).collect();
                        let doc = json!({ "u": u, "v": v, "scores": map });
                        writeln!(w, "{}", serde_json::to_string_pretty(&doc).expect("json value"))
                    }
                }
                .map_err(runtime)
            })
        }
        LearnCommand::Linkpred { measure, fraction, predictions, graph, run, output } => {
            let cfg = config(
                &graph,
                KernelSpec::LinkPrediction { measure, fraction },
                OrderKind::Identity,
                run.repetitions,
            )?;
            let report = run_pipeline(&cfg).map_err(runtime)?;
            if let Some(path) = predictions {
                let preds = with_threads(cfg.threads, || {
                    with_set_kind!(cfg.set_impl, S => {
                        let g: SetGraph<S> = load_graph(&graph)?;
                        let split = make_split(&g, fraction, cfg.seed).map_err(runtime)?;
                        evaluate_link_prediction::<S>(&split, measure).map_err(runtime)
                    })
                })
                .map_err(runtime)??;
                write_file(&path, |w| write_predictions(&preds.predictions, w))?;
            }
            write_reports(&[report], &output, stdout)
        }
        LearnCommand::Jp { tau, labels, graph, run, output } => {
            let cfg = config(&graph, KernelSpec::JarvisPatrick { tau }, OrderKind::Identity, run.repetitions)?;
            let report = run_pipeline(&cfg).map_err(runtime)?;
            if let Some(path) = labels {
                let clustering = with_threads(cfg.threads, || {
                    with_set_kind!(cfg.set_impl, S => {
                        let g: SetGraph<S> = load_graph(&graph)?;
                        Ok(jarvis_patrick(&g, tau))
                    })
                })
                .map_err(runtime)??;
                write_file(&path, |w| clustering.write_text(w))?;
            }
            write_reports(&[report], &output, stdout)
        }
    }
}

fn kernel_spec(args: &KernelArgs) -> CliResult<(KernelSpec, OrderKind)> {
    let reject = |flag: &str, given: bool| {
        if given {
            Err(usage(format!("{flag} does not apply to --kernel {}", args.kernel)))
        } else {
            Ok(())
        }
    };
    let name = args.kernel.as_str();
    let uses_k = matches!(name, "kclique" | "kcliquestar" | "kcore");
    reject("-k", args.k.is_some() && !uses_k)?;
    reject("--mode", args.mode.is_some() && name != "kclique")?;
    reject("--tau", args.tau.is_some() && name != "jp")?;
    reject("--measure", args.measure.is_some() && name != "linkpred")?;
    reject("--fraction", args.fraction.is_some() && name != "linkpred")?;
    reject("--no-pivot", args.bk.no_pivot && name != "mc")?;
    reject("--no-subgraph-h", args.bk.no_subgraph_h && name != "mc")?;
    let needs_k = || args.k.ok_or_else(|| usage(format!("--kernel {name} requires -k")));
    let spec = match name {
        "mc" => KernelSpec::MaximalCliques(bk_options(&args.bk)),
        "kclique" => KernelSpec::KCliques { k: needs_k()?, mode: args.mode.unwrap_or_default() },
        "kcliquestar" => KernelSpec::KCliqueStars { k: needs_k()? },
        "triangles" => KernelSpec::Triangles,
        "kcore" => KernelSpec::KCore {
            k: args.k.map(|k| u32::try_from(k).map_err(|_| usage(format!("-k {k} is too large")))).transpose()?,
        },
        "jp" => KernelSpec::JarvisPatrick { tau: args.tau.unwrap_or(1) },
        "linkpred" => KernelSpec::LinkPrediction {
            measure: args.measure.unwrap_or(SimilarityMeasure::Jaccard),
            fraction: args.fraction.unwrap_or(0.1),
        },
        other => return Err(usage(format!("unknown kernel `{other}`"))),
    };
    let uses_order = spec.uses_order();
    reject("--epsilon", args.order.epsilon.is_some() && !uses_order)?;
    let ordering = resolve_order(args.order.order, args.order.epsilon)?;
    Ok((spec, ordering))
}

fn bench(cmd: BenchCommand, stdout: &mut dyn Write) -> CliResult {
    match cmd {
        BenchCommand::Run { kernel, graph, repetitions, output } => {
            let (spec, ordering) = kernel_spec(&kernel)?;
            let cfg = config(&graph, spec, ordering, repetitions)?;
            let report = run_pipeline(&cfg).map_err(runtime)?;
            write_reports(&[report], &output, stdout)
        }
        BenchCommand::Sweep { kernel, graph, thread_counts, repetitions, output } => {
            if thread_counts.contains(&0) {
                return Err(usage("--thread-counts entries must be at least 1"));
            }
            let (spec, ordering) = kernel_spec(&kernel)?;
            let cfg = config(&graph, spec, ordering, repetitions)?;
            let reports = scaling_sweep(&cfg, &thread_counts).map_err(runtime)?;
            write_reports(&reports, &output, stdout)
        }
    }
}

fn write_reports(reports: &[BenchReport], output: &OutputArgs, stdout: &mut dyn Write) -> CliResult {
    with_output(output.out.as_deref(), stdout, |w| match output.format {
        Format::Json if reports.len() == 1 => writeln!(w, "{}", reports[0].to_json()).map_err(runtime),
        Format::Json => {
            writeln!(w, "{}", serde_json::to_string_pretty(reports).expect("reports serialize")).map_err(runtime)
        }
        Format::Csv => write_csv(reports, w).map_err(runtime),
        Format::Table if reports.len() == 1 => write_table(&reports[0], w).map_err(runtime),
        Format::Table => write_sweep_table(reports, w).map_err(runtime),
    })
}

fn write_table(r: &BenchReport, w: &mut dyn Write) -> std::io::Result<()> {
    let kernel = match r.k {
        Some(k) => format!("{} (k={k})", r.kernel),
        None => r.kernel.clone(),
    };
    writeln!(w, "{:<16}{kernel}", "kernel")?;
    writeln!(w, "{:<16}{}", "input", r.input)?;
    writeln!(w, "{:<16}{}", "set", r.set_impl)?;
    writeln!(w, "{:<16}{}", "ordering", r.ordering)?;
    writeln!(w, "{:<16}{} of {} cores", "threads", r.threads, r.host_cores)?;
    writeln!(w, "{:<16}{}", "repetitions", r.repetitions)?;
    writeln!(w, "{:<16}{}", "patterns", r.patterns)?;
    for (name, value) in &r.metrics {
        writeln!(w, "{name:<16}{value}")?;
    }
    writeln!(w, "{:<16}{}", "adjacency_bytes", r.adjacency_bytes)?;
    writeln!(w, "{:<16}{:>12} {:>12} {:>12}", "stage", "mean_s", "min_s", "std_s")?;
    let s = &r.summary;
    for (name, stat) in [("load", &s.load), ("build", &s.build), ("preprocess", &s.preprocess), ("kernel", &s.kernel)] {
        writeln!(w, "{name:<16}{:>12.6} {:>12.6} {:>12.6}", stat.mean, stat.min, stat.std)?;
    }
    writeln!(w, "{:<16}{:.3}", "throughput", r.throughput)
}

fn write_sweep_table(reports: &[BenchReport], w: &mut dyn Write) -> std::io::Result<()> {
    writeln!(w, "{:>8} {:>14} {:>12} {:>12} {:>16}", "threads", "patterns", "kernel_s", "min_s", "throughput")?;
    for r in reports {
        let k = &r.summary.kernel;
        writeln!(w, "{:>8} {:>14} {:>12.6} {:>12.6} {:>16.3}", r.threads, r.patterns, k.mean, k.min, r.throughput)?;
    }
    Ok(())
}
