use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use super::report::{throughput, BenchReport, RepTiming, Stage, StageSummary, Stat};
use super::{with_threads, BenchError, InputSpec, KernelSpec, PipelineConfig};
use crate::cliqueminer::{count_k_cliques_oriented, k_clique_stars, maximal_cliques_ranked, triangle_count, Sink};
use crate::graphlearn::{evaluate_link_prediction, jarvis_patrick, make_split};
use crate::graphstore::{
    build_graph, erdos_renyi_edges, kronecker_edges, load_edge_list, orient_by_rank, representation_size,
    DirectedView, EdgeList, LoadOptions, SetGraph,
};
use crate::ordering::{compute_rank, core_decomposition, Rank};
use crate::setcore::VertexSet;
use crate::with_set_kind;

/// A failed run with the timings gathered before the failure.
#[derive(Debug)]
pub struct PipelineError {
    /// `None` when the configuration was rejected before any stage ran.
    pub stage: Option<Stage>,
    pub rep: usize,
    pub source: BenchError,
    /// Repetitions that finished.
    pub completed: Vec<RepTiming>,
    /// Stages of the failing repetition that finished, with their times.
    pub partial: Vec<(Stage, f64)>,
}

impl PipelineError {
    fn config(source: BenchError) -> Self {
        PipelineError { stage: None, rep: 0, source, completed: Vec::new(), partial: Vec::new() }
    }
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.stage {
            Some(stage) => write!(f, "{stage} stage failed in repetition {}: {}", self.rep, self.source),
            None => write!(f, "{}", self.source),
        }
    }
}

impl std::error::Error for PipelineError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.source)
    }
}

fn secs(t: Instant) -> f64 {
    // Floor at 1 ns so that stages below timer resolution still report a
    // positive time.
    t.elapsed().as_secs_f64().max(1e-9)
}

/// Edges of the load stage; generators draw from `seed`.
pub fn load_input(input: &InputSpec, seed: u64) -> Result<EdgeList, BenchError> {
    Ok(match input {
        InputSpec::File(path) => load_edge_list(path, LoadOptions::default())?,
        InputSpec::ErdosRenyi { n, p } => erdos_renyi_edges(*n, *p, seed)?,
        InputSpec::Kronecker { scale, edge_factor } => kronecker_edges(*scale, *edge_factor, seed)?,
        InputSpec::Edges { edges, .. } => edges.clone(),
    })
}

type KernelOutput = (u64, BTreeMap<String, f64>);

fn run_kernel<S: VertexSet>(
    g: &SetGraph<S>,
    rank: Option<&Rank>,
    dag: Option<&DirectedView<'_, S>>,
    cfg: &PipelineConfig,
) -> Result<KernelOutput, BenchError> {
    let mut metrics = BTreeMap::new();
    let patterns = match &cfg.kernel {
        KernelSpec::MaximalCliques(opts) => {
            let sink = Sink::counting();
            let stats = maximal_cliques_ranked(g, rank.expect("order computed in preprocess"), *opts, &sink)?;
            metrics.insert("calls".into(), stats.calls as f64);
            stats.cliques
        }
        KernelSpec::KCliques { k, mode } => {
            count_k_cliques_oriented(dag.expect("orientation built in preprocess"), *k, *mode)?
        }
        KernelSpec::KCliqueStars { k } => {
            let sink = Sink::counting();
            k_clique_stars(g, *k, &sink)?;
            sink.count()
        }
        KernelSpec::Triangles => triangle_count(g),
        KernelSpec::KCore { k } => {
            let cores = core_decomposition(g);
            let k = k.unwrap_or(cores.degeneracy);
            metrics.insert("degeneracy".into(), cores.degeneracy as f64);
            metrics.insert("k".into(), k as f64);
            cores.core.iter().filter(|&&c| c >= k).count() as u64
        }
        KernelSpec::JarvisPatrick { tau } => {
            let clustering = jarvis_patrick(g, *tau);
            let sizes = clustering.cluster_sizes();
            metrics.insert("largest_cluster".into(), sizes.iter().copied().max().unwrap_or(0) as f64);
            sizes.len() as u64
        }
        KernelSpec::LinkPrediction { measure, fraction } => {
            let split = make_split(g, *fraction, cfg.seed)?;
            let report = evaluate_link_prediction::<S>(&split, *measure)?;
            metrics.insert("eff".into(), report.eff as f64);
            metrics.insert("precision".into(), report.precision);
            metrics.insert("removed".into(), report.removed as f64);
            report.predictions.len() as u64
        }
    };
    Ok((patterns, metrics))
}

struct Runs {
    reps: Vec<RepTiming>,
    adjacency_bytes: usize,
    metrics: BTreeMap<String, f64>,
}

fn run_reps<S: VertexSet>(cfg: &PipelineConfig) -> Result<Runs, PipelineError> {
    let warmup = cfg.repetitions >= 2;
    let mut reps: Vec<RepTiming> = Vec::with_capacity(cfg.repetitions);
    let mut adjacency_bytes = 0;
    let mut metrics = BTreeMap::new();
    for rep in 0..cfg.repetitions {
        let mut partial = Vec::new();
        let fail = |stage, source: BenchError, partial: &Vec<(Stage, f64)>, reps: &Vec<RepTiming>| PipelineError {
            stage: Some(stage),
            rep,
            source,
            completed: reps.clone(),
            partial: partial.clone(),
        };

        let t = Instant::now();
        let edges = load_input(&cfg.input, cfg.seed).map_err(|e| fail(Stage::Load, e, &partial, &reps))?;
        let load_s = secs(t);
        partial.push((Stage::Load, load_s));

        let t = Instant::now();
        let g: SetGraph<S> = build_graph(&edges);
        let build_s = secs(t);
        partial.push((Stage::Build, build_s));
        drop(edges);

        let t = Instant::now();
        let rank = if cfg.kernel.uses_order() {
            Some(compute_rank(&g, cfg.ordering).map_err(|e| fail(Stage::Preprocess, e.into(), &partial, &reps))?)
        } else {
            None
        };
        let dag = match (&rank, &cfg.kernel) {
            (Some(r), KernelSpec::KCliques { .. }) => {
                Some(orient_by_rank(&g, r).map_err(|e| fail(Stage::Preprocess, e.into(), &partial, &reps))?)
            }
            _ => None,
        };
        let preprocess_s = secs(t);
        partial.push((Stage::Preprocess, preprocess_s));

        let t = Instant::now();
        let (patterns, m) =
            run_kernel(&g, rank.as_ref(), dag.as_ref(), cfg).map_err(|e| fail(Stage::Kernel, e, &partial, &reps))?;
        let kernel_s = secs(t);

        if let Some(first) = reps.first() {
            if first.patterns != patterns {
                let e = BenchError::Nondeterministic {
                    first: first.patterns,
                    first_threads: cfg.threads,
                    other: patterns,
                    other_threads: cfg.threads,
                };
                return Err(fail(Stage::Kernel, e, &partial, &reps));
            }
        }
        adjacency_bytes = representation_size(&g);
        metrics = m;
        reps.push(RepTiming {
            rep,
            warmup: warmup && rep == 0,
            load_s,
            build_s,
            preprocess_s,
            kernel_s,
            patterns,
            throughput: throughput(patterns, kernel_s).expect("kernel time is floored above zero"),
        });
    }
    Ok(Runs { reps, adjacency_bytes, metrics })
}

/// Runs every stage `cfg.repetitions` times on a pool of `cfg.threads`
/// threads. With two or more repetitions the first is a warm-up and is left
/// out of the summary.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<BenchReport, PipelineError> {
    cfg.validate().map_err(PipelineError::config)?;
    let wall = Instant::now();
    let runs = with_threads(cfg.threads, || with_set_kind!(cfg.set_impl, S => run_reps::<S>(cfg)))
        .map_err(PipelineError::config)??;

    let counted: Vec<&RepTiming> = runs.reps.iter().filter(|r| !r.warmup).collect();
    let stat = |f: fn(&RepTiming) -> f64| Stat::from_samples(&counted.iter().map(|r| f(r)).collect::<Vec<_>>());
    let summary = StageSummary {
        load: stat(|r| r.load_s),
        build: stat(|r| r.build_s),
        preprocess: stat(|r| r.preprocess_s),
        kernel: stat(|r| r.kernel_s),
    };
    let patterns = counted[0].patterns;
    Ok(BenchReport {
        input: cfg.input.to_string(),
        set_impl: cfg.set_impl,
        ordering: cfg.effective_ordering(),
        kernel: cfg.kernel.name().to_string(),
        k: cfg.kernel.k(),
        threads: cfg.threads,
        host_cores: std::thread::available_parallelism().map_or(1, |n| n.get()),
        repetitions: cfg.repetitions,
        patterns,
        throughput: throughput(patterns, summary.kernel.mean).expect("kernel times are floored above zero"),
        adjacency_bytes: runs.adjacency_bytes,
        summary,
        reps: runs.reps,
        metrics: runs.metrics,
        total_wall_s: secs(wall),
    })
}

/// One report per thread count on the same input and seed. Fails if the
/// pattern count changes between entries.
pub fn scaling_sweep(cfg: &PipelineConfig, thread_counts: &[usize]) -> Result<Vec<BenchReport>, PipelineError> {
    if thread_counts.is_empty() || thread_counts.contains(&0) {
        return Err(PipelineError::config(BenchError::InvalidConfig(
            "thread counts must be a non-empty list of positive integers".into(),
        )));
    }
    let mut reports: Vec<BenchReport> = Vec::with_capacity(thread_counts.len());
    for &threads in thread_counts {
        let report = run_pipeline(&PipelineConfig { threads, ..cfg.clone() })?;
        if let Some(first) = reports.first() {
            if first.patterns != report.patterns {
                return Err(PipelineError::config(BenchError::Nondeterministic {
                    first: first.patterns,
                    first_threads: first.threads,
                    other: report.patterns,
                    other_threads: threads,
                }));
            }
        }
        reports.push(report);
    }
    Ok(reports)
}
