//! Staged benchmark pipeline: load, build, preprocess and kernel stages timed
//! separately, repeated, and summarized into a [`BenchReport`].

mod pipeline;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::cliqueminer::{BkOptions, MineError, ParallelMode};
use crate::graphlearn::{LearnError, SimilarityMeasure};
use crate::graphstore::{EdgeList, GraphError};
use crate::ordering::{OrderError, OrderKind};
use crate::setcore::SetKind;

pub use pipeline::{load_input, run_pipeline, scaling_sweep, PipelineError};
pub use report::{read_csv, throughput, write_csv, BenchReport, CsvRow, RepTiming, Stage, StageSummary, Stat, CSV_HEADER};

pub const DEFAULT_REPETITIONS: usize = 5;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("kernel time must be positive, got {0}")]
    NonPositiveTime(f64),
    #[error("cannot build a {0}-thread pool: {1}")]
    ThreadPool(usize, String),
    #[error("pattern count differs across the sweep: {first} at {first_threads} threads, {other} at {other_threads}")]
    Nondeterministic { first: u64, first_threads: usize, other: u64, other_threads: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Mine(#[from] MineError),
    #[error(transparent)]
    Learn(#[from] LearnError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Where the load stage gets its edges.
#[derive(Clone, Debug, PartialEq)]
pub enum InputSpec {
    File(PathBuf),
    ErdosRenyi { n: usize, p: f64 },
    Kronecker { scale: u32, edge_factor: usize },
    /// Edges already in memory, reported under `label`.
    Edges { label: String, edges: EdgeList },
}

impl fmt::Display for InputSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputSpec::File(p) => write!(f, "{}", p.display()),
            InputSpec::ErdosRenyi { n, p } => write!(f, "er:n={n},p={p}"),
            InputSpec::Kronecker { scale, edge_factor } => write!(f, "kron:scale={scale},edge_factor={edge_factor}"),
            InputSpec::Edges { label, .. } => f.write_str(label),
        }
    }
}

fn parse_params(body: &str) -> Result<Vec<(&str, &str)>, BenchError> {
    body.split(',')
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| BenchError::InvalidConfig(format!("expected key=value, got `{kv}`")))
        })
        .collect()
}

fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T, BenchError> {
    v.parse().map_err(|_| BenchError::InvalidConfig(format!("bad value `{v}` for `{key}`")))
}

/// Accepts `er:n=N,p=P`, `kron:scale=S,edge_factor=F` (`ef` for short), or
/// a file path.
impl FromStr for InputSpec {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let generator = |name: &str| s.strip_prefix(name).and_then(|r| r.strip_prefix(':'));
        if let Some(body) = generator("er") {
            let (mut n, mut p) = (None, None);
            for (k, v) in parse_params(body)? {
                match k {
                    "n" => n = Some(parse_value(k, v)?),
                    "p" => p = Some(parse_value(k, v)?),
                    _ => return Err(BenchError::InvalidConfig(format!("unknown er parameter `{k}`"))),
                }
            }
            match (n, p) {
                (Some(n), Some(p)) => Ok(InputSpec::ErdosRenyi { n, p }),
                _ => Err(BenchError::InvalidConfig("er generator needs n and p".into())),
            }
        } else if let Some(body) = generator("kron") {
            let (mut scale, mut edge_factor) = (None, 16);
            for (k, v) in parse_params(body)? {
                match k {
                    "scale" => scale = Some(parse_value(k, v)?),
                    "edge_factor" | "ef" => edge_factor = parse_value(k, v)?,
                    _ => return Err(BenchError::InvalidConfig(format!("unknown kron parameter `{k}`"))),
                }
            }
            let scale = scale.ok_or_else(|| BenchError::InvalidConfig("kron generator needs scale".into()))?;
            Ok(InputSpec::Kronecker { scale, edge_factor })
        } else if s.is_empty() {
            Err(BenchError::InvalidConfig("empty input".into()))
        } else {
            Ok(InputSpec::File(PathBuf::from(s)))
        }
    }
}

/// Kernel to time, with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelSpec {
    MaximalCliques(BkOptions),
    KCliques { k: usize, mode: ParallelMode },
    KCliqueStars { k: usize },
    Triangles,
    /// Size of the `k`-core; the maximal core when `k` is `None`.
    KCore { k: Option<u32> },
    JarvisPatrick { tau: usize },
    LinkPrediction { measure: SimilarityMeasure, fraction: f64 },
}

impl KernelSpec {
    pub fn name(&self) -> &'static str {
        match self {
            KernelSpec::MaximalCliques(_) => "mc",
            KernelSpec::KCliques { .. } => "kclique",
            KernelSpec::KCliqueStars { .. } => "kcliquestar",
            KernelSpec::Triangles => "triangles",
            KernelSpec::KCore { .. } => "kcore",
            KernelSpec::JarvisPatrick { .. } => "jp",
            KernelSpec::LinkPrediction { .. } => "linkpred",
        }
    }

    pub fn k(&self) -> Option<usize> {
        match self {
            KernelSpec::KCliques { k, .. } | KernelSpec::KCliqueStars { k } => Some(*k),
            KernelSpec::KCore { k } => k.map(|k| k as usize),
            _ => None,
        }
    }

    /// Whether the kernel runs on the configured vertex order. The others
    /// either fix their own order or need none.
    pub fn uses_order(&self) -> bool {
        matches!(self, KernelSpec::MaximalCliques(_) | KernelSpec::KCliques { .. })
    }

    fn validate(&self) -> Result<(), BenchError> {
        match self {
            KernelSpec::KCliques { k, .. } | KernelSpec::KCliqueStars { k } if *k < 2 => {
                Err(MineError::InvalidK(*k).into())
            }
            KernelSpec::LinkPrediction { fraction, .. } if !(*fraction > 0.0 && *fraction < 1.0) => {
                Err(LearnError::InvalidFraction(*fraction).into())
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub input: InputSpec,
    pub set_impl: SetKind,
    pub ordering: OrderKind,
    pub kernel: KernelSpec,
    pub threads: usize,
    pub repetitions: usize,
    pub seed: u64,
}

impl PipelineConfig {
    /// One thread per available core, [`DEFAULT_REPETITIONS`] repetitions,
    /// hybrid sets and the degeneracy order.
    pub fn new(input: InputSpec, kernel: KernelSpec) -> Self {
        PipelineConfig {
            input,
            set_impl: SetKind::Hybrid,
            ordering: OrderKind::Degeneracy,
            kernel,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            repetitions: DEFAULT_REPETITIONS,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.threads == 0 {
            return Err(BenchError::InvalidConfig("threads must be at least 1".into()));
        }
        if self.repetitions == 0 {
            return Err(BenchError::InvalidConfig("repetitions must be at least 1".into()));
        }
        if let OrderKind::ApproxDegeneracy { epsilon } = self.ordering {
            if !(epsilon.is_finite() && epsilon >= 0.0) {
                return Err(OrderError::InvalidEpsilon(epsilon).into());
            }
        }
        self.kernel.validate()
    }

    /// The order reported for this run: the configured one for kernels that
    /// use it, otherwise the order the kernel fixes internally.
    pub fn effective_ordering(&self) -> String {
        match self.kernel {
            _ if self.kernel.uses_order() => self.ordering.to_string(),
            KernelSpec::Triangles | KernelSpec::KCliqueStars { .. } => OrderKind::Degree.to_string(),
            _ => OrderKind::Identity.to_string(),
        }
    }
}

/// Runs `f` on a fresh pool of `threads` threads.
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> Result<R, BenchError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| BenchError::ThreadPool(threads, e.to_string()))?;
    Ok(pool.install(f))
}
