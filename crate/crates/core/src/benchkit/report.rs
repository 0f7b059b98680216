use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use statrs::distribution::{Binomial, DiscreteCDF};

use super::BenchError;
use crate::setcore::SetKind;

pub const CSV_HEADER: &str =
    "input,set_impl,ordering,kernel,k,threads,rep,load_s,build_s,preprocess_s,kernel_s,patterns,throughput,adjacency_bytes";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Load,
    Build,
    Preprocess,
    Kernel,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Load => "load",
            Stage::Build => "build",
            Stage::Preprocess => "preprocess",
            Stage::Kernel => "kernel",
        })
    }
}

/// Patterns per second.
pub fn throughput(patterns: u64, kernel_seconds: f64) -> Result<f64, BenchError> {
    if kernel_seconds > 0.0 {
        Ok(patterns as f64 / kernel_seconds)
    } else {
        Err(BenchError::NonPositiveTime(kernel_seconds))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepTiming {
    pub rep: usize,
    /// Excluded from the summary.
    pub warmup: bool,
    pub load_s: f64,
    pub build_s: f64,
    pub preprocess_s: f64,
    pub kernel_s: f64,
    pub patterns: u64,
    /// `patterns / kernel_s` of this repetition.
    pub throughput: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub median: f64,
    /// Sample standard deviation; 0 for a single sample.
    pub std: f64,
    /// 95% nonparametric interval for the median, reported from 10 samples
    /// up.
    pub ci95: Option<[f64; 2]>,
}

impl Stat {
    pub fn from_samples(samples: &[f64]) -> Stat {
        assert!(!samples.is_empty(), "statistics of an empty sample");
        let mut xs = samples.to_vec();
        xs.sort_by(f64::total_cmp);
        let n = xs.len();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let std = if n > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        let median = if n % 2 == 1 { xs[n / 2] } else { (xs[n / 2 - 1] + xs[n / 2]) / 2.0 };
        let ci95 = (n >= 10).then(|| {
            let j = median_ci_rank(n);
            [xs[j - 1], xs[n - j]]
        });
        Stat { mean, min: xs[0], max: xs[n - 1], median, std, ci95 }
    }
}

/// Largest 1-based rank `j` with `P(Bin(n, 1/2) < j) <= 0.025`, so that
/// `[x_(j), x_(n+1-j)]` covers the median with probability at least 95%.
fn median_ci_rank(n: usize) -> usize {
    let bin = Binomial::new(0.5, n as u64).expect("p = 1/2 is a valid probability");
    (1..=n).take_while(|&j| j == 1 || bin.cdf(j as u64 - 1) <= 0.025).last().unwrap_or(1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageSummary {
    pub load: Stat,
    pub build: Stat,
    pub preprocess: Stat,
    pub kernel: Stat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub input: String,
    pub set_impl: SetKind,
    pub ordering: String,
    pub kernel: String,
    pub k: Option<usize>,
    pub threads: usize,
    /// Cores visible to the process, for reading `threads` in context.
    pub host_cores: usize,
    pub repetitions: usize,
    pub patterns: u64,
    /// `patterns` over the mean kernel time of the counted repetitions.
    pub throughput: f64,
    pub adjacency_bytes: usize,
    pub summary: StageSummary,
    /// Every repetition in order, the warm-up included.
    pub reps: Vec<RepTiming>,
    /// Kernel-specific results besides the pattern count.
    pub metrics: BTreeMap<String, f64>,
    pub total_wall_s: f64,
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are serializable")
    }

    pub fn from_json(s: &str) -> Result<BenchReport, BenchError> {
        Ok(serde_json::from_str(s)?)
    }

    /// One row per counted repetition.
    pub fn csv_rows(&self) -> Vec<CsvRow> {
        self.reps
            .iter()
            .filter(|r| !r.warmup)
            .map(|r| CsvRow {
                input: self.input.clone(),
                set_impl: self.set_impl,
                ordering: self.ordering.clone(),
                kernel: self.kernel.clone(),
                k: self.k,
                threads: self.threads,
                rep: r.rep,
                load_s: r.load_s,
                build_s: r.build_s,
                preprocess_s: r.preprocess_s,
                kernel_s: r.kernel_s,
                patterns: r.patterns,
                throughput: r.throughput,
                adjacency_bytes: self.adjacency_bytes,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub input: String,
    pub set_impl: SetKind,
    pub ordering: String,
    pub kernel: String,
    pub k: Option<usize>,
    pub threads: usize,
    pub rep: usize,
    pub load_s: f64,
    pub build_s: f64,
    pub preprocess_s: f64,
    pub kernel_s: f64,
    pub patterns: u64,
    pub throughput: f64,
    pub adjacency_bytes: usize,
}

/// Header line, then the counted repetitions of every report.
pub fn write_csv<'a, W: Write>(reports: impl IntoIterator<Item = &'a BenchReport>, out: W) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in reports {
        for row in r.csv_rows() {
            w.serialize(row)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>, BenchError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != CSV_HEADER {
        return Err(BenchError::InvalidConfig(format!("unexpected CSV header `{}`", header.join(","))));
    }
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}
