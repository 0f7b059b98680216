use std::cmp::Ordering;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashSet;

use super::{similarity, LearnError, SimilarityMeasure};
use crate::graphstore::SetGraph;
use crate::setcore::{VertexId, VertexSet};

/// Largest graph for which measures that can score disconnected pairs above
/// zero are evaluated over every non-edge.
pub const FULL_POOL_MAX_VERTICES: usize = 20_000;

/// Edge set split into the edges kept for scoring and the held-out edges the
/// predictor should recover. Both lists hold `u < v` pairs in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkPredictionSplit {
    pub n: usize,
    pub sparse_edges: Vec<(VertexId, VertexId)>,
    pub removed: Vec<(VertexId, VertexId)>,
    pub seed: u64,
}

impl LinkPredictionSplit {
    pub fn sparse_graph<S: VertexSet>(&self) -> SetGraph<S> {
        SetGraph::from_edges(self.n, self.sparse_edges.iter().copied())
    }
}

/// Holds out `round(fraction * m)` edges chosen uniformly without
/// replacement. The same seed always yields the same split.
pub fn make_split<S: VertexSet>(g: &SetGraph<S>, fraction: f64, seed: u64) -> Result<LinkPredictionSplit, LearnError> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(LearnError::InvalidFraction(fraction));
    }
    let edges = g.edges();
    let m = edges.len();
    let r = (fraction * m as f64).round() as usize;
    if r == 0 {
        return Err(LearnError::EmptyRemoval { fraction, m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut held = vec![false; m];
    for i in rand::seq::index::sample(&mut rng, m, r) {
        held[i] = true;
    }
    let (removed, sparse_edges): (Vec<_>, Vec<_>) = edges.into_iter().zip(held).partition(|&(_, h)| h);
    Ok(LinkPredictionSplit {
        n: g.num_vertices(),
        sparse_edges: sparse_edges.into_iter().map(|(e, _)| e).collect(),
        removed: removed.into_iter().map(|(e, _)| e).collect(),
        seed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkPrediction {
    pub u: VertexId,
    pub v: VertexId,
    pub score: f64,
}

/// Highest score first, then lexicographic `(u, v)`.
fn rank_cmp(a: &LinkPrediction, b: &LinkPrediction) -> Ordering {
    b.score.total_cmp(&a.score).then((a.u, a.v).cmp(&(b.u, b.v)))
}

fn keep_top(mut items: Vec<LinkPrediction>, r: usize) -> Vec<LinkPrediction> {
    if items.len() > r && r > 0 {
        items.select_nth_unstable_by(r - 1, rank_cmp);
    }
    items.truncate(r);
    items.sort_unstable_by(rank_cmp);
    items
}

fn merge_top(mut a: Vec<LinkPrediction>, b: Vec<LinkPrediction>, r: usize) -> Vec<LinkPrediction> {
    a.extend(b);
    keep_top(a, r)
}

/// The `r` best-scoring non-edges of `g`, ranked by [`rank_cmp`] order.
///
/// For measures that need a common neighbor only distance-2 pairs are scored.
/// Every other pair scores 0, so when fewer than `r` pairs score above zero
/// the remainder is filled with zero-score non-edges in lexicographic order.
/// The result equals ranking the full non-edge pool.
pub fn predict_links<S: VertexSet>(
    g: &SetGraph<S>,
    measure: SimilarityMeasure,
    r: usize,
) -> Result<Vec<LinkPrediction>, LearnError> {
    let n = g.num_vertices();
    if r == 0 {
        return Ok(Vec::new());
    }
    if !measure.needs_common_neighbors() {
        if n > FULL_POOL_MAX_VERTICES {
            return Err(LearnError::PoolTooLarge { measure, n, max: FULL_POOL_MAX_VERTICES });
        }
        return Ok((0..n as VertexId)
            .into_par_iter()
            .map(|u| {
                let nu = g.neighbors(u);
                let scored = (u + 1..n as VertexId)
                    .filter(|&v| !nu.contains(v))
                    .map(|v| LinkPrediction { u, v, score: similarity(g, u, v, measure) })
                    .collect();
                keep_top(scored, r)
            })
            .reduce(Vec::new, |a, b| merge_top(a, b, r)));
    }

    let mut top = (0..n as VertexId)
        .into_par_iter()
        .map(|u| {
            let nu = g.neighbors(u);
            let mut two_hop: Vec<VertexId> = nu.iter().flat_map(|w| g.neighbors(w).iter()).filter(|&v| v > u).collect();
            two_hop.sort_unstable();
            two_hop.dedup();
            let scored = two_hop
                .into_iter()
                .filter(|&v| !nu.contains(v))
                .map(|v| LinkPrediction { u, v, score: similarity(g, u, v, measure) })
                .collect();
            keep_top(scored, r)
        })
        .reduce(Vec::new, |a, b| merge_top(a, b, r));

    if top.len() < r {
        let taken: FxHashSet<(VertexId, VertexId)> = top.iter().map(|p| (p.u, p.v)).collect();
        'fill: for u in 0..n as VertexId {
            let nu = g.neighbors(u);
            for v in u + 1..n as VertexId {
                if !nu.contains(v) && !taken.contains(&(u, v)) {
                    top.push(LinkPrediction { u, v, score: 0.0 });
                    if top.len() == r {
                        break 'fill;
                    }
                }
            }
        }
    }
    Ok(top)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinkPredictionReport {
    /// Predicted pairs that are held-out edges.
    pub eff: usize,
    pub removed: usize,
    /// `eff / removed`.
    pub precision: f64,
    pub predictions: Vec<LinkPrediction>,
}

/// Scores non-edges of the sparse graph and predicts as many links as were
/// held out.
pub fn evaluate_link_prediction<S: VertexSet>(
    split: &LinkPredictionSplit,
    measure: SimilarityMeasure,
) -> Result<LinkPredictionReport, LearnError> {
    let g: SetGraph<S> = split.sparse_graph();
    let r = split.removed.len();
    let predictions = predict_links(&g, measure, r)?;
    let held: FxHashSet<(VertexId, VertexId)> = split.removed.iter().copied().collect();
    let eff = predictions.iter().filter(|p| held.contains(&(p.u, p.v))).count();
    let precision = if r == 0 { 0.0 } else { eff as f64 / r as f64 };
    Ok(LinkPredictionReport { eff, removed: r, precision, predictions })
}

/// One `u v score` line per prediction, in the order given.
pub fn write_predictions<W: Write>(predictions: &[LinkPrediction], mut out: W) -> std::io::Result<()> {
    for p in predictions {
        writeln!(out, "{} {} {}", p.u, p.v, p.score)?;
    }
    Ok(())
}
