//! Graph learning on top of the set layer: pairwise vertex similarity, link
//! prediction scored against held-out edges, and Jarvis-Patrick clustering.

mod jarvis;
mod linkpred;
mod similarity;

pub use jarvis::{jarvis_patrick, Clustering};
pub use linkpred::{
    evaluate_link_prediction, make_split, predict_links, write_predictions, LinkPrediction, LinkPredictionReport,
    LinkPredictionSplit, FULL_POOL_MAX_VERTICES,
};
pub use similarity::{similarity, SimilarityMeasure};

#[derive(Debug, thiserror::Error)]
pub enum LearnError {
    #[error("removal fraction {0} outside (0, 1)")]
    InvalidFraction(f64),
    #[error("removing round({fraction} * {m}) edges removes none")]
    EmptyRemoval { fraction: f64, m: usize },
    #[error("{measure} scores every non-edge; n = {n} exceeds the {max}-vertex limit for the full candidate pool")]
    PoolTooLarge { measure: SimilarityMeasure, n: usize, max: usize },
    #[error("unknown similarity measure `{0}`")]
    UnknownMeasure(String),
}

#[cfg(test)]
mod tests;
