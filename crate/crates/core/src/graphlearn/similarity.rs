use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::LearnError;
use crate::graphstore::SetGraph;
use crate::setcore::{VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimilarityMeasure {
    Jaccard,
    Overlap,
    AdamicAdar,
    ResourceAllocation,
    CommonNeighbors,
    TotalNeighbors,
    PreferentialAttachment,
}

impl SimilarityMeasure {
    pub const ALL: [SimilarityMeasure; 7] = [
        SimilarityMeasure::Jaccard,
        SimilarityMeasure::Overlap,
        SimilarityMeasure::AdamicAdar,
        SimilarityMeasure::ResourceAllocation,
        SimilarityMeasure::CommonNeighbors,
        SimilarityMeasure::TotalNeighbors,
        SimilarityMeasure::PreferentialAttachment,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SimilarityMeasure::Jaccard => "jaccard",
            SimilarityMeasure::Overlap => "overlap",
            SimilarityMeasure::AdamicAdar => "adamic-adar",
            SimilarityMeasure::ResourceAllocation => "resource-allocation",
            SimilarityMeasure::CommonNeighbors => "common-neighbors",
            SimilarityMeasure::TotalNeighbors => "total-neighbors",
            SimilarityMeasure::PreferentialAttachment => "preferential-attachment",
        }
    }

    /// True when a pair without common neighbors always scores 0.
    pub fn needs_common_neighbors(self) -> bool {
        !matches!(self, SimilarityMeasure::TotalNeighbors | SimilarityMeasure::PreferentialAttachment)
    }
}

impl fmt::Display for SimilarityMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SimilarityMeasure {
    type Err = LearnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        let m = match key.as_str() {
            "jaccard" => SimilarityMeasure::Jaccard,
            "overlap" => SimilarityMeasure::Overlap,
            "adamic-adar" | "adamicadar" | "aa" => SimilarityMeasure::AdamicAdar,
            "resource-allocation" | "resourceallocation" | "ra" => SimilarityMeasure::ResourceAllocation,
            "common-neighbors" | "commonneighbors" | "cn" => SimilarityMeasure::CommonNeighbors,
            "total-neighbors" | "totalneighbors" | "tn" => SimilarityMeasure::TotalNeighbors,
            "preferential-attachment" | "preferentialattachment" | "pa" => SimilarityMeasure::PreferentialAttachment,
            _ => return Err(LearnError::UnknownMeasure(s.to_string())),
        };
        Ok(m)
    }
}

/// Score of the pair `(u, v)`. Jaccard and Overlap are 0 when the
/// denominator is 0. Adamic-Adar skips common neighbors of degree 1.
///
/// Sums run over common neighbors in ascending ID order, so scores are
/// bit-identical across set implementations.
///
/// # Panics
/// If `u` or `v` is not a vertex of `g`.
pub fn similarity<S: VertexSet>(g: &SetGraph<S>, u: VertexId, v: VertexId, measure: SimilarityMeasure) -> f64 {
    let (nu, nv) = (g.neighbors(u), g.neighbors(v));
    let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    match measure {
        SimilarityMeasure::Jaccard => ratio(nu.intersect_count(nv), nu.union_count(nv)),
        SimilarityMeasure::Overlap => ratio(nu.intersect_count(nv), nu.cardinality().min(nv.cardinality())),
        SimilarityMeasure::CommonNeighbors => nu.intersect_count(nv) as f64,
        SimilarityMeasure::TotalNeighbors => nu.union_count(nv) as f64,
        SimilarityMeasure::PreferentialAttachment => (nu.cardinality() as f64) * (nv.cardinality() as f64),
        SimilarityMeasure::AdamicAdar => nu
            .intersect(nv)
            .to_sorted_vec()
            .into_iter()
            .map(|w| g.degree(w))
            .filter(|&d| d > 1)
            .map(|d| 1.0 / (d as f64).ln())
            .sum(),
        SimilarityMeasure::ResourceAllocation => {
            nu.intersect(nv).to_sorted_vec().into_iter().map(|w| 1.0 / g.degree(w) as f64).sum()
        }
    }
}
