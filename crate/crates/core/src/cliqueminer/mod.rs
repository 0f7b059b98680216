//! Clique mining kernels: Bron-Kerbosch maximal cliques, k-clique counting
//! and listing, triangle counting and k-clique-stars.
//!
//! Kernels run on the caller's rayon pool, so the pool size caps the thread
//! count. Results go to a [`Sink`], which either counts, collects or streams
//! emitted patterns.

mod bk;
mod kclique;
mod sink;

use std::fmt;
use std::io::Write;

use crate::graphstore::GraphError;
use crate::ordering::OrderError;
use crate::setcore::VertexId;

pub use bk::{
    bk_pivot_select, bk_visited_states, maximal_cliques, maximal_cliques_ranked, BkOptions, BkStats,
    Neighborhoods,
};
pub use kclique::{
    count_k_cliques, count_k_cliques_oriented, k_clique_stars, list_k_cliques, list_k_cliques_oriented,
    triangle_count, ParallelMode,
};
pub use sink::{Sink, SinkMode};

#[derive(Debug, thiserror::Error)]
pub enum MineError {
    #[error("clique size k must be at least 2, got {0}")]
    InvalidK(usize),
    #[error("collect sink overflow: more than {cap} patterns")]
    SinkOverflow { cap: usize },
    #[error("pivot requested with P and X both empty")]
    EmptyPivotPool,
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Clique members in strictly ascending order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clique(Vec<VertexId>);

impl Clique {
    pub fn from_members(mut members: Vec<VertexId>) -> Self {
        members.sort_unstable();
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]), "duplicate clique member");
        Clique(members)
    }

    pub fn members(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<VertexId> {
        self.0
    }
}

impl fmt::Display for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A k-clique together with every vertex adjacent to all of its members.
#[derive(Clone, Debug, PartialEq)]
pub struct CliqueStar<S> {
    pub clique: Clique,
    pub star: S,
}

/// Sorts cliques lexicographically so outputs can be compared.
pub fn canonicalize(mut cliques: Vec<Clique>) -> Vec<Clique> {
    cliques.sort_unstable();
    cliques
}

/// One clique per line, members ascending and space-separated.
pub fn write_cliques<'a, W: Write>(cliques: impl IntoIterator<Item = &'a Clique>, mut out: W) -> std::io::Result<()> {
    for c in cliques {
        writeln!(out, "{c}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests;
