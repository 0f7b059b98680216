//! Set-centric graph storage: one [`VertexSet`] per neighborhood.

mod directed;
mod generate;
mod io;
pub mod named;

use rayon::prelude::*;

use crate::setcore::{VertexId, VertexSet};

pub use directed::{orient_by_rank, DirectedView};
pub use generate::{
    erdos_renyi_edges, generate_erdos_renyi, generate_powerlaw, kronecker_edges, KRONECKER_INITIATOR,
};
pub use io::{load_edge_list, parse_edge_list, write_edge_list, LoadOptions};

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: negative vertex id {id}")]
    NegativeId { line: usize, id: i64 },
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error("rank covers {rank_len} vertices but the graph has {n}")]
    RankSizeMismatch { rank_len: usize, n: usize },
}

/// Raw `(u, v)` pairs over the dense ID space `[0, n)`.
///
/// May contain duplicates and self-loops; [`build_graph`] removes both.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeList {
    pub n: usize,
    pub pairs: Vec<(VertexId, VertexId)>,
}

impl EdgeList {
    pub fn new(n: usize, pairs: Vec<(VertexId, VertexId)>) -> Self {
        debug_assert!(pairs.iter().all(|&(u, v)| (u as usize) < n && (v as usize) < n));
        EdgeList { n, pairs }
    }
}

/// Undirected simple graph with one neighborhood set per vertex.
///
/// Adjacency is symmetric and loop-free, and `m` counts undirected edges.
#[derive(Debug, Clone, PartialEq)]
pub struct SetGraph<S> {
    adj: Vec<S>,
    m: usize,
}

impl<S: VertexSet> SetGraph<S> {
    /// Symmetrizes, deduplicates and drops self-loops.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut lists: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!((u as usize) < n && (v as usize) < n, "edge ({u}, {v}) outside [0, {n})");
            if u != v {
                lists[u as usize].push(v);
                lists[v as usize].push(u);
            }
        }
        let adj: Vec<S> = lists
            .into_par_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                S::from_sorted(&l)
            })
            .collect();
        let m = adj.iter().map(|s| s.cardinality()).sum::<usize>() / 2;
        SetGraph { adj, m }
    }

    pub fn empty(n: usize) -> Self {
        SetGraph { adj: vec![S::default(); n], m: 0 }
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: VertexId) -> &S {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].cardinality()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|s| s.cardinality()).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|s| s.cardinality()).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.adj.len() as VertexId
    }

    pub fn is_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u as usize].contains(v)
    }

    /// Each undirected edge once as `(u, v)` with `u < v`, in lexicographic
    /// order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            out.extend(self.adj[u as usize].to_sorted_vec().into_iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// The same graph in another set representation.
    pub fn convert<T: VertexSet>(&self) -> SetGraph<T> {
        SetGraph { adj: self.adj.par_iter().map(T::convert).collect(), m: self.m }
    }

    /// Bytes attributable to adjacency storage: for every vertex, the set
    /// value itself (`size_of::<S>()`) plus its [`VertexSet::heap_bytes`].
    pub fn representation_size(&self) -> usize {
        self.adj.iter().map(|s| std::mem::size_of::<S>() + s.heap_bytes()).sum()
    }
}

/// Builds the simple undirected graph from raw pairs.
pub fn build_graph<S: VertexSet>(edges: &EdgeList) -> SetGraph<S> {
    SetGraph::from_edges(edges.n, edges.pairs.iter().copied())
}

/// Bytes used by `g`'s adjacency sets; see [`SetGraph::representation_size`].
pub fn representation_size<S: VertexSet>(g: &SetGraph<S>) -> usize {
    g.representation_size()
}

#[cfg(test)]
mod tests;
