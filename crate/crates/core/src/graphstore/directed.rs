use rayon::prelude::*;

use super::{GraphError, SetGraph};
use crate::ordering::Rank;
use crate::setcore::{VertexId, VertexSet};

/// Acyclic orientation of a [`SetGraph`]: the edge `{v, u}` points from `v`
/// to `u` iff `rank(v) < rank(u)`.
#[derive(Debug)]
pub struct DirectedView<'g, S> {
    base: &'g SetGraph<S>,
    rank: &'g Rank,
    out: Vec<S>,
}

pub fn orient_by_rank<'g, S: VertexSet>(g: &'g SetGraph<S>, rank: &'g Rank) -> Result<DirectedView<'g, S>, GraphError> {
    if rank.len() != g.num_vertices() {
        return Err(GraphError::RankSizeMismatch { rank_len: rank.len(), n: g.num_vertices() });
    }
    let out = (0..g.num_vertices() as VertexId)
        .into_par_iter()
        .map(|v| {
            let rv = rank.rank(v);
            g.neighbors(v).filter_members(|u| rank.rank(u) > rv)
        })
        .collect();
    Ok(DirectedView { base: g, rank, out })
}

impl<'g, S: VertexSet> DirectedView<'g, S> {
    pub fn graph(&self) -> &'g SetGraph<S> {
        self.base
    }

    pub fn rank(&self) -> &'g Rank {
        self.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.out.len()
    }

    /// `N+(v)`: neighbors ranked after `v`.
    pub fn out_neighbors(&self, v: VertexId) -> &S {
        &self.out[v as usize]
    }

    /// `N-(v)`: neighbors ranked before `v`.
    pub fn in_neighbors(&self, v: VertexId) -> S {
        self.base.neighbors(v).diff(&self.out[v as usize])
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out[v as usize].cardinality()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(|s| s.cardinality()).max().unwrap_or(0)
    }

    /// Every directed edge `(v, u)`, grouped by source in vertex order.
    pub fn arcs(&self) -> Vec<(VertexId, VertexId)> {
        let mut arcs = Vec::new();
        for (v, out) in self.out.iter().enumerate() {
            arcs.extend(out.to_sorted_vec().into_iter().map(|u| (v as VertexId, u)));
        }
        arcs
    }
}
