use std::io::Write;

use rayon::prelude::*;

use crate::graphstore::SetGraph;
use crate::setcore::{VertexId, VertexSet};

/// Cluster label per vertex. Labels are dense, numbered by the smallest
/// vertex of each cluster in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clustering {
    pub label: Vec<u32>,
}

impl Clustering {
    pub fn num_clusters(&self) -> usize {
        self.label.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_clusters()];
        for &l in &self.label {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// One `vertex label` line per vertex.
    pub fn write_text<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (v, l) in self.label.iter().enumerate() {
            writeln!(out, "{v} {l}")?;
        }
        Ok(())
    }
}

fn find(parent: &mut [u32], mut v: u32) -> u32 {
    while parent[v as usize] != v {
        let up = parent[parent[v as usize] as usize];
        parent[v as usize] = up;
        v = up;
    }
    v
}

/// Keeps edge `(u, v)` iff `|N(u) ∩ N(v)| >= tau` and labels the connected
/// components of the kept edges.
pub fn jarvis_patrick<S: VertexSet>(g: &SetGraph<S>, tau: usize) -> Clustering {
    let n = g.num_vertices();
    let kept: Vec<(VertexId, VertexId)> = (0..n as VertexId)
        .into_par_iter()
        .flat_map_iter(|u| {
            let nu = g.neighbors(u);
            nu.iter().filter(move |&v| v > u && nu.intersect_count(g.neighbors(v)) >= tau).map(move |v| (u, v))
        })
        .collect();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    for (u, v) in kept {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a.max(b) as usize] = a.min(b);
        }
    }
    let mut label = vec![u32::MAX; n];
    let mut next = 0;
    for v in 0..n as u32 {
        let root = find(&mut parent, v) as usize;
        if label[root] == u32::MAX {
            label[root] = next;
            next += 1;
        }
        label[v as usize] = label[root];
    }
    Clustering { label }
}
