//! Small named graphs as edge lists.

use super::EdgeList;
use crate::setcore::VertexId;

pub fn complete(n: usize) -> EdgeList {
    let mut pairs = Vec::new();
    for u in 0..n as VertexId {
        pairs.extend((u + 1..n as VertexId).map(|v| (u, v)));
    }
    EdgeList::new(n, pairs)
}

pub fn path(n: usize) -> EdgeList {
    EdgeList::new(n, (1..n as VertexId).map(|v| (v - 1, v)).collect())
}

pub fn cycle(n: usize) -> EdgeList {
    let mut e = path(n);
    if n > 2 {
        e.pairs.push((n as VertexId - 1, 0));
    }
    e
}

/// Center 0 joined to leaves `1..=leaves`.
pub fn star(leaves: usize) -> EdgeList {
    EdgeList::new(leaves + 1, (1..=leaves as VertexId).map(|v| (0, v)).collect())
}

pub fn petersen() -> EdgeList {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((i + 5, (i + 2) % 5 + 5));
    }
    EdgeList::new(10, pairs)
}

/// Complete multipartite graph with `parts` parts of `size` vertices each;
/// part of vertex `v` is `v / size`.
pub fn complete_multipartite(parts: usize, size: usize) -> EdgeList {
    let n = parts * size;
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if u / size != v / size {
                pairs.push((u as VertexId, v as VertexId));
            }
        }
    }
    EdgeList::new(n, pairs)
}

/// Triangles `{0,1,2}` and `{3,4,5}` joined by the bridge `{2,3}`.
pub fn bridged_triangles() -> EdgeList {
    EdgeList::new(6, vec![(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])
}
