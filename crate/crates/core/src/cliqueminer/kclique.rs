use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{Clique, CliqueStar, MineError, Sink};
use crate::graphstore::{orient_by_rank, DirectedView, SetGraph};
use crate::ordering::{compute_rank, degree_order, OrderKind};
use crate::setcore::{VertexId, VertexSet};

/// How the outer loop of k-clique search is split into tasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ParallelMode {
    /// One task per vertex `u`, starting from `C_2 = N+(u)`.
    #[default]
    Vertex,
    /// One task per arc `(u, v)`, starting from `C_3 = N+(u) ∩ N+(v)`.
    Edge,
}

impl fmt::Display for ParallelMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParallelMode::Vertex => "vertex",
            ParallelMode::Edge => "edge",
        })
    }
}

impl FromStr for ParallelMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "vertex" | "node" => Ok(ParallelMode::Vertex),
            "edge" => Ok(ParallelMode::Edge),
            _ => Err(format!("unknown parallel mode `{s}` (expected vertex or edge)")),
        }
    }
}

/// `C` holds candidates that extend the current `(level - 1)`-clique.
fn count_from<S: VertexSet>(dag: &DirectedView<'_, S>, level: usize, k: usize, cands: &S) -> u64 {
    if level == k {
        return cands.cardinality() as u64;
    }
    let mut total = 0;
    for v in cands.iter() {
        let out = dag.out_neighbors(v);
        if level + 1 == k {
            total += out.intersect_count(cands) as u64;
        } else {
            let next = out.intersect(cands);
            if next.cardinality() + level + 1 >= k {
                total += count_from(dag, level + 1, k, &next);
            }
        }
    }
    total
}

fn list_from<S: VertexSet>(
    dag: &DirectedView<'_, S>,
    level: usize,
    k: usize,
    cands: &S,
    stack: &mut Vec<VertexId>,
    sink: &Sink<'_, Clique>,
) -> Result<(), MineError> {
    if level == k {
        for w in cands.iter() {
            sink.emit_with(|| {
                let mut members = stack.clone();
                members.push(w);
                Clique::from_members(members)
            })?;
        }
        return Ok(());
    }
    for v in cands.iter() {
        let next = dag.out_neighbors(v).intersect(cands);
        if next.cardinality() + level + 1 >= k {
            stack.push(v);
            list_from(dag, level + 1, k, &next, stack, sink)?;
            stack.pop();
        }
    }
    Ok(())
}

fn check_k(k: usize) -> Result<(), MineError> {
    if k < 2 {
        Err(MineError::InvalidK(k))
    } else {
        Ok(())
    }
}

/// Counts `k`-vertex complete subgraphs of the oriented graph's base.
pub fn count_k_cliques_oriented<S: VertexSet>(
    dag: &DirectedView<'_, S>,
    k: usize,
    mode: ParallelMode,
) -> Result<u64, MineError> {
    check_k(k)?;
    let n = dag.num_vertices();
    if k > n {
        return Ok(0);
    }
    let total = match mode {
        ParallelMode::Vertex => (0..n as VertexId)
            .into_par_iter()
            .map(|u| count_from(dag, 2, k, dag.out_neighbors(u)))
            .sum(),
        ParallelMode::Edge if k == 2 => dag.graph().num_edges() as u64,
        ParallelMode::Edge => dag
            .arcs()
            .into_par_iter()
            .map(|(u, v)| {
                let c3 = dag.out_neighbors(u).intersect(dag.out_neighbors(v));
                count_from(dag, 3, k, &c3)
            })
            .sum(),
    };
    Ok(total)
}

pub fn count_k_cliques<S: VertexSet>(
    g: &SetGraph<S>,
    k: usize,
    kind: OrderKind,
    mode: ParallelMode,
) -> Result<u64, MineError> {
    check_k(k)?;
    let rank = compute_rank(g, kind)?;
    let dag = orient_by_rank(g, &rank)?;
    count_k_cliques_oriented(&dag, k, mode)
}

/// Emits every k-clique once. A counting sink takes the counting path.
pub fn list_k_cliques_oriented<S: VertexSet>(
    dag: &DirectedView<'_, S>,
    k: usize,
    mode: ParallelMode,
    sink: &Sink<'_, Clique>,
) -> Result<(), MineError> {
    check_k(k)?;
    if !sink.needs_items() {
        sink.add_count(count_k_cliques_oriented(dag, k, mode)?);
        return Ok(());
    }
    let n = dag.num_vertices();
    if k > n {
        return Ok(());
    }
    match mode {
        ParallelMode::Vertex => (0..n as VertexId).into_par_iter().try_for_each(|u| {
            let mut stack = vec![u];
            list_from(dag, 2, k, dag.out_neighbors(u), &mut stack, sink)
        }),
        ParallelMode::Edge => dag.arcs().into_par_iter().try_for_each(|(u, v)| {
            if k == 2 {
                return sink.emit_with(|| Clique::from_members(vec![u, v]));
            }
            let c3 = dag.out_neighbors(u).intersect(dag.out_neighbors(v));
            let mut stack = vec![u, v];
            list_from(dag, 3, k, &c3, &mut stack, sink)
        }),
    }
}

pub fn list_k_cliques<S: VertexSet>(
    g: &SetGraph<S>,
    k: usize,
    kind: OrderKind,
    mode: ParallelMode,
    sink: &Sink<'_, Clique>,
) -> Result<(), MineError> {
    check_k(k)?;
    let rank = compute_rank(g, kind)?;
    let dag = orient_by_rank(g, &rank)?;
    list_k_cliques_oriented(&dag, k, mode, sink)
}

/// Sum over arcs `(u, v)` of `|N+(u) ∩ N+(v)|` under the degree order.
pub fn triangle_count<S: VertexSet>(g: &SetGraph<S>) -> u64 {
    let rank = degree_order(g);
    let dag = orient_by_rank(g, &rank).expect("degree order covers every vertex");
    (0..g.num_vertices() as VertexId)
        .into_par_iter()
        .map(|u| {
            let out_u = dag.out_neighbors(u);
            out_u.iter().map(|v| out_u.intersect_count(dag.out_neighbors(v)) as u64).sum::<u64>()
        })
        .sum()
}

struct StarSearch<'s, 'g, S> {
    g: &'g SetGraph<S>,
    dag: &'s DirectedView<'g, S>,
    k: usize,
    sink: &'s Sink<'s, CliqueStar<S>>,
}

impl<S: VertexSet> StarSearch<'_, '_, S> {
    /// `common` is the intersection of the neighborhoods of `stack`.
    fn expand(&self, level: usize, cands: &S, common: &S, stack: &mut Vec<VertexId>) -> Result<(), MineError> {
        let (g, sink) = (self.g, self.sink);
        if level == self.k {
            for w in cands.iter() {
                if sink.needs_items() {
                    let star = common.intersect(g.neighbors(w));
                    if !star.is_empty() {
                        sink.emit_with(|| {
                            let mut members = stack.clone();
                            members.push(w);
                            CliqueStar { clique: Clique::from_members(members), star }
                        })?;
                    }
                } else if common.intersect_count(g.neighbors(w)) > 0 {
                    sink.add_count(1);
                }
            }
            return Ok(());
        }
        for v in cands.iter() {
            let next = self.dag.out_neighbors(v).intersect(cands);
            if next.cardinality() + level + 1 >= self.k {
                let next_common = common.intersect(g.neighbors(v));
                if next_common.is_empty() {
                    continue;
                }
                stack.push(v);
                self.expand(level + 1, &next, &next_common, stack)?;
                stack.pop();
            }
        }
        Ok(())
    }
}

/// For every k-clique `C` whose star set `(∩_{v∈C} N(v)) \ C` is non-empty,
/// emits `(C, star)` once. Each `C ∪ {s}` for `s` in the star is a
/// `(k+1)`-clique.
pub fn k_clique_stars<S: VertexSet>(g: &SetGraph<S>, k: usize, sink: &Sink<'_, CliqueStar<S>>) -> Result<(), MineError> {
    check_k(k)?;
    if k >= g.num_vertices() {
        return Ok(());
    }
    let rank = degree_order(g);
    let dag = orient_by_rank(g, &rank)?;
    let search = StarSearch { g, dag: &dag, k, sink };
    (0..g.num_vertices() as VertexId).into_par_iter().try_for_each(|u| {
        let mut stack = vec![u];
        search.expand(2, dag.out_neighbors(u), g.neighbors(u), &mut stack)
    })
}
