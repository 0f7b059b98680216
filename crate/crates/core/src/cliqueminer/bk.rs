use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{Clique, MineError, Sink};
use crate::graphstore::SetGraph;
use crate::ordering::{compute_rank, OrderKind, Rank};
use crate::setcore::{VertexId, VertexSet};

/// Neighborhood lookup used by the Bron-Kerbosch recursion: either the full
/// graph or the per-seed subgraph `H`.
pub trait Neighborhoods<S: VertexSet>: Sync {
    fn neighbors(&self, v: VertexId) -> &S;
}

impl<S: VertexSet> Neighborhoods<S> for SetGraph<S> {
    fn neighbors(&self, v: VertexId) -> &S {
        SetGraph::neighbors(self, v)
    }
}

/// Subgraph `H` of one seed: vertex set `P ∪ X` and the edges with at least
/// one endpoint in `P`. For `w` in `P` we store `N(w) ∩ (P ∪ X)`, for `w` in
/// `X` we store `N(w) ∩ P`.
struct SeedSubgraph<S> {
    neighborhoods: FxHashMap<VertexId, S>,
    empty: S,
}

impl<S: VertexSet> SeedSubgraph<S> {
    fn build(g: &SetGraph<S>, p: &S, x: &S) -> Self {
        let pool = p.union(x);
        let mut neighborhoods = FxHashMap::default();
        neighborhoods.reserve(pool.cardinality());
        for w in p.iter() {
            neighborhoods.insert(w, g.neighbors(w).intersect(&pool));
        }
        for w in x.iter() {
            neighborhoods.insert(w, g.neighbors(w).intersect(p));
        }
        SeedSubgraph { neighborhoods, empty: S::default() }
    }
}

impl<S: VertexSet> Neighborhoods<S> for SeedSubgraph<S> {
    fn neighbors(&self, v: VertexId) -> &S {
        self.neighborhoods.get(&v).unwrap_or(&self.empty)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BkOptions {
    /// Recurse only on `P \ N(u)` for a pivot `u`.
    pub pivot: bool,
    /// Build the seed subgraph `H` once per outer-loop vertex and use it for
    /// every set operation below that seed.
    pub subgraph_h: bool,
}

impl Default for BkOptions {
    fn default() -> Self {
        BkOptions { pivot: true, subgraph_h: true }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BkStats {
    pub cliques: u64,
    /// Recursive calls, one per visited search state.
    pub calls: u64,
}

/// Picks `u ∈ P ∪ X` maximizing `|P ∩ N(u)|` (so minimizing `|P \ N(u)|`),
/// smallest ID among ties.
pub fn bk_pivot_select<S, N>(p: &S, x: &S, nbrs: &N) -> Result<VertexId, MineError>
where
    S: VertexSet,
    N: Neighborhoods<S> + ?Sized,
{
    let mut best: Option<(usize, VertexId)> = None;
    for w in p.iter().chain(x.iter()) {
        let covered = p.intersect_count(nbrs.neighbors(w));
        best = match best {
            Some((c, b)) if c > covered || (c == covered && b < w) => Some((c, b)),
            _ => Some((covered, w)),
        };
    }
    best.map(|(_, u)| u).ok_or(MineError::EmptyPivotPool)
}

fn expand<S, N, V>(
    mut p: S,
    r: &mut Vec<VertexId>,
    mut x: S,
    nbrs: &N,
    opts: BkOptions,
    sink: &Sink<'_, Clique>,
    visit: &mut V,
) -> Result<u64, MineError>
where
    S: VertexSet,
    N: Neighborhoods<S>,
    V: FnMut(&[VertexId]),
{
    visit(r);
    let mut calls = 1;
    if p.is_empty() {
        if x.is_empty() {
            sink.emit_with(|| Clique::from_members(r.clone()))?;
        }
        return Ok(calls);
    }
    let candidates: Vec<VertexId> = if opts.pivot {
        let u = bk_pivot_select(&p, &x, nbrs)?;
        p.diff(nbrs.neighbors(u)).to_sorted_vec()
    } else {
        p.to_sorted_vec()
    };
    for v in candidates {
        let nv = nbrs.neighbors(v);
        let p_next = p.intersect(nv);
        let x_next = x.intersect(nv);
        r.push(v);
        calls += expand(p_next, r, x_next, nbrs, opts, sink, visit)?;
        r.pop();
        p.remove(v);
        x.add(v);
    }
    Ok(calls)
}

fn run_seed<S, V>(
    g: &SetGraph<S>,
    rank: &Rank,
    v: VertexId,
    opts: BkOptions,
    sink: &Sink<'_, Clique>,
    visit: &mut V,
) -> Result<u64, MineError>
where
    S: VertexSet,
    V: FnMut(&[VertexId]),
{
    let rv = rank.rank(v);
    let (later, earlier): (Vec<VertexId>, Vec<VertexId>) =
        g.neighbors(v).to_sorted_vec().into_iter().partition(|&u| rank.rank(u) > rv);
    let p = S::from_sorted(&later);
    let x = S::from_sorted(&earlier);
    let mut r = vec![v];
    if opts.subgraph_h {
        let h = SeedSubgraph::build(g, &p, &x);
        expand(p, &mut r, x, &h, opts, sink, visit)
    } else {
        expand(p, &mut r, x, g, opts, sink, visit)
    }
}

/// Enumerates every maximal clique of `g` exactly once, seeding the search
/// from each vertex in the order `kind` produces.
pub fn maximal_cliques<S: VertexSet>(
    g: &SetGraph<S>,
    kind: OrderKind,
    opts: BkOptions,
    sink: &Sink<'_, Clique>,
) -> Result<BkStats, MineError> {
    let rank = compute_rank(g, kind)?;
    maximal_cliques_ranked(g, &rank, opts, sink)
}

/// As [`maximal_cliques`] with a precomputed order. Seeds run in parallel on
/// the current rayon pool.
pub fn maximal_cliques_ranked<S: VertexSet>(
    g: &SetGraph<S>,
    rank: &Rank,
    opts: BkOptions,
    sink: &Sink<'_, Clique>,
) -> Result<BkStats, MineError> {
    if rank.len() != g.num_vertices() {
        return Err(crate::graphstore::GraphError::RankSizeMismatch { rank_len: rank.len(), n: g.num_vertices() }.into());
    }
    let before = sink.count();
    let calls = rank
        .order()
        .par_iter()
        .with_max_len(1)
        .map(|&v| run_seed(g, rank, v, opts, sink, &mut |_| {}))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(BkStats { cliques: sink.count() - before, calls })
}

/// Runs the search sequentially and returns the clique-in-progress `R` of
/// every visited state, sorted. Meant for analysing pruning.
pub fn bk_visited_states<S: VertexSet>(g: &SetGraph<S>, rank: &Rank, opts: BkOptions) -> Result<Vec<Clique>, MineError> {
    let sink = Sink::counting();
    let mut states = Vec::new();
    for &v in rank.order() {
        run_seed(g, rank, v, opts, &sink, &mut |r: &[VertexId]| states.push(Clique::from_members(r.to_vec())))?;
    }
    states.sort_unstable();
    Ok(states)
}
