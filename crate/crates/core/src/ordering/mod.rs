//! Vertex orderings used as preprocessing: degree order, exact degeneracy
//! order with core decomposition, and the batch-parallel approximate
//! degeneracy order.

mod rank;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::graphstore::SetGraph;
use crate::setcore::{VertexId, VertexSet};

pub use rank::Rank;

/// Default approximation slack for [`approx_degeneracy_order`].
pub const DEFAULT_EPSILON: f64 = 0.1;

/// Fixed-point denominator for epsilon in the batch threshold test.
const EPSILON_SCALE: u128 = 1_000_000_000;

#[derive(Debug, thiserror::Error)]
pub enum OrderError {
    #[error("ranks are not a permutation of [0, {n}): {detail}")]
    NotBijective { n: usize, detail: String },
    #[error("epsilon must be a finite number >= 0, got {0}")]
    InvalidEpsilon(f64),
    #[error("unknown ordering `{0}` (expected none, deg, dgr or adg[(eps)])")]
    UnknownKind(String),
    #[error("rank file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Which preprocessing order to apply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderKind {
    /// Vertex IDs as given.
    Identity,
    Degree,
    Degeneracy,
    ApproxDegeneracy { epsilon: f64 },
}

impl OrderKind {
    pub fn adg(epsilon: f64) -> Self {
        OrderKind::ApproxDegeneracy { epsilon }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::Identity => f.write_str("none"),
            OrderKind::Degree => f.write_str("deg"),
            OrderKind::Degeneracy => f.write_str("dgr"),
            OrderKind::ApproxDegeneracy { epsilon } => write!(f, "adg({epsilon})"),
        }
    }
}

impl FromStr for OrderKind {
    type Err = OrderError;

    /// Accepts `none`, `deg`, `dgr`, `adg` and `adg(EPS)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "none" | "identity" => return Ok(OrderKind::Identity),
            "deg" => return Ok(OrderKind::Degree),
            "dgr" => return Ok(OrderKind::Degeneracy),
            "adg" => return Ok(OrderKind::adg(DEFAULT_EPSILON)),
            _ => {}
        }
        let eps = lower
            .strip_prefix("adg(")
            .and_then(|rest| rest.strip_suffix(')'))
            .and_then(|e| e.parse::<f64>().ok())
            .ok_or_else(|| OrderError::UnknownKind(s.to_string()))?;
        check_epsilon(eps)?;
        Ok(OrderKind::adg(eps))
    }
}

fn check_epsilon(eps: f64) -> Result<(), OrderError> {
    if eps.is_finite() && eps >= 0.0 {
        Ok(())
    } else {
        Err(OrderError::InvalidEpsilon(eps))
    }
}

/// Result of peeling: per-vertex core numbers and the degeneracy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDecomposition {
    pub core: Vec<u32>,
    pub degeneracy: u32,
}

impl CoreDecomposition {
    pub fn core_of(&self, v: VertexId) -> u32 {
        self.core[v as usize]
    }
}

pub fn compute_rank<S: VertexSet>(g: &SetGraph<S>, kind: OrderKind) -> Result<Rank, OrderError> {
    match kind {
        OrderKind::Identity => Ok(Rank::identity(g.num_vertices())),
        OrderKind::Degree => Ok(degree_order(g)),
        OrderKind::Degeneracy => Ok(degeneracy_order(g).0),
        OrderKind::ApproxDegeneracy { epsilon } => approx_degeneracy_order(g, epsilon),
    }
}

/// Ascending degree, ties by ascending vertex ID.
pub fn degree_order<S: VertexSet>(g: &SetGraph<S>) -> Rank {
    let mut order: Vec<VertexId> = g.vertices().collect();
    order.par_sort_unstable_by_key(|&v| (g.degree(v), v));
    Rank::from_order_unchecked(order, vec![0])
}

/// Repeatedly removes a minimum-degree vertex (smallest ID among ties).
/// Removal order is the rank; core numbers are the running maximum of the
/// removal degrees.
pub fn degeneracy_order<S: VertexSet>(g: &SetGraph<S>) -> (Rank, CoreDecomposition) {
    let n = g.num_vertices();
    let mut deg: Vec<u32> = g.vertices().map(|v| g.degree(v) as u32).collect();
    let mut removed = vec![false; n];
    let mut queue: BTreeSet<(u32, VertexId)> = g.vertices().map(|v| (deg[v as usize], v)).collect();
    let mut order = Vec::with_capacity(n);
    let mut core = vec![0u32; n];
    let mut current = 0u32;

    while let Some((d, v)) = queue.pop_first() {
        current = current.max(d);
        core[v as usize] = current;
        removed[v as usize] = true;
        order.push(v);
        for u in g.neighbors(v).iter() {
            let ui = u as usize;
            if !removed[ui] {
                queue.remove(&(deg[ui], u));
                deg[ui] -= 1;
                queue.insert((deg[ui], u));
            }
        }
    }
    let rank = Rank::from_order_unchecked(order, vec![0]);
    (rank, CoreDecomposition { core, degeneracy: current })
}

pub fn core_decomposition<S: VertexSet>(g: &SetGraph<S>) -> CoreDecomposition {
    degeneracy_order(g).1
}

/// Batch peeling: each round removes every remaining vertex whose degree in
/// the remaining subgraph is at most `(1 + epsilon)` times the remaining
/// average degree. Rounds get increasing ranks; inside a round vertices are
/// ranked by ID.
///
/// The threshold test runs in integer arithmetic with epsilon in fixed point
/// at 1e-9 resolution: `deg * |U| * S <= (S + eps * S) * 2|E[U]|`.
pub fn approx_degeneracy_order<S: VertexSet>(g: &SetGraph<S>, epsilon: f64) -> Result<Rank, OrderError> {
    check_epsilon(epsilon)?;
    let scaled = (epsilon * EPSILON_SCALE as f64).round();
    let factor = EPSILON_SCALE.saturating_add(if scaled >= u128::MAX as f64 { u128::MAX } else { scaled as u128 });

    let n = g.num_vertices();
    let mut deg: Vec<u32> = g.vertices().map(|v| g.degree(v) as u32).collect();
    let mut alive: Vec<VertexId> = g.vertices().collect();
    let mut in_u = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut batch_starts = Vec::new();

    while !alive.is_empty() {
        let size = alive.len() as u128;
        let degree_sum: u128 = alive.par_iter().map(|&v| u128::from(deg[v as usize])).sum();
        let bound = factor.saturating_mul(degree_sum);
        let batch: Vec<VertexId> = alive
            .par_iter()
            .copied()
            .filter(|&v| u128::from(deg[v as usize]).saturating_mul(size).saturating_mul(EPSILON_SCALE) <= bound)
            .collect();
        debug_assert!(!batch.is_empty(), "a minimum-degree vertex always qualifies");

        batch_starts.push(order.len());
        for &v in &batch {
            in_u[v as usize] = false;
        }
        for &v in &batch {
            for u in g.neighbors(v).iter() {
                if in_u[u as usize] {
                    deg[u as usize] -= 1;
                }
            }
        }
        order.extend_from_slice(&batch);
        alive.retain(|&v| in_u[v as usize]);
    }
    Ok(Rank::from_order_unchecked(order, batch_starts))
}

/// Vertices of the `k`-core: `{v : core(v) >= k}`.
pub fn core_subgraph<S: VertexSet>(g: &SetGraph<S>, k: u32) -> S {
    let cores = core_decomposition(g);
    let members: Vec<VertexId> = g.vertices().filter(|&v| cores.core_of(v) >= k).collect();
    S::from_sorted(&members)
}

/// `max_v |{u in N(v) : rank(u) > rank(v)}|`.
pub fn max_later_neighbors<S: VertexSet>(g: &SetGraph<S>, rank: &Rank) -> usize {
    g.vertices()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&v| {
            let rv = rank.rank(v);
            g.neighbors(v).iter().filter(|&u| rank.rank(u) > rv).count()
        })
        .max()
        .unwrap_or(0)
}
