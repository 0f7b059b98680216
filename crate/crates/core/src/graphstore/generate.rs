use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_graph, EdgeList, GraphError, SetGraph};
use crate::setcore::{VertexId, VertexSet};

/// Quadrant probabilities `(a, b, c, d)` used at every recursion level.
pub const KRONECKER_INITIATOR: [f64; 4] = [0.57, 0.19, 0.19, 0.05];

/// Above this many vertices the generator skips geometrically over pairs
/// instead of drawing one Bernoulli sample per pair.
const BERNOULLI_MAX_N: usize = 10_000;

/// Each unordered pair `{u, v}` independently with probability `p`.
pub fn erdos_renyi_edges(n: usize, p: f64, seed: u64) -> Result<EdgeList, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidProbability(p));
    }
    if n > VertexId::MAX as usize {
        return Err(GraphError::InvalidParameter(format!("n = {n} exceeds the vertex id range")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    if p == 0.0 || n < 2 {
        return Ok(EdgeList::new(n, pairs));
    }
    if p == 1.0 {
        for u in 0..n as VertexId {
            pairs.extend((u + 1..n as VertexId).map(|v| (u, v)));
        }
        return Ok(EdgeList::new(n, pairs));
    }
    if n <= BERNOULLI_MAX_N {
        for u in 0..n as VertexId {
            for v in u + 1..n as VertexId {
                if rng.gen::<f64>() < p {
                    pairs.push((u, v));
                }
            }
        }
    } else {
        // Walk the lower triangle row by row, jumping ahead by
        // geometrically distributed gaps.
        let log_q = (1.0 - p).ln();
        let (mut v, mut w) = (1usize, -1i64);
        while v < n {
            let r: f64 = rng.gen();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                pairs.push((w as VertexId, v as VertexId));
            }
        }
    }
    Ok(EdgeList::new(n, pairs))
}

pub fn generate_erdos_renyi<S: VertexSet>(n: usize, p: f64, seed: u64) -> Result<SetGraph<S>, GraphError> {
    Ok(build_graph(&erdos_renyi_edges(n, p, seed)?))
}

/// `edge_factor * 2^scale` samples, each placed by choosing one quadrant of
/// the adjacency matrix per level with [`KRONECKER_INITIATOR`]
/// probabilities.
pub fn kronecker_edges(scale: u32, edge_factor: usize, seed: u64) -> Result<EdgeList, GraphError> {
    if scale == 0 || scale > 31 {
        return Err(GraphError::InvalidParameter(format!("scale {scale} outside [1, 31]")));
    }
    let n = 1usize << scale;
    let samples = edge_factor
        .checked_mul(n)
        .ok_or_else(|| GraphError::InvalidParameter("edge_factor * 2^scale overflows".into()))?;
    let [a, b, c, _] = KRONECKER_INITIATOR;
    let (ab, abc) = (a + b, a + b + c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(samples);
    for _ in 0..samples {
        let (mut u, mut v) = (0 as VertexId, 0 as VertexId);
        for _ in 0..scale {
            let r: f64 = rng.gen();
            let (du, dv) = if r < a {
                (0, 0)
            } else if r < ab {
                (0, 1)
            } else if r < abc {
                (1, 0)
            } else {
                (1, 1)
            };
            u = u << 1 | du;
            v = v << 1 | dv;
        }
        pairs.push((u, v));
    }
    Ok(EdgeList::new(n, pairs))
}

pub fn generate_powerlaw<S: VertexSet>(scale: u32, edge_factor: usize, seed: u64) -> Result<SetGraph<S>, GraphError> {
    Ok(build_graph(&kronecker_edges(scale, edge_factor, seed)?))
}
