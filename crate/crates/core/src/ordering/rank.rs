use std::io::{BufRead, Write};

use super::OrderError;
use crate::setcore::VertexId;

/// A bijective vertex ranking `[0, n) -> [0, n)`.
///
/// Orders produced in rounds (the approximate degeneracy order) also record
/// where each round starts, so the coarse round index of a vertex is
/// recoverable. Vertices of earlier rounds always have smaller ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank {
    rank: Vec<u32>,
    order: Vec<VertexId>,
    batch_starts: Vec<usize>,
}

impl Rank {
    pub fn identity(n: usize) -> Self {
        Self::from_order_unchecked((0..n as VertexId).collect(), vec![0])
    }

    /// Builds from per-vertex rank values, which must be a permutation of
    /// `[0, n)`.
    pub fn from_ranks(ranks: Vec<u32>) -> Result<Self, OrderError> {
        let n = ranks.len();
        let mut order = vec![VertexId::MAX; n];
        for (v, &r) in ranks.iter().enumerate() {
            let slot = order.get_mut(r as usize).ok_or_else(|| OrderError::NotBijective {
                n,
                detail: format!("vertex {v} has rank {r}"),
            })?;
            if *slot != VertexId::MAX {
                return Err(OrderError::NotBijective { n, detail: format!("rank {r} assigned twice") });
            }
            *slot = v as VertexId;
        }
        Ok(Rank { rank: ranks, order, batch_starts: if n == 0 { vec![] } else { vec![0] } })
    }

    /// Builds from a vertex sequence (first = rank 0), which must list every
    /// vertex of `[0, n)` exactly once.
    pub fn from_order(order: Vec<VertexId>) -> Result<Self, OrderError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            match seen.get_mut(v as usize) {
                Some(s) if !*s => *s = true,
                Some(_) => return Err(OrderError::NotBijective { n, detail: format!("vertex {v} listed twice") }),
                None => return Err(OrderError::NotBijective { n, detail: format!("vertex {v} out of range") }),
            }
        }
        Ok(Self::from_order_unchecked(order, vec![0]))
    }

    pub(crate) fn from_order_unchecked(order: Vec<VertexId>, mut batch_starts: Vec<usize>) -> Self {
        let n = order.len();
        let mut rank = vec![0u32; n];
        for (r, &v) in order.iter().enumerate() {
            rank[v as usize] = r as u32;
        }
        if n == 0 {
            batch_starts.clear();
        }
        Rank { rank, order, batch_starts }
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, v: VertexId) -> u32 {
        self.rank[v as usize]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }

    /// Vertices in ascending rank.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    /// Number of peeling rounds; 1 for orders computed in a single pass.
    pub fn batch_count(&self) -> usize {
        self.batch_starts.len()
    }

    /// Zero-based round in which `v` was ranked.
    pub fn batch_of(&self, v: VertexId) -> usize {
        let r = self.rank(v) as usize;
        self.batch_starts.partition_point(|&s| s <= r) - 1
    }

    /// The vertices of each round, in rank order.
    pub fn batches(&self) -> Vec<&[VertexId]> {
        let mut out = Vec::with_capacity(self.batch_starts.len());
        for (i, &start) in self.batch_starts.iter().enumerate() {
            let end = self.batch_starts.get(i + 1).copied().unwrap_or(self.order.len());
            out.push(&self.order[start..end]);
        }
        out
    }

    pub fn reversed(&self) -> Rank {
        let order: Vec<VertexId> = self.order.iter().rev().copied().collect();
        Self::from_order_unchecked(order, vec![0])
    }

    /// One `vertex rank` line per vertex, in vertex order.
    pub fn write_text<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (v, r) in self.rank.iter().enumerate() {
            writeln!(out, "{v} {r}")?;
        }
        Ok(())
    }

    /// Parses the [`Rank::write_text`] format. Lines may come in any order.
    pub fn read_text<R: BufRead>(input: R) -> Result<Rank, OrderError> {
        let mut pairs = Vec::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let parse = |tok: Option<&str>| -> Result<u32, OrderError> {
                tok.and_then(|x| x.parse().ok())
                    .ok_or_else(|| OrderError::Parse { line: i + 1, msg: format!("expected `vertex rank`, got `{t}`") })
            };
            let mut toks = t.split_whitespace();
            pairs.push((parse(toks.next())?, parse(toks.next())?));
        }
        let n = pairs.len();
        let mut ranks = vec![u32::MAX; n];
        for (v, r) in pairs {
            let slot = ranks.get_mut(v as usize).ok_or_else(|| OrderError::NotBijective {
                n,
                detail: format!("vertex {v} out of range"),
            })?;
            *slot = r;
        }
        Rank::from_ranks(ranks)
    }
}
