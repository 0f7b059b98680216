use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{EdgeList, GraphError, SetGraph};
use crate::setcore::{VertexId, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    /// Skip lines starting with `#` or `%`. When false such lines are parse
    /// errors.
    pub allow_comments: bool,
    /// IDs in the file start at 1.
    pub one_based: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { allow_comments: true, one_based: false }
    }
}

pub fn load_edge_list(path: &Path, opts: LoadOptions) -> Result<EdgeList, GraphError> {
    let file = File::open(path).map_err(|source| GraphError::Io { path: path.display().to_string(), source })?;
    parse_edge_list(BufReader::new(file), opts).map_err(|e| match e {
        GraphError::Io { source, .. } => GraphError::Io { path: path.display().to_string(), source },
        other => other,
    })
}

/// Parses whitespace-separated `u v` lines. Tokens after the second are
/// ignored, so weighted or timestamped edge lists load as plain edges.
///
/// If the IDs already cover `[0, n)` they are kept as is; otherwise they are
/// compacted to `[0, n)` in order of first appearance.
pub fn parse_edge_list<R: BufRead>(reader: R, opts: LoadOptions) -> Result<EdgeList, GraphError> {
    let mut raw: Vec<(u64, u64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|source| GraphError::Io { path: String::from("<input>"), source })?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') || trimmed.starts_with('%') {
            if opts.allow_comments {
                continue;
            }
            return Err(GraphError::Parse { line: lineno, msg: "comment lines are not allowed".into() });
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
            return Err(GraphError::Parse { line: lineno, msg: format!("expected two vertex ids, got `{trimmed}`") });
        };
        let u = parse_id(a, lineno, opts.one_based)?;
        let v = parse_id(b, lineno, opts.one_based)?;
        raw.push((u, v));
    }

    let mut distinct: HashMap<u64, VertexId> = HashMap::new();
    let mut max_id = 0u64;
    for &(u, v) in &raw {
        for x in [u, v] {
            let next = distinct.len() as VertexId;
            distinct.entry(x).or_insert(next);
            max_id = max_id.max(x);
        }
    }
    if distinct.len() > VertexId::MAX as usize {
        return Err(GraphError::Parse { line: 0, msg: "too many distinct vertex ids".into() });
    }
    let n = distinct.len();
    let dense = n == 0 || max_id as usize + 1 == n;
    let pairs = if dense {
        raw.into_iter().map(|(u, v)| (u as VertexId, v as VertexId)).collect()
    } else {
        raw.into_iter().map(|(u, v)| (distinct[&u], distinct[&v])).collect()
    };
    Ok(EdgeList { n, pairs })
}

fn parse_id(token: &str, line: usize, one_based: bool) -> Result<u64, GraphError> {
    let id: i64 = token
        .parse()
        .map_err(|_| GraphError::Parse { line, msg: format!("`{token}` is not an integer vertex id") })?;
    if id < 0 {
        return Err(GraphError::NegativeId { line, id });
    }
    if one_based {
        if id == 0 {
            return Err(GraphError::Parse { line, msg: "id 0 in a 1-based file".into() });
        }
        Ok(id as u64 - 1)
    } else {
        Ok(id as u64)
    }
}

/// Writes a `#` header with `n` and `m`, then each undirected edge once as
/// `u v` with `u < v`, lexicographically.
pub fn write_edge_list<S: VertexSet, W: Write>(g: &SetGraph<S>, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# n={} m={}", g.num_vertices(), g.num_edges())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}
