//! Text ingestion for discrepancy instances.
//!
//! * Matrix Market coordinate format for constraint systems;
//! * hypergraphs as one edge per line, whitespace-separated 1-based ids;
//! * JSON result records `{bound_achieved, frozen_count, seed}`.

use super::{ConstraintSystem, Hypergraph};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Per-run result record emitted by the CLI and tests.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ColoringRecord {
    pub bound_achieved: f64,
    pub frozen_count: usize,
    pub seed: u64,
}

/// Parse a Matrix Market `coordinate real general` matrix into rows.
/// Budgets are supplied separately (uniform) since the format has no slot
/// for them.
pub fn read_matrix_market(text: &str, uniform_budget: f64) -> Result<ConstraintSystem<f64>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix market input".into()))?;
    if !header.starts_with("%%MatrixMarket") {
        return Err(Error::Parse("missing %%MatrixMarket header".into()));
    }
    let h = header.to_ascii_lowercase();
    if !h.contains("matrix") || !h.contains("coordinate") {
        return Err(Error::Parse("only `matrix coordinate` supported".into()));
    }
    let mut body = lines.filter(|l| !l.trim_start().starts_with('%'));
    let size_line = body
        .next()
        .ok_or_else(|| Error::Parse("missing size line".into()))?;
    let dims: Vec<usize> = size_line
        .split_whitespace()
        .take(3)
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad size token `{t}`"))))
        .collect::<Result<_>>()?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(Error::Parse("size line needs `rows cols nnz`".into()));
    };
    let mut data = vec![vec![0.0f64; cols]; rows];
    let mut seen = 0usize;
    for line in body {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 2 {
            return Err(Error::Parse(format!("bad entry line `{line}`")));
        }
        let i: usize = toks[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad row index `{}`", toks[0])))?;
        let j: usize = toks[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad col index `{}`", toks[1])))?;
        let v: f64 = if toks.len() > 2 {
            toks[2]
                .parse()
                .map_err(|_| Error::Parse(format!("bad value `{}`", toks[2])))?
        } else {
            1.0 // pattern matrices
        };
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(Error::Parse(format!("index ({i},{j}) out of range")));
        }
        data[i - 1][j - 1] = v;
        seen += 1;
    }
    if seen != nnz {
        return Err(Error::Parse(format!("expected {nnz} entries, found {seen}")));
    }
    ConstraintSystem::uniform(data, uniform_budget)
}

/// Parse a hypergraph given one edge per line of whitespace-separated
/// 1-based vertex ids. `n` is the max id seen.
pub fn read_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut n = 0usize;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut edge = Vec::new();
        for tok in line.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex id `{tok}`")))?;
            if v == 0 {
                return Err(Error::Parse("vertex ids are 1-based".into()));
            }
            n = n.max(v);
            edge.push(v - 1);
        }
        edges.push(edge);
    }
    if n == 0 {
        return Err(Error::Parse("no vertices found".into()));
    }
    Hypergraph::new(n, edges)
}
