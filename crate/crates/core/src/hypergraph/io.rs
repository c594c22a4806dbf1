//! The `.khg` text format.
//!
//! ```text
//! khg 1
//! <n> <k>
//! <v1> <v2> ... <vk>      one edge per line, ascending
//! ```
//!
//! Lines starting with `#` are comments. Blank lines are ignored.

use std::fmt::Write as _;

use super::{validate_edge, Hypergraph};
use crate::error::{Error, Result};

const MAGIC: &str = "khg 1";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_khg(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (lno, magic) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `khg 1` header"))?;
    if magic.split_whitespace().collect::<Vec<_>>() != ["khg", "1"] {
        return Err(parse_err(
            lno,
            format!("expected `{MAGIC}`, found `{magic}`"),
        ));
    }

    let (lno, dims) = lines
        .next()
        .ok_or_else(|| parse_err(lno + 1, "missing `<n> <k>` line"))?;
    let toks: Vec<&str> = dims.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(
            lno,
            format!("expected `<n> <k>`, found `{dims}`"),
        ));
    }
    let n = parse_usize(toks[0], lno, "vertex count")?;
    let k = parse_usize(toks[1], lno, "uniformity")?;
    if n == 0 {
        return Err(parse_err(lno, "vertex count must be positive"));
    }
    if k < 2 {
        return Err(parse_err(lno, format!("uniformity {k} must be at least 2")));
    }

    let mut edges: Vec<(usize, Vec<usize>)> = Vec::new();
    for (lno, line) in lines {
        let edge = line
            .split_whitespace()
            .map(|t| parse_usize(t, lno, "vertex"))
            .collect::<Result<Vec<_>>>()?;
        validate_edge(n, k, &edge).map_err(|e| parse_err(lno, e.to_string()))?;
        if edge.windows(2).any(|w| w[0] > w[1]) {
            return Err(parse_err(lno, format!("edge {edge:?} is not ascending")));
        }
        edges.push((lno, edge));
    }

    edges.sort_by(|a, b| a.1.cmp(&b.1));
    if let Some(w) = edges.windows(2).find(|w| w[0].1 == w[1].1) {
        let line = w[0].0.max(w[1].0);
        return Err(parse_err(line, format!("duplicate edge {:?}", w[1].1)));
    }
    Hypergraph::new(n, k, edges.into_iter().map(|(_, e)| e).collect())
}

/// Canonical text: header, dimensions, then edges in sorted order, LF endings.
pub fn serialize_khg(h: &Hypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(out, "{} {}", h.n(), h.k());
    for edge in h.edges() {
        let mut first = true;
        for v in edge {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}
