//! `.hg` hypergraph files and `.wt` weighting files.
//!
//! `.hg`: first line `k n`, then one edge per line as `k` space-separated
//! 0-based vertices. Blank lines and lines starting with `#` are skipped.
//!
//! `.wt`: one rational per line, `p/q` or a decimal literal. Writers always
//! emit reduced `p/q`.

use std::fmt::Write as _;
use std::path::Path;

use super::{Hypergraph, VertexWeighting};
use crate::error::{Error, Result};
use crate::rational;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(token: &str, line: usize) -> Result<usize> {
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a nonnegative integer, found {token:?}"),
    })
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `k n` header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse { line: hline, message: "header must be `k n`".into() });
    }
    let k = parse_usize(fields[0], hline)?;
    let n = parse_usize(fields[1], hline)?;
    let mut edges = Vec::new();
    for (line, body) in lines {
        let edge = body
            .split_whitespace()
            .map(|t| parse_usize(t, line))
            .collect::<Result<Vec<_>>>()?;
        if edge.len() != k {
            return Err(Error::Parse {
                line,
                message: format!("edge has {} vertices, expected {k}", edge.len()),
            });
        }
        edges.push(edge);
    }
    Hypergraph::new(k, n, edges)
}

pub fn render_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.k(), h.n());
    for e in h.edges() {
        let parts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", parts.join(" ")).unwrap();
    }
    out
}

pub fn parse_weighting(text: &str) -> Result<VertexWeighting> {
    let weights = content_lines(text)
        .map(|(line, body)| rational::parse_checked(body, line))
        .collect::<Result<Vec<_>>>()?;
    VertexWeighting::new(weights)
}

pub fn render_weighting(w: &VertexWeighting) -> String {
    w.weights().iter().map(|x| rational::format(x) + "\n").collect()
}

pub fn read_hypergraph(path: impl AsRef<Path>) -> Result<Hypergraph> {
    parse_hypergraph(&std::fs::read_to_string(path)?)
}

pub fn write_hypergraph(path: impl AsRef<Path>, h: &Hypergraph) -> Result<()> {
    Ok(std::fs::write(path, render_hypergraph(h))?)
}

pub fn read_weighting(path: impl AsRef<Path>) -> Result<VertexWeighting> {
    parse_weighting(&std::fs::read_to_string(path)?)
}

pub fn write_weighting(path: impl AsRef<Path>, w: &VertexWeighting) -> Result<()> {
    Ok(std::fs::write(path, render_weighting(w))?)
}
