//! Plain-text edge lists and Graphviz DOT export.
//!
//! Edge-list format: the first non-empty line holds `n`, every further
//! non-empty line one `u v` pair of 0-based labels. Lines starting with `#`
//! are ignored.

use std::fmt::Write;

use super::Tree;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Tree> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("expected vertex count, got {header:?}")))?;
    let mut edges = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize> {
            tok.ok_or_else(|| Error::Parse(format!("short edge line {line:?}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex in {line:?}")))
        };
        let u = parse(it.next())?;
        let v = parse(it.next())?;
        if it.next().is_some() {
            return Err(Error::Parse(format!("trailing tokens in {line:?}")));
        }
        edges.push((u, v));
    }
    Tree::new(n, &edges)
}

pub fn to_edge_list(t: &Tree) -> String {
    let mut out = format!("{}\n", t.n());
    for &(u, v) in t.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn to_dot(t: &Tree) -> String {
    let mut out = String::from("graph tree {\n");
    for v in 0..t.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for &(u, v) in t.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
