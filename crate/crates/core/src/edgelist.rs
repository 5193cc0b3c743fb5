//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! n 6
//! r 0
//! 0 1
//! 1 2
//! ```
//!
//! The `n` line comes first, an optional `r` line names the root, and every
//! remaining line is one edge `u v` with 0-based labels.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, RootedGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeList {
    pub graph: Graph,
    pub root: Option<usize>,
}

impl EdgeList {
    pub fn rooted(&self) -> Option<RootedGraph> {
        self.root
            .map(|r| RootedGraph::new(self.graph.clone(), r).expect("root validated at parse"))
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(token: &str, line: usize) -> Result<usize> {
    token.parse().map_err(|_| {
        parse_err(
            line,
            format!("expected a non-negative integer, found {token:?}"),
        )
    })
}

pub fn parse(text: &str) -> Result<EdgeList> {
    let mut vertex_count: Option<usize> = None;
    let mut root: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match (vertex_count, tokens.as_slice()) {
            (None, ["n", count]) => {
                let n = parse_usize(count, line_no)?;
                vertex_count = Some(n);
            }
            (None, _) => return Err(parse_err(line_no, "first line must be `n <vertex_count>`")),
            (Some(_), ["n", ..]) => return Err(parse_err(line_no, "repeated `n` line")),
            (Some(n), ["r", r]) => {
                if root.is_some() {
                    return Err(parse_err(line_no, "repeated `r` line"));
                }
                let r = parse_usize(r, line_no)?;
                if r >= n {
                    return Err(parse_err(line_no, format!("root {r} is not below n = {n}")));
                }
                root = Some(r);
            }
            (Some(n), [u, v]) => {
                let (u, v) = (parse_usize(u, line_no)?, parse_usize(v, line_no)?);
                if u >= n || v >= n {
                    return Err(parse_err(
                        line_no,
                        format!("edge {u} {v} out of range 0..{n}"),
                    ));
                }
                if u == v {
                    return Err(parse_err(line_no, format!("self-loop at {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(parse_err(line_no, format!("duplicate edge {u} {v}")));
                }
                edges.push((u, v));
            }
            (Some(_), _) => return Err(parse_err(line_no, format!("unrecognized line {line:?}"))),
        }
    }

    let Some(n) = vertex_count else {
        return Err(parse_err(1, "missing `n <vertex_count>` line"));
    };
    let graph = Graph::from_edges(n, edges).expect("edges validated line by line");
    Ok(EdgeList { graph, root })
}

/// Serializes a graph; `header` lines are emitted as `#` comments.
pub fn write(graph: &Graph, root: Option<usize>, header: &[String]) -> String {
    let mut out = String::new();
    for line in header {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "n {}", graph.vertex_count());
    if let Some(r) = root {
        let _ = writeln!(out, "r {r}");
    }
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
