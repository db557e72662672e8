use crate::{Digraph, GraphError};
use std::fmt::Write;

/// Parses the edge-list format: first non-comment line `n m`, then `m` lines
/// `u v`. Everything after `#` on a line is ignored.
pub fn parse_edge_list(text: &str) -> Result<Digraph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let nums = |line: usize, l: &str| -> Result<(usize, usize), GraphError> {
        let parsed: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| GraphError::Parse { line, msg: e.to_string() })?;
        match parsed.as_slice() {
            [a, b] => Ok((*a, *b)),
            _ => Err(GraphError::Parse { line, msg: "expected two integers".into() }),
        }
    };
    let (line, header) = lines.next().ok_or(GraphError::Parse { line: 1, msg: "missing header".into() })?;
    let (n, m) = nums(line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        edges.push(nums(line, l)?);
    }
    if edges.len() != m {
        return Err(GraphError::Parse {
            line,
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Digraph::new(n, edges)
}

pub fn write_edge_list(d: &Digraph) -> String {
    let mut s = format!("{} {}\n", d.vertex_count(), d.edge_count());
    for (u, v) in d.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn to_dot(d: &Digraph) -> String {
    let mut s = String::from("digraph D {\n");
    for v in 0..d.vertex_count() {
        let _ = writeln!(s, "  {v};");
    }
    for (u, v) in d.edges() {
        let _ = writeln!(s, "  {u} -> {v};");
    }
    s.push_str("}\n");
    s
}
