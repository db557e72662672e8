//! The PGSolver text format.
//!
//! A game is an optional header `parity <max-id>;` followed by one statement
//! `<id> <priority> <owner> <succ>[,<succ>]* ["name"];` per vertex, owner 0
//! being Even. Statements end with `;` and may share lines. Text from `#` or
//! `//` to the end of a line is a comment.
//!
//! Parsing keeps the exact text around and inside every statement, so
//! writing an unmodified game reproduces the input byte for byte. Vertices
//! whose data changed are written in canonical form.

use crate::{ParityError, ParityGame};
use graph_core::{Digraph, VertexSet};
use std::collections::BTreeSet;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Replace each self-loop `v → v` by a 2-cycle `v → v′ → v` through a
    /// fresh vertex `v′` with the priority and owner of `v`. The least
    /// priority seen infinitely often is unchanged, so winners on the
    /// original vertices are preserved.
    pub unroll_loops: bool,
}

#[derive(Clone, Debug, PartialEq)]
struct VertexRec {
    id: usize,
    priority: u32,
    even: bool,
    succ: BTreeSet<usize>,
    name: Option<String>,
}

#[derive(Clone, Debug)]
enum Kind {
    Header(usize),
    Vertex(VertexRec),
}

#[derive(Clone, Debug)]
struct Stmt {
    /// Whitespace and comments before the statement.
    trivia: String,
    /// Statement text without the terminating `;`.
    raw: String,
    kind: Kind,
}

/// The concrete syntax of a parsed file.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    stmts: Vec<Stmt>,
    trailing: String,
}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl Scanner<'_> {
    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn bump(&mut self, len: usize) -> &str {
        let s = &self.text[self.pos..self.pos + len];
        self.line += s.matches('\n').count();
        self.pos += len;
        s
    }

    /// Whitespace and comments.
    fn trivia(&mut self) -> String {
        let start = self.pos;
        loop {
            let rest = self.rest();
            let ws = rest.len() - rest.trim_start().len();
            if ws > 0 {
                self.bump(ws);
                continue;
            }
            if rest.starts_with('#') || rest.starts_with("//") {
                let len = rest.find('\n').unwrap_or(rest.len());
                self.bump(len);
                continue;
            }
            break;
        }
        self.text[start..self.pos].to_string()
    }

    /// Statement body up to (not including) the next `;` outside quotes.
    fn body(&mut self) -> Result<String, ParityError> {
        let line = self.line;
        let mut quoted = false;
        for (i, c) in self.rest().char_indices() {
            match c {
                '"' => quoted = !quoted,
                ';' if !quoted => {
                    let s = self.bump(i).to_string();
                    self.bump(1);
                    return Ok(s);
                }
                _ => {}
            }
        }
        let msg = if quoted { "unterminated name" } else { "statement is missing its terminating `;`" };
        Err(ParityError::Parse { line, msg: msg.into() })
    }
}

fn parse_stmt(raw: &str, line: usize) -> Result<Kind, ParityError> {
    let err = |msg: String| ParityError::Parse { line, msg };
    let num = |s: &str, what: &str| s.parse::<usize>().map_err(|_| err(format!("expected {what}, found `{s}`")));
    let (head, name) = match raw.find('"') {
        Some(q) => {
            let close = raw[q + 1..].find('"').ok_or_else(|| err("unterminated name".into()))? + q + 1;
            if !raw[close + 1..].trim().is_empty() {
                return Err(err(format!("unexpected text after name: `{}`", raw[close + 1..].trim())));
            }
            (&raw[..q], Some(raw[q + 1..close].to_string()))
        }
        None => (raw, None),
    };
    let mut toks = head.split_whitespace();
    let first = toks.next().ok_or_else(|| err("empty statement".into()))?;
    if first == "parity" {
        let max = num(toks.next().ok_or_else(|| err("header needs the largest vertex id".into()))?, "the largest vertex id")?;
        if toks.next().is_some() || name.is_some() {
            return Err(err("unexpected text in header".into()));
        }
        return Ok(Kind::Header(max));
    }
    let id = num(first, "a vertex id")?;
    let priority = toks.next().ok_or_else(|| err(format!("vertex {id} lacks a priority")))?;
    let priority = priority.parse::<u32>().map_err(|_| err(format!("expected a priority, found `{priority}`")))?;
    let even = match toks.next() {
        Some("0") => true,
        Some("1") => false,
        Some(o) => return Err(err(format!("owner must be 0 or 1, found `{o}`"))),
        None => return Err(err(format!("vertex {id} lacks an owner"))),
    };
    let list: String = toks.collect();
    if list.is_empty() {
        return Err(ParityError::DeadEnd(id));
    }
    let mut succ = BTreeSet::new();
    for s in list.split(',') {
        succ.insert(num(s, "a successor id")?);
    }
    Ok(Kind::Vertex(VertexRec { id, priority, even, succ, name }))
}

pub fn parse_pgsolver(text: &str) -> Result<ParityGame, ParityError> {
    parse_pgsolver_with(text, ParseOptions::default())
}

pub fn parse_pgsolver_with(text: &str, opts: ParseOptions) -> Result<ParityGame, ParityError> {
    let mut sc = Scanner { text, pos: 0, line: 1 };
    let mut stmts = Vec::new();
    let mut lines = Vec::new();
    loop {
        let trivia = sc.trivia();
        if sc.rest().is_empty() {
            let layout = Layout { stmts, trailing: trivia };
            return build(layout, &lines, opts);
        }
        let line = sc.line;
        let raw = sc.body()?;
        let kind = parse_stmt(&raw, line)?;
        if matches!(kind, Kind::Header(_)) && !stmts.is_empty() {
            return Err(ParityError::Parse { line, msg: "the header must come first".into() });
        }
        stmts.push(Stmt { trivia, raw, kind });
        lines.push(line);
    }
}

fn build(layout: Layout, lines: &[usize], opts: ParseOptions) -> Result<ParityGame, ParityError> {
    let mut recs: Vec<Option<(&VertexRec, usize)>> = Vec::new();
    let mut header = None;
    for (st, &line) in layout.stmts.iter().zip(lines) {
        match &st.kind {
            Kind::Header(m) => header = Some((*m, line)),
            Kind::Vertex(r) => {
                if recs.len() <= r.id {
                    recs.resize(r.id + 1, None);
                }
                if recs[r.id].is_some() {
                    return Err(ParityError::Parse { line, msg: format!("vertex {} declared twice", r.id) });
                }
                recs[r.id] = Some((r, line));
            }
        }
    }
    let mut n = recs.len();
    if let Some((m, line)) = header {
        if m + 1 < n {
            return Err(ParityError::Parse { line, msg: format!("header declares largest id {m} but vertex {} exists", n - 1) });
        }
        n = m + 1;
        recs.resize(n, None);
    }
    let mut edges = Vec::new();
    let mut priority = Vec::with_capacity(n);
    let mut even = VertexSet::new();
    let mut names = Vec::with_capacity(n);
    let mut loops = Vec::new();
    for (v, rec) in recs.iter().enumerate() {
        let (r, line) = rec.ok_or_else(|| ParityError::Parse { line: lines.last().copied().unwrap_or(1), msg: format!("vertex {v} is not declared") })?;
        priority.push(r.priority);
        if r.even {
            even.insert(v);
        }
        names.push(r.name.clone());
        for &w in &r.succ {
            if w >= n {
                return Err(ParityError::Parse { line, msg: format!("successor {w} of vertex {v} is not declared") });
            }
            if w == v {
                if !opts.unroll_loops {
                    return Err(ParityError::SelfLoop { vertex: v, line });
                }
                loops.push(v);
            } else {
                edges.push((v, w));
            }
        }
    }
    for (i, &v) in loops.iter().enumerate() {
        let fresh = n + i;
        edges.push((v, fresh));
        edges.push((fresh, v));
        priority.push(priority[v]);
        if even.contains(v) {
            even.insert(fresh);
        }
        names.push(None);
    }
    let digraph = Digraph::new(n + loops.len(), edges)?;
    let mut g = ParityGame::new(digraph, even, priority)?.with_names(names)?;
    g.layout = Some(layout);
    Ok(g)
}

fn canonical_vertex(g: &ParityGame, v: usize) -> String {
    let succ: Vec<String> = g.successors(v).iter().map(|w| w.to_string()).collect();
    let mut s = format!("{v} {} {} {}", g.priority(v), if g.even_vertices().contains(v) { 0 } else { 1 }, succ.join(","));
    if let Some(name) = g.name(v) {
        let _ = write!(s, " \"{name}\"");
    }
    s
}

fn matches(g: &ParityGame, r: &VertexRec) -> bool {
    r.id < g.vertex_count()
        && r.priority == g.priority(r.id)
        && r.even == g.even_vertices().contains(r.id)
        && r.succ.iter().copied().eq(g.successors(r.id).iter())
        && r.name.as_deref() == g.name(r.id)
}

/// Writes the game in PGSolver format. A parsed game keeps its original
/// text for every unchanged statement; other vertices are written as
/// `<id> <priority> <owner> <succ,..> ["name"];`.
pub fn write_pgsolver(g: &ParityGame) -> String {
    let n = g.vertex_count();
    let mut out = String::new();
    let Some(layout) = &g.layout else {
        let _ = writeln!(out, "parity {};", n.saturating_sub(1));
        for v in 0..n {
            let _ = writeln!(out, "{};", canonical_vertex(g, v));
        }
        return out;
    };
    let mut written = vec![false; n];
    for st in &layout.stmts {
        match &st.kind {
            Kind::Header(m) => {
                out.push_str(&st.trivia);
                if *m + 1 == n {
                    out.push_str(&st.raw);
                } else {
                    let _ = write!(out, "parity {}", n.saturating_sub(1));
                }
            }
            Kind::Vertex(r) => {
                if r.id >= n {
                    continue;
                }
                out.push_str(&st.trivia);
                if matches(g, r) {
                    out.push_str(&st.raw);
                } else {
                    out.push_str(&canonical_vertex(g, r.id));
                }
                written[r.id] = true;
            }
        }
        out.push(';');
    }
    for v in (0..n).filter(|&v| !written[v]) {
        let _ = write!(out, "\n{};", canonical_vertex(g, v));
    }
    out.push_str(&layout.trailing);
    out
}
