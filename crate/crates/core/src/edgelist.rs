//! Plain-text edge lists: a `n m` header followed by `m` lines of `u v`
//! with `u < v`. Lines starting with `#` are comments.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn two_numbers(line_no: usize, line: &str) -> Result<(usize, usize)> {
    let mut it = line.split(' ');
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| parse_err(line_no, "expected two integers"))?;
        if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(line_no, format!("not a decimal integer: {tok:?}")));
        }
        tok.parse().map_err(|_| parse_err(line_no, format!("integer overflow: {tok:?}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(parse_err(line_no, "trailing fields"));
    }
    Ok((a, b))
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut expected = 0;
    let mut line_no = 0;
    for line in reader.lines() {
        let line = line?;
        line_no += 1;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.starts_with('#') || line.is_empty() {
            continue;
        }
        let (a, b) = two_numbers(line_no, line)?;
        match graph.as_mut() {
            None => {
                if a == 0 {
                    return Err(parse_err(line_no, "n must be at least 1"));
                }
                if b > a * (a - 1) / 2 {
                    return Err(parse_err(line_no, format!("m = {b} exceeds n(n-1)/2")));
                }
                graph = Some(Graph::new(a)?);
                expected = b;
            }
            Some(g) => {
                if a >= b {
                    return Err(parse_err(line_no, format!("edge {a} {b}: need u < v")));
                }
                if b >= g.n() {
                    return Err(parse_err(line_no, format!("vertex {b} out of range")));
                }
                if !g.add_edge(a, b)? {
                    return Err(parse_err(line_no, format!("duplicate edge {a} {b}")));
                }
                if g.m() > expected {
                    return Err(parse_err(line_no, "more edges than declared"));
                }
            }
        }
    }
    let g = graph.ok_or_else(|| parse_err(line_no, "missing header"))?;
    if g.m() != expected {
        return Err(parse_err(line_no, format!("declared {expected} edges, found {}", g.m())));
    }
    Ok(g)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    read_edge_list(text.as_bytes())
}

/// Writes `g` in edge-list form, optionally preceded by a `# spec=...` line.
pub fn write_edge_list<W: Write>(g: &Graph, spec: Option<&str>, mut out: W) -> Result<()> {
    if let Some(s) = spec {
        writeln!(out, "# spec={s}")?;
    }
    writeln!(out, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn to_edge_list_string(g: &Graph, spec: Option<&str>) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, spec, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("edge list is ASCII")
}
