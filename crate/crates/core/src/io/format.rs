//! MQLib edge lists and the bare 0-based fixture format.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::graph::{Graph, GraphError};

use super::IoError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    #[default]
    Mqlib,
    Edgelist,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mqlib" => Ok(InputFormat::Mqlib),
            "edgelist" => Ok(InputFormat::Edgelist),
            other => Err(format!(
                "unknown format {other:?} (expected mqlib or edgelist)"
            )),
        }
    }
}

fn parse_err(line: usize, reason: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        reason: reason.into(),
    }
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn token<T: FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, IoError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} {tok:?}")))
}

/// MQLib layout: a `<n> <m>` header, then exactly `m` lines `<u> <v> <w>`
/// with 1-based endpoints. `#` lines are comments. With `ignore_weights` the
/// result is unweighted.
pub fn parse_mqlib(text: &str, ignore_weights: bool) -> Result<Graph, IoError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let mut toks = header.split_whitespace();
    let n: usize = token(toks.next(), hline, "vertex count")?;
    let m: usize = token(toks.next(), hline, "edge count")?;
    if toks.next().is_some() {
        return Err(parse_err(hline, "header must be `<n> <m>`"));
    }

    let mut edges: Vec<(usize, usize, f64)> = Vec::with_capacity(m);
    let mut seen = std::collections::HashMap::with_capacity(m);
    let mut last_line = hline;
    for (ln, l) in lines {
        last_line = ln;
        if edges.len() == m {
            return Err(parse_err(ln, format!("more than {m} edge lines")));
        }
        let mut toks = l.split_whitespace();
        let u: usize = token(toks.next(), ln, "endpoint")?;
        let v: usize = token(toks.next(), ln, "endpoint")?;
        let w: f64 = token(toks.next(), ln, "weight")?;
        if toks.next().is_some() {
            return Err(parse_err(ln, "edge line must be `<u> <v> <w>`"));
        }
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(parse_err(ln, format!("vertex {x} out of range 1..={n}")));
            }
        }
        if u == v {
            return Err(parse_err(ln, format!("self-loop at vertex {u}")));
        }
        if !w.is_finite() || (w == 0.0 && !ignore_weights) {
            return Err(parse_err(ln, format!("unsupported weight {w}")));
        }
        let key = (u.min(v), u.max(v));
        if let Some(first) = seen.insert(key, ln) {
            return Err(parse_err(
                ln,
                format!("duplicate edge {} {} (first on line {first})", key.0, key.1),
            ));
        }
        edges.push((u - 1, v - 1, w));
    }
    if edges.len() != m {
        return Err(parse_err(
            last_line,
            format!("expected {m} edge lines, found {}", edges.len()),
        ));
    }
    let g = if ignore_weights {
        Graph::new(n, edges.into_iter().map(|(u, v, _)| (u, v)))
    } else {
        Graph::weighted(n, edges)
    };
    g.map_err(|e| parse_err(last_line, e.to_string()))
}

/// MQLib text for `g`; unweighted graphs get weight 1 on every edge.
pub fn emit_mqlib(g: &Graph) -> String {
    let mut s = String::new();
    writeln!(s, "{} {}", g.n(), g.m()).unwrap();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        writeln!(s, "{} {} {}", u + 1, v + 1, g.weight(i)).unwrap();
    }
    s
}

/// 0-based unweighted `u v` lines. A `# vertices <n>` comment fixes the
/// vertex count; otherwise it is one more than the largest endpoint.
pub fn parse_edgelist(text: &str) -> Result<Graph, IoError> {
    let mut declared = None;
    let mut edges = Vec::new();
    let mut max = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let l = raw.trim();
        if let Some(rest) = l.strip_prefix('#') {
            if let Some(count) = rest.trim().strip_prefix("vertices") {
                declared = Some(token::<usize>(Some(count.trim()), ln, "vertex count")?);
            }
            continue;
        }
        if l.is_empty() {
            continue;
        }
        let mut toks = l.split_whitespace();
        let u: usize = token(toks.next(), ln, "endpoint")?;
        let v: usize = token(toks.next(), ln, "endpoint")?;
        if toks.next().is_some() {
            return Err(parse_err(ln, "edge line must be `<u> <v>`"));
        }
        max = max.max(Some(u.max(v)));
        edges.push((ln, u, v));
    }
    let n = declared.unwrap_or(max.map_or(0, |m| m + 1));
    let mut seen = std::collections::HashSet::new();
    for &(ln, u, v) in &edges {
        let err = match Graph::new(n, [(u, v)]) {
            Err(e) => Some(e),
            Ok(_) if !seen.insert((u.min(v), u.max(v))) => {
                Some(GraphError::DuplicateEdge(u.min(v), u.max(v)))
            }
            Ok(_) => None,
        };
        if let Some(e) = err {
            return Err(parse_err(ln, e.to_string()));
        }
    }
    Ok(Graph::new(n, edges.into_iter().map(|(_, u, v)| (u, v)))?)
}

pub fn emit_edgelist(g: &Graph) -> String {
    let mut s = format!("# vertices {}\n", g.n());
    for &(u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}
