//! BEL ("bipartite edge list") text format.
//!
//! ```text
//! c optional comment lines start with 'c'
//! p bip <n_x> <n_y> <m>
//! e <x> <y>        (exactly m lines, 0-based indices)
//! ```
//!
//! Output always lists edges in lexicographic order with LF line endings.

use std::fmt::Write as _;

use super::BipartiteGraph;
use crate::error::{Error, Result};

/// Serialises a graph to BEL.
pub fn to_bel(g: &BipartiteGraph) -> String {
    let edges = g.edges();
    let mut out = format!("p bip {} {} {}\n", g.n_x(), g.n_y(), edges.len());
    for (x, y) in edges {
        // Writing to a String cannot fail.
        let _ = writeln!(out, "e {x} {y}");
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn numbers<const N: usize>(line: usize, fields: &[&str]) -> Result<[usize; N]> {
    if fields.len() != N {
        return Err(parse_err(
            line,
            format!("expected {N} integers, found {} fields", fields.len()),
        ));
    }
    let mut out = [0usize; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f
            .parse()
            .map_err(|_| parse_err(line, format!("not a non-negative integer: {f:?}")))?;
    }
    Ok(out)
}

/// Parses BEL text. Errors carry the 1-based line number at fault.
pub fn parse_bel(text: &str) -> Result<BipartiteGraph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw).trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        last_line = line_no;
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line_no, "duplicate header line"));
                }
                if fields.get(1) != Some(&"bip") {
                    return Err(parse_err(
                        line_no,
                        "header must read 'p bip <n_x> <n_y> <m>'",
                    ));
                }
                let [n_x, n_y, m] = numbers::<3>(line_no, &fields[2..])?;
                header = Some((n_x, n_y, m));
            }
            "e" => {
                let Some((n_x, n_y, m)) = header else {
                    return Err(parse_err(line_no, "edge line before header"));
                };
                let [x, y] = numbers::<2>(line_no, &fields[1..])?;
                if x >= n_x || y >= n_y {
                    return Err(parse_err(
                        line_no,
                        format!("edge ({x}, {y}) out of range for a {n_x}+{n_y} graph"),
                    ));
                }
                if edges.len() == m {
                    return Err(parse_err(
                        line_no,
                        format!("more than the declared {m} edges"),
                    ));
                }
                edges.push((x, y));
            }
            other => {
                return Err(parse_err(line_no, format!("unknown line type {other:?}")));
            }
        }
    }
    let Some((n_x, n_y, m)) = header else {
        return Err(parse_err(last_line.max(1), "missing 'p bip' header"));
    };
    if edges.len() != m {
        return Err(parse_err(
            last_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    BipartiteGraph::build(n_x, n_y, &edges).map_err(|e| parse_err(1, e.to_string()))
}
