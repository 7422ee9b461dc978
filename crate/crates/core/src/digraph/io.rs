//! Arc-list text format.
//!
//! ```text
//! # comment
//! n m
//! u v      (m lines, 0-based)
//! ```

use std::fmt::Write;

use super::Digraph;
use crate::error::{Error, Result};

pub fn read_digraph(text: &str) -> Result<Digraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing `n m` header".into() })?;
    let [n, m] = parse_pair(hline, header, "header")?;

    let mut arcs = Vec::with_capacity(m);
    for (line, l) in lines {
        if arcs.len() == m {
            return Err(Error::Parse { line, msg: format!("more than the declared {m} arcs") });
        }
        let [u, v] = parse_pair(line, l, "arc")?;
        arcs.push((u, v));
    }
    if arcs.len() != m {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("header declares {m} arcs, found {}", arcs.len()),
        });
    }
    Digraph::from_arcs(n, arcs)
}

fn parse_pair(line: usize, l: &str, what: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = l.split_whitespace().collect();
    let bad = || Error::Parse { line, msg: format!("malformed {what} {l:?}") };
    if fields.len() != 2 {
        return Err(bad());
    }
    let a = fields[0].parse().map_err(|_| bad())?;
    let b = fields[1].parse().map_err(|_| bad())?;
    Ok([a, b])
}

pub fn write_digraph(d: &Digraph) -> String {
    let mut s = String::with_capacity(8 * (d.m() + 1));
    writeln!(s, "{} {}", d.n(), d.m()).unwrap();
    for (u, v) in d.arcs() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}
