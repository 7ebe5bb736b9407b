//! Edge-list text and JSON graph formats.
//!
//! Text: a header `n k`, an optional `sides: a b c | d e f` line (first class
//! is the odd side), then `k` lines `u v`. Blank lines and `#` comments are
//! ignored. JSON: `{"n": .., "edges": [[u, v], ..], "sides": [[..], [..]]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sides: Option<(Vec<usize>, Vec<usize>)>,
}

pub fn parse_text(input: &str) -> Result<Graph> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let nums = parse_numbers(header, hline)?;
    let [n, k] = nums[..] else {
        return Err(Error::Parse {
            line: hline,
            msg: "header must be `n k`".into(),
        });
    };
    let mut sides = None;
    let mut edges = Vec::with_capacity(k);
    for (line, text) in lines {
        if let Some(rest) = text.strip_prefix("sides:") {
            if sides.is_some() || !edges.is_empty() {
                return Err(Error::Parse {
                    line,
                    msg: "sides line must directly follow the header".into(),
                });
            }
            let (a, b) = rest.split_once('|').ok_or(Error::Parse {
                line,
                msg: "sides line needs a `|` separator".into(),
            })?;
            sides = Some((parse_numbers(a, line)?, parse_numbers(b, line)?));
            continue;
        }
        let pair = parse_numbers(text, line)?;
        let [u, v] = pair[..] else {
            return Err(Error::Parse {
                line,
                msg: "edge line must be `u v`".into(),
            });
        };
        edges.push((u, v));
    }
    if edges.len() != k {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {k} edges, found {}", edges.len()),
        });
    }
    Graph::build(n, &edges, sides)
}

fn parse_numbers(text: &str, line: usize) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("`{t}` is not a vertex id"),
            })
        })
        .collect()
}

pub fn parse_json(input: &str) -> Result<Graph> {
    let raw: GraphJson = serde_json::from_str(input)?;
    Graph::build(raw.n, &raw.edges, raw.sides)
}

/// Parses either format; JSON is recognised by a leading `{`.
pub fn parse(input: &str) -> Result<Graph> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

pub fn read(path: impl AsRef<Path>) -> Result<Graph> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn to_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    if let Some(s) = g.sides() {
        let join = |v: Vec<usize>| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        out.push_str(&format!(
            "sides: {} | {}\n",
            join(s.odd().to_vec()),
            join(s.even().to_vec())
        ));
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn to_json(g: &Graph) -> String {
    let raw = GraphJson {
        n: g.n(),
        edges: g.edges().to_vec(),
        sides: g.sides().map(|s| (s.odd().to_vec(), s.even().to_vec())),
    };
    serde_json::to_string(&raw).expect("graph JSON is always serialisable")
}

/// Writes JSON when the path ends in `.json`, text otherwise.
pub fn write(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let body = if path.extension().is_some_and(|e| e == "json") {
        to_json(g)
    } else {
        to_text(g)
    };
    std::fs::write(path, body)?;
    Ok(())
}
