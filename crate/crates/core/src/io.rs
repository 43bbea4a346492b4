//! Text formats.
//!
//! `pagraph v1`:
//!
//! ```text
//! pagraph 1 m=<m> delta=<p>/<q> n=<n> seed=<u64>
//! <child> <parent>      (one line per draw, in draw order)
//! ```
//!
//! The `m` initial edges are written as `1 0`, so a file holds exactly `m * n`
//! draw lines.
//!
//! `pattern v1`:
//!
//! ```text
//! <k> <e>
//! <i> <j>               (e lines, 1 <= i < j <= k)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::census::OrderedPattern;
use crate::error::{Error, Result};
use crate::graph::{ArrivalGraph, SimpleView, Vertex};
use crate::params::{format_ratio, parse_delta, ModelParams};

/// A graph together with the parameters recorded in its header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub params: ModelParams,
    pub graph: ArrivalGraph,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn write_pagraph<W: Write>(mut w: W, params: &ModelParams, g: &ArrivalGraph) -> Result<()> {
    if params.m() != g.m() {
        return Err(Error::InvalidParams(format!(
            "graph has m={} but params have m={}",
            g.m(),
            params.m()
        )));
    }
    let mut buf = String::with_capacity(16 * g.draws().len() + 64);
    writeln!(
        buf,
        "pagraph 1 m={} delta={} n={} seed={}",
        params.m(),
        format_ratio(&params.delta()),
        g.last_index(),
        params.seed()
    )
    .expect("writing to a String cannot fail");
    for &(c, p) in g.draws() {
        writeln!(buf, "{c} {p}").expect("writing to a String cannot fail");
    }
    w.write_all(buf.as_bytes())?;
    Ok(())
}

pub fn pagraph_to_string(params: &ModelParams, g: &ArrivalGraph) -> Result<String> {
    let mut out = Vec::new();
    write_pagraph(&mut out, params, g)?;
    Ok(String::from_utf8(out).expect("pagraph output is ASCII"))
}

fn header_field<'a>(token: Option<&'a str>, key: &str) -> Result<&'a str> {
    token
        .and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| parse_err(1, format!("expected `{key}=` in header")))
}

pub fn read_pagraph<R: BufRead>(r: R) -> Result<GraphFile> {
    let mut lines = r.lines();
    let header = lines.next().ok_or_else(|| parse_err(1, "empty file"))??;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("pagraph") || tokens.next() != Some("1") {
        return Err(parse_err(1, "expected `pagraph 1` header"));
    }
    let m: usize = header_field(tokens.next(), "m")?
        .parse()
        .map_err(|_| parse_err(1, "bad m"))?;
    let delta = parse_delta(header_field(tokens.next(), "delta")?)
        .map_err(|e| parse_err(1, e.to_string()))?;
    let n: Vertex = header_field(tokens.next(), "n")?
        .parse()
        .map_err(|_| parse_err(1, "bad n"))?;
    let seed: u64 = header_field(tokens.next(), "seed")?
        .parse()
        .map_err(|_| parse_err(1, "bad seed"))?;
    if tokens.next().is_some() {
        return Err(parse_err(1, "trailing header fields"));
    }
    let params = ModelParams::new(m, delta, seed).map_err(|e| parse_err(1, e.to_string()))?;
    if n == 0 {
        return Err(parse_err(1, "n must be at least 1"));
    }

    let mut draws = Vec::with_capacity(m * n as usize);
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 2;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace().map(str::parse::<Vertex>);
        let (Some(Ok(c)), Some(Ok(p)), None) = (it.next(), it.next(), it.next()) else {
            return Err(parse_err(
                lineno,
                format!("expected `child parent`, got `{line}`"),
            ));
        };
        if p >= c {
            return Err(parse_err(
                lineno,
                format!("parent {p} is not older than child {c}"),
            ));
        }
        draws.push((c, p));
    }
    if draws.len() != m * n as usize {
        return Err(parse_err(
            1,
            format!(
                "header promises {} draws (m * n), body has {}",
                m * n as usize,
                draws.len()
            ),
        ));
    }
    let graph = ArrivalGraph::from_draws(m, &draws)?;
    Ok(GraphFile { params, graph })
}

pub fn save_pagraph(path: &Path, params: &ModelParams, g: &ArrivalGraph) -> Result<()> {
    let file = fs::File::create(path)?;
    write_pagraph(std::io::BufWriter::new(file), params, g)
}

pub fn load_pagraph(path: &Path) -> Result<GraphFile> {
    read_pagraph(std::io::BufReader::new(fs::File::open(path)?))
}

pub fn write_pattern(p: &OrderedPattern) -> String {
    let mut s = format!("{} {}\n", p.k(), p.edge_count());
    for (i, j) in p.edges() {
        writeln!(s, "{i} {j}").expect("writing to a String cannot fail");
    }
    s
}

pub fn read_pattern(text: &str) -> Result<OrderedPattern> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, head) = lines.next().ok_or_else(|| parse_err(1, "empty pattern"))?;
    let nums = |lineno: usize, l: &str| -> Result<(usize, usize)> {
        let mut it = l.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(parse_err(
                lineno,
                format!("expected two integers, got `{l}`"),
            )),
        }
    };
    let (k, e) = nums(1, head)?;
    let mut edges = Vec::with_capacity(e);
    for (lineno, l) in lines {
        let (i, j) = nums(lineno, l)?;
        if !(1 <= i && i < j && j <= k) {
            return Err(parse_err(
                lineno,
                format!("edge `{l}` violates 1 <= i < j <= {k}"),
            ));
        }
        edges.push((i, j));
    }
    if edges.len() != e {
        return Err(parse_err(
            1,
            format!("header promises {e} edges, found {}", edges.len()),
        ));
    }
    OrderedPattern::new(k, edges)
}

/// A pattern as a simple graph on `0..k`, label `i` becoming vertex `i - 1`.
pub fn pattern_view(p: &OrderedPattern) -> SimpleView {
    SimpleView::from_edges(
        p.k(),
        p.edges()
            .map(|(i, j)| ((i - 1) as Vertex, (j - 1) as Vertex)),
    )
    .expect("pattern edges are in range")
}

/// Loads either file format as a simple graph.
pub fn load_simple_view(path: &Path) -> Result<SimpleView> {
    let text = fs::read_to_string(path)?;
    if text.trim_start().starts_with("pagraph") {
        Ok(read_pagraph(text.as_bytes())?.graph.simple_view())
    } else {
        Ok(pattern_view(&read_pattern(&text)?))
    }
}
