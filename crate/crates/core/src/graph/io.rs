//! Readers and writers for Matrix Market, DIMACS and plain edge-list files.
//!
//! Every reader treats the input as an undirected pattern: values are
//! ignored, diagonal entries are dropped as self-loops and repeated pairs
//! collapse into one edge. The drop counts come back in [`LoadSummary`].

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    MatrixMarket,
    Dimacs,
    EdgeList,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "matrix-market" | "mtx" | "mm" => Ok(GraphFormat::MatrixMarket),
            "dimacs" | "col" => Ok(GraphFormat::Dimacs),
            "edge-list" | "edgelist" | "el" | "txt" => Ok(GraphFormat::EdgeList),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

impl GraphFormat {
    /// Guesses the format from a file extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?;
        match ext.to_ascii_lowercase().as_str() {
            "mtx" => Some(GraphFormat::MatrixMarket),
            "col" | "dimacs" => Some(GraphFormat::Dimacs),
            "el" | "edges" | "txt" => Some(GraphFormat::EdgeList),
            _ => None,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            GraphFormat::MatrixMarket => "mtx",
            GraphFormat::Dimacs => "col",
            GraphFormat::EdgeList => "el",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadSummary {
    pub format: GraphFormat,
    pub entries: usize,
    pub self_loops: usize,
    pub duplicates: usize,
}

pub fn load_graph(path: impl AsRef<Path>, format: GraphFormat) -> Result<(Graph, LoadSummary)> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_graph(BufReader::new(file), format, path)
}

pub fn save_graph(g: &Graph, path: impl AsRef<Path>, format: GraphFormat) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_graph(g, format, &mut out)
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(path, e))
}

pub fn write_graph(g: &Graph, format: GraphFormat, out: &mut impl Write) -> std::io::Result<()> {
    match format {
        GraphFormat::MatrixMarket => {
            writeln!(out, "%%MatrixMarket matrix coordinate pattern symmetric")?;
            writeln!(out, "{} {} {}", g.n(), g.n(), g.m())?;
            for &(u, v) in g.edges() {
                writeln!(out, "{} {}", v + 1, u + 1)?;
            }
        }
        GraphFormat::Dimacs => {
            writeln!(out, "p edge {} {}", g.n(), g.m())?;
            for &(u, v) in g.edges() {
                writeln!(out, "e {} {}", u + 1, v + 1)?;
            }
        }
        GraphFormat::EdgeList => {
            writeln!(out, "# vertices {} edges {}", g.n(), g.m())?;
            for &(u, v) in g.edges() {
                writeln!(out, "{u} {v}")?;
            }
        }
    }
    Ok(())
}

struct LineCtx<'a> {
    path: &'a Path,
    line: usize,
}

impl LineCtx<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.to_path_buf(),
            line: self.line,
            message: message.into(),
        }
    }

    fn number(&self, token: Option<&str>, what: &str) -> Result<usize> {
        let token = token.ok_or_else(|| self.err(format!("missing {what}")))?;
        token
            .parse()
            .map_err(|_| self.err(format!("invalid {what} `{token}`")))
    }

    fn one_based(&self, token: Option<&str>, n: usize, what: &str) -> Result<usize> {
        let v = self.number(token, what)?;
        if v == 0 || v > n {
            return Err(self.err(format!("{what} {v} outside 1..={n}")));
        }
        Ok(v - 1)
    }
}

/// Parses a graph from any reader; `source` only labels error messages.
pub fn parse_graph(
    reader: impl BufRead,
    format: GraphFormat,
    source: impl Into<PathBuf>,
) -> Result<(Graph, LoadSummary)> {
    let source = source.into();
    let (n, raw) = match format {
        GraphFormat::MatrixMarket => parse_matrix_market(reader, &source)?,
        GraphFormat::Dimacs => parse_dimacs(reader, &source)?,
        GraphFormat::EdgeList => parse_edge_list(reader, &source)?,
    };
    let entries = raw.len();
    let (graph, built) = Graph::build(n, raw)?;
    Ok((
        graph,
        LoadSummary {
            format,
            entries,
            self_loops: built.self_loops,
            duplicates: built.duplicates,
        },
    ))
}

fn read_lines<'a, R: BufRead + 'a>(
    reader: R,
    path: &'a Path,
) -> impl Iterator<Item = Result<(usize, String)>> + 'a {
    reader
        .lines()
        .enumerate()
        .map(move |(i, l)| l.map(|l| (i + 1, l)).map_err(|e| Error::io(path, e)))
}

fn parse_matrix_market(reader: impl BufRead, path: &Path) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = read_lines(reader, path);
    let (line, banner) = lines.next().transpose()?.ok_or_else(|| Error::Parse {
        path: path.to_path_buf(),
        line: 1,
        message: "empty file".into(),
    })?;
    let ctx = LineCtx { path, line };
    let tokens: Vec<String> = banner
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if tokens.first().map(String::as_str) != Some("%%matrixmarket") {
        return Err(ctx.err("missing %%MatrixMarket banner"));
    }
    match tokens.get(1).map(String::as_str) {
        Some("matrix") => {}
        Some(other) => return Err(Error::UnsupportedFormat(other.to_string())),
        None => return Err(ctx.err("banner lacks object type")),
    }
    match tokens.get(2).map(String::as_str) {
        Some("coordinate") => {}
        Some(other) => return Err(Error::UnsupportedFormat(other.to_string())),
        None => return Err(ctx.err("banner lacks storage format")),
    }
    if let Some(field) = tokens.get(3) {
        if !matches!(
            field.as_str(),
            "pattern" | "real" | "integer" | "complex" | "double"
        ) {
            return Err(Error::UnsupportedFormat(field.clone()));
        }
    }
    if let Some(sym) = tokens.get(4) {
        if !matches!(
            sym.as_str(),
            "general" | "symmetric" | "skew-symmetric" | "hermitian"
        ) {
            return Err(Error::UnsupportedFormat(sym.clone()));
        }
    }

    let mut size: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = line;
    for item in lines {
        let (line, text) = item?;
        last_line = line;
        let text = text.trim();
        if text.is_empty() || text.starts_with('%') {
            continue;
        }
        let ctx = LineCtx { path, line };
        let mut parts = text.split_whitespace();
        match size {
            None => {
                let rows = ctx.number(parts.next(), "row count")?;
                let cols = ctx.number(parts.next(), "column count")?;
                let nnz = ctx.number(parts.next(), "entry count")?;
                if rows != cols {
                    return Err(Error::NonSquare { rows, cols });
                }
                size = Some((rows, nnz));
                edges.reserve(nnz);
            }
            Some((n, nnz)) => {
                if edges.len() == nnz {
                    return Err(ctx.err(format!("more than the declared {nnz} entries")));
                }
                let i = ctx.one_based(parts.next(), n, "row index")?;
                let j = ctx.one_based(parts.next(), n, "column index")?;
                edges.push((i, j));
            }
        }
    }
    let (n, nnz) = size.ok_or_else(|| {
        LineCtx {
            path,
            line: last_line,
        }
        .err("missing size line")
    })?;
    if edges.len() != nnz {
        return Err(LineCtx {
            path,
            line: last_line,
        }
        .err(format!("expected {nnz} entries, found {}", edges.len())));
    }
    Ok((n, edges))
}

fn parse_dimacs(reader: impl BufRead, path: &Path) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for item in read_lines(reader, path) {
        let (line, text) = item?;
        last_line = line;
        let ctx = LineCtx { path, line };
        let mut parts = text.split_whitespace();
        match parts.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(ctx.err("duplicate problem line"));
                }
                match parts.next() {
                    Some("edge" | "col") => {}
                    Some(other) => return Err(Error::UnsupportedFormat(other.to_string())),
                    None => return Err(ctx.err("problem line lacks a format")),
                }
                n = Some(ctx.number(parts.next(), "vertex count")?);
                ctx.number(parts.next(), "edge count")?;
            }
            Some("e") => {
                let n = n.ok_or_else(|| ctx.err("edge before problem line"))?;
                let u = ctx.one_based(parts.next(), n, "endpoint")?;
                let v = ctx.one_based(parts.next(), n, "endpoint")?;
                edges.push((u, v));
            }
            Some(other) => return Err(ctx.err(format!("unknown line type `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| {
        LineCtx {
            path,
            line: last_line,
        }
        .err("missing problem line")
    })?;
    Ok((n, edges))
}

fn parse_edge_list(reader: impl BufRead, path: &Path) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;
    for item in read_lines(reader, path) {
        let (line, text) = item?;
        let ctx = LineCtx { path, line };
        let text = text.trim();
        if let Some(comment) = text.strip_prefix('#').or_else(|| text.strip_prefix('%')) {
            let mut tokens = comment.split_whitespace();
            if tokens.next() == Some("vertices") {
                declared = Some(ctx.number(tokens.next(), "vertex count")?);
            }
            continue;
        }
        if text.is_empty() {
            continue;
        }
        let mut parts = text.split_whitespace();
        let u = ctx.number(parts.next(), "endpoint")?;
        let v = ctx.number(parts.next(), "endpoint")?;
        max_id = max_id.max(Some(u.max(v)));
        edges.push((u, v));
    }
    let implied = max_id.map_or(0, |m| m + 1);
    let n = match declared {
        Some(d) if d < implied => {
            return Err(Error::VertexOutOfRange {
                vertex: implied - 1,
                n: d,
            })
        }
        Some(d) => d,
        None => implied,
    };
    Ok((n, edges))
}
