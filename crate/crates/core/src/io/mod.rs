//! Instance file formats.
//!
//! | extension | content |
//! |-----------|---------|
//! | `.mtx` | `linear rational R N` or `linear cyclotomic M R N`, then `R` rows of `N` entries |
//! | `.gg`  | `gain R T`, then `joint i` and `edge i j g` lines (1-based vertices) |
//! | `.inc` | `incidence N flags=...`, then `line e1 e2 ...` lines (0-based elements) |
//! | `.rk`  | construction script, see [`script`] |
//!
//! `#` starts a comment in every format. Rational entries are `p/q` or
//! integers; a cyclotomic entry is its comma-separated coefficient list,
//! constant term first, of length deg(Φ_M).

pub mod script;

use std::fmt::Write as _;
use std::path::Path;

use crate::algebra::{CyclotomicNumber, ExactMatrix, Matrix, Rational};
use crate::error::{Error, Result};
use crate::generators::{dowling, gain_graph, vandermonde};
use crate::instance::{Instance, InstanceMeta, Representability};
use crate::matroid::{GainElement, Kind, Matroid, Recipe};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Matrix,
    Gain,
    Incidence,
    Script,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Matrix => "mtx",
            Format::Gain => "gg",
            Format::Incidence => "inc",
            Format::Script => "rk",
        }
    }

    pub fn from_extension(ext: &str) -> Option<Format> {
        [Format::Matrix, Format::Gain, Format::Incidence, Format::Script]
            .into_iter()
            .find(|f| f.extension() == ext)
    }

    pub fn from_path(path: &Path) -> Result<Format> {
        path.extension()
            .and_then(|e| e.to_str())
            .and_then(Format::from_extension)
            .ok_or_else(|| Error::Parse(format!("unrecognised instance file extension: {}", path.display())))
    }
}

/// Non-blank lines with comments stripped, numbered from 1.
pub(crate) struct Lines<'a> {
    source: &'a str,
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str, source: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, line)| {
                let body = line.split('#').next().unwrap_or("");
                let tokens: Vec<&str> = body.split_whitespace().collect();
                (!tokens.is_empty()).then_some((i + 1, tokens))
            })
            .collect();
        Lines { source, items, pos: 0 }
    }

    pub(crate) fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let item = self.items.get(self.pos).cloned();
        self.pos += 1;
        item
    }

    pub(crate) fn err(&self, line: usize, message: impl Into<String>) -> Error {
        Error::ParseAt { path: self.source.to_owned(), line, message: message.into() }
    }

    fn last_line(&self) -> usize {
        self.items.last().map_or(1, |(l, _)| *l)
    }

    fn header(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        self.next().ok_or_else(|| self.err(1, format!("missing `{what}` header")))
    }
}

pub(crate) fn parse_num<T: std::str::FromStr>(lines: &Lines, line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse().map_err(|_| lines.err(line, format!("bad {what} `{tok}`")))
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom() == &1.into() {
        q.numer().to_string()
    } else {
        q.to_string()
    }
}

/// Name used for an instance read from `path`: the file stem.
pub fn instance_name(path: &Path) -> String {
    path.file_stem().and_then(|s| s.to_str()).unwrap_or("instance").to_owned()
}

/// Parses instance text; `source` is used in error messages and `dir`
/// resolves relative `load` paths in scripts.
pub fn parse_instance(text: &str, format: Format, name: &str, source: &str, dir: Option<&Path>) -> Result<Instance> {
    let (matroid, flags) = match format {
        Format::Matrix => parse_matrix(text, source)?,
        Format::Gain => parse_gain(text, source)?,
        Format::Incidence => parse_incidence(text, source)?,
        Format::Script => script::parse(text, source, dir)?,
    };
    Ok(Instance::new(InstanceMeta::new(name, flags), matroid))
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let format = Format::from_path(path)?;
    let text = std::fs::read_to_string(path)?;
    parse_instance(&text, format, &instance_name(path), &path.display().to_string(), path.parent())
}

pub fn serialize(inst: &Instance, format: Format) -> Result<String> {
    let m = &inst.matroid;
    match format {
        Format::Matrix => write_matrix(m),
        Format::Gain => write_gain(m),
        Format::Incidence => write_incidence(m, inst.meta.representability),
        Format::Script => script::write(m),
    }
}

pub fn write_instance(inst: &Instance, path: &Path) -> Result<()> {
    let text = serialize(inst, Format::from_path(path)?)?;
    std::fs::write(path, text)?;
    Ok(())
}

fn parse_matrix(text: &str, source: &str) -> Result<(Matroid, Representability)> {
    let mut lines = Lines::new(text, source);
    let (hl, header) = lines.header("linear")?;
    let (order, rows, cols) = match header.as_slice() {
        ["linear", "rational", r, n] => {
            (None, parse_num(&lines, hl, r, "row count")?, parse_num(&lines, hl, n, "column count")?)
        }
        ["linear", "cyclotomic", m, r, n] => {
            let m: u32 = parse_num(&lines, hl, m, "cyclotomic order")?;
            if m == 0 {
                return Err(lines.err(hl, "cyclotomic order must be positive"));
            }
            (Some(m), parse_num(&lines, hl, r, "row count")?, parse_num(&lines, hl, n, "column count")?)
        }
        _ => return Err(lines.err(hl, "expected `linear rational R N` or `linear cyclotomic M R N`")),
    };
    let mut grid: Vec<Vec<&str>> = Vec::with_capacity(rows);
    let mut row_lines = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (l, toks) = lines
            .next()
            .ok_or_else(|| lines.err(lines.last_line(), format!("expected {rows} matrix rows")))?;
        if toks.len() != cols {
            return Err(lines.err(l, format!("expected {cols} entries, found {}", toks.len())));
        }
        grid.push(toks);
        row_lines.push(l);
    }
    if let Some((l, _)) = lines.next() {
        return Err(lines.err(l, "unexpected content after the matrix"));
    }
    let matrix = match order {
        None => {
            let mut out = Vec::with_capacity(rows);
            for (toks, &l) in grid.iter().zip(&row_lines) {
                let row = toks
                    .iter()
                    .map(|t| parse_num::<Rational>(&lines, l, t, "rational entry"))
                    .collect::<Result<Vec<_>>>()?;
                out.push(row);
            }
            ExactMatrix::Rational(Matrix::from_rows(out, cols)?)
        }
        Some(m) => {
            let degree = CyclotomicNumber::one(m).degree();
            let mut out = Vec::with_capacity(rows);
            for (toks, &l) in grid.iter().zip(&row_lines) {
                let mut row = Vec::with_capacity(cols);
                for t in toks {
                    let coeffs = t
                        .split(',')
                        .map(|c| parse_num::<Rational>(&lines, l, c, "coefficient"))
                        .collect::<Result<Vec<_>>>()?;
                    if coeffs.len() != degree {
                        return Err(lines.err(l, format!("entry `{t}` needs {degree} coefficients")));
                    }
                    row.push(CyclotomicNumber::new(m, &coeffs));
                }
                out.push(row);
            }
            ExactMatrix::Cyclotomic { order: m, matrix: Matrix::from_rows(out, cols)? }
        }
    };
    let flags = if order.is_some() { Representability::COMPLEX } else { Representability::REAL };
    Ok((Matroid::linear(matrix)?, flags))
}

fn write_matrix(m: &Matroid) -> Result<String> {
    let owned;
    let matrix = match m.kind() {
        Kind::Linear(l) => l.matrix(),
        Kind::Uniform { rank } => {
            owned = vandermonde(*rank, m.len())?;
            &owned
        }
        _ => return Err(Error::Unserializable("only linear and uniform matroids have a matrix file".into())),
    };
    let mut out = String::new();
    match matrix {
        ExactMatrix::Rational(a) => {
            writeln!(out, "linear rational {} {}", a.rows(), a.cols()).unwrap();
            for i in 0..a.rows() {
                let row: Vec<String> = a.row_slice(i).iter().map(fmt_rational).collect();
                writeln!(out, "{}", row.join(" ")).unwrap();
            }
        }
        ExactMatrix::Cyclotomic { order, matrix: a } => {
            writeln!(out, "linear cyclotomic {order} {} {}", a.rows(), a.cols()).unwrap();
            for i in 0..a.rows() {
                let row: Vec<String> = a
                    .row_slice(i)
                    .iter()
                    .map(|z| z.coeffs().iter().map(fmt_rational).collect::<Vec<_>>().join(","))
                    .collect();
                writeln!(out, "{}", row.join(" ")).unwrap();
            }
        }
    }
    Ok(out)
}

fn parse_gain(text: &str, source: &str) -> Result<(Matroid, Representability)> {
    let mut lines = Lines::new(text, source);
    let (hl, header) = lines.header("gain")?;
    let (r, t): (usize, u32) = match header.as_slice() {
        ["gain", r, t] => (parse_num(&lines, hl, r, "rank")?, parse_num(&lines, hl, t, "group order")?),
        _ => return Err(lines.err(hl, "expected `gain R T`")),
    };
    if t == 0 {
        return Err(lines.err(hl, "group order must be positive"));
    }
    let vertex = |lines: &Lines, l: usize, tok: &str| -> Result<usize> {
        let v: usize = parse_num(lines, l, tok, "vertex")?;
        if v == 0 || v > r {
            return Err(lines.err(l, format!("vertex {v} outside 1..={r}")));
        }
        Ok(v - 1)
    };
    let mut elements = Vec::new();
    while let Some((l, toks)) = lines.next() {
        let el = match toks.as_slice() {
            ["joint", i] => GainElement::Joint(vertex(&lines, l, i)?),
            ["edge", i, j, g] => {
                let (i, j) = (vertex(&lines, l, i)?, vertex(&lines, l, j)?);
                let gain: u32 = parse_num(&lines, l, g, "gain")?;
                if gain >= t {
                    return Err(lines.err(l, format!("gain {gain} outside 0..{t}")));
                }
                if i >= j {
                    return Err(lines.err(l, "edge endpoints must satisfy i < j"));
                }
                GainElement::Edge { i, j, gain }
            }
            _ => return Err(lines.err(l, "expected `joint i` or `edge i j g`")),
        };
        elements.push(el);
    }
    let flags = if t <= 2 { Representability::REAL } else { Representability::COMPLEX };
    // a complete Dowling geometry keeps its recipe
    for joints in [true, false] {
        if let Ok(dg) = dowling(r, t, !joints) {
            if let Kind::GainGraph(g) = dg.kind() {
                if g.elements() == elements.as_slice() {
                    return Ok((dg, flags));
                }
            }
        }
    }
    let m = gain_graph(r, t, elements).map_err(|e| lines.err(hl, e.to_string()))?;
    Ok((m, flags))
}

fn write_gain(m: &Matroid) -> Result<String> {
    let Kind::GainGraph(g) = m.kind() else {
        return Err(Error::Unserializable("only gain-graph matroids have a gain file".into()));
    };
    let mut out = format!("gain {} {}\n", g.vertices(), g.group_order());
    for el in g.elements() {
        match *el {
            GainElement::Joint(v) => writeln!(out, "joint {}", v + 1).unwrap(),
            GainElement::Edge { i, j, gain } => writeln!(out, "edge {} {} {gain}", i + 1, j + 1).unwrap(),
        }
    }
    Ok(out)
}

fn parse_incidence(text: &str, source: &str) -> Result<(Matroid, Representability)> {
    let mut lines = Lines::new(text, source);
    let (hl, header) = lines.header("incidence")?;
    let (n, flags) = match header.as_slice() {
        ["incidence", n] => (parse_num(&lines, hl, n, "size")?, Representability::parse_list("").unwrap()),
        ["incidence", n, f] => {
            let list = f
                .strip_prefix("flags=")
                .ok_or_else(|| lines.err(hl, "expected `flags=...`"))?;
            let flags = Representability::parse_list(list).map_err(|e| lines.err(hl, e))?;
            (parse_num(&lines, hl, n, "size")?, flags)
        }
        _ => return Err(lines.err(hl, "expected `incidence N flags=...`")),
    };
    let mut long = Vec::new();
    while let Some((l, toks)) = lines.next() {
        match toks.split_first() {
            Some((&"line", rest)) => {
                let pts = rest
                    .iter()
                    .map(|t| parse_num::<usize>(&lines, l, t, "element"))
                    .collect::<Result<Vec<_>>>()?;
                long.push(pts);
            }
            _ => return Err(lines.err(l, "expected `line e1 e2 ...`")),
        }
    }
    let m = Matroid::incidence(n, long).map_err(|e| lines.err(hl, e.to_string()))?;
    Ok((m, flags))
}

fn write_incidence(m: &Matroid, flags: Representability) -> Result<String> {
    let Kind::Incidence(inc) = m.kind() else {
        return Err(Error::Unserializable("only incidence matroids have an incidence file".into()));
    };
    let mut out = format!("incidence {} flags={}\n", m.len(), flags.to_list());
    for line in inc.lines() {
        let pts: Vec<String> = line.iter().map(|e| e.to_string()).collect();
        writeln!(out, "line {}", pts.join(" ")).unwrap();
    }
    Ok(out)
}

/// The natural file format for a matroid.
pub fn default_format(m: &Matroid) -> Format {
    match m.kind() {
        Kind::Linear(_) if m.recipe() == Some(&Recipe::GraphicK4) => Format::Script,
        Kind::Linear(_) => Format::Matrix,
        Kind::GainGraph(_) => Format::Gain,
        Kind::Incidence(_) => Format::Incidence,
        Kind::Uniform { .. } | Kind::Derived(_) => Format::Script,
    }
}
