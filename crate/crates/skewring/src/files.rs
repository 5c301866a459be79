//! Plain-text formats: generator elements, generator matrices, cocycle tables
//! and lists of semilinear maps. Blank lines and `#` comments are ignored
//! except where a header is required.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use skewring_core::semilinear::{GammaGroup, SemilinearMap};
use skewring_core::{Cocycle, Code, Fe, Field, RingCtx, RingElem};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{line}:{col}: {message}", path.display())]
    Syntax { path: PathBuf, line: usize, col: usize, message: String },
    #[error("{}{}: {key}: {message}", path.display(), line.map(|l| format!(":{l}")).unwrap_or_default())]
    Invalid { path: PathBuf, line: Option<usize>, key: String, message: String },
    #[error("{}:{line}: {message}", path.display())]
    Line { path: PathBuf, line: usize, message: String },
    #[error("{}: {what} is empty", path.display())]
    Empty { path: PathBuf, what: &'static str },
}

pub fn read_to_string(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.to_path_buf(), source })
}

pub fn write_string(path: &Path, text: &str) -> Result<(), FormatError> {
    fs::write(path, text).map_err(|source| FormatError::Io { path: path.to_path_buf(), source })
}

/// Non-blank, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn line_err(path: &Path, line: usize, e: impl ToString) -> FormatError {
    FormatError::Line { path: path.to_path_buf(), line, message: e.to_string() }
}

/// One ring element per line, in `coeff*label + ...` or positional form.
pub fn read_generators(path: &Path, ctx: &Arc<RingCtx>) -> Result<Vec<RingElem>, FormatError> {
    let text = read_to_string(path)?;
    parse_generators(path, &text, ctx)
}

pub fn parse_generators(path: &Path, text: &str, ctx: &Arc<RingCtx>) -> Result<Vec<RingElem>, FormatError> {
    let gens = content_lines(text)
        .map(|(i, l)| ctx.parse(l).map_err(|e| line_err(path, i, e)))
        .collect::<Result<Vec<_>, _>>()?;
    if gens.is_empty() {
        return Err(FormatError::Empty { path: path.to_path_buf(), what: "generator file" });
    }
    Ok(gens)
}

/// `# field p m poly=c0,c1,... n k`, then one row per line.
pub fn render_genmat(code: &Code) -> String {
    let f = code.field();
    let poly: Vec<String> = f.poly().iter().map(|c| c.to_string()).collect();
    let mut out = format!("# field {} {} poly={} {} {}\n", f.p(), f.m(), poly.join(","), code.n(), code.k());
    for row in code.genmat() {
        let entries: Vec<String> = row.iter().map(|&x| f.render(x)).collect();
        writeln!(out, "{}", entries.join(" ")).expect("string write");
    }
    out
}

pub fn read_genmat(path: &Path) -> Result<Code, FormatError> {
    let text = read_to_string(path)?;
    parse_genmat(path, &text)
}

pub fn parse_genmat(path: &Path, text: &str) -> Result<Code, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or(FormatError::Empty { path: path.to_path_buf(), what: "generator matrix" })?;
    let bad_header = || line_err(path, hl, "expected header `# field p m poly=<coeffs> n k`");
    let parts: Vec<&str> = header.strip_prefix('#').ok_or_else(bad_header)?.split_whitespace().collect();
    if parts.len() != 6 || parts[0] != "field" {
        return Err(bad_header());
    }
    let num = |s: &str| s.trim_start_matches("n=").trim_start_matches("k=").parse::<usize>().map_err(|_| bad_header());
    let (p, m) = (num(parts[1])? as u32, num(parts[2])? as u32);
    let poly = parts[3]
        .strip_prefix("poly=")
        .ok_or_else(bad_header)?
        .split(',')
        .map(|c| c.trim().parse::<u32>().map_err(|_| bad_header()))
        .collect::<Result<Vec<_>, _>>()?;
    let (n, k) = (num(parts[4])?, num(parts[5])?);
    let field = Arc::new(Field::new(p, m, &poly).map_err(|e| line_err(path, hl, e))?);
    let mut rows = Vec::new();
    for (i, l) in lines {
        let l = l.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let row = l.split_whitespace().map(|t| field.parse(t)).collect::<Result<Vec<Fe>, _>>().map_err(|e| line_err(path, i, e))?;
        if row.len() != n {
            return Err(line_err(path, i, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    let code = Code::from_matrix(field, n, rows).map_err(|e| line_err(path, hl, e))?;
    if code.k() != k {
        return Err(line_err(path, hl, format!("header says k = {k} but the rows have rank {}", code.k())));
    }
    Ok(code)
}

/// `n` lines of `n` field elements, `α(g_i, g_j)` in row `i`, column `j`.
pub fn render_cocycle(alpha: &Cocycle, field: &Field) -> String {
    let mut out = String::new();
    for row in alpha.rows() {
        let entries: Vec<String> = row.iter().map(|&x| field.render(x)).collect();
        writeln!(out, "{}", entries.join(" ")).expect("string write");
    }
    out
}

pub fn read_cocycle(path: &Path, field: &Field) -> Result<Cocycle, FormatError> {
    let text = read_to_string(path)?;
    parse_cocycle(path, &text, field)
}

pub fn parse_cocycle(path: &Path, text: &str, field: &Field) -> Result<Cocycle, FormatError> {
    let rows = content_lines(text)
        .map(|(i, l)| l.split_whitespace().map(|t| field.parse(t)).collect::<Result<Vec<_>, _>>().map_err(|e| line_err(path, i, e)))
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Err(FormatError::Empty { path: path.to_path_buf(), what: "cocycle table" });
    }
    Cocycle::from_rows(rows).map_err(|e| FormatError::Invalid { path: path.to_path_buf(), line: None, key: "table".into(), message: e.to_string() })
}

/// One `gamma=k perm=... diag=...` map per line; the group is their closure.
pub fn parse_gamma_group(path: &Path, text: &str, field: &Arc<Field>, n: usize) -> Result<GammaGroup, FormatError> {
    let maps = content_lines(text)
        .map(|(i, l)| {
            let u = SemilinearMap::parse(field, l).map_err(|e| line_err(path, i, e))?;
            if u.n() != n {
                return Err(line_err(path, i, format!("map acts on {} coordinates, expected {n}", u.n())));
            }
            Ok(u)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if maps.is_empty() {
        return Err(FormatError::Empty { path: path.to_path_buf(), what: "group file" });
    }
    GammaGroup::generate(field.clone(), n, maps).map_err(|e| FormatError::Invalid { path: path.to_path_buf(), line: None, key: "closure".into(), message: e.to_string() })
}

pub fn read_gamma_group(path: &Path, field: &Arc<Field>, n: usize) -> Result<GammaGroup, FormatError> {
    let text = read_to_string(path)?;
    parse_gamma_group(path, &text, field, n)
}

pub fn render_gamma_group(maps: &[SemilinearMap], field: &Field) -> String {
    maps.iter().map(|u| u.render(field) + "\n").collect()
}
