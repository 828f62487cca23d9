//! Text and JSON file formats.
//!
//! Every text format starts with the field header `GF p=.. e=.. mod=..`.
//! Blank lines and lines starting with `#` are ignored.
//!
//! * matrix (`.srm`): `col: e0, e1, ...`
//! * polynomial matrix (`.pm`): `P rows cols`, then `i j : c0, c1, ...`
//!   with 1-based indices and constant term first; missing entries are 0
//! * dense matrix: `M rows cols`, then one comma-separated line per row

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::PolyMatrix;
use crate::error::{Error, Result};
use crate::field::{Elem, Gf, Modulus};
use crate::matrix::DenseMatrix;
use crate::toeplitz::LtToeplitz;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, e: impl std::fmt::Display) -> Error {
    Error::Parse { line, msg: e.to_string() }
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<Arc<Gf>> {
    let (n, l) = lines.next().ok_or_else(|| parse_err(1, "missing field header"))?;
    Ok(Arc::new(Gf::parse_header(l).map_err(|e| parse_err(n, e))?))
}

fn parse_list(gf: &Gf, text: &str, line: usize) -> Result<Vec<Elem>> {
    text.split(',')
        .map(|t| gf.parse(t).map_err(|e| parse_err(line, e)))
        .collect()
}

/// Matrix file text.
pub fn write_srm(a: &LtToeplitz) -> String {
    format!("{}\ncol: {}\n", a.field().header(), a.format_col())
}

/// Reads a matrix file; JSON input (leading `{`) is accepted as well.
pub fn read_srm(text: &str) -> Result<LtToeplitz> {
    if text.trim_start().starts_with('{') {
        return from_json(text);
    }
    let mut lines = content_lines(text);
    let gf = header(&mut lines)?;
    let (n, l) = lines.next().ok_or_else(|| parse_err(2, "missing 'col:' line"))?;
    let body = l.strip_prefix("col:").ok_or_else(|| parse_err(n, "expected 'col:'"))?;
    let col = parse_list(&gf, body, n)?;
    if let Some((n, _)) = lines.next() {
        return Err(parse_err(n, "unexpected trailing content"));
    }
    LtToeplitz::new(gf, col).map_err(|e| parse_err(n, e))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

impl FieldJson {
    pub fn of(gf: &Gf) -> Self {
        FieldJson { p: gf.p(), e: gf.e(), modulus: gf.modulus().to_vec() }
    }

    pub fn build(&self) -> Result<Gf> {
        Gf::new(self.p, self.e, Modulus::Coeffs(self.modulus.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: FieldJson,
    pub col: Vec<String>,
}

impl MatrixJson {
    pub fn of(a: &LtToeplitz) -> Self {
        let gf = a.field();
        MatrixJson { field: FieldJson::of(gf), col: a.col().iter().map(|&x| gf.format(x)).collect() }
    }
}

pub fn to_json(a: &LtToeplitz) -> String {
    serde_json::to_string_pretty(&MatrixJson::of(a)).expect("plain data serializes") + "\n"
}

pub fn from_json(text: &str) -> Result<LtToeplitz> {
    let m: MatrixJson = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e))?;
    let gf = Arc::new(m.field.build()?);
    let col = m.col.iter().map(|t| gf.parse(t)).collect::<Result<Vec<_>>>()?;
    LtToeplitz::new(gf, col)
}

pub fn write_pm(gf: &Gf, p: &PolyMatrix) -> String {
    let mut out = format!("{}\nP {} {}\n", gf.header(), p.rows(), p.cols());
    for r in 0..p.rows() {
        for c in 0..p.cols() {
            let e = p.get(r, c);
            if !e.is_empty() {
                let parts: Vec<String> = e.iter().map(|&x| gf.format(x)).collect();
                out.push_str(&format!("{} {} : {}\n", r + 1, c + 1, parts.join(", ")));
            }
        }
    }
    out
}

fn dims(l: &str, tag: &str, n: usize) -> Result<(usize, usize)> {
    let mut t = l.split_whitespace();
    if t.next() != Some(tag) {
        return Err(parse_err(n, format!("expected '{tag} rows cols'")));
    }
    let mut num = || -> Result<usize> {
        t.next().and_then(|x| x.parse().ok()).ok_or_else(|| parse_err(n, "bad dimensions"))
    };
    let (r, c) = (num()?, num()?);
    Ok((r, c))
}

pub fn read_pm(text: &str) -> Result<(Arc<Gf>, PolyMatrix)> {
    let mut lines = content_lines(text);
    let gf = header(&mut lines)?;
    let (n, l) = lines.next().ok_or_else(|| parse_err(2, "missing 'P rows cols' line"))?;
    let (rows, cols) = dims(l, "P", n)?;
    let mut m = PolyMatrix::zeros(rows, cols);
    let mut seen = vec![false; rows * cols];
    for (n, l) in lines {
        let (idx, body) = l.split_once(':').ok_or_else(|| parse_err(n, "expected 'i j : coefficients'"))?;
        let ij: Vec<usize> = idx.split_whitespace().map(|x| x.parse().map_err(|_| parse_err(n, "bad index"))).collect::<Result<_>>()?;
        let [i, j] = ij[..] else {
            return Err(parse_err(n, "expected two indices"));
        };
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(parse_err(n, format!("entry ({i}, {j}) outside {rows}x{cols}")));
        }
        if std::mem::replace(&mut seen[(i - 1) * cols + j - 1], true) {
            return Err(parse_err(n, format!("duplicate entry ({i}, {j})")));
        }
        m.set(i - 1, j - 1, parse_list(&gf, body, n)?);
    }
    Ok((gf, m))
}

pub fn write_dense(gf: &Gf, m: &DenseMatrix) -> String {
    format!("{}\nM {} {}\n{}\n", gf.header(), m.rows(), m.cols(), m.format(gf))
}

pub fn read_dense(text: &str) -> Result<(Arc<Gf>, DenseMatrix)> {
    let mut lines = content_lines(text);
    let gf = header(&mut lines)?;
    let (n, l) = lines.next().ok_or_else(|| parse_err(2, "missing 'M rows cols' line"))?;
    let (rows, cols) = dims(l, "M", n)?;
    let mut data = Vec::with_capacity(rows);
    for (n, l) in lines {
        let row = parse_list(&gf, l, n)?;
        if row.len() != cols {
            return Err(parse_err(n, format!("expected {cols} entries, found {}", row.len())));
        }
        data.push(row);
    }
    if data.len() != rows {
        return Err(parse_err(0, format!("expected {rows} rows, found {}", data.len())));
    }
    let m = if rows == 0 { DenseMatrix::zeros(0, cols) } else { DenseMatrix::from_rows(data)? };
    Ok((gf, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn srm_round_trip() {
        let gf = Gf::shared(64).unwrap();
        let a = LtToeplitz::parse(gf, &["1", "w", "w^9", "w^33"]).unwrap();
        let text = write_srm(&a);
        assert_eq!(text, "GF p=2 e=6 mod=1,1,0,0,0,0,1\ncol: 1, w, w^9, w^33\n");
        assert_eq!(read_srm(&text).unwrap(), a);
        assert_eq!(read_srm(&to_json(&a)).unwrap(), a);
        let commented = format!("# example\n\n{text}");
        assert_eq!(read_srm(&commented).unwrap(), a);
    }

    #[test]
    fn srm_errors() {
        assert!(matches!(read_srm("GF p=2 e=1 mod=1,1\nrow: 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_srm("GF p=4 e=1 mod=1,1\ncol: 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_srm("GF p=5 e=1 mod=3,1\ncol: 1, 9x\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn pm_and_dense_round_trip() {
        let gf = Gf::shared(9).unwrap();
        let text = "GF p=3 e=2 mod=2,1,1\nP 2 1\n1 1 : 1, w\n# comment\n2 1 : 0, 0, w^3\n";
        let (g2, m) = read_pm(text).unwrap();
        assert_eq!(*g2, *gf);
        assert_eq!(m.get(1, 0).len(), 3);
        let again = write_pm(&g2, &m);
        assert_eq!(read_pm(&again).unwrap().1, m);
        assert!(matches!(read_pm("GF p=3 e=2 mod=2,1,1\nP 1 1\n1 1 : 1\n1 1 : 2\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(read_pm("GF p=3 e=2 mod=2,1,1\nP 1 1\n2 1 : 1\n"), Err(Error::Parse { line: 3, .. })));

        let d = DenseMatrix::from_rows(vec![vec![gf.exp(1), Elem::ZERO], vec![Elem::ONE, gf.exp(5)]]).unwrap();
        let t = write_dense(&gf, &d);
        assert_eq!(read_dense(&t).unwrap().1, d);
    }
}
