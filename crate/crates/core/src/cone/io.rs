//! Plain-text cone files. The header line is `H <dim> <n_ineq> <n_eq>`
//! or `V <dim> <n_rays> <n_lin>`, followed by that many integer rows,
//! one per line. Blank lines and `#` comments are ignored on input.

use super::{ConeH, ConeV, Int};
use crate::error::{Error, Result};
use std::io::{BufRead, Write};
use std::str::FromStr;

fn write_rows(w: &mut impl Write, rows: &[Vec<Int>]) -> std::io::Result<()> {
    for row in rows {
        let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(w, "{}", parts.join(" "))?;
    }
    Ok(())
}

pub fn write_h(h: &ConeH, w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "H {} {} {}", h.dim(), h.ineqs().len(), h.eqs().len())?;
    write_rows(w, h.ineqs())?;
    write_rows(w, h.eqs())
}

pub fn write_v(v: &ConeV, w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "V {} {} {}", v.dim(), v.rays().len(), v.lin().len())?;
    write_rows(w, v.rays())?;
    write_rows(w, v.lin())
}

struct Lines<R> {
    inner: R,
}

impl<R: BufRead> Lines<R> {
    fn next_content(&mut self) -> Result<Option<String>> {
        let mut buf = String::new();
        loop {
            buf.clear();
            if self.inner.read_line(&mut buf)? == 0 {
                return Ok(None);
            }
            let line = match buf.split('#').next() {
                Some(s) => s.trim(),
                None => "",
            };
            if !line.is_empty() {
                return Ok(Some(line.to_string()));
            }
        }
    }

    fn row(&mut self, dim: usize) -> Result<Vec<Int>> {
        let line = self
            .next_content()?
            .ok_or_else(|| Error::Parse("unexpected end of cone file".into()))?;
        let row: Vec<Int> = line
            .split_whitespace()
            .map(|t| Int::from_str(t).map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}"))))
            .collect::<Result<_>>()?;
        if row.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: row.len(),
            });
        }
        Ok(row)
    }
}

fn header(line: &str, tag: &str) -> Result<(usize, usize, usize)> {
    let mut it = line.split_whitespace();
    if it.next() != Some(tag) {
        return Err(Error::Parse(format!(
            "expected {tag} header, got {line:?}"
        )));
    }
    let mut num = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse(format!("short {tag} header: {line:?}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad {tag} header {line:?}: {e}")))
    };
    Ok((num()?, num()?, num()?))
}

pub fn read_h(r: impl BufRead) -> Result<ConeH> {
    let mut lines = Lines { inner: r };
    let head = lines
        .next_content()?
        .ok_or_else(|| Error::Parse("empty cone file".into()))?;
    let (dim, ni, ne) = header(&head, "H")?;
    let ineqs: Vec<Vec<Int>> = (0..ni).map(|_| lines.row(dim)).collect::<Result<_>>()?;
    let eqs: Vec<Vec<Int>> = (0..ne).map(|_| lines.row(dim)).collect::<Result<_>>()?;
    ConeH::new(dim, ineqs, eqs)
}

pub fn read_v(r: impl BufRead) -> Result<ConeV> {
    let mut lines = Lines { inner: r };
    let head = lines
        .next_content()?
        .ok_or_else(|| Error::Parse("empty cone file".into()))?;
    let (dim, nr, nl) = header(&head, "V")?;
    let rays: Vec<Vec<Int>> = (0..nr).map(|_| lines.row(dim)).collect::<Result<_>>()?;
    let lin: Vec<Vec<Int>> = (0..nl).map(|_| lines.row(dim)).collect::<Result<_>>()?;
    ConeV::new(dim, rays, lin)
}
