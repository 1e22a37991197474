//! Text formats.
//!
//! H-rep: a header `n m`, then `m` lines `a_1 ... a_n b` of integers. An
//! equality is written as two opposite rows, and a row with a fractional
//! right-hand side is scaled by its denominator. The parser divides each row
//! by the gcd of its normal, so the round trip restores the original rows.
//!
//! V-rep: a header `n v`, then `v` lines of `n` rationals (`p/q` or integers).
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::{HRep, HalfSpace, Polytope};
use crate::error::{Error, Result};
use crate::rational::{num_den, parse_rational, Point, Rational};

/// Non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_header(line: Option<(usize, &str)>, what: &str) -> Result<(usize, usize)> {
    let (ln, l) = line.ok_or_else(|| Error::parse(0, format!("missing {what} header")))?;
    let f: Vec<&str> = l.split_whitespace().collect();
    if f.len() != 2 {
        return Err(Error::parse(ln, format!("{what} header needs two integers")));
    }
    let a = f[0].parse().map_err(|_| Error::parse(ln, "bad dimension"))?;
    let b = f[1].parse().map_err(|_| Error::parse(ln, "bad count"))?;
    Ok((a, b))
}

pub fn parse_hrep(text: &str) -> Result<HRep> {
    let mut lines = content_lines(text);
    let (n, m) = parse_header(lines.next(), "H-rep")?;
    if n == 0 {
        return Err(Error::parse(1, "dimension must be positive"));
    }
    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, l) = lines.next().ok_or_else(|| Error::parse(0, format!("expected {m} rows")))?;
        let mut vals = Vec::with_capacity(n + 1);
        for tok in l.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::parse(ln, format!("non-integral entry '{tok}'")))?;
            vals.push(v);
        }
        if vals.len() != n + 1 {
            return Err(Error::parse(ln, format!("expected {} integers, got {}", n + 1, vals.len())));
        }
        let b = vals.pop().unwrap();
        let g = vals.iter().fold(0i64, |g, &a| num_integer::Integer::gcd(&g, &a));
        if g == 0 {
            return Err(Error::parse(ln, "zero normal"));
        }
        rows.push(HalfSpace::new(
            vals.iter().map(|a| a / g).collect(),
            Rational::new(BigInt::from(b), BigInt::from(g)),
        ));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, "trailing content after the last row"));
    }
    Ok(HRep::new(n, rows))
}

fn integral_row(r: &HalfSpace, sign: i64) -> Result<String> {
    let den = r.rhs.denom().clone();
    let scale = den.to_i64().ok_or(Error::Overflow)?;
    let mut s = String::new();
    for a in &r.normal {
        let v = a.checked_mul(scale * sign).ok_or(Error::Overflow)?;
        write!(s, "{v} ").unwrap();
    }
    let b = r.rhs.numer() * BigInt::from(sign);
    write!(s, "{b}").unwrap();
    Ok(s)
}

pub fn write_hrep(h: &HRep) -> Result<String> {
    let mut lines = Vec::new();
    for r in &h.rows {
        lines.push(integral_row(r, 1)?);
    }
    for e in &h.equalities {
        lines.push(integral_row(e, 1)?);
        lines.push(integral_row(e, -1)?);
    }
    let mut out = format!("{} {}\n", h.ambient_dim, lines.len());
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_vrep(text: &str) -> Result<Vec<Point>> {
    let mut lines = content_lines(text);
    let (n, v) = parse_header(lines.next(), "V-rep")?;
    let mut out = Vec::with_capacity(v);
    for _ in 0..v {
        let (ln, l) = lines.next().ok_or_else(|| Error::parse(0, format!("expected {v} points")))?;
        let p: Point = l
            .split_whitespace()
            .map(|t| parse_rational(t).ok_or_else(|| Error::parse(ln, format!("bad rational '{t}'"))))
            .collect::<Result<_>>()?;
        if p.len() != n {
            return Err(Error::parse(ln, format!("expected {n} coordinates, got {}", p.len())));
        }
        out.push(p);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, "trailing content after the last point"));
    }
    Ok(out)
}

pub fn write_vrep(n: usize, points: &[Point]) -> String {
    let mut out = format!("{} {}\n", n, points.len());
    for p in points {
        let cells: Vec<String> = p.iter().map(fmt_rational).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Integers plain, other values as `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        num_den(r)
    }
}

/// Reads a polytope from H-rep text and, when given, checks it against a V-rep.
pub fn load_polytope(hrep_text: &str, vrep_text: Option<&str>) -> Result<Polytope> {
    let h = parse_hrep(hrep_text)?;
    let p = Polytope::from_hrep(&h)?;
    if let Some(vt) = vrep_text {
        let mut pts = parse_vrep(vt)?;
        pts.sort();
        pts.dedup();
        if pts.len() != p.n_vertices() || pts.iter().any(|x| p.vertex_index(x).is_none()) {
            return Err(Error::Validation("V-rep file does not match the H-rep vertices".into()));
        }
        if pts.iter().any(|x| x.len() != p.ambient_dim()) {
            return Err(Error::Validation("V-rep dimension mismatch".into()));
        }
    }
    Ok(p)
}
