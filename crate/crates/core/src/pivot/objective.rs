//! Objectives with lexicographic symbolic perturbation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactgeom::io::{content_lines, fmt_rational, parse_header};
use crate::exactgeom::Polytope;
use crate::rational::{dot, parse_rational, to_rational_vec, Point, Rational};

/// `c` plus perturbations `p_1, p_2, ...`; a point's value is the tuple
/// `(c·x, p_1·x, ...)` under lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Objective {
    pub primary: Point,
    pub perturbations: Vec<Point>,
}

impl Objective {
    pub fn new(primary: Point) -> Self {
        Objective {
            primary,
            perturbations: Vec::new(),
        }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Objective::new(to_rational_vec(c))
    }

    pub fn with_perturbation(mut self, p: Point) -> Self {
        self.perturbations.push(p);
        self
    }

    /// `c` followed by `x_id` with base [`Polytope::genericity_alpha`], which
    /// totally orders the vertices of `p`.
    pub fn generic(p: &Polytope, primary: Point) -> Self {
        Objective::new(primary).with_perturbation(identity_weights(p.ambient_dim(), p.genericity_alpha()))
    }

    pub fn dim(&self) -> usize {
        self.primary.len()
    }

    pub fn components(&self) -> impl Iterator<Item = &Point> {
        std::iter::once(&self.primary).chain(&self.perturbations)
    }

    pub fn value(&self, x: &[Rational]) -> Vec<Rational> {
        self.components().map(|c| dot(c, x)).collect()
    }

    pub fn compare(&self, u: &[Rational], v: &[Rational]) -> Ordering {
        for c in self.components() {
            let o = dot(c, u).cmp(&dot(c, v));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }

    /// Value tuples of every vertex of `p`, for repeated comparisons.
    pub fn values_on(&self, p: &Polytope) -> Vec<Vec<Rational>> {
        p.vertices().iter().map(|v| self.value(v)).collect()
    }

    /// `true` iff no two vertices of `p` share a value tuple.
    pub fn is_total_on(&self, p: &Polytope) -> bool {
        let mut vals = self.values_on(p);
        vals.sort();
        vals.windows(2).all(|w| w[0] != w[1])
    }

    pub fn scaled_primary(&self, s: &Rational) -> Objective {
        Objective {
            primary: self.primary.iter().map(|x| x * s).collect(),
            perturbations: self.perturbations.clone(),
        }
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.components().any(|c| c.len() != n) {
            return Err(Error::Invalid(format!("objective is not {n}-dimensional")));
        }
        Ok(())
    }
}

/// `(α, α², ..., αⁿ)`.
pub fn identity_weights(n: usize, alpha: i64) -> Point {
    let a = BigInt::from(alpha);
    let mut w = BigInt::from(1);
    (0..n)
        .map(|_| {
            w = &w * &a;
            Rational::from_integer(w.clone())
        })
        .collect()
}

/// A header `n p` followed by `1 + p` lines of `n` rationals.
pub fn parse_objective(text: &str) -> Result<Objective> {
    let mut lines = content_lines(text);
    let (n, p) = parse_header(lines.next(), "objective")?;
    let mut comps = Vec::with_capacity(p + 1);
    for _ in 0..=p {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| Error::parse(0, format!("expected {} vectors", p + 1)))?;
        let v: Point = l
            .split_whitespace()
            .map(|t| parse_rational(t).ok_or_else(|| Error::parse(ln, format!("bad rational '{t}'"))))
            .collect::<Result<_>>()?;
        if v.len() != n {
            return Err(Error::parse(ln, format!("expected {n} entries, got {}", v.len())));
        }
        comps.push(v);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, "trailing content"));
    }
    let primary = comps.remove(0);
    if primary.iter().all(Zero::is_zero) && comps.is_empty() {
        return Err(Error::Invalid("zero objective".into()));
    }
    Ok(Objective {
        primary,
        perturbations: comps,
    })
}

pub fn write_objective(o: &Objective) -> String {
    let mut out = format!("{} {}\n", o.dim(), o.perturbations.len());
    for c in o.components() {
        let cells: Vec<String> = c.iter().map(fmt_rational).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
