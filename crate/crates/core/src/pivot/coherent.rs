//! Coherent (shadow) paths, greatest improvement, and the lattice shadow
//! direction.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use super::trace::{Domain, Leg, PathTrace};
use super::Objective;
use crate::error::{Error, Result};
use crate::exactgeom::linalg::greedy_independent;
use crate::exactgeom::{EdgeGraph, HalfSpace, Polytope};
use crate::rational::{dot, fmt_point, Point, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Move only to neighbours improving both `d` and `c`; stop when none is
    /// left. Ends at the `c`-maximum.
    BothImproving,
    /// Move while some neighbour improves `d`. Ends at the `c`-maximum of the
    /// `d`-maximal face.
    Sweep,
}

pub const RULE_COHERENT: &str = "coherent";
pub const RULE_SWEEP: &str = "coherent-sweep";
pub const RULE_GREATEST: &str = "greatest-improvement";

/// `|{d·v : v ∈ D}| − 1`: no strictly `d`-monotone path in `D` is longer.
pub fn distinct_value_bound(p: &Polytope, dom: &Domain, d: &[Rational]) -> usize {
    let vals: BTreeSet<Rational> = dom.members().iter().map(|&v| dot(d, p.vertex(v))).collect();
    vals.len().saturating_sub(1)
}

/// Both-improving coherent path over all of `p`.
pub fn coherent_path(p: &Polytope, g: &EdgeGraph, c: &Objective, d: &Objective, start: usize) -> Result<PathTrace> {
    coherent_path_in(p, g, &Domain::full(p), c, d, start, Variant::BothImproving)
}

/// Full `d`-monotone sweep over all of `p`.
pub fn coherent_sweep(p: &Polytope, g: &EdgeGraph, c: &Objective, d: &Objective, start: usize) -> Result<PathTrace> {
    coherent_path_in(p, g, &Domain::full(p), c, d, start, Variant::Sweep)
}

/// The `c`-coherent `d`-monotone path inside `dom`. From the current vertex it
/// moves to the `d`-improving neighbour maximising `c·Δ / d·Δ`, where the
/// ratio of a perturbed `c` is the tuple of its componentwise ratios. Only
/// `d`'s primary vector is used. Equal ratios go to the larger `c`-tuple, then
/// the lower index.
///
/// `start` must be a `c`-maximum of the `d`-minimal face of `dom`.
pub fn coherent_path_in(
    p: &Polytope,
    g: &EdgeGraph,
    dom: &Domain,
    c: &Objective,
    d: &Objective,
    start: usize,
    variant: Variant,
) -> Result<PathTrace> {
    let n = p.ambient_dim();
    c.check_dim(n)?;
    d.check_dim(n)?;
    if !dom.contains(start) {
        return Err(Error::Precondition(format!("start {start} lies outside the domain")));
    }
    let dv = &d.primary;
    let dval = |v: usize| dot(dv, p.vertex(v));
    let cval: Vec<Option<Vec<Rational>>> = (0..p.n_vertices())
        .map(|v| dom.contains(v).then(|| c.value(p.vertex(v))))
        .collect();
    let cv = |v: usize| cval[v].as_ref().unwrap();

    let dmin = dom.members().iter().map(|&v| dval(v)).min().unwrap();
    if dval(start) != dmin {
        return Err(Error::Precondition(format!(
            "start {} is not on the d-minimal face",
            fmt_point(p.vertex(start))
        )));
    }
    if let Some(&better) = dom
        .members()
        .iter()
        .find(|&&v| dval(v) == dmin && cv(v) > cv(start))
    {
        return Err(Error::Precondition(format!(
            "{} is c-better than start {} on the d-minimal face",
            fmt_point(p.vertex(better)),
            fmt_point(p.vertex(start))
        )));
    }

    let mut walk = vec![start];
    let mut x = start;
    loop {
        let dx = dval(x);
        let mut best: Option<(usize, Rational, Vec<Rational>)> = None;
        for &u in g.neighbors(x) {
            if !dom.contains(u) {
                continue;
            }
            let dd = dval(u) - &dx;
            if dd <= Rational::from_integer(0.into()) {
                continue;
            }
            let cd: Vec<Rational> = cv(u).iter().zip(cv(x)).map(|(a, b)| a - b).collect();
            if variant == Variant::BothImproving && cv(u) <= cv(x) {
                continue;
            }
            let better = match &best {
                None => true,
                Some((w, dw, cw)) => match ratio_cmp(&cd, &dd, cw, dw) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => cv(u).cmp(cv(*w)).then(w.cmp(&u)) == Ordering::Greater,
                },
            };
            if better {
                best = Some((u, dd, cd));
            }
        }
        match best {
            Some((u, _, _)) => {
                walk.push(u);
                x = u;
            }
            None => break,
        }
    }

    let bound = distinct_value_bound(p, dom, dv);
    let mut t = PathTrace::new(start);
    t.push_leg(
        Leg {
            rule: if variant == Variant::Sweep { RULE_SWEEP } else { RULE_COHERENT },
            aux: Some(Arc::new(d.clone())),
            face: Arc::new(dom.spec(p)),
            steps: walk.len() - 1,
            declared_bound: bound,
        },
        &walk,
    );
    Ok(t)
}

/// Compares `a/da` with `b/db` componentwise-lexicographically (`da, db > 0`).
fn ratio_cmp(a: &[Rational], da: &Rational, b: &[Rational], db: &Rational) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = (x * db).cmp(&(y * da));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Repeatedly moves to the neighbour with the largest `o`-tuple while it
/// improves. Equal tuples go to the lower index. The declared bound is the
/// number of distinct `o`-tuples on `p`, minus one.
pub fn greatest_improvement_path(p: &Polytope, g: &EdgeGraph, o: &Objective, start: usize) -> Result<PathTrace> {
    greatest_improvement_in(p, g, &Domain::full(p), o, start)
}

pub fn greatest_improvement_in(
    p: &Polytope,
    g: &EdgeGraph,
    dom: &Domain,
    o: &Objective,
    start: usize,
) -> Result<PathTrace> {
    o.check_dim(p.ambient_dim())?;
    if !dom.contains(start) {
        return Err(Error::Precondition(format!("start {start} lies outside the domain")));
    }
    let vals: Vec<Vec<Rational>> = o.values_on(p);
    let mut walk = vec![start];
    let mut x = start;
    loop {
        let mut best = x;
        for &u in g.neighbors(x) {
            if dom.contains(u) && vals[u] > vals[best] {
                best = u;
            }
        }
        if best == x {
            break;
        }
        walk.push(best);
        x = best;
    }
    let distinct: BTreeSet<&Vec<Rational>> = dom.members().iter().map(|&v| &vals[v]).collect();
    let mut t = PathTrace::new(start);
    t.push_leg(
        Leg {
            rule: RULE_GREATEST,
            aux: None,
            face: Arc::new(dom.spec(p)),
            steps: walk.len() - 1,
            declared_bound: distinct.len() - 1,
        },
        &walk,
    );
    Ok(t)
}

/// The first `dim` facet rows tight at `v`, in row order, that are linearly
/// independent together with the equality normals.
pub fn tight_basis(p: &Polytope, v: usize) -> Vec<usize> {
    let n = p.ambient_dim();
    let base: Vec<Point> = p.hrep().equalities.iter().map(HalfSpace::normal_rational).collect();
    let tight: Vec<usize> = p.tight_rows(v).ones().collect();
    let cands: Vec<Point> = tight.iter().map(|&r| p.hrep().rows[r].normal_rational()).collect();
    greedy_independent(&base, &cands, n).into_iter().map(|i| tight[i]).collect()
}

/// `d = −Σ a` over the tight basis at `start`. `start` is the unique
/// `d`-minimal vertex.
pub fn lattice_shadow_objective(p: &Polytope, start: usize) -> Objective {
    let n = p.ambient_dim();
    let mut d = vec![0i64; n];
    for r in tight_basis(p, start) {
        for (di, a) in d.iter_mut().zip(&p.hrep().rows[r].normal) {
            *di -= a;
        }
    }
    Objective::from_ints(&d)
}
