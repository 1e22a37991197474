//! Monotone-diameter estimates: a seeded sample of generic objectives, or the
//! full chamber set of the edge-direction arrangement on tiny instances.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::OrientationDigraph;
use crate::error::{Error, Result};
use crate::exactgeom::linalg::{greedy_independent, nullspace, rank};
use crate::exactgeom::{EdgeGraph, Polytope};
use crate::par::Exec;
use crate::pivot::{x_sigma_unchecked, Objective};
use crate::polygen::rng::Rng;
use crate::polygen::{random_objective_vector, random_signed_permutation};
use crate::rational::{dot, primitive_integer_direction, sub, Point, Rational};

pub const EXACT_MAX_N: usize = 3;
pub const EXACT_MAX_VERTICES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiameterMode {
    Sampled { count: usize, seed: u64 },
    ExactTiny,
}

#[derive(Clone, Debug)]
pub struct DiameterEstimate {
    /// Exact in `ExactTiny` mode, a lower bound otherwise.
    pub value: usize,
    pub witness_objective: Objective,
    pub witness_vertex: usize,
    pub objectives_tested: usize,
    /// `ExactTiny` only: one entry per realizable orientation, `+1` when the
    /// edge `(u, v)` of `EdgeGraph::edges` points from `u` to `v`.
    pub orientations: Vec<Vec<i8>>,
}

pub fn monotone_diameter_estimate(p: &Polytope, g: &EdgeGraph, mode: DiameterMode) -> Result<DiameterEstimate> {
    monotone_diameter_estimate_with(p, g, mode, Exec::default())
}

pub fn monotone_diameter_estimate_with(
    p: &Polytope,
    g: &EdgeGraph,
    mode: DiameterMode,
    exec: Exec,
) -> Result<DiameterEstimate> {
    match mode {
        DiameterMode::Sampled { count, seed } => {
            if count == 0 {
                return Err(Error::Invalid("sampled diameter needs at least one objective".into()));
            }
            let objs = sampled_objectives(p, count, seed);
            let mut est = best_of(p, g, &objs, exec)?;
            est.objectives_tested = objs.len();
            Ok(est)
        }
        DiameterMode::ExactTiny => exact_tiny(p, g, exec),
    }
}

/// Alternates a random integer vector in `[-9, 9]^n` with `x_σ` for a random
/// signed permutation; both get the identity perturbation. Extending `count`
/// extends the list, so the estimate never decreases in `count`.
pub fn sampled_objectives(p: &Polytope, count: usize, seed: u64) -> Vec<Objective> {
    let n = p.ambient_dim();
    let alpha = p.genericity_alpha();
    let mut r = Rng::new(seed);
    (0..count)
        .map(|i| {
            let primary = if i % 2 == 0 {
                random_objective_vector(n, &mut r).iter().map(|&x| Rational::from_integer(x.into())).collect()
            } else {
                x_sigma_unchecked(&random_signed_permutation(n, &mut r), alpha)
            };
            Objective::generic(p, primary)
        })
        .collect()
}

fn best_of(p: &Polytope, g: &EdgeGraph, objs: &[Objective], exec: Exec) -> Result<DiameterEstimate> {
    let per = exec.map(objs, |o| -> Result<(usize, usize)> {
        let dist = OrientationDigraph::from_objective(p, g, o)?.distances_to_sink()?;
        let max = *dist.iter().max().unwrap();
        Ok((max, dist.iter().position(|&d| d == max).unwrap()))
    });
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, r) in per.into_iter().enumerate() {
        let (value, vertex) = r?;
        if best.is_none_or(|b| value > b.0) {
            best = Some((value, vertex, i));
        }
    }
    let (value, witness_vertex, i) = best.expect("nonempty objective list");
    Ok(DiameterEstimate {
        value,
        witness_objective: objs[i].clone(),
        witness_vertex,
        objectives_tested: objs.len(),
        orientations: Vec::new(),
    })
}

fn exact_tiny(p: &Polytope, g: &EdgeGraph, exec: Exec) -> Result<DiameterEstimate> {
    let n = p.ambient_dim();
    if n > EXACT_MAX_N || p.n_vertices() > EXACT_MAX_VERTICES {
        return Err(Error::Invalid(format!(
            "exact-tiny needs n <= {EXACT_MAX_N} and at most {EXACT_MAX_VERTICES} vertices (got n = {n}, {} vertices)",
            p.n_vertices()
        )));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.is_empty() {
        return Ok(DiameterEstimate {
            value: 0,
            witness_objective: Objective::new(vec![Rational::zero(); n]),
            witness_vertex: 0,
            objectives_tested: 0,
            orientations: vec![Vec::new()],
        });
    }
    let mut dirs: BTreeSet<Vec<i128>> = BTreeSet::new();
    for &(u, v) in &edges {
        let mut d = primitive_integer_direction(&sub(p.vertex(u), p.vertex(v))).expect("distinct vertices");
        if d.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
            d.iter_mut().for_each(|x| *x = -*x);
        }
        dirs.insert(d);
    }
    let h: Vec<Point> = dirs
        .into_iter()
        .map(|d| d.into_iter().map(|x| Rational::from_integer(x.into())).collect())
        .collect();
    let objs: Vec<Objective> = chambers(&h, n).into_iter().map(Objective::new).collect();
    let mut est = best_of(p, g, &objs, exec)?;
    let mut orientations: Vec<Vec<i8>> = objs
        .iter()
        .map(|o| {
            edges
                .iter()
                .map(|&(u, v)| if o.compare(p.vertex(u), p.vertex(v)).is_lt() { 1 } else { -1 })
                .collect()
        })
        .collect();
    orientations.sort();
    est.orientations = orientations;
    Ok(est)
}

fn sign_vector(h: &[Point], c: &[Rational]) -> Vec<i8> {
    h.iter()
        .map(|r| {
            let v = dot(r, c);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .collect()
}

/// One interior point per chamber of the central arrangement `{h·c = 0}`.
/// Every chamber of rank at least two has an extreme ray `r`; it is reached
/// as `M·r + w` with `w` inside a chamber of the hyperplanes through `r` and
/// `M` large enough that the remaining signs follow `r`.
fn chambers(h: &[Point], n: usize) -> Vec<Point> {
    if h.is_empty() {
        return vec![vec![Rational::zero(); n]];
    }
    let rho = rank(h, n);
    if rho == 1 {
        let v = h.iter().find(|r| r.iter().any(|x| !x.is_zero())).unwrap().clone();
        let neg = v.iter().map(|x| -x).collect();
        return vec![v, neg];
    }
    let basis: Vec<Point> = greedy_independent(&[], h, n).into_iter().map(|i| h[i].clone()).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for_each_combination(h.len(), rho - 1, |s| {
        let rows: Vec<Point> = s.iter().map(|&i| h[i].clone()).collect();
        if rank(&rows, n) != rho - 1 {
            return;
        }
        let m: Vec<Point> = rows.iter().map(|r| basis.iter().map(|b| dot(r, b)).collect()).collect();
        let lam = nullspace(&m, rho);
        debug_assert_eq!(lam.len(), 1);
        let r: Point = (0..n)
            .map(|j| basis.iter().zip(&lam[0]).map(|(b, l)| &b[j] * l).sum())
            .collect();
        let (through, off): (Vec<Point>, Vec<Point>) = h.iter().cloned().partition(|x| dot(x, &r).is_zero());
        let local = chambers(&through, n);
        for sgn in [1i64, -1] {
            let rr: Point = r.iter().map(|x| x * Rational::from_integer(sgn.into())).collect();
            for w in &local {
                let big = off
                    .iter()
                    .map(|x| (dot(x, w) / dot(x, &rr)).abs())
                    .max()
                    .unwrap_or_else(Rational::zero)
                    + Rational::one();
                let c: Point = rr.iter().zip(w).map(|(a, b)| a * &big + b).collect();
                if seen.insert(sign_vector(h, &c)) {
                    out.push(c);
                }
            }
        }
    });
    out
}

fn for_each_combination(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > m {
        return;
    }
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + m - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::build_edge_graph;
    use crate::exactgeom::fixtures::*;

    fn exact(p: &Polytope) -> DiameterEstimate {
        monotone_diameter_estimate(p, &build_edge_graph(p), DiameterMode::ExactTiny).unwrap()
    }

    #[test]
    fn exact_values() {
        let e = exact(&pentagon());
        assert_eq!(e.value, 2);
        // five lines through the origin in the plane cut it into ten chambers,
        // but parallel edges share a direction: three distinct lines, six chambers
        assert_eq!(e.orientations.len(), 6);
        assert_eq!(exact(&triangle()).value, 1);
        assert_eq!(exact(&square()).value, 2);
        let c = exact(&cube3());
        assert_eq!(c.value, 3);
        assert_eq!(c.orientations.len(), 8);
        assert_eq!(exact(&cross3()).value, 2);
    }

    #[test]
    fn sampled_matches_exact_on_tiny() {
        for p in [pentagon(), triangle(), square(), cube3(), cross3()] {
            let g = build_edge_graph(&p);
            let s = monotone_diameter_estimate(&p, &g, DiameterMode::Sampled { count: 200, seed: 1 }).unwrap();
            assert_eq!(s.value, exact(&p).value);
        }
    }

    #[test]
    fn sampled_is_monotone_in_count() {
        let p = pentagon();
        let g = build_edge_graph(&p);
        let mut last = 0;
        for count in [1, 2, 5, 20] {
            let s = monotone_diameter_estimate(&p, &g, DiameterMode::Sampled { count, seed: 7 }).unwrap();
            assert!(s.value >= last);
            last = s.value;
        }
    }

    #[test]
    fn refuses_large() {
        let p = crate::polygen::cube(4, 1).unwrap();
        assert!(monotone_diameter_estimate(&p, &build_edge_graph(&p), DiameterMode::ExactTiny).is_err());
    }

    #[test]
    fn combinations() {
        let mut all = Vec::new();
        for_each_combination(4, 2, |s| all.push(s.to_vec()));
        assert_eq!(all.len(), 6);
        let mut none = 0;
        for_each_combination(2, 3, |_| none += 1);
        assert_eq!(none, 0);
    }
}
