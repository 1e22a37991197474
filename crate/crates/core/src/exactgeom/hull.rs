//! Facet enumeration by brute force over spanning subsets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::linalg::{self, cofactor_normal, dot_i128, for_each_subset_with_first, rank_i128};
use super::{HRep, HalfSpace, Polytope};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::rational::{common_denominator, make_primitive_i128, sub, Point, Rational};

/// Convex hull of a finite point set as a canonical [`Polytope`].
///
/// The affine hull is spanned by the lexicographically first independent
/// coordinates `J`; its equations get one canonical row per coordinate outside
/// `J`. Facets are found by brute force over all `dim`-subsets of the points
/// projected onto `J`: each affinely independent subset spans a hyperplane,
/// which is kept when every point lies weakly on one side. Facet normals are
/// supported on `J`, primitive and outward. Vertices are the input points at
/// which the tight facets have full rank.
pub fn facet_enumeration(points: &[Point]) -> Result<Polytope> {
    facet_enumeration_with(points, Exec::default())
}

pub fn facet_enumeration_with(points: &[Point], exec: Exec) -> Result<Polytope> {
    let pts: Vec<Point> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let Some(first) = pts.first() else {
        return Err(Error::Degenerate("no points".into()));
    };
    let n = first.len();
    if n == 0 || pts.iter().any(|p| p.len() != n) {
        return Err(Error::Invalid("points must share a positive dimension".into()));
    }

    let scale = common_denominator(pts.iter());
    let scale_r = Rational::from_integer(scale.clone());
    let ints: Vec<Vec<i128>> = pts
        .iter()
        .map(|p| {
            p.iter()
                .map(|x| (x * &scale_r).numer().to_i128().ok_or(Error::Overflow))
                .collect()
        })
        .collect::<Result<_>>()?;

    let diffs: Vec<Point> = pts.iter().map(|p| sub(p, first)).collect();
    let (_, pivots) = linalg::rref(&diffs, n);
    let dim = pivots.len();
    if dim == 0 {
        return Err(Error::Degenerate("all points coincide".into()));
    }

    let mut equalities = Vec::new();
    for v in linalg::nullspace(&diffs, n) {
        // positive scaling keeps the free coordinate's coefficient at +1 sign
        let dir = crate::rational::primitive_integer_direction(&v).ok_or(Error::Overflow)?;
        let normal = to_i64(&dir)?;
        let rhs = crate::rational::dot_int(&normal, first);
        equalities.push(HalfSpace::new(normal, rhs));
    }

    let proj: Vec<Vec<i128>> = ints.iter().map(|p| pivots.iter().map(|&j| p[j]).collect()).collect();
    let found = exec.map_range(proj.len(), |first_idx| facets_with_first(&proj, dim, first_idx));
    let mut normals = BTreeSet::new();
    for part in found {
        normals.extend(part?);
    }

    let normals: Vec<Vec<i128>> = normals.into_iter().collect();
    let mut support = Vec::with_capacity(normals.len());
    for a in &normals {
        let mut best = i128::MIN;
        for q in &proj {
            best = best.max(dot_i128(a, q)?);
        }
        support.push(best);
    }

    let mut rows = Vec::with_capacity(normals.len());
    for (a, &best) in normals.iter().zip(&support) {
        let mut normal = vec![0i64; n];
        for (&j, &aj) in pivots.iter().zip(a) {
            normal[j] = i64::try_from(aj).map_err(|_| Error::Overflow)?;
        }
        let rhs = Rational::new(BigInt::from(best), scale.clone());
        rows.push(HalfSpace::new(normal, rhs));
    }

    let mut vertices = Vec::new();
    for (i, q) in proj.iter().enumerate() {
        let mut tight = Vec::new();
        for (a, &best) in normals.iter().zip(&support) {
            if dot_i128(a, q)? == best {
                tight.push(a.clone());
            }
        }
        if rank_i128(&tight)? == dim {
            vertices.push(pts[i].clone());
        }
    }

    let hrep = HRep {
        ambient_dim: n,
        rows,
        equalities,
    };
    let p = Polytope::assemble(hrep, vertices)?;
    if p.dim() != dim {
        return Err(Error::Validation("vertex set spans a smaller affine hull".into()));
    }
    p.validate()?;
    Ok(p)
}

fn facets_with_first(proj: &[Vec<i128>], dim: usize, first: usize) -> Result<BTreeSet<Vec<i128>>> {
    let mut out = BTreeSet::new();
    let mut rows: Vec<Vec<i128>> = Vec::with_capacity(dim);
    for_each_subset_with_first(proj.len(), dim, first, |s| {
        rows.clear();
        let base = &proj[s[0]];
        for &t in &s[1..] {
            rows.push(proj[t].iter().zip(base).map(|(x, y)| x - y).collect());
        }
        let mut a = cofactor_normal(&rows, dim)?;
        if a.iter().all(|&x| x == 0) {
            return Ok(());
        }
        let b = dot_i128(&a, base)?;
        let (mut above, mut below) = (false, false);
        for q in proj {
            let v = dot_i128(&a, q)?;
            above |= v > b;
            below |= v < b;
            if above && below {
                return Ok(());
            }
        }
        if above {
            a.iter_mut().for_each(|x| *x = -*x);
        }
        make_primitive_i128(&mut a);
        out.insert(a);
        Ok(())
    })?;
    Ok(out)
}

fn to_i64(v: &[i128]) -> Result<Vec<i64>> {
    v.iter().map(|&x| i64::try_from(x).map_err(|_| Error::Overflow)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::fixtures::*;
    use crate::rational::{int, point, ratio};

    fn rows_of(p: &Polytope) -> Vec<(Vec<i64>, Rational)> {
        p.hrep().rows.iter().map(|r| (r.normal.clone(), r.rhs.clone())).collect()
    }

    #[test]
    fn square_has_four_unit_facets() {
        let sq = square();
        assert_eq!(
            rows_of(&sq),
            vec![
                (vec![-1, 0], int(0)),
                (vec![0, -1], int(0)),
                (vec![0, 1], int(1)),
                (vec![1, 0], int(1)),
            ]
        );
        assert_eq!(sq.n_vertices(), 4);
    }

    #[test]
    fn pentagon_facets() {
        let p = pentagon();
        assert_eq!(p.hrep().rows.len(), 5);
        assert!(rows_of(&p).contains(&(vec![1, 1], int(3))));
        assert_eq!(p.n_vertices(), 5);
    }

    #[test]
    fn cross_polytope_facets() {
        let c = cross3();
        assert_eq!(c.hrep().rows.len(), 8);
        for r in &c.hrep().rows {
            assert!(r.normal.iter().all(|a| a.abs() == 1));
            assert_eq!(r.rhs, int(1));
        }
    }

    #[test]
    fn interior_points_are_dropped() {
        let mut pts = vec![point(&[0, 0]), point(&[2, 0]), point(&[0, 2]), point(&[2, 2])];
        pts.push(point(&[1, 1]));
        pts.push(point(&[1, 0]));
        let p = facet_enumeration(&pts).unwrap();
        assert_eq!(p.n_vertices(), 4);
        assert_eq!(p.hrep().rows.len(), 4);
    }

    #[test]
    fn lower_dimensional_hull() {
        // a triangle on the plane x + y + z = 1
        let pts = vec![point(&[1, 0, 0]), point(&[0, 1, 0]), point(&[0, 0, 1])];
        let p = facet_enumeration(&pts).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.hrep().equalities, vec![HalfSpace::new(vec![1, 1, 1], int(1))]);
        assert_eq!(p.hrep().rows.len(), 3);
        for r in &p.hrep().rows {
            assert_eq!(r.normal[2], 0, "facet normals live on the pivot coordinates");
        }
    }

    #[test]
    fn half_integral_rhs_stays_rational() {
        let pts = vec![point(&[0]), vec![ratio(1, 2)]];
        let p = facet_enumeration(&pts).unwrap();
        assert_eq!(
            rows_of(&p),
            vec![(vec![-1], int(0)), (vec![1], ratio(1, 2))]
        );
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(facet_enumeration(&[]), Err(Error::Degenerate(_))));
        assert!(matches!(
            facet_enumeration(&[point(&[1, 1]), point(&[1, 1])]),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn sequential_matches_parallel() {
        let pts: Vec<Point> = (0..3)
            .flat_map(|a| (0..3).flat_map(move |b| (0..3).map(move |c| point(&[a, b, (c * a + b) % 3]))))
            .collect();
        let s = facet_enumeration_with(&pts, Exec::Sequential).unwrap();
        let p = facet_enumeration_with(&pts, Exec::Parallel).unwrap();
        assert_eq!(s, p);
    }
}
