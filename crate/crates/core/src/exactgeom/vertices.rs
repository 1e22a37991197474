//! Vertex enumeration by brute force over `n`-subsets of rows.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::linalg::{self, cofactor_normal, det_i128, dot_i128, for_each_subset_with_first, rank_i128};
use super::{HRep, HalfSpace, VRep};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::rational::{Point, Rational};

/// Extreme points of `{x : Ax <= b}` (equalities included as row pairs).
///
/// Every `n`-subset of rows with an invertible normal matrix is solved and the
/// feasible solutions are kept, deduplicated. A bounded description is
/// required: a nonempty set with a recession ray or a lineality direction is
/// rejected as unbounded; an infeasible one yields an empty list.
pub fn enumerate_vertices(hrep: &HRep) -> Result<VRep> {
    enumerate_vertices_with(hrep, Exec::default())
}

pub fn enumerate_vertices_with(hrep: &HRep, exec: Exec) -> Result<VRep> {
    let n = hrep.ambient_dim;
    if n == 0 {
        return Err(Error::Invalid("ambient dimension 0".into()));
    }
    let rows = hrep.inequality_view();
    let system = IntSystem::new(&rows, n)?;

    if system.rank()? < n {
        // A nonempty polyhedron whose normals do not span R^n contains a line.
        // Intersect with a complement of the lineality space to decide emptiness.
        let normals: Vec<Point> = rows.iter().map(HalfSpace::normal_rational).collect();
        let (_, pivots) = linalg::rref(&normals, n);
        let mut cut = hrep.clone();
        for f in (0..n).filter(|c| !pivots.contains(c)) {
            let mut e = vec![0i64; n];
            e[f] = 1;
            cut.equalities.push(HalfSpace::new(e, Rational::from_integer(BigInt::from(0))));
        }
        let sliced = enumerate_vertices_with(&cut, exec)?;
        return if sliced.vertices.is_empty() {
            Ok(VRep::new(Vec::new()))
        } else {
            Err(Error::Unbounded("the constraint normals do not span the space".into()))
        };
    }

    let parts = exec.map_range(rows.len(), |first| system.vertices_with_first(first));
    let mut found = BTreeSet::new();
    for part in parts {
        found.extend(part?);
    }
    if found.is_empty() {
        return Ok(VRep::new(Vec::new()));
    }
    let rays = exec.map_range(rows.len(), |first| system.has_ray_with_first(first));
    for r in rays {
        if r? {
            return Err(Error::Unbounded("a recession ray satisfies every row".into()));
        }
    }
    Ok(VRep::new(found.into_iter().collect()))
}

/// Rows scaled to integers: `a · x <= b / scale`.
struct IntSystem {
    n: usize,
    normals: Vec<Vec<i128>>,
    rhs: Vec<i128>,
    scale: BigInt,
}

impl IntSystem {
    fn new(rows: &[HalfSpace], n: usize) -> Result<Self> {
        let scale = rows.iter().fold(BigInt::one(), |l, r| l.lcm(r.rhs.denom()));
        let scale_r = Rational::from_integer(scale.clone());
        let mut normals = Vec::with_capacity(rows.len());
        let mut rhs = Vec::with_capacity(rows.len());
        for r in rows {
            if r.normal.len() != n {
                return Err(Error::Invalid("row length differs from ambient dimension".into()));
            }
            normals.push(r.normal.iter().map(|&a| a as i128).collect());
            rhs.push((&r.rhs * &scale_r).numer().to_i128().ok_or(Error::Overflow)?);
        }
        Ok(IntSystem {
            n,
            normals,
            rhs,
            scale,
        })
    }

    fn rank(&self) -> Result<usize> {
        rank_i128(&self.normals)
    }

    fn vertices_with_first(&self, first: usize) -> Result<BTreeSet<Point>> {
        let n = self.n;
        let mut out = BTreeSet::new();
        for_each_subset_with_first(self.normals.len(), n, first, |s| {
            let a: Vec<Vec<i128>> = s.iter().map(|&i| self.normals[i].clone()).collect();
            let mut det = det_i128(a.clone())?;
            if det == 0 {
                return Ok(());
            }
            // Cramer: x_j = num_j / (det * scale)
            let mut num = Vec::with_capacity(n);
            for j in 0..n {
                let mut aj = a.clone();
                for (row, &i) in aj.iter_mut().zip(s) {
                    row[j] = self.rhs[i];
                }
                num.push(det_i128(aj)?);
            }
            if det < 0 {
                det = -det;
                num.iter_mut().for_each(|x| *x = -*x);
            }
            // a_i · x <= b_i  <=>  a_i · num <= rhs_i * det
            for (ai, &bi) in self.normals.iter().zip(&self.rhs) {
                let lhs = dot_i128(ai, &num)?;
                let r = bi.checked_mul(det).ok_or(Error::Overflow)?;
                if lhs > r {
                    return Ok(());
                }
            }
            let denom = BigInt::from(det) * &self.scale;
            out.insert(num.iter().map(|&x| Rational::new(BigInt::from(x), denom.clone())).collect());
            Ok(())
        })?;
        Ok(out)
    }

    /// Extreme rays of `{y : Ay <= 0}` through `(n-1)`-subsets of rows.
    fn has_ray_with_first(&self, first: usize) -> Result<bool> {
        let n = self.n;
        let mut found = false;
        if n == 1 {
            // rays are ±e_1; the cone is {0} iff normals of both signs exist
            if first == 0 {
                let pos = self.normals.iter().any(|a| a[0] > 0);
                let neg = self.normals.iter().any(|a| a[0] < 0);
                found = !(pos && neg);
            }
            return Ok(found);
        }
        for_each_subset_with_first(self.normals.len(), n - 1, first, |s| {
            if found {
                return Ok(());
            }
            let rows: Vec<Vec<i128>> = s.iter().map(|&i| self.normals[i].clone()).collect();
            let r = cofactor_normal(&rows, n)?;
            if r.iter().all(|&x| x == 0) {
                return Ok(());
            }
            let vals: Vec<i128> = self.normals.iter().map(|a| dot_i128(a, &r)).collect::<Result<_>>()?;
            if vals.iter().all(|&v| v <= 0) || vals.iter().all(|&v| v >= 0) {
                found = true;
            }
            Ok(())
        })?;
        Ok(found)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, point};

    fn h(n: usize, rows: &[(&[i64], i64)]) -> HRep {
        HRep::new(
            n,
            rows.iter().map(|(a, b)| HalfSpace::new(a.to_vec(), int(*b))).collect(),
        )
    }

    #[test]
    fn unit_square() {
        let sq = h(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 0], 1), (&[0, 1], 1)]);
        let v = enumerate_vertices(&sq).unwrap();
        assert_eq!(
            v.vertices,
            vec![point(&[0, 0]), point(&[0, 1]), point(&[1, 0]), point(&[1, 1])]
        );
        assert_eq!(v.lattice_box_k, Some(1));
    }

    #[test]
    fn two_simplex() {
        let s = h(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 1)]);
        assert_eq!(enumerate_vertices(&s).unwrap().vertices.len(), 3);
    }

    #[test]
    fn square_pyramid_apex_is_deduplicated() {
        // base [0,2]^2 at z = 0, apex (1,1,1)
        let p = h(
            3,
            &[
                (&[0, 0, -1], 0),
                (&[-1, 0, 1], 0),
                (&[0, -1, 1], 0),
                (&[1, 0, 1], 2),
                (&[0, 1, 1], 2),
            ],
        );
        let v = enumerate_vertices(&p).unwrap();
        assert_eq!(v.vertices.len(), 5);
        assert!(v.vertices.contains(&point(&[1, 1, 1])));
        // independent oracle: count the 3-subsets solving to the apex
        let mut apex_hits = 0;
        let rows = p.inequality_view();
        for a in 0..5 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    let apex = point(&[1, 1, 1]);
                    if [a, b, c].iter().all(|&i| rows[i].is_tight(&apex)) {
                        apex_hits += 1;
                    }
                }
            }
        }
        assert_eq!(apex_hits, 4);
    }

    #[test]
    fn unbounded_and_empty() {
        let strip = h(2, &[(&[-1, 0], 0), (&[1, 0], 1)]);
        assert!(matches!(enumerate_vertices(&strip), Err(Error::Unbounded(_))));
        let quadrant = h(2, &[(&[-1, 0], 0), (&[0, -1], 0)]);
        assert!(matches!(enumerate_vertices(&quadrant), Err(Error::Unbounded(_))));
        let empty = h(2, &[(&[-1, 0], -2), (&[1, 0], 1), (&[0, 1], 1), (&[0, -1], 0)]);
        assert!(enumerate_vertices(&empty).unwrap().vertices.is_empty());
        let empty_strip = h(2, &[(&[-1, 0], -2), (&[1, 0], 1)]);
        assert!(enumerate_vertices(&empty_strip).unwrap().vertices.is_empty());
        let ray = h(1, &[(&[-1], 0)]);
        assert!(matches!(enumerate_vertices(&ray), Err(Error::Unbounded(_))));
    }

    #[test]
    fn equalities_are_respected() {
        let mut t = h(3, &[(&[-1, 0, 0], 0), (&[0, -1, 0], 0), (&[0, 0, -1], 0)]);
        t.equalities.push(HalfSpace::new(vec![1, 1, 1], int(1)));
        let v = enumerate_vertices(&t).unwrap();
        assert_eq!(v.vertices.len(), 3);
    }
}
