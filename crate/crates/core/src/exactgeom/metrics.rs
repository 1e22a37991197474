//! Level profile and constraint-matrix metrics.

use std::collections::BTreeSet;

use super::linalg::{det_i128, for_each_subset_with_first};
use super::{HRep, Polytope};
use crate::rational::Rational;

/// Distinct values each facet row takes on the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelProfile {
    pub per_row: Vec<usize>,
    /// `max(per_row)`: the polytope is `level`-level.
    pub level: usize,
}

impl LevelProfile {
    /// `m` in "(m+1)-level".
    pub fn m(&self) -> usize {
        self.level.saturating_sub(1)
    }
}

pub fn level_profile(p: &Polytope) -> LevelProfile {
    let per_row: Vec<usize> = p
        .hrep()
        .rows
        .iter()
        .map(|r| p.vertices().iter().map(|v| r.value(v)).collect::<BTreeSet<Rational>>().len())
        .collect();
    // a polytope without facet rows is a point: every row is constant
    let level = per_row.iter().copied().max().unwrap_or(1);
    LevelProfile { per_row, level }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixMetrics {
    /// Largest absolute entry of the facet rows.
    pub norm_inf: i64,
    /// Largest number of nonzeros in a facet row.
    pub max_support: usize,
    /// Largest absolute square subdeterminant; `None` when above the size limit
    /// or on overflow.
    pub delta: Option<i128>,
}

pub const DELTA_MAX_DIM: usize = 5;
pub const DELTA_MAX_ROWS: usize = 40;

pub fn matrix_metrics(hrep: &HRep) -> MatrixMetrics {
    let norm_inf = hrep.norm_inf();
    let max_support = hrep
        .rows
        .iter()
        .map(|r| r.normal.iter().filter(|&&a| a != 0).count())
        .max()
        .unwrap_or(0);
    let delta = if hrep.ambient_dim <= DELTA_MAX_DIM && hrep.rows.len() <= DELTA_MAX_ROWS {
        max_subdeterminant(&hrep.rows.iter().map(|r| r.normal.clone()).collect::<Vec<_>>())
    } else {
        None
    };
    MatrixMetrics {
        norm_inf,
        max_support,
        delta,
    }
}

fn max_subdeterminant(a: &[Vec<i64>]) -> Option<i128> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut best = 0i128;
    for r in 1..=m.min(n) {
        for first in 0..m {
            let ok = for_each_subset_with_first(m, r, first, |rows| {
                for cf in 0..n {
                    for_each_subset_with_first(n, r, cf, |cols| {
                        let sub = rows
                            .iter()
                            .map(|&i| cols.iter().map(|&j| a[i][j] as i128).collect())
                            .collect();
                        best = best.max(det_i128(sub)?.abs());
                        Ok(())
                    })?;
                }
                Ok(())
            });
            ok.ok()?;
        }
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::fixtures::*;

    #[test]
    fn cube_and_pentagon_levels() {
        let c = level_profile(&cube3());
        assert!(c.per_row.iter().all(|&x| x == 2));
        assert_eq!(c.level, 2);
        let p = pentagon();
        let lp = level_profile(&p);
        assert_eq!(lp.level, 3);
        let diag = p.hrep().rows.iter().position(|r| r.normal == vec![1, 1]).unwrap();
        assert_eq!(lp.per_row[diag], 3);
    }

    #[test]
    fn metrics_of_fixtures() {
        let c = matrix_metrics(cube3().hrep());
        assert_eq!((c.norm_inf, c.max_support, c.delta), (1, 1, Some(1)));
        let p = matrix_metrics(pentagon().hrep());
        assert_eq!((p.norm_inf, p.max_support), (1, 2));
        // the eight ±1 rows contain [[1,1,1],[1,-1,1],[1,1,-1]] with determinant 4
        let x = matrix_metrics(cross3().hrep());
        assert_eq!((x.norm_inf, x.max_support, x.delta), (1, 3, Some(4)));
    }

    #[test]
    fn delta_oracle_on_pm_one_matrices() {
        // independent oracle: 3x3 determinant by the rule of Sarrus over all ±1 matrices
        let mut best = 0i64;
        for m in 0..512u32 {
            let e = |i: u32| if m >> i & 1 == 1 { 1i64 } else { -1 };
            let a = [[e(0), e(1), e(2)], [e(3), e(4), e(5)], [e(6), e(7), e(8)]];
            let d = a[0][0] * a[1][1] * a[2][2] + a[0][1] * a[1][2] * a[2][0] + a[0][2] * a[1][0] * a[2][1]
                - a[0][2] * a[1][1] * a[2][0]
                - a[0][0] * a[1][2] * a[2][1]
                - a[0][1] * a[1][0] * a[2][2];
            best = best.max(d.abs());
        }
        assert_eq!(best, 4);
    }
}
