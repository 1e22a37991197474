//! Coherent legs along a flag cut out by the tight basis at the start.

use super::{BoundCheck, Rule, SolveReport};
use crate::error::Result;
use crate::exactgeom::{level_profile, EdgeGraph, Polytope};
use crate::pivot::{coherent_path_in, tight_basis, Domain, Objective, PathTrace, Variant};

/// With `a_1..a_d` the tight basis at `start` and `F_i` the vertices tight on
/// `a_1..a_i`, leg `i = d..1` is the `c`-coherent `(−a_i)`-monotone path on
/// `F_{i−1}` from the `c`-maximum of `F_i`.
///
/// Bounds, with `m + 1` the level of `p`: every leg ≤ m, the first ≤ 1 (it
/// runs on an edge), total ≤ (d−1)m + 1.
pub fn solve_level(p: &Polytope, g: &EdgeGraph, c: &Objective, start: usize) -> Result<SolveReport> {
    let basis = tight_basis(p, start);
    let d = basis.len();
    let m = level_profile(p).m() as u64;

    // faces[i] = F_i
    let mut faces: Vec<Vec<usize>> = vec![(0..p.n_vertices()).collect()];
    for (i, &r) in basis.iter().enumerate() {
        let next = faces[i].iter().copied().filter(|&v| p.tight_rows(v).contains(r)).collect();
        faces.push(next);
    }

    let mut trace = PathTrace::new(start);
    let mut checks = Vec::new();
    for i in (1..=d).rev() {
        let row = &p.hrep().rows[basis[i - 1]];
        let aux = Objective::from_ints(&row.normal.iter().map(|a| -a).collect::<Vec<_>>());
        let dom = Domain::from_members(p, faces[i - 1].clone());
        let leg = coherent_path_in(p, g, &dom, c, &aux, trace.end(), Variant::BothImproving)?;
        checks.push(BoundCheck::new(format!("leg{i}<=m"), m, leg.len() as u64));
        if i == d {
            checks.push(BoundCheck::new("first_leg<=1", 1, leg.len() as u64));
        }
        trace.append(leg);
    }
    let total_bound = if d == 0 { 0 } else { (d as u64 - 1) * m + 1 };
    checks.insert(0, BoundCheck::new("total<=(d-1)m+1", total_bound, trace.len() as u64));
    trace.declared_bound = total_bound as usize;
    Ok(SolveReport {
        rule: Rule::Level,
        optimum: trace.end(),
        trace,
        objective: c.clone(),
        bound_checks: checks,
        sub_lp_count: d,
        sigma: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::build_edge_graph;
    use crate::exactgeom::fixtures::*;
    use crate::rational::point;

    #[test]
    fn pentagon_all_starts() {
        let p = pentagon();
        let g = build_edge_graph(&p);
        for c in [[1, 0], [0, 1], [-1, 2], [3, -1], [-1, -1]] {
            let c = Objective::generic(&p, point(&c));
            let best = (0..5).max_by(|&a, &b| c.compare(p.vertex(a), p.vertex(b))).unwrap();
            for s in 0..5 {
                let r = solve_level(&p, &g, &c, s).unwrap();
                assert_eq!(r.check("total<=(d-1)m+1").unwrap().declared, 3);
                assert!(r.all_bounds_hold(), "{:?}", r.bound_checks);
                assert_eq!(r.optimum, best);
                assert!(r.trace.is_walk(&g));
                assert!(r.trace.is_strictly_increasing(&c.values_on(&p)));
            }
        }
    }

    #[test]
    fn cube_is_bounded_by_dimension() {
        let p = cube3();
        let g = build_edge_graph(&p);
        let c = Objective::generic(&p, point(&[-1, 2, 1]));
        for s in 0..8 {
            let r = solve_level(&p, &g, &c, s).unwrap();
            assert_eq!(r.declared_bound(), 3);
            assert!(r.all_bounds_hold());
        }
    }
}
