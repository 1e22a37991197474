//! Support growth followed by one coherent path, on half-integral polytopes.

use std::sync::Arc;

use num_traits::ToPrimitive;

use super::{BoundCheck, Rule, SolveReport};
use crate::error::{Error, Result};
use crate::exactgeom::{EdgeGraph, Polytope};
use crate::pivot::{coherent_path, Domain, Leg, Objective, PathTrace};
use crate::rational::Rational;

/// Vertices in the chart `y = 2x − 1`, which sends `{0, 1/2, 1}` to `{−1, 0, 1}`.
pub fn half_integral_chart(p: &Polytope) -> Result<Vec<Vec<i64>>> {
    if !p.is_half_integral() {
        return Err(Error::Incompatible("rule half_integral needs a half-integral polytope".into()));
    }
    let two = Rational::from_integer(2.into());
    let one = Rational::from_integer(1.into());
    Ok(p
        .vertices()
        .iter()
        .map(|v| v.iter().map(|x| (x * &two - &one).to_integer().to_i64().unwrap()).collect())
        .collect())
}

const RULE_SUPPORT: &str = "support-growth";

fn support(y: &[i64]) -> Vec<usize> {
    (0..y.len()).filter(|&j| y[j] != 0).collect()
}

/// Phase 1 moves to the best `c`-improving neighbour inside the face of
/// vertices that agree with the current vertex on its support, until the
/// current vertex is `c`-maximal there. A nonzero start is its own anchor. Phase
/// 2 is the both-improving coherent path with `d = −y`, `y` the anchor in chart
/// coordinates (the affine chart leaves every ratio unchanged).
///
/// Bounds: phase 1 ≤ dim, phase 2 ≤ 2|supp y|, total ≤ 3·dim when full
/// dimensional and ≤ dim + 2n otherwise, and ≤ 2s when every vertex has support
/// size `s`.
pub fn solve_half_integral(p: &Polytope, g: &EdgeGraph, c: &Objective, start: usize) -> Result<SolveReport> {
    let y = half_integral_chart(p)?;
    let n = p.ambient_dim();
    let dim = p.dim();
    let cvals = c.values_on(p);

    let mut v = start;
    let mut trace = PathTrace::new(start);
    if support(&y[v]).is_empty() {
        if let Some(&u) = g.neighbors(v).iter().filter(|&&u| cvals[u] > cvals[v]).max_by(|&&a, &&b| {
            cvals[a].cmp(&cvals[b]).then(b.cmp(&a))
        }) {
            push_step(p, &mut trace, &Domain::full(p), u);
            v = u;
        }
    }
    if !support(&y[v]).is_empty() {
        loop {
            let s = support(&y[v]);
            let face: Vec<usize> = (0..p.n_vertices())
                .filter(|&u| s.iter().all(|&j| y[u][j] == y[v][j]))
                .collect();
            let dom = Domain::from_members(p, face);
            let best = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| dom.contains(u) && cvals[u] > cvals[v])
                .max_by(|&a, &b| cvals[a].cmp(&cvals[b]).then(b.cmp(&a)));
            match best {
                Some(u) => {
                    push_step(p, &mut trace, &dom, u);
                    v = u;
                }
                None => break,
            }
        }
    }
    let phase1 = trace.len();
    let anchor = &y[v];
    let d = Objective::from_ints(&anchor.iter().map(|a| -a).collect::<Vec<_>>());
    let leg = coherent_path(p, g, c, &d, v)?;
    let phase2 = leg.len();
    trace.append(leg);

    let supp = support(anchor).len() as u64;
    let (dim, n) = (dim as u64, n as u64);
    let total = trace.len() as u64;
    let mut checks = vec![if p.is_full_dimensional() {
        BoundCheck::new("total<=3d", 3 * dim, total)
    } else {
        BoundCheck::new("total<=d+2n", dim + 2 * n, total)
    }];
    checks.push(BoundCheck::new("total<=d+2|supp|", dim + 2 * supp, total));
    checks.push(BoundCheck::new("support_phase<=d", dim, phase1 as u64));
    checks.push(BoundCheck::new("coherent_phase<=2|supp|", 2 * supp, phase2 as u64));
    if let Some(s) = uniform_support(&y) {
        checks.push(BoundCheck::new("total<=2s", 2 * s as u64, total));
    }
    trace.declared_bound = checks[0].declared as usize;
    Ok(SolveReport {
        rule: Rule::HalfIntegral,
        optimum: trace.end(),
        trace,
        objective: c.clone(),
        bound_checks: checks,
        sub_lp_count: 1,
        sigma: None,
    })
}

/// The common support size, when all vertices share one.
pub(crate) fn uniform_support(y: &[Vec<i64>]) -> Option<usize> {
    let s = support(&y[0]).len();
    y.iter().all(|v| support(v).len() == s).then_some(s)
}

fn push_step(p: &Polytope, trace: &mut PathTrace, face: &Domain, v: usize) {
    let u = trace.end();
    trace.push_leg(
        Leg {
            rule: RULE_SUPPORT,
            aux: None,
            face: Arc::new(face.spec(p)),
            steps: 1,
            declared_bound: 1,
        },
        &[u, v],
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::build_edge_graph;
    use crate::rational::{point, ratio, Point};

    fn shifted_cross3() -> Polytope {
        let mut pts: Vec<Point> = Vec::new();
        for i in 0..3 {
            for s in [0i64, 2] {
                let mut c = vec![ratio(1, 2); 3];
                c[i] = ratio(s, 2);
                pts.push(c);
            }
        }
        Polytope::from_points(&pts).unwrap()
    }

    #[test]
    fn cross_polytope_trace() {
        let p = shifted_cross3();
        let g = build_edge_graph(&p);
        let c = Objective::generic(&p, point(&[1, 2, 3]));
        let start = p.vertex_index(&[ratio(1, 2), ratio(1, 2), ratio(0, 1)]).unwrap();
        let r = solve_half_integral(&p, &g, &c, start).unwrap();
        let y = half_integral_chart(&p).unwrap();
        let walk: Vec<_> = r.trace.vertex_indices.iter().map(|&v| y[v].clone()).collect();
        assert_eq!(walk, vec![vec![0, 0, -1], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(r.check("total<=3d").unwrap().declared, 9);
        assert_eq!(r.check("total<=2s").unwrap().declared, 2);
        assert!(r.all_bounds_hold());
        // starting at the optimum takes no step
        let r = solve_half_integral(&p, &g, &c, r.optimum).unwrap();
        assert_eq!(r.steps(), 0);
    }

    #[test]
    fn rejects_non_half_integral() {
        let p = crate::exactgeom::fixtures::pentagon();
        let g = build_edge_graph(&p);
        let c = Objective::generic(&p, point(&[1, 0]));
        assert!(matches!(solve_half_integral(&p, &g, &c, 0), Err(Error::Incompatible(_))));
    }
}
