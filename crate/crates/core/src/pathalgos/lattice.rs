//! Rules for `(0,k)`-lattice polytopes: lattice shadow, the adaptive `σ`
//! descent, coherent legs up the `σ` flag, their two-phase combination, and
//! greatest improvement toward `x_σ`.

use std::sync::Arc;

use super::{k_of, BoundCheck, Rule, SolveReport};
use crate::error::{Error, Result};
use crate::exactgeom::{matrix_metrics, EdgeGraph, Polytope};
use crate::pivot::{
    build_x_sigma, coherent_path, coherent_path_in, greatest_improvement_path, lattice_shadow_objective, sigma_flag,
    Domain, Leg, Objective, PathTrace, SignedPermutation, Variant,
};
use crate::rational::{fmt_point, max_abs, Rational};

/// The coherent path for `d = −Σ a` over the tight basis at `start`.
///
/// Bounds: steps ≤ |d·V| − 1 ≤ ‖d‖∞·n·k, steps ≤ dim·n·k·‖A‖∞, and
/// ‖d‖∞ ≤ dim·‖A‖∞.
pub fn lattice_shadow_solve(p: &Polytope, g: &EdgeGraph, c: &Objective, start: usize) -> Result<SolveReport> {
    if !p.is_lattice() {
        return Err(Error::Incompatible("rule lattice_shadow needs a lattice polytope".into()));
    }
    let k = k_of(p)?;
    let d = lattice_shadow_objective(p, start);
    let trace = coherent_path(p, g, c, &d, start)?;
    let n = p.ambient_dim() as u64;
    let dim = p.dim() as u64;
    let a_inf = matrix_metrics(p.hrep()).norm_inf as u64;
    let d_inf = max_abs(&d.primary).to_integer().try_into().unwrap_or(u64::MAX);
    let steps = trace.len() as u64;
    let checks = vec![
        BoundCheck::new("steps<=dnk|A|", dim * n * k * a_inf, steps),
        BoundCheck::new("steps<=|dV|-1", trace.declared_bound as u64, steps),
        BoundCheck::new("|dV|-1<=|d|nk", d_inf * n * k, trace.declared_bound as u64),
        BoundCheck::new("steps<=|d|nk", d_inf * n * k, steps),
        BoundCheck::new("|d|<=d|A|", dim * a_inf, d_inf),
    ];
    Ok(SolveReport {
        rule: Rule::LatticeShadow,
        optimum: trace.end(),
        trace,
        objective: c.clone(),
        bound_checks: checks,
        sub_lp_count: 1,
        sigma: None,
    })
}

pub const RULE_DESCENT: &str = "coordinate-descent";

/// Builds `σ` greedily from `start`: at each level `n, n−1, ..., 1` pick the
/// unchosen coordinate closest to `0` or `k` at the current vertex (lowest
/// index on ties), give it sign `+` when closer to `k` and `−` otherwise, and
/// walk to the face of the current face maximising that signed coordinate,
/// always taking the lowest-index strictly improving neighbour.
///
/// Bounds: every leg ≤ ⌊k/2⌋, total ≤ dim·⌊k/2⌋. The walk ends at the
/// `x_σ`-maximal vertex. Legs on repeated faces are not recorded.
pub fn adaptive_sigma_descent(p: &Polytope, g: &EdgeGraph, start: usize) -> Result<(SignedPermutation, PathTrace)> {
    let k = k_of(p)?;
    let kr = Rational::from_integer((k as i64).into());
    let n = p.ambient_dim();
    let mut chosen = vec![0i64; n];
    let mut face: Vec<usize> = (0..p.n_vertices()).collect();
    let mut trace = PathTrace::new(start);
    for level in (1..=n as i64).rev() {
        let x = p.vertex(trace.end()).clone();
        let dist = |j: usize| (&x[j]).min(&(&kr - &x[j])).clone();
        let j = (0..n)
            .filter(|&j| chosen[j] == 0)
            .min_by(|&a, &b| dist(a).cmp(&dist(b)).then(a.cmp(&b)))
            .unwrap();
        let up = &kr - &x[j] < x[j];
        let s: i64 = if up { 1 } else { -1 };
        chosen[j] = s * level;
        let val = |v: usize| if up { p.vertex(v)[j].clone() } else { -p.vertex(v)[j].clone() };
        let best = face.iter().map(|&v| val(v)).max().unwrap();
        let next: Vec<usize> = face.iter().copied().filter(|&v| val(v) == best).collect();
        if next.len() == face.len() {
            continue;
        }
        let dom = Domain::from_members(p, face.clone());
        let mut walk = vec![trace.end()];
        let mut cur = trace.end();
        while val(cur) != best {
            let u = g
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&u| dom.contains(u) && val(u) > val(cur))
                .ok_or_else(|| Error::Validation("no improving neighbour below the face maximum".into()))?;
            walk.push(u);
            cur = u;
        }
        trace.push_leg(
            Leg {
                rule: RULE_DESCENT,
                aux: Some(Arc::new(Objective::new(unit(n, j, s)))),
                face: Arc::new(dom.spec(p)),
                steps: walk.len() - 1,
                declared_bound: (k / 2) as usize,
            },
            &walk,
        );
        face = next;
    }
    let sigma = SignedPermutation::new(chosen)?;
    Ok((sigma, trace))
}

fn unit(n: usize, j: usize, s: i64) -> Vec<Rational> {
    let mut e = vec![Rational::from_integer(0.into()); n];
    e[j] = Rational::from_integer(s.into());
    e
}

/// Coherent legs up the flag of `σ`: on each `G_i` that differs from
/// `G_{i−1}`, the `c`-coherent `(−s·e_j)`-monotone path from the `c`-maximum of
/// `G_{i−1}` (`j = σ⁻¹(i)`, `s = sign σ(j)`). `start` must be the
/// `x_σ`-maximal vertex.
///
/// Bounds: every leg ≤ k, total ≤ dim·k.
pub fn path_from_sigma_max(
    p: &Polytope,
    g: &EdgeGraph,
    sigma: &SignedPermutation,
    c: &Objective,
    start: usize,
) -> Result<SolveReport> {
    let k = k_of(p)?;
    let n = p.ambient_dim();
    let flag = sigma_flag(p, sigma)?;
    if start != flag.vertex {
        return Err(Error::Precondition(format!(
            "start {} is not the x_sigma-maximal vertex {}",
            fmt_point(p.vertex(start)),
            fmt_point(p.vertex(flag.vertex))
        )));
    }
    let mut trace = PathTrace::new(start);
    let mut checks = Vec::new();
    let mut legs = 0;
    for i in 1..=n {
        if flag.faces[i].len() == flag.faces[i - 1].len() {
            continue;
        }
        let j = sigma.position_of(i);
        let aux = Objective::new(unit(n, j, -sigma.sign(j)));
        let dom = Domain::from_members(p, flag.faces[i].clone());
        let leg = coherent_path_in(p, g, &dom, c, &aux, trace.end(), Variant::BothImproving)?;
        checks.push(BoundCheck::new(format!("leg{i}<=k"), k, leg.len() as u64));
        trace.append(leg);
        legs += 1;
    }
    let dk = p.dim() as u64 * k;
    checks.insert(0, BoundCheck::new("total<=dk", dk, trace.len() as u64));
    trace.declared_bound = dk as usize;
    Ok(SolveReport {
        rule: Rule::SigmaMax,
        optimum: trace.end(),
        trace,
        objective: c.clone(),
        bound_checks: checks,
        sub_lp_count: legs,
        sigma: Some(sigma.clone()),
    })
}

/// Phase A is [`adaptive_sigma_descent`], phase B is [`path_from_sigma_max`]
/// for the `σ` read off phase A. The concatenation is a walk but not a
/// `c`-monotone one.
///
/// Bounds: phase A ≤ dim·⌊k/2⌋, phase B ≤ dim·k, total ≤ dim·(k + ⌊k/2⌋),
/// face LPs ≤ 2n.
pub fn solve_lattice_lp(p: &Polytope, g: &EdgeGraph, c: &Objective, start: usize) -> Result<SolveReport> {
    let k = k_of(p)?;
    let dim = p.dim() as u64;
    let n = p.ambient_dim() as u64;
    let (sigma, mut trace) = adaptive_sigma_descent(p, g, start)?;
    let phase_a = trace.len() as u64;
    let a_legs = trace.legs.len();
    let mut checks = vec![BoundCheck::new("phase_a<=d*floor(k/2)", dim * (k / 2), phase_a)];
    for (i, l) in trace.legs.iter().enumerate() {
        checks.push(BoundCheck::new(format!("phase_a_leg{}<=floor(k/2)", i + 1), k / 2, l.steps as u64));
    }
    let b = path_from_sigma_max(p, g, &sigma, c, trace.end())?;
    let phase_b = b.steps() as u64;
    checks.push(BoundCheck::new("phase_b<=dk", dim * k, phase_b));
    checks.extend(b.bound_checks.iter().skip(1).map(|bc| BoundCheck {
        name: format!("phase_b_{}", bc.name),
        ..bc.clone()
    }));
    let sub = a_legs + b.sub_lp_count;
    checks.push(BoundCheck::new("sub_lp<=2n", 2 * n, sub as u64));
    trace.append(b.trace);
    let total_bound = dim * (k + k / 2);
    checks.insert(0, BoundCheck::new("total<=d(k+floor(k/2))", total_bound, trace.len() as u64));
    trace.declared_bound = total_bound as usize;
    Ok(SolveReport {
        rule: Rule::TwoPhase,
        optimum: trace.end(),
        trace,
        objective: c.clone(),
        bound_checks: checks,
        sub_lp_count: sub,
        sigma: Some(sigma),
    })
}

/// Greatest improvement for `x_σ` (base `2k + 1`) from `start`; ends at the
/// `x_σ`-maximal vertex within dim·k steps.
pub fn greatest_improvement_solve(
    p: &Polytope,
    g: &EdgeGraph,
    sigma: &SignedPermutation,
    start: usize,
) -> Result<SolveReport> {
    let k = k_of(p)?;
    let x = build_x_sigma(sigma, p.ambient_dim(), k, 2 * k as i64 + 1)?;
    let o = Objective::new(x);
    let trace = greatest_improvement_path(p, g, &o, start)?;
    let dk = p.dim() as u64 * k;
    let checks = vec![BoundCheck::new("steps<=dk", dk, trace.len() as u64)];
    Ok(SolveReport {
        rule: Rule::GreatestImprovement,
        optimum: trace.end(),
        trace,
        objective: o,
        bound_checks: checks,
        sub_lp_count: 1,
        sigma: Some(sigma.clone()),
    })
}
