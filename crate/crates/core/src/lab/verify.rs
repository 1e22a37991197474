//! Batch runner: every (instance, rule, objective or σ, start) combination,
//! checked against the declared bounds and the brute-force oracles.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exactgeom::{build_edge_graph, level_profile, matrix_metrics, EdgeGraph, Polytope};
use crate::oracles::{
    brute_force_optimum, monotone_diameter_estimate_with, verify_lex_order_with, DiameterEstimate, DiameterMode,
    LexReport, OrientationDigraph, EXACT_MAX_N, EXACT_MAX_VERTICES,
};
use crate::par::Exec;
use crate::pathalgos::{solve, BoundCheck, Rule, SolveReport, RULE_DESCENT};
use crate::pivot::{sigma_flag, Objective, SignedPermutation, RULE_COHERENT, RULE_SWEEP};
use crate::polygen::rng::{sub_seed, Rng};
use crate::polygen::{random_objective_vector, random_signed_permutation};
use crate::rational::{to_rational_vec, Point};

use super::config::{RunConfig, Starts};
use super::manifest::Entry;

/// Name of the extra check on σ-max runs: BFS distance from the `x_σ`-max
/// vertex to the optimum is at most `dk`.
pub const CHECK_BFS: &str = "bfs<=dk";
/// The oracle distance never exceeds the length of a monotone path.
pub const CHECK_ORACLE: &str = "oracle<=steps";

#[derive(Clone, Debug)]
pub struct RunRow {
    pub rule: Rule,
    pub objective: Option<usize>,
    pub c: Option<Point>,
    pub sigma: Option<SignedPermutation>,
    pub start: usize,
    pub end: usize,
    pub steps: usize,
    pub sub_lps: usize,
    pub checks: Vec<BoundCheck>,
    pub optimum_ok: bool,
    pub monotone_ok: bool,
    pub walk_ok: bool,
    pub oracle_distance: Option<usize>,
    pub coherent_legs: usize,
    pub leg_bound_violations: usize,
}

impl RunRow {
    pub fn passed(&self) -> bool {
        self.optimum_ok && self.monotone_ok && self.walk_ok && self.leg_bound_violations == 0 && self.checks.iter().all(BoundCheck::holds)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.checks.iter().filter(|b| !b.holds()).map(|b| b.name.as_str()).collect();
        for (ok, name) in [
            (self.optimum_ok, "optimum"),
            (self.monotone_ok, "monotone"),
            (self.walk_ok, "walk"),
            (self.leg_bound_violations == 0, "coherent_leg"),
        ] {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct InstanceSummary {
    pub ambient_dim: usize,
    pub dim: usize,
    pub vertices: Vec<Point>,
    pub facets: usize,
    pub edges: usize,
    pub level: usize,
    pub norm_inf: i64,
    pub max_support: usize,
    pub delta: Option<i128>,
    pub k: Option<u64>,
    pub half_integral: bool,
}

#[derive(Clone, Debug)]
pub struct InstanceResult {
    pub entry: Entry,
    /// `None` when the instance could not be built.
    pub summary: Option<InstanceSummary>,
    pub rows: Vec<RunRow>,
    pub skipped: Vec<Rule>,
    /// Solver or oracle errors, each naming its inputs.
    pub errors: Vec<String>,
    pub diameter_sampled: Option<DiameterEstimate>,
    pub diameter_exact: Option<DiameterEstimate>,
}

#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub instances: Vec<InstanceResult>,
    pub lemma8: Vec<LexReport>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckStats {
    pub runs: usize,
    pub violations: usize,
    pub max_observed: u64,
    pub max_declared: u64,
}

impl VerifyOutcome {
    pub fn rows(&self) -> impl Iterator<Item = (&InstanceResult, &RunRow)> {
        self.instances.iter().flat_map(|i| i.rows.iter().map(move |r| (i, r)))
    }

    /// One line per failure, each with enough input to replay it.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.lemma8 {
            if !r.passed() {
                out.push(format!("lemma8 n={} k={} alpha={}: {r}", r.n, r.k, r.alpha));
            }
        }
        for inst in &self.instances {
            for e in &inst.errors {
                out.push(format!("{}: {e}", inst.entry.describe()));
            }
            for row in inst.rows.iter().filter(|r| !r.passed()) {
                out.push(describe_failure(inst, row));
            }
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    /// Aggregates per (rule, check name), in a fixed order.
    pub fn check_table(&self) -> BTreeMap<(Rule, String), CheckStats> {
        let mut t: BTreeMap<(Rule, String), CheckStats> = BTreeMap::new();
        for (_, row) in self.rows() {
            for b in &row.checks {
                let s = t.entry((row.rule, b.name.clone())).or_default();
                s.runs += 1;
                s.violations += usize::from(!b.holds());
                s.max_observed = s.max_observed.max(b.observed);
                s.max_declared = s.max_declared.max(b.declared);
            }
        }
        t
    }

    /// Coherent legs traced and how many exceeded their distinct-value bound.
    pub fn coherent_leg_totals(&self) -> (usize, usize) {
        self.rows().fold((0, 0), |(a, b), (_, r)| (a + r.coherent_legs, b + r.leg_bound_violations))
    }
}

fn describe_failure(inst: &InstanceResult, row: &RunRow) -> String {
    let s = inst.summary.as_ref().expect("rows imply a built instance");
    let mut msg = format!(
        "{} rule={} start={}",
        inst.entry.describe(),
        row.rule,
        crate::rational::fmt_point(&s.vertices[row.start])
    );
    if let Some(c) = &row.c {
        msg += &format!(" c={}", crate::rational::fmt_point(c));
    }
    if let Some(sg) = &row.sigma {
        msg += &format!(" sigma=[{}]", sg.to_line());
    }
    msg + &format!(" failed={}", row.failed_checks().join(","))
}

pub fn verify(cfg: &RunConfig, entries: &[Entry]) -> Result<VerifyOutcome> {
    verify_with(cfg, entries, Exec::default())
}

/// Instances run in parallel under `exec`; each instance is sequential, so
/// the output order is the manifest order regardless of `exec`.
pub fn verify_with(cfg: &RunConfig, entries: &[Entry], exec: Exec) -> Result<VerifyOutcome> {
    let lemma8 = cfg
        .lemma8
        .iter()
        .map(|&(n, k)| verify_lex_order_with(n, k, 2 * k as i64 + 1, exec))
        .collect();
    let instances = exec.map(entries, |e| run_instance(cfg, e));
    Ok(VerifyOutcome { instances, lemma8 })
}

fn run_instance(cfg: &RunConfig, entry: &Entry) -> InstanceResult {
    let mut res = InstanceResult {
        entry: entry.clone(),
        summary: None,
        rows: Vec::new(),
        skipped: Vec::new(),
        errors: Vec::new(),
        diameter_sampled: None,
        diameter_exact: None,
    };
    let p = match entry.load() {
        Ok(p) => p,
        Err(e) => {
            res.errors.push(format!("cannot build instance: {e}"));
            return res;
        }
    };
    let g = build_edge_graph(&p);
    let m = matrix_metrics(p.hrep());
    res.summary = Some(InstanceSummary {
        ambient_dim: p.ambient_dim(),
        dim: p.dim(),
        vertices: p.vertices().to_vec(),
        facets: p.hrep().rows.len(),
        edges: g.n_edges(),
        level: level_profile(&p).level,
        norm_inf: m.norm_inf,
        max_support: m.max_support,
        delta: m.delta,
        k: p.lattice_k(),
        half_integral: p.is_half_integral(),
    });

    let n = p.ambient_dim();
    let mut rng = Rng::new(sub_seed(cfg.seed, entry.index as u64));
    let mut objectives: Vec<Vec<i64>> = cfg.explicit.iter().filter(|c| c.len() == n).cloned().collect();
    objectives.extend((0..cfg.objectives).map(|_| random_objective_vector(n, &mut rng)));
    let mut sigmas = vec![SignedPermutation::identity(n)];
    sigmas.extend((0..cfg.sigma_samples).map(|_| random_signed_permutation(n, &mut rng)));
    let starts = choose_starts(cfg.starts, p.n_vertices(), &mut rng);
    let objs: Vec<(Point, Objective)> = objectives
        .iter()
        .map(|c| {
            let c = to_rational_vec(c);
            (c.clone(), Objective::generic(&p, c))
        })
        .collect();

    for &rule in &cfg.rules {
        if rule.check_compatible(&p).is_err() {
            res.skipped.push(rule);
            continue;
        }
        let run = |res: &mut InstanceResult, oi: Option<usize>, sigma: Option<&SignedPermutation>, start: usize| {
            let (c, o) = match oi {
                Some(i) => (Some(objs[i].0.clone()), Some(&objs[i].1)),
                None => (None, None),
            };
            let dummy;
            let o = match o {
                Some(o) => o,
                None => {
                    dummy = Objective::from_ints(&vec![0; n]);
                    &dummy
                }
            };
            match solve(rule, &p, &g, o, start, sigma) {
                Ok(rep) => res.rows.push(evaluate(cfg, &p, &g, rep, oi, c, start)),
                Err(e) => res.errors.push(format!(
                    "rule={rule} start={} objective={oi:?} sigma={:?}: {e}",
                    crate::rational::fmt_point(p.vertex(start)),
                    sigma.map(|s| s.to_line())
                )),
            }
        };
        match rule {
            Rule::SigmaMax => {
                for s in &sigmas {
                    match sigma_flag(&p, s) {
                        Ok(f) => (0..objs.len()).for_each(|oi| run(&mut res, Some(oi), Some(s), f.vertex)),
                        Err(e) => res.errors.push(format!("sigma_flag [{}]: {e}", s.to_line())),
                    }
                }
            }
            Rule::GreatestImprovement => {
                for s in &sigmas {
                    starts.iter().for_each(|&v| run(&mut res, None, Some(s), v));
                }
            }
            _ => {
                for oi in 0..objs.len() {
                    starts.iter().for_each(|&v| run(&mut res, Some(oi), None, v));
                }
            }
        }
    }

    if cfg.oracles.diameter_sampled {
        let mode = DiameterMode::Sampled {
            count: cfg.diameter_samples.max(1),
            seed: sub_seed(cfg.seed, entry.index as u64),
        };
        match monotone_diameter_estimate_with(&p, &g, mode, Exec::Sequential) {
            Ok(d) => res.diameter_sampled = Some(d),
            Err(e) => res.errors.push(format!("sampled diameter: {e}")),
        }
    }
    if cfg.oracles.diameter_exact && p.ambient_dim() <= EXACT_MAX_N && p.n_vertices() <= EXACT_MAX_VERTICES {
        match monotone_diameter_estimate_with(&p, &g, DiameterMode::ExactTiny, Exec::Sequential) {
            Ok(d) => res.diameter_exact = Some(d),
            Err(e) => res.errors.push(format!("exact diameter: {e}")),
        }
    }
    if let (Some(s), Some(x)) = (&res.diameter_sampled, &res.diameter_exact) {
        if s.value > x.value {
            res.errors.push(format!("sampled diameter {} exceeds exact {}", s.value, x.value));
        }
    }
    res
}

/// Deterministic subset of start indices, ascending.
fn choose_starts(starts: Starts, nv: usize, rng: &mut Rng) -> Vec<usize> {
    let mut all: Vec<usize> = (0..nv).collect();
    match starts {
        Starts::Sample(k) if k < nv => {
            for i in 0..k {
                let j = i + rng.below((nv - i) as u64) as usize;
                all.swap(i, j);
            }
            all.truncate(k);
            all.sort_unstable();
            all
        }
        _ => all,
    }
}

pub(crate) fn evaluate(
    cfg: &RunConfig,
    p: &Polytope,
    g: &EdgeGraph,
    rep: SolveReport,
    objective: Option<usize>,
    c: Option<Point>,
    start: usize,
) -> RunRow {
    let values = rep.objective.values_on(p);
    let optimum_ok = brute_force_optimum(p.vertices(), &rep.objective).unique() == Some(rep.optimum)
        && rep.trace.end() == rep.optimum;
    // Phase A of the two-phase solver descends toward the x_σ-max and is not
    // c-monotone; only the part after it is checked.
    let skip: usize = rep.trace.legs.iter().take_while(|l| l.rule == RULE_DESCENT).map(|l| l.steps).sum();
    let monotone_ok = rep.trace.vertex_indices[skip..].windows(2).all(|w| values[w[0]] < values[w[1]]);
    let walk_ok = rep.trace.is_walk(g) && rep.trace.start() == start;
    let mut checks = rep.bound_checks.clone();
    let steps = rep.steps();
    let oracle_distance = if cfg.oracles.distance || rep.rule == Rule::SigmaMax {
        OrientationDigraph::new(g, &values)
            .and_then(|dg| dg.distances_to_sink())
            .ok()
            .map(|d| d[start])
    } else {
        None
    };
    if let Some(dist) = oracle_distance {
        if rep.rule == Rule::SigmaMax {
            let k = p.lattice_k().unwrap_or(0);
            checks.push(BoundCheck::new(CHECK_BFS, p.dim() as u64 * k, dist as u64));
        }
        checks.push(BoundCheck::new(CHECK_ORACLE, steps as u64, dist as u64));
    }
    let coherent: Vec<_> = rep
        .trace
        .legs
        .iter()
        .filter(|l| l.rule == RULE_COHERENT || l.rule == RULE_SWEEP)
        .collect();
    RunRow {
        rule: rep.rule,
        objective,
        c,
        sigma: rep.sigma.clone(),
        start,
        end: rep.trace.end(),
        steps,
        sub_lps: rep.sub_lp_count,
        checks,
        optimum_ok,
        monotone_ok,
        walk_ok,
        oracle_distance,
        coherent_legs: coherent.len(),
        leg_bound_violations: coherent.iter().filter(|l| l.steps > l.declared_bound).count(),
    }
}
