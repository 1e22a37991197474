//! Bounded pivot algorithms. Each solver returns its trace on the original
//! polytope's graph together with the bounds it claims, so callers (and the
//! verification harness) can compare observed against declared lengths.

mod half_integral;
mod lattice;
mod level;

use std::fmt;
use std::str::FromStr;

pub use half_integral::{half_integral_chart, solve_half_integral};
pub use lattice::{
    adaptive_sigma_descent, greatest_improvement_solve, RULE_DESCENT, lattice_shadow_solve, path_from_sigma_max, solve_lattice_lp,
};
pub use level::solve_level;

use crate::error::{Error, Result};
use crate::exactgeom::{EdgeGraph, Polytope};
use crate::pivot::{Objective, PathTrace, SignedPermutation};

/// `observed <= declared` is the claim being checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: String,
    pub declared: u64,
    pub observed: u64,
}

impl BoundCheck {
    pub fn new(name: impl Into<String>, declared: u64, observed: u64) -> Self {
        BoundCheck {
            name: name.into(),
            declared,
            observed,
        }
    }

    pub fn holds(&self) -> bool {
        self.observed <= self.declared
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub rule: Rule,
    pub trace: PathTrace,
    /// Final vertex of the trace.
    pub optimum: usize,
    /// The objective the optimum is claimed for.
    pub objective: Objective,
    pub bound_checks: Vec<BoundCheck>,
    /// Number of face LPs actually run (repeated faces are skipped).
    pub sub_lp_count: usize,
    /// The signed permutation used, for the rules that build or take one.
    pub sigma: Option<SignedPermutation>,
}

impl SolveReport {
    pub fn steps(&self) -> usize {
        self.trace.len()
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundCheck> {
        self.bound_checks.iter().filter(|b| !b.holds())
    }

    pub fn all_bounds_hold(&self) -> bool {
        self.violations().next().is_none()
    }

    /// The bound named `name`, if it was checked.
    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.bound_checks.iter().find(|b| b.name == name)
    }

    /// The headline bound of the rule: the first check listed.
    pub fn declared_bound(&self) -> u64 {
        self.bound_checks.first().map_or(0, |b| b.declared)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    HalfIntegral,
    Level,
    LatticeShadow,
    TwoPhase,
    SigmaMax,
    GreatestImprovement,
}

impl Rule {
    pub const ALL: [Rule; 6] = [
        Rule::HalfIntegral,
        Rule::Level,
        Rule::LatticeShadow,
        Rule::TwoPhase,
        Rule::SigmaMax,
        Rule::GreatestImprovement,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Rule::HalfIntegral => "half_integral",
            Rule::Level => "level",
            Rule::LatticeShadow => "lattice_shadow",
            Rule::TwoPhase => "two_phase",
            Rule::SigmaMax => "sigma_max",
            Rule::GreatestImprovement => "greatest_improvement",
        }
    }

    /// Rules whose start vertex is fixed by a signed permutation rather than
    /// chosen freely.
    pub fn uses_sigma(self) -> bool {
        matches!(self, Rule::SigmaMax | Rule::GreatestImprovement)
    }

    /// `Err(Incompatible)` when `p` is outside the rule's instance class.
    pub fn check_compatible(self, p: &Polytope) -> Result<()> {
        let ok = match self {
            Rule::HalfIntegral => p.is_half_integral(),
            Rule::Level => true,
            Rule::LatticeShadow | Rule::TwoPhase | Rule::SigmaMax | Rule::GreatestImprovement => {
                p.lattice_k().is_some()
            }
        };
        if ok {
            Ok(())
        } else {
            let class = match self {
                Rule::HalfIntegral => "a half-integral polytope",
                _ => "a (0,k)-lattice polytope",
            };
            Err(Error::Incompatible(format!("rule {} needs {class}", self.as_str())))
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown rule '{s}'")))
    }
}

/// Runs `rule`. `sigma` is used by `sigma_max` and `greatest_improvement`
/// (identity when absent); `sigma_max` ignores `start` other than checking it
/// equals the `x_σ`-maximal vertex.
pub fn solve(
    rule: Rule,
    p: &Polytope,
    g: &EdgeGraph,
    c: &Objective,
    start: usize,
    sigma: Option<&SignedPermutation>,
) -> Result<SolveReport> {
    rule.check_compatible(p)?;
    if start >= p.n_vertices() {
        return Err(Error::Invalid(format!("start index {start} out of range")));
    }
    let id = SignedPermutation::identity(p.ambient_dim());
    let sigma = sigma.unwrap_or(&id);
    match rule {
        Rule::HalfIntegral => solve_half_integral(p, g, c, start),
        Rule::Level => solve_level(p, g, c, start),
        Rule::LatticeShadow => lattice_shadow_solve(p, g, c, start),
        Rule::TwoPhase => solve_lattice_lp(p, g, c, start),
        Rule::SigmaMax => path_from_sigma_max(p, g, sigma, c, start),
        Rule::GreatestImprovement => greatest_improvement_solve(p, g, sigma, start),
    }
}

pub(crate) fn k_of(p: &Polytope) -> Result<u64> {
    p.lattice_k()
        .ok_or_else(|| Error::Incompatible("not a (0,k)-lattice polytope".into()))
}
