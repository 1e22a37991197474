//! Subcommands `gen`, `solve`, `verify`, `oracle` and `metrics`.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 a declared bound
//! was exceeded or a result disagreed with an oracle.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::exactgeom::io::{write_hrep, write_vrep};
use crate::exactgeom::{build_edge_graph, level_profile, matrix_metrics, Polytope};
use crate::oracles::{brute_force_optimum, monotone_diameter_estimate, shortest_monotone_distance, DiameterMode, Optimum};
use crate::pathalgos::{solve, Rule};
use crate::pivot::{identity_weights, parse_objective, Objective, SignedPermutation};
use crate::polygen::{generate, GenSpec};
use crate::rational::{fmt_point, num_den, parse_rational, Point};

use super::config::RunConfig;
use super::manifest::{load_manifest, load_polytope_file, seed_override_from_env, spec_stem};
use super::report::{fmt_rational_point, write_outputs};
use super::verify::{evaluate, verify};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

pub const SOLVE_SCHEMA: &str = "solve-v1";

#[derive(Parser, Debug)]
#[command(name = "monopath", version, about = "Exact monotone-path pivot rules on small polytopes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Write H- and V-representation files for generated instances.
    Gen(GenArgs),
    /// Run one rule from one start and check its bounds.
    Solve(SolveArgs),
    /// Run a configured batch and write summary.csv, report.txt, failures.txt.
    Verify(VerifyArgs),
    /// Brute-force optimum, monotone distance and monotone diameter.
    Oracle(OracleArgs),
    /// Dimension, level, matrix metrics and lattice data.
    Metrics(InstanceArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, conflicts_with = "family")]
    manifest: Option<PathBuf>,
    #[arg(long, required_unless_present = "manifest")]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    poset: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct InstanceArgs {
    /// H-representation file; a sibling `.vrep` file is cross-checked.
    #[arg(required_unless_present = "spec")]
    polytope: Option<PathBuf>,
    /// Generator spec such as `family=cube,n=3,k=1`.
    #[arg(long, conflicts_with = "polytope")]
    spec: Option<String>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long)]
    rule: String,
    /// Start vertex, comma-separated rationals.
    #[arg(long)]
    start: String,
    /// Objective vector, comma-separated integers or rationals.
    #[arg(long, conflicts_with = "objective")]
    c: Option<String>,
    /// Objective file.
    #[arg(long)]
    objective: Option<PathBuf>,
    /// Signed permutation, e.g. `2,-1`.
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
    /// Append a CSV row to `DIR/solve.csv` and write `DIR/trace.txt`.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long)]
    c: Option<String>,
    /// Vertex to measure the monotone distance from (needs `--c`).
    #[arg(long, requires = "c")]
    from: Option<String>,
    /// `exact` or `sampled:COUNT[:SEED]`.
    #[arg(long)]
    diameter: Option<String>,
    /// File for the realizable orientations found in exact mode.
    #[arg(long)]
    orientations: Option<PathBuf>,
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let res = match cli.cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Oracle(a) => cmd_oracle(a),
        Cmd::Metrics(a) => cmd_metrics(a),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn write_pair(p: &Polytope, dir: &Path, stem: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(format!("{stem}.hrep")), write_hrep(p.hrep())?)?;
    std::fs::write(dir.join(format!("{stem}.vrep")), write_vrep(p.ambient_dim(), p.vertices()))?;
    Ok(())
}

fn cmd_gen(a: GenArgs) -> Result<i32> {
    if let Some(m) = &a.manifest {
        let entries = load_manifest(m, seed_override_from_env()?)?;
        for e in &entries {
            write_pair(&e.load()?, &a.out, &format!("{:03}_{}", e.index, e.label()))?;
        }
        println!("wrote {} instances to {}", entries.len(), a.out.display());
        return Ok(EXIT_OK);
    }
    let mut spec = format!("family={}", a.family.as_deref().unwrap_or_default());
    let mut add = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            spec += &format!(",{k}={v}");
        }
    };
    add("n", a.n.map(|x| x.to_string()));
    add("k", a.k.map(|x| x.to_string()));
    add("points", a.points.map(|x| x.to_string()));
    add("poset", a.poset.clone());
    add("seed", a.seed.map(|x| x.to_string()));
    let spec: GenSpec = spec.parse()?;
    let stem = spec_stem(&spec);
    write_pair(&generate(&spec)?, &a.out, &stem)?;
    println!("wrote {stem}.hrep and {stem}.vrep to {}", a.out.display());
    Ok(EXIT_OK)
}

fn load_instance(a: &InstanceArgs) -> Result<Polytope> {
    match (&a.polytope, &a.spec) {
        (Some(p), _) => load_polytope_file(p),
        (None, Some(s)) => generate(&s.parse()?),
        (None, None) => Err(Error::Invalid("an instance file or --spec is required".into())),
    }
}

fn parse_point(s: &str, n: usize, what: &str) -> Result<Point> {
    let v: Option<Point> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(parse_rational)
        .collect();
    match v {
        Some(v) if v.len() == n => Ok(v),
        _ => Err(Error::Validation(format!("{what} '{s}' is not a point with {n} rational coordinates"))),
    }
}

fn vertex_of(p: &Polytope, s: &str) -> Result<usize> {
    let x = parse_point(s, p.ambient_dim(), "vertex")?;
    p.vertex_index(&x)
        .ok_or_else(|| Error::Validation(format!("{} is not a vertex of the instance", fmt_point(&x))))
}

/// An objective from `--c` or a file, perturbed further when it does not
/// order the vertices strictly.
fn objective_for(p: &Polytope, c: Option<&str>, file: Option<&Path>) -> Result<Objective> {
    let o = match (c, file) {
        (Some(c), _) => Objective::generic(p, parse_point(c, p.ambient_dim(), "objective")?),
        (None, Some(f)) => {
            let o = parse_objective(&std::fs::read_to_string(f)?)?;
            o.check_dim(p.ambient_dim())?;
            if o.is_total_on(p) {
                o
            } else {
                o.with_perturbation(identity_weights(p.ambient_dim(), p.genericity_alpha()))
            }
        }
        (None, None) => Objective::new(vec![Default::default(); p.ambient_dim()]),
    };
    Ok(o)
}

fn cmd_solve(a: SolveArgs) -> Result<i32> {
    let p = load_instance(&a.instance)?;
    let rule: Rule = a.rule.parse()?;
    rule.check_compatible(&p)?;
    let start = vertex_of(&p, &a.start)?;
    if a.c.is_none() && a.objective.is_none() && rule != Rule::GreatestImprovement {
        return Err(Error::Invalid(format!("rule {rule} needs --c or --objective")));
    }
    let o = objective_for(&p, a.c.as_deref(), a.objective.as_deref())?;
    let sigma = a
        .sigma
        .as_deref()
        .map(|s| SignedPermutation::parse(&s.replace(',', " ")))
        .transpose()?;
    let g = build_edge_graph(&p);
    let rep = solve(rule, &p, &g, &o, start, sigma.as_ref())?;
    let cfg = RunConfig::default();
    let row = evaluate(&cfg, &p, &g, rep.clone(), None, Some(o.primary.clone()), start);

    let mut trace = format!("rule: {rule}\nsteps: {}\n", rep.steps());
    if let Some(s) = &rep.sigma {
        trace += &format!("sigma: {}\n", s.to_line());
    }
    for (i, &v) in rep.trace.vertex_indices.iter().enumerate() {
        trace += &format!("  {i:>3} {}\n", fmt_point(p.vertex(v)));
    }
    for b in &row.checks {
        let verdict = if b.holds() { "ok" } else { "VIOLATED" };
        trace += &format!("check {}: {} <= {} {verdict}\n", b.name, b.observed, b.declared);
    }
    trace += &format!("sub_lps: {}\noptimum matches oracle: {}\n", rep.sub_lp_count, row.optimum_ok);
    print!("{trace}");

    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("trace.txt"), &trace)?;
        let path = dir.join("solve.csv");
        let fresh = !path.exists();
        let mut f = std::fs::OpenOptions::new().create(true).append(true).open(&path)?;
        if fresh {
            writeln!(f, "schema,rule,c,sigma,start_vertex,end_vertex,steps,sub_lps,headline_check,declared,observed,bounds_ok,optimum_ok,failed_checks")?;
        }
        let head = &rep.bound_checks[0];
        writeln!(
            f,
            "{SOLVE_SCHEMA},{rule},{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt_rational_point(&o.primary),
            rep.sigma.as_ref().map_or_else(String::new, |s| s.to_line()),
            fmt_rational_point(p.vertex(start)),
            fmt_rational_point(p.vertex(rep.trace.end())),
            rep.steps(),
            rep.sub_lp_count,
            head.name,
            head.declared,
            head.observed,
            row.checks.iter().all(|b| b.holds()),
            row.optimum_ok,
            row.failed_checks().join(";")
        )?;
    }
    if row.passed() {
        Ok(EXIT_OK)
    } else {
        eprintln!("failed: {}", row.failed_checks().join(", "));
        Ok(EXIT_MISMATCH)
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<i32> {
    let cfg = RunConfig::load(&a.config)?;
    let dir = a
        .out
        .or_else(|| cfg.output.clone())
        .ok_or_else(|| Error::Invalid("no output directory: pass -o or set output in the config".into()))?;
    let entries = match &cfg.corpus {
        Some(c) => load_manifest(c, seed_override_from_env()?)?,
        None => Vec::new(),
    };
    let out = verify(&cfg, &entries)?;
    write_outputs(&out, &dir)?;
    print!("{}", super::report::report_text(&out));
    let fails = out.failures();
    if fails.is_empty() {
        Ok(EXIT_OK)
    } else {
        for f in fails.iter().take(20) {
            eprintln!("{f}");
        }
        if fails.len() > 20 {
            eprintln!("... {} more in {}", fails.len() - 20, dir.join("failures.txt").display());
        }
        Ok(EXIT_MISMATCH)
    }
}

fn parse_mode(s: &str) -> Result<DiameterMode> {
    if s == "exact" {
        return Ok(DiameterMode::ExactTiny);
    }
    let bad = || Error::Invalid(format!("diameter mode must be 'exact' or 'sampled:COUNT[:SEED]', got '{s}'"));
    let rest = s.strip_prefix("sampled:").ok_or_else(bad)?;
    let mut it = rest.split(':');
    let count = it.next().and_then(|c| c.parse().ok()).ok_or_else(bad)?;
    let seed = match it.next() {
        Some(x) => x.parse().map_err(|_| bad())?,
        None => 0,
    };
    if it.next().is_some() {
        return Err(bad());
    }
    Ok(DiameterMode::Sampled { count, seed })
}

fn cmd_oracle(a: OracleArgs) -> Result<i32> {
    let p = load_instance(&a.instance)?;
    let g = build_edge_graph(&p);
    let mode = a.diameter.as_deref().map(parse_mode).transpose()?;
    if let Some(c) = &a.c {
        let o = objective_for(&p, Some(c), None)?;
        match brute_force_optimum(p.vertices(), &o) {
            Optimum::Unique(v) => println!("optimum: {}", fmt_point(p.vertex(v))),
            Optimum::Tie(vs) => println!(
                "optimum: tie {}",
                vs.iter().map(|&v| fmt_point(p.vertex(v))).collect::<Vec<_>>().join(" ")
            ),
        }
        if let Some(f) = &a.from {
            let v = vertex_of(&p, f)?;
            println!("monotone distance: {}", shortest_monotone_distance(&p, &g, &o, v)?);
        }
    }
    if let Some(mode) = mode {
        let d = monotone_diameter_estimate(&p, &g, mode)?;
        let kind = if mode == DiameterMode::ExactTiny { "exact" } else { "lower bound" };
        println!("monotone diameter ({kind}): {}", d.value);
        println!("  witness vertex: {}", fmt_point(p.vertex(d.witness_vertex)));
        println!(
            "  witness objective: {}",
            d.witness_objective.primary.iter().map(num_den).collect::<Vec<_>>().join(" ")
        );
        println!("  objectives tested: {}", d.objectives_tested);
        if let Some(path) = &a.orientations {
            let mut text = String::new();
            for o in &d.orientations {
                text.extend(o.iter().map(|&x| if x > 0 { '+' } else { '-' }));
                text.push('\n');
            }
            std::fs::write(path, text)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_metrics(a: InstanceArgs) -> Result<i32> {
    let p = load_instance(&a)?;
    let g = build_edge_graph(&p);
    let m = matrix_metrics(p.hrep());
    println!("ambient_dim: {}", p.ambient_dim());
    println!("dim: {}", p.dim());
    println!("vertices: {}", p.n_vertices());
    println!("facets: {}", p.hrep().rows.len());
    println!("equalities: {}", p.hrep().equalities.len());
    println!("edges: {}", g.n_edges());
    println!("graph_diameter: {}", g.diameter());
    println!("level: {}", level_profile(&p).level);
    println!("norm_inf: {}", m.norm_inf);
    println!("max_support: {}", m.max_support);
    println!("delta: {}", m.delta.map_or_else(|| "not computed".into(), |d| d.to_string()));
    println!("lattice_k: {}", p.lattice_k().map_or_else(|| "none".into(), |k| k.to_string()));
    println!("half_integral: {}", p.is_half_integral());
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes() {
        assert_eq!(parse_mode("exact").unwrap(), DiameterMode::ExactTiny);
        assert_eq!(parse_mode("sampled:200").unwrap(), DiameterMode::Sampled { count: 200, seed: 0 });
        assert_eq!(parse_mode("sampled:5:9").unwrap(), DiameterMode::Sampled { count: 5, seed: 9 });
        for bad in ["sampled", "sampled:x", "sampled:1:2:3", "exactly"] {
            assert!(parse_mode(bad).is_err());
        }
    }
}
