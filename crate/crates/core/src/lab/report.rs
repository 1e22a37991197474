//! CSV and text outputs of a verify run. Nothing here depends on timing, so
//! identical runs give identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::rational::{num_den, Point};

use super::verify::VerifyOutcome;

pub const SUMMARY_SCHEMA: &str = "summary-v1";
pub const INSTANCES_SCHEMA: &str = "instances-v1";

pub const SUMMARY_COLUMNS: [&str; 23] = [
    "schema",
    "instance",
    "label",
    "rule",
    "objective",
    "c",
    "sigma",
    "start",
    "start_vertex",
    "end_vertex",
    "steps",
    "sub_lps",
    "headline_check",
    "declared",
    "observed",
    "bounds_ok",
    "optimum_ok",
    "monotone_ok",
    "walk_ok",
    "oracle_distance",
    "coherent_legs",
    "legs_ok",
    "failed_checks",
];

pub const INSTANCE_COLUMNS: [&str; 17] = [
    "schema",
    "instance",
    "label",
    "spec",
    "n",
    "dim",
    "vertices",
    "facets",
    "edges",
    "level",
    "norm_inf",
    "max_support",
    "delta",
    "k",
    "half_integral",
    "diameter_sampled",
    "diameter_exact",
];

/// Coordinates as `num/den` joined by `;`.
pub fn fmt_rational_point(p: &[crate::rational::Rational]) -> String {
    p.iter().map(num_den).collect::<Vec<_>>().join(";")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Invalid(format!("csv: {e}"))
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    String::from_utf8(w.into_inner().map_err(csv_err)?).map_err(csv_err)
}

pub fn summary_csv(out: &VerifyOutcome) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SUMMARY_COLUMNS).map_err(csv_err)?;
    for (inst, r) in out.rows() {
        let vertices: &[Point] = &inst.summary.as_ref().expect("rows imply a built instance").vertices;
        let head = r.checks.first();
        let rec = [
            SUMMARY_SCHEMA.to_string(),
            inst.entry.index.to_string(),
            inst.entry.label(),
            r.rule.to_string(),
            opt(r.objective),
            r.c.as_deref().map_or_else(String::new, fmt_rational_point),
            r.sigma.as_ref().map_or_else(String::new, |s| s.to_line()),
            r.start.to_string(),
            fmt_rational_point(&vertices[r.start]),
            fmt_rational_point(&vertices[r.end]),
            r.steps.to_string(),
            r.sub_lps.to_string(),
            opt(head.map(|b| b.name.clone())),
            opt(head.map(|b| b.declared)),
            opt(head.map(|b| b.observed)),
            r.checks.iter().all(|b| b.holds()).to_string(),
            r.optimum_ok.to_string(),
            r.monotone_ok.to_string(),
            r.walk_ok.to_string(),
            opt(r.oracle_distance),
            r.coherent_legs.to_string(),
            (r.leg_bound_violations == 0).to_string(),
            r.failed_checks().join(";"),
        ];
        w.write_record(&rec).map_err(csv_err)?;
    }
    finish(w)
}

pub fn instances_csv(out: &VerifyOutcome) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(INSTANCE_COLUMNS).map_err(csv_err)?;
    for inst in &out.instances {
        let Some(s) = &inst.summary else { continue };
        let rec = [
            INSTANCES_SCHEMA.to_string(),
            inst.entry.index.to_string(),
            inst.entry.label(),
            inst.entry.describe(),
            s.ambient_dim.to_string(),
            s.dim.to_string(),
            s.vertices.len().to_string(),
            s.facets.to_string(),
            s.edges.to_string(),
            s.level.to_string(),
            s.norm_inf.to_string(),
            s.max_support.to_string(),
            opt(s.delta),
            opt(s.k),
            s.half_integral.to_string(),
            opt(inst.diameter_sampled.as_ref().map(|d| d.value)),
            opt(inst.diameter_exact.as_ref().map(|d| d.value)),
        ];
        w.write_record(&rec).map_err(csv_err)?;
    }
    finish(w)
}

/// Human-readable summary: lex-order check lines, then observed against declared
/// bounds per rule and check.
pub fn report_text(out: &VerifyOutcome) -> String {
    let mut s = String::new();
    let runs = out.rows().count();
    let fails = out.failures();
    let _ = writeln!(s, "instances: {}", out.instances.len());
    let _ = writeln!(s, "runs: {runs}");
    for r in &out.lemma8 {
        let _ = writeln!(s, "{r}");
    }
    let (legs, bad) = out.coherent_leg_totals();
    let _ = writeln!(s, "coherent legs: {legs}, over distinct-value bound: {bad}");
    let table = out.check_table();
    if !table.is_empty() {
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:<22} {:<34} {:>7} {:>10} {:>12} {:>12}",
            "rule", "check", "runs", "violated", "max_observed", "max_declared"
        );
        for ((rule, name), st) in &table {
            let _ = writeln!(
                s,
                "{:<22} {:<34} {:>7} {:>10} {:>12} {:>12}",
                rule.as_str(),
                name,
                st.runs,
                st.violations,
                st.max_observed,
                st.max_declared
            );
        }
    }
    let diam: Vec<_> = out
        .instances
        .iter()
        .filter(|i| i.diameter_sampled.is_some() || i.diameter_exact.is_some())
        .collect();
    if !diam.is_empty() {
        let _ = writeln!(s);
        let _ = writeln!(s, "monotone diameter (sampled lower bound / exact)");
        for i in diam {
            let _ = writeln!(
                s,
                "  {:<44} {:>3} / {}",
                i.entry.label(),
                opt(i.diameter_sampled.as_ref().map(|d| d.value)),
                i.diameter_exact.as_ref().map_or_else(|| "-".to_string(), |d| d.value.to_string())
            );
        }
    }
    let _ = writeln!(s);
    if fails.is_empty() {
        let _ = writeln!(s, "result: pass");
    } else {
        let _ = writeln!(s, "result: FAIL ({} failures, see failures.txt)", fails.len());
    }
    s
}

/// Writes `summary.csv`, `instances.csv`, `report.txt`, `failures.txt` and
/// one orientation list per exactly-solved instance under `dir/orientations`.
pub fn write_outputs(out: &VerifyOutcome, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("summary.csv"), summary_csv(out)?)?;
    std::fs::write(dir.join("instances.csv"), instances_csv(out)?)?;
    std::fs::write(dir.join("report.txt"), report_text(out))?;
    let mut f = out.failures().join("\n");
    if !f.is_empty() {
        f.push('\n');
    }
    std::fs::write(dir.join("failures.txt"), f)?;
    let exact: Vec<_> = out.instances.iter().filter(|i| i.diameter_exact.is_some()).collect();
    if !exact.is_empty() {
        let odir = dir.join("orientations");
        std::fs::create_dir_all(&odir)?;
        for i in exact {
            let d = i.diameter_exact.as_ref().unwrap();
            let mut text = format!("# {} realizable orientations, one sign per edge in edge order\n", d.orientations.len());
            for o in &d.orientations {
                let line: Vec<&str> = o.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect();
                text += &line.join("");
                text.push('\n');
            }
            std::fs::write(odir.join(format!("{:03}_{}.txt", i.entry.index, i.entry.label())), text)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::config::RunConfig;
    use crate::lab::manifest::parse_manifest;
    use crate::lab::verify::verify;

    #[test]
    fn csv_shape() {
        let cfg = RunConfig {
            objectives: 2,
            sigma_samples: 1,
            rules: vec![crate::pathalgos::Rule::Level],
            ..RunConfig::default()
        };
        let e = parse_manifest("family=cube,n=2,k=1\n", Path::new("."), None).unwrap();
        let out = verify(&cfg, &e).unwrap();
        let csv = summary_csv(&out).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], SUMMARY_COLUMNS.join(","));
        assert_eq!(lines.len(), 1 + 2 * 4);
        assert!(lines[1].starts_with("summary-v1,0,cube_n2_k1_seed0,level,0,"));
        assert!(lines[1].contains("/1;"));
        assert!(report_text(&out).ends_with("result: pass\n"));
    }

    #[test]
    fn empty_outputs() {
        let out = verify(&RunConfig::default(), &[]).unwrap();
        assert_eq!(summary_csv(&out).unwrap().lines().count(), 1);
        let dir = tempfile::tempdir().unwrap();
        write_outputs(&out, dir.path()).unwrap();
        assert_eq!(std::fs::read_to_string(dir.path().join("failures.txt")).unwrap(), "");
    }
}
