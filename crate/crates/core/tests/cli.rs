use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_monopath"));
    c.env_remove("LAB_SEED");
    c
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn run(c: &mut Command) -> Output {
    c.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn p5() -> PathBuf {
    configs().join("p5.hrep")
}

#[test]
fn gen_writes_a_pair() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(bin().args(["gen", "--family", "cube", "--n", "3", "--k", "1", "-o"]).arg(dir.path()));
    assert_eq!(code(&o), 0);
    let mut names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names, ["cube_n3_k1_seed0.hrep", "cube_n3_k1_seed0.vrep"]);
    let v = std::fs::read_to_string(dir.path().join("cube_n3_k1_seed0.vrep")).unwrap();
    assert!(v.starts_with("3 8\n"));
}

#[test]
fn gen_manifest_replays_identically() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let manifest = configs().join("desk.manifest");
    for d in [&a, &b] {
        let o = run(bin().arg("gen").arg("--manifest").arg(&manifest).arg("-o").arg(d.path()));
        assert_eq!(code(&o), 0);
    }
    let lines = std::fs::read_to_string(&manifest)
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .count();
    let files: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 2 * lines);
    for f in files {
        let other = b.path().join(f.file_name().unwrap());
        assert_eq!(std::fs::read(&f).unwrap(), std::fs::read(other).unwrap());
    }
}

#[test]
fn gen_rejects_bad_spec() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(bin().args(["gen", "--family", "cube", "--n", "9", "--k", "1", "-o"]).arg(dir.path()));
    assert_eq!(code(&o), 1);
    assert!(!o.stderr.is_empty());
}

#[test]
fn solve_two_phase_on_the_pentagon() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(bin()
        .arg("solve")
        .arg(p5())
        .args(["--c", "1,0", "--rule", "two_phase", "--start", "0,0", "-o"])
        .arg(dir.path()));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = String::from_utf8(o.stdout).unwrap();
    let steps: usize = out.lines().find_map(|l| l.strip_prefix("steps: ")).unwrap().parse().unwrap();
    assert!(steps <= 6);
    assert!(out.contains("optimum matches oracle: true"));
    let csv = std::fs::read_to_string(dir.path().join("solve.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.lines().nth(1).unwrap().starts_with("solve-v1,two_phase,1/1;0/1,"));
}

#[test]
fn solve_rejects_a_non_vertex_start() {
    let o = run(bin().arg("solve").arg(p5()).args(["--c", "1,0", "--rule", "level", "--start", "1,1"]));
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a vertex"));
}

#[test]
fn solve_rejects_an_incompatible_rule() {
    let o = run(bin().args([
        "solve",
        "--spec",
        "family=cube,n=2,k=3",
        "--c",
        "1,0",
        "--rule",
        "half_integral",
        "--start",
        "0,0",
    ]));
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("half-integral"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&run(bin().arg("frobnicate"))), 1);
    assert_eq!(code(&run(bin().args(["solve", "--rule", "level"]))), 1);
    assert_eq!(code(&run(bin().arg("--help"))), 0);
}

fn write_cfg(dir: &Path, body: &str) -> PathBuf {
    let p = dir.join("run.cfg");
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn verify_empty_corpus_passes() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("empty.manifest"), "# nothing\n").unwrap();
    let cfg = write_cfg(dir.path(), "corpus = empty.manifest\n");
    let out = dir.path().join("out");
    let o = run(bin().arg("verify").arg("--config").arg(&cfg).arg("-o").arg(&out));
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1);
    assert_eq!(std::fs::read_to_string(out.join("failures.txt")).unwrap(), "");
}

#[test]
fn verify_reports_the_lex_check() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "lemma8 = 2,2\n");
    let o = run(bin().arg("verify").arg("--config").arg(&cfg).arg("-o").arg(dir.path().join("out")));
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().contains("lemma8: 8 sigma, 625 pairs, ok\n"));
}

#[test]
fn verify_without_output_dir_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "lemma8 = 1,1\n");
    assert_eq!(code(&run(bin().arg("verify").arg("--config").arg(&cfg))), 1);
    let bad = write_cfg(dir.path(), "rules = nonsense\n");
    assert_eq!(code(&run(bin().arg("verify").arg("--config").arg(&bad).arg("-o").arg(dir.path()))), 1);
}

#[test]
fn lab_seed_overrides_manifest_seeds() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("m.manifest"), "family=lattice_hull,n=3,k=3,points=9,seed=1\n").unwrap();
    let gen = |seed: Option<&str>, out: &str| {
        let mut c = bin();
        if let Some(s) = seed {
            c.env("LAB_SEED", s);
        }
        let o = run(c.arg("gen").arg("--manifest").arg(dir.path().join("m.manifest")).arg("-o").arg(dir.path().join(out)));
        assert_eq!(code(&o), 0);
        let names: Vec<String> = std::fs::read_dir(dir.path().join(out))
            .unwrap()
            .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
            .collect();
        names.into_iter().find(|n| n.ends_with(".hrep")).unwrap()
    };
    assert_eq!(gen(None, "a"), "000_lattice_hull_n3_k3_points9_seed1.hrep");
    assert_ne!(gen(Some("77"), "b"), "000_lattice_hull_n3_k3_points9_seed1.hrep");
    let o = run(bin().env("LAB_SEED", "x").arg("gen").arg("--manifest").arg(dir.path().join("m.manifest")).arg("-o").arg(dir.path()));
    assert_eq!(code(&o), 1);
}

#[test]
fn oracle_and_metrics_commands() {
    let o = run(bin().args(["oracle", "--spec", "family=cube,n=3,k=1", "--c", "1,1,1", "--from", "0,0,0", "--diameter", "sampled:200"]));
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("optimum: (1, 1, 1)\n"));
    assert!(out.contains("monotone distance: 3\n"));
    assert!(out.contains("monotone diameter (lower bound): 3\n"));
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("orient.txt");
    let o = run(bin().arg("oracle").arg(p5()).args(["--diameter", "exact", "--orientations"]).arg(&f));
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().contains("monotone diameter (exact): 2\n"));
    assert_eq!(std::fs::read_to_string(&f).unwrap().lines().count(), 6);
    let o = run(bin().arg("metrics").arg(p5()));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("level: 3\n") && out.contains("vertices: 5\n"));
}
