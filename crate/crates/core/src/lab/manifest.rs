//! Corpus manifests: one instance per line, either a generator spec or
//! `file=<path>` naming an H-representation file.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::exactgeom::io::{content_lines, load_polytope};
use crate::exactgeom::Polytope;
use crate::polygen::rng::sub_seed;
use crate::polygen::{generate, GenSpec};

pub const SEED_ENV: &str = "LAB_SEED";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Spec(GenSpec),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub index: usize,
    pub source: Source,
}

impl Entry {
    /// Stable label used in reports and file names.
    pub fn label(&self) -> String {
        match &self.source {
            Source::Spec(s) => spec_stem(s),
            Source::File(p) => p.file_stem().map_or_else(|| "file".into(), |s| s.to_string_lossy().into_owned()),
        }
    }

    pub fn describe(&self) -> String {
        match &self.source {
            Source::Spec(s) => s.to_string(),
            Source::File(p) => format!("file={}", p.display()),
        }
    }

    pub fn load(&self) -> Result<Polytope> {
        match &self.source {
            Source::Spec(s) => generate(s),
            Source::File(p) => load_polytope_file(p),
        }
    }
}

/// `family=cube,n=3,k=1,seed=0` becomes `cube_n3_k1_seed0`.
pub fn spec_stem(s: &GenSpec) -> String {
    s.to_string().trim_start_matches("family=").replace('=', "").replace(',', "_")
}

/// Reads an H-representation, cross-checked against a sibling `.vrep` file
/// when one exists.
pub fn load_polytope_file(path: &Path) -> Result<Polytope> {
    let read = |p: &Path| {
        std::fs::read_to_string(p).map_err(|e| Error::Validation(format!("cannot read {}: {e}", p.display())))
    };
    let h = read(path)?;
    let vpath = path.with_extension("vrep");
    let v = if vpath.is_file() && vpath != path { Some(read(&vpath)?) } else { None };
    load_polytope(&h, v.as_deref())
}

/// Parses a manifest. With `seed_override`, generated entry `i` gets seed
/// `sub_seed(override, i)` in place of its own.
pub fn parse_manifest(text: &str, base: &Path, seed_override: Option<u64>) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for (line, raw) in content_lines(text) {
        let index = out.len();
        let source = if let Some(f) = raw.strip_prefix("file=") {
            Source::File(base.join(f.trim()))
        } else {
            let s: GenSpec = raw.parse().map_err(|e: Error| Error::parse(line, e.to_string()))?;
            Source::Spec(match seed_override {
                Some(o) => s.with_seed(sub_seed(o, index as u64)),
                None => s,
            })
        };
        out.push(Entry { index, source });
    }
    Ok(out)
}

pub fn seed_override_from_env() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Validation(format!("{SEED_ENV} must be an unsigned integer, got '{v}'"))),
        Err(_) => Ok(None),
    }
}

pub fn load_manifest(path: &Path, seed_override: Option<u64>) -> Result<Vec<Entry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read manifest {}: {e}", path.display())))?;
    parse_manifest(&text, path.parent().unwrap_or(Path::new(".")), seed_override)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_and_override() {
        let text = "# corpus\nfamily=cube,n=2,k=1\n\nfile=p5.hrep\nfamily=lattice_hull,n=3,k=2,points=6,seed=4\n";
        let e = parse_manifest(text, Path::new("/x"), None).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e[0].label(), "cube_n2_k1_seed0");
        assert_eq!(e[1].source, Source::File(PathBuf::from("/x/p5.hrep")));
        assert_eq!(e[1].label(), "p5");
        let o = parse_manifest(text, Path::new("/x"), Some(11)).unwrap();
        match &o[2].source {
            Source::Spec(s) => assert_eq!(s.seed, sub_seed(11, 2)),
            _ => unreachable!(),
        }
        let err = parse_manifest("family=cube,n=2\n", Path::new("."), None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }
}
