//! Flat `key = value` run configuration.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::exactgeom::io::content_lines;
use crate::pathalgos::Rule;

pub const DEFAULT_OBJECTIVES: usize = 20;
pub const DEFAULT_SIGMA_SAMPLES: usize = 10;
pub const DEFAULT_DIAMETER_SAMPLES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Starts {
    All,
    Sample(usize),
}

impl std::str::FromStr for Starts {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(Starts::All);
        }
        s.strip_prefix("sample:")
            .and_then(|n| n.parse().ok())
            .filter(|&n| n > 0)
            .map(Starts::Sample)
            .ok_or_else(|| Error::Invalid(format!("starts must be 'all' or 'sample:N', got '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Oracles {
    /// Shortest monotone distance from each start, compared with the path.
    pub distance: bool,
    pub diameter_sampled: bool,
    pub diameter_exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// `None` runs no instances.
    pub corpus: Option<PathBuf>,
    pub rules: Vec<Rule>,
    pub objectives: usize,
    pub seed: u64,
    /// Extra objectives, applied to instances of matching dimension.
    pub explicit: Vec<Vec<i64>>,
    pub starts: Starts,
    pub sigma_samples: usize,
    pub oracles: Oracles,
    pub diameter_samples: usize,
    pub lemma8: Vec<(usize, u64)>,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            corpus: None,
            rules: Rule::ALL.to_vec(),
            objectives: DEFAULT_OBJECTIVES,
            seed: 0,
            explicit: Vec::new(),
            starts: Starts::All,
            sigma_samples: DEFAULT_SIGMA_SAMPLES,
            oracles: Oracles {
                distance: true,
                ..Oracles::default()
            },
            diameter_samples: DEFAULT_DIAMETER_SAMPLES,
            lemma8: Vec::new(),
            output: None,
        }
    }
}

fn int_list(v: &str) -> Result<Vec<i64>> {
    v.split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Invalid(format!("expected comma-separated integers, got '{v}'")))
}

impl RunConfig {
    /// Relative paths resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (line, raw) in content_lines(text) {
            let bad = |msg: String| Error::parse(line, msg);
            let (key, value) = raw
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key = value, got '{raw}'")))?;
            let (key, value) = (key.trim(), value.trim());
            let number = || value.parse::<u64>().map_err(|_| bad(format!("{key}: '{value}' is not a number")));
            match key {
                "corpus" => cfg.corpus = Some(base.join(value)),
                "rules" => {
                    cfg.rules = if value == "all" {
                        Rule::ALL.to_vec()
                    } else {
                        value
                            .split(',')
                            .map(|r| r.trim().parse())
                            .collect::<Result<_>>()
                            .map_err(|e| bad(e.to_string()))?
                    }
                }
                "objectives" => cfg.objectives = number()? as usize,
                "seed" => cfg.seed = number()?,
                "objective" => cfg.explicit.push(int_list(value).map_err(|e| bad(e.to_string()))?),
                "starts" => cfg.starts = value.parse().map_err(|e: Error| bad(e.to_string()))?,
                "sigma_samples" => cfg.sigma_samples = number()? as usize,
                "diameter_samples" => cfg.diameter_samples = number()? as usize,
                "oracles" => {
                    cfg.oracles = Oracles::default();
                    for o in value.split(',').map(str::trim).filter(|o| !o.is_empty()) {
                        match o {
                            "none" => {}
                            "distance" => cfg.oracles.distance = true,
                            "diameter" => cfg.oracles.diameter_sampled = true,
                            "diameter_exact" => cfg.oracles.diameter_exact = true,
                            _ => return Err(bad(format!("unknown oracle '{o}'"))),
                        }
                    }
                }
                "lemma8" => match int_list(value).map_err(|e| bad(e.to_string()))?[..] {
                    [n, k] if (1..=4).contains(&n) && (1..=4).contains(&k) => cfg.lemma8.push((n as usize, k as u64)),
                    _ => return Err(bad(format!("lemma8 expects 'n,k' with both in 1..=4, got '{value}'"))),
                },
                "output" => cfg.output = Some(base.join(value)),
                _ => return Err(bad(format!("unknown key '{key}'"))),
            }
        }
        if cfg.rules.is_empty() {
            return Err(Error::Validation("no rules selected".into()));
        }
        if let Some(c) = &cfg.corpus {
            if !c.is_file() {
                return Err(Error::Validation(format!("corpus manifest {} not found", c.display())));
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Validation(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys() {
        let cfg = RunConfig::parse(
            "# c\nrules = level, two_phase\nobjectives = 3\nobjective = 1,0\nstarts = sample:2\nlemma8 = 2,2\noracles = distance,diameter_exact\n",
            Path::new("."),
        )
        .unwrap();
        assert_eq!(cfg.rules, vec![Rule::Level, Rule::TwoPhase]);
        assert_eq!(cfg.objectives, 3);
        assert_eq!(cfg.explicit, vec![vec![1, 0]]);
        assert_eq!(cfg.starts, Starts::Sample(2));
        assert_eq!(cfg.lemma8, vec![(2, 2)]);
        assert!(cfg.oracles.diameter_exact && cfg.oracles.distance && !cfg.oracles.diameter_sampled);
        assert_eq!(cfg.corpus, None);
    }

    #[test]
    fn rejects() {
        for bad in ["bogus = 1", "rules = simplex", "starts = some", "lemma8 = 2", "objectives", "corpus = /nope/x"] {
            assert!(RunConfig::parse(bad, Path::new(".")).is_err(), "{bad}");
        }
    }
}
