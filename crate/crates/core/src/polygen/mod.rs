//! Seeded, reproducible instance families.

pub mod rng;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactgeom::{facet_enumeration, HRep, HalfSpace, Polytope};
use crate::pivot::SignedPermutation;
use crate::rational::{int, ratio, Point};
pub use rng::{sub_seed, Rng};

pub const MAX_N: usize = 6;
pub const MAX_K: u64 = 4;
pub const MAX_POINTS: usize = 40;
const MAX_RETRIES: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PosetKind {
    Random,
    Chain,
    Antichain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `[0, k]^n`.
    Cube { n: usize, k: u64 },
    /// `conv{0, k·e_1, ..., k·e_n}`.
    Simplex { n: usize, k: u64 },
    /// `conv{±e_i}` moved by `x ↦ (x + 1)/2` into `[0, 1]^n`: half-integral.
    CrossPolytope { n: usize },
    /// Hull of random points of `k·{0,1}^n`.
    Dilated01Hull { n: usize, k: u64, points: usize },
    /// Hull of random points of `{0..k}^n`.
    LatticeHull { n: usize, k: u64, points: usize },
    /// Hull of random points of `{0, 1/2, 1}^n`.
    HalfIntegralHull { n: usize, points: usize },
    /// `{0 <= x <= 1, x_i <= x_j for i < j in the poset}`.
    OrderPolytope { n: usize, poset: PosetKind },
}

/// A family plus the seed feeding its random draws. Serialised as
/// `family=...,n=...,k=...,points=...,seed=...` with only the keys the family
/// uses (and `poset=` for order polytopes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub family: Family,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        GenSpec { family, seed }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GenSpec { seed, ..self }
    }

    pub fn n(&self) -> usize {
        match self.family {
            Family::Cube { n, .. }
            | Family::Simplex { n, .. }
            | Family::CrossPolytope { n }
            | Family::Dilated01Hull { n, .. }
            | Family::LatticeHull { n, .. }
            | Family::HalfIntegralHull { n, .. }
            | Family::OrderPolytope { n, .. } => n,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::Cube { .. } => "cube",
            Family::Simplex { .. } => "simplex",
            Family::CrossPolytope { .. } => "cross_polytope",
            Family::Dilated01Hull { .. } => "dilated_01_hull",
            Family::LatticeHull { .. } => "lattice_hull",
            Family::HalfIntegralHull { .. } => "half_integral_hull",
            Family::OrderPolytope { .. } => "order_polytope",
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        let bad = |m: String| Err(Error::Invalid(m));
        if n == 0 || n > MAX_N {
            return bad(format!("n = {n} outside 1..={MAX_N}"));
        }
        let (k, points) = match self.family {
            Family::Cube { k, .. } | Family::Simplex { k, .. } => (Some(k), None),
            Family::Dilated01Hull { k, points, .. } | Family::LatticeHull { k, points, .. } => (Some(k), Some(points)),
            Family::HalfIntegralHull { points, .. } => (None, Some(points)),
            _ => (None, None),
        };
        if let Some(k) = k {
            if k == 0 || k > MAX_K {
                return bad(format!("k = {k} outside 1..={MAX_K}"));
            }
        }
        if let Some(p) = points {
            if !(2..=MAX_POINTS).contains(&p) {
                return bad(format!("points = {p} outside 2..={MAX_POINTS}"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family={}", self.family_name())?;
        match self.family {
            Family::Cube { n, k } | Family::Simplex { n, k } => write!(f, ",n={n},k={k}")?,
            Family::CrossPolytope { n } => write!(f, ",n={n}")?,
            Family::Dilated01Hull { n, k, points } | Family::LatticeHull { n, k, points } => {
                write!(f, ",n={n},k={k},points={points}")?
            }
            Family::HalfIntegralHull { n, points } => write!(f, ",n={n},points={points}")?,
            Family::OrderPolytope { n, poset } => {
                let p = match poset {
                    PosetKind::Random => "random",
                    PosetKind::Chain => "chain",
                    PosetKind::Antichain => "antichain",
                };
                write!(f, ",n={n},poset={p}")?
            }
        }
        write!(f, ",seed={}", self.seed)
    }
}

impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut kv = std::collections::BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("expected key=value, got '{part}'")))?;
            if kv.insert(k.trim(), v.trim()).is_some() {
                return Err(Error::Invalid(format!("duplicate key '{k}'")));
            }
        }
        let mut take = |key: &str| kv.remove(key);
        let num = |key: &str, v: Option<&str>| -> Result<u64> {
            v.ok_or_else(|| Error::Invalid(format!("missing '{key}'")))?
                .parse()
                .map_err(|_| Error::Invalid(format!("'{key}' is not a non-negative integer")))
        };
        let family = take("family").ok_or_else(|| Error::Invalid("missing 'family'".into()))?;
        let n = num("n", take("n"))? as usize;
        let seed = match take("seed") {
            Some(v) => num("seed", Some(v))?,
            None => 0,
        };
        let family = match family {
            "cube" => Family::Cube { n, k: num("k", take("k"))? },
            "simplex" => Family::Simplex { n, k: num("k", take("k"))? },
            "cross_polytope" => Family::CrossPolytope { n },
            "dilated_01_hull" => Family::Dilated01Hull {
                n,
                k: num("k", take("k"))?,
                points: num("points", take("points"))? as usize,
            },
            "lattice_hull" => Family::LatticeHull {
                n,
                k: num("k", take("k"))?,
                points: num("points", take("points"))? as usize,
            },
            "half_integral_hull" => Family::HalfIntegralHull {
                n,
                points: num("points", take("points"))? as usize,
            },
            "order_polytope" => Family::OrderPolytope {
                n,
                poset: match take("poset").unwrap_or("random") {
                    "random" => PosetKind::Random,
                    "chain" => PosetKind::Chain,
                    "antichain" => PosetKind::Antichain,
                    other => return Err(Error::Invalid(format!("unknown poset '{other}'"))),
                },
            },
            other => return Err(Error::Invalid(format!("unknown family '{other}'"))),
        };
        if let Some(k) = kv.keys().next() {
            return Err(Error::Invalid(format!("unexpected key '{k}'")));
        }
        let spec = GenSpec { family, seed };
        spec.validate()?;
        Ok(spec)
    }
}

/// Builds the instance. Random hull families redraw with [`sub_seed`] when a
/// draw spans less than a segment, up to a fixed number of attempts.
pub fn generate(spec: &GenSpec) -> Result<Polytope> {
    spec.validate()?;
    match spec.family {
        Family::Cube { n, k } => cube(n, k),
        Family::Simplex { n, k } => simplex(n, k),
        Family::CrossPolytope { n } => cross_polytope(n),
        Family::OrderPolytope { n, poset } => {
            let rel = match poset {
                PosetKind::Random => poset_random(n, spec.seed),
                PosetKind::Chain => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
                PosetKind::Antichain => BTreeSet::new(),
            };
            order_polytope(n, &rel)
        }
        Family::Dilated01Hull { n, k, points } => hull_family(spec, n, points, |r| int(k as i64 * r.range(0, 1))),
        Family::LatticeHull { n, k, points } => hull_family(spec, n, points, |r| int(r.range(0, k as i64))),
        Family::HalfIntegralHull { n, points } => hull_family(spec, n, points, |r| ratio(r.range(0, 2), 2)),
    }
}

fn hull_family(spec: &GenSpec, n: usize, points: usize, mut coord: impl FnMut(&mut Rng) -> crate::Rational) -> Result<Polytope> {
    for attempt in 0..MAX_RETRIES {
        let mut r = Rng::new(sub_seed(spec.seed, attempt));
        let pts: Vec<Point> = (0..points).map(|_| (0..n).map(|_| coord(&mut r)).collect()).collect();
        match facet_enumeration(&pts) {
            Ok(p) => return Ok(p),
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Degenerate(format!("{spec}: every draw was degenerate")))
}

fn row(n: usize, entries: &[(usize, i64)], rhs: crate::Rational) -> HalfSpace {
    let mut a = vec![0i64; n];
    for &(i, v) in entries {
        a[i] = v;
    }
    HalfSpace::new(a, rhs)
}

pub fn cube(n: usize, k: u64) -> Result<Polytope> {
    let k = k as i64;
    let mut rows = Vec::new();
    for i in 0..n {
        rows.push(row(n, &[(i, -1)], int(0)));
        rows.push(row(n, &[(i, 1)], int(k)));
    }
    let verts = (0..1u32 << n)
        .map(|m| (0..n).map(|i| int(if m >> i & 1 == 1 { k } else { 0 })).collect())
        .collect();
    Polytope::from_parts(HRep::new(n, rows), verts)
}

pub fn simplex(n: usize, k: u64) -> Result<Polytope> {
    let k = k as i64;
    let mut rows: Vec<HalfSpace> = (0..n).map(|i| row(n, &[(i, -1)], int(0))).collect();
    rows.push(HalfSpace::new(vec![1; n], int(k)));
    let mut verts = vec![vec![int(0); n]];
    for i in 0..n {
        let mut v = vec![int(0); n];
        v[i] = int(k);
        verts.push(v);
    }
    Polytope::from_parts(HRep::new(n, rows), verts)
}

pub fn cross_polytope(n: usize) -> Result<Polytope> {
    // Σ s_i y_i <= 1 for y = 2x − 1 reads Σ s_i x_i <= (1 + Σ s_i) / 2
    let mut rows = Vec::new();
    for m in 0..1u32 << n {
        let s: Vec<i64> = (0..n).map(|i| if m >> i & 1 == 1 { 1 } else { -1 }).collect();
        let sum: i64 = s.iter().sum();
        rows.push(HalfSpace::new(s, ratio(1 + sum, 2)));
    }
    let mut verts = Vec::new();
    for i in 0..n {
        for e in [0, 2] {
            let mut v = vec![ratio(1, 2); n];
            v[i] = ratio(e, 2);
            verts.push(v);
        }
    }
    Polytope::from_parts(HRep::new(n, rows), verts)
}

/// `(i, j)` means `x_i <= x_j`. Vertices are the indicator vectors of the
/// up-closed sets; rows are the cover relations plus `x_i >= 0` on minimal and
/// `x_j <= 1` on maximal elements.
pub fn order_polytope(n: usize, relations: &BTreeSet<(usize, usize)>) -> Result<Polytope> {
    let rel = transitive_closure(n, relations);
    let covers: Vec<(usize, usize)> = rel
        .iter()
        .copied()
        .filter(|&(i, j)| !(0..n).any(|m| rel.contains(&(i, m)) && rel.contains(&(m, j))))
        .collect();
    let mut rows: Vec<HalfSpace> = covers.iter().map(|&(i, j)| row(n, &[(i, 1), (j, -1)], int(0))).collect();
    for e in 0..n {
        if !rel.iter().any(|&(_, j)| j == e) {
            rows.push(row(n, &[(e, -1)], int(0)));
        }
        if !rel.iter().any(|&(i, _)| i == e) {
            rows.push(row(n, &[(e, 1)], int(1)));
        }
    }
    let verts = (0..1u32 << n)
        .filter(|&m| rel.iter().all(|&(i, j)| m >> i & 1 == 0 || m >> j & 1 == 1))
        .map(|m| (0..n).map(|i| int((m >> i & 1) as i64)).collect())
        .collect();
    Polytope::from_parts(HRep::new(n, rows), verts)
}

/// Uniform signed permutation: Fisher-Yates on the levels, then one fair
/// sign per position.
pub fn random_signed_permutation(n: usize, r: &mut Rng) -> SignedPermutation {
    let mut levels: Vec<i64> = (1..=n as i64).collect();
    for i in (1..n).rev() {
        let j = r.below(i as u64 + 1) as usize;
        levels.swap(i, j);
    }
    for l in levels.iter_mut() {
        if r.chance(1, 2) {
            *l = -*l;
        }
    }
    SignedPermutation::new(levels).expect("a shuffled signed permutation")
}

/// A nonzero integer vector with entries in `[-9, 9]`.
pub fn random_objective_vector(n: usize, r: &mut Rng) -> Vec<i64> {
    loop {
        let c: Vec<i64> = (0..n).map(|_| r.range(-9, 9)).collect();
        if c.iter().any(|&x| x != 0) {
            return c;
        }
    }
}

/// A random strict order on `0..n`: each `i < j` is related with probability
/// 1/3 (pairs drawn in lexicographic order), then transitively closed.
pub fn poset_random(n: usize, seed: u64) -> BTreeSet<(usize, usize)> {
    let mut r = Rng::new(seed);
    let mut rel = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.chance(1, 3) {
                rel.insert((i, j));
            }
        }
    }
    transitive_closure(n, &rel)
}

fn transitive_closure(n: usize, rel: &BTreeSet<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    let mut m = vec![vec![false; n]; n];
    for &(i, j) in rel {
        m[i][j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if m[i][k] && m[k][j] {
                    m[i][j] = true;
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for (i, row) in m.iter().enumerate() {
        for (j, &b) in row.iter().enumerate() {
            if b {
                out.insert((i, j));
            }
        }
    }
    out
}
