//! Signed permutations, `x_σ` weights, the induced lexicographic order and the
//! coordinate-maximal flag.

use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactgeom::io::content_lines;
use crate::exactgeom::{FaceSpec, Polytope};
use crate::rational::{Point, Rational};

/// `σ: [n] → ±[n]` stored 0-based by position: `sigma[i] = ±(level)` with
/// levels `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    sigma: Vec<i64>,
}

impl SignedPermutation {
    pub fn new(sigma: Vec<i64>) -> Result<Self> {
        let n = sigma.len() as i64;
        let mut seen = vec![false; sigma.len()];
        for &s in &sigma {
            let a = s.abs();
            if a < 1 || a > n || seen[(a - 1) as usize] {
                return Err(Error::Invalid(format!("{sigma:?} is not a signed permutation")));
            }
            seen[(a - 1) as usize] = true;
        }
        Ok(SignedPermutation { sigma })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            sigma: (1..=n as i64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.sigma
    }

    /// `|σ(i)|`.
    pub fn level(&self, i: usize) -> usize {
        self.sigma[i].unsigned_abs() as usize
    }

    /// `sign(σ(i))` as ±1.
    pub fn sign(&self, i: usize) -> i64 {
        self.sigma[i].signum()
    }

    /// The coordinate `σ⁻¹(level)`.
    pub fn position_of(&self, level: usize) -> usize {
        self.sigma.iter().position(|s| s.unsigned_abs() as usize == level).unwrap()
    }

    /// All `2ⁿ n!` signed permutations, in a fixed order.
    pub fn all(n: usize) -> Vec<SignedPermutation> {
        let mut perms: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for l in 1..=n as i64 {
                    if !p.iter().any(|x: &i64| x.abs() == l) {
                        let mut q = p.clone();
                        q.push(l);
                        next.push(q);
                    }
                }
            }
            perms = next;
        }
        let mut out = Vec::new();
        for p in perms {
            for signs in 0..(1u32 << n) {
                let s = p
                    .iter()
                    .enumerate()
                    .map(|(i, &l)| if signs >> i & 1 == 1 { -l } else { l })
                    .collect();
                out.push(SignedPermutation { sigma: s });
            }
        }
        out
    }

    /// One line of `n` signed integers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, l) = lines.next().ok_or_else(|| Error::parse(0, "empty permutation file"))?;
        let s: Vec<i64> = l
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(ln, format!("bad entry '{t}'"))))
            .collect::<Result<_>>()?;
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing content"));
        }
        SignedPermutation::new(s)
    }

    pub fn to_line(&self) -> String {
        let v: Vec<String> = self.sigma.iter().map(i64::to_string).collect();
        v.join(" ")
    }
}

/// `x_σ` with coordinate `i` equal to `sign(σ(i)) · α^|σ(i)|`. Requires
/// `α >= 2k + 1`, the threshold for the induced order to be lexicographic on
/// `[-k, k]^n`.
pub fn build_x_sigma(sigma: &SignedPermutation, n: usize, k: u64, alpha: i64) -> Result<Point> {
    if sigma.len() != n {
        return Err(Error::Invalid(format!("permutation has length {}, expected {n}", sigma.len())));
    }
    if alpha < 0 || (alpha as u128) < 2 * k as u128 + 1 {
        return Err(Error::Precondition(format!("alpha {alpha} < 2k+1 = {}", 2 * k + 1)));
    }
    Ok(x_sigma_unchecked(sigma, alpha))
}

pub(crate) fn x_sigma_unchecked(sigma: &SignedPermutation, alpha: i64) -> Point {
    (0..sigma.len())
        .map(|i| {
            let w = BigInt::from(alpha).pow(sigma.level(i) as u32) * sigma.sign(i);
            Rational::from_integer(w)
        })
        .collect()
}

/// The order induced by `σ`: scan levels `n` down to `1`, comparing
/// `sign · x` at coordinate `σ⁻¹(level)`.
pub fn lex_compare<T: Ord>(sigma: &SignedPermutation, x: &[T], y: &[T]) -> Ordering {
    for level in (1..=sigma.len()).rev() {
        let i = sigma.position_of(level);
        let o = x[i].cmp(&y[i]);
        let o = if sigma.sign(i) < 0 { o.reverse() } else { o };
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// The chain `G_n ⊇ ... ⊇ G_0` of successive coordinate-maximal faces.
#[derive(Clone, Debug)]
pub struct SigmaFlag {
    /// `faces[i]` holds the vertex indices of `G_i`.
    pub faces: Vec<Vec<usize>>,
    pub specs: Vec<FaceSpec>,
    /// The single vertex of `G_0`.
    pub vertex: usize,
}

/// `G_{i-1}` is the face of `G_i` maximising `sign(σ(j)) · x_j` for
/// `j = σ⁻¹(i)`.
pub fn sigma_flag(p: &Polytope, sigma: &SignedPermutation) -> Result<SigmaFlag> {
    let n = p.ambient_dim();
    if sigma.len() != n {
        return Err(Error::Invalid(format!("permutation has length {}, expected {n}", sigma.len())));
    }
    let mut faces = vec![Vec::new(); n + 1];
    faces[n] = (0..p.n_vertices()).collect();
    for level in (1..=n).rev() {
        let j = sigma.position_of(level);
        let s = sigma.sign(j);
        let g = &faces[level];
        let best = g
            .iter()
            .map(|&v| signed(&p.vertex(v)[j], s))
            .max()
            .unwrap();
        faces[level - 1] = g.iter().copied().filter(|&v| signed(&p.vertex(v)[j], s) == best).collect();
    }
    if faces[0].len() != 1 {
        return Err(Error::Degenerate("flag does not end in a vertex".into()));
    }
    let specs = faces.iter().map(|f| FaceSpec::spanned_by(p, f)).collect();
    Ok(SigmaFlag {
        vertex: faces[0][0],
        faces,
        specs,
    })
}

fn signed(x: &Rational, s: i64) -> Rational {
    if s < 0 {
        -x.clone()
    } else {
        x.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::fixtures::*;
    use crate::rational::{dot, point};

    fn sp(v: &[i64]) -> SignedPermutation {
        SignedPermutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn x_sigma_values() {
        assert_eq!(build_x_sigma(&sp(&[1, 2]), 2, 2, 5).unwrap(), point(&[5, 25]));
        assert_eq!(build_x_sigma(&sp(&[-2, 1]), 2, 2, 5).unwrap(), point(&[-25, 5]));
        assert!(matches!(build_x_sigma(&sp(&[1, 2]), 2, 2, 4), Err(Error::Precondition(_))));
        let x = build_x_sigma(&sp(&[1, 2]), 2, 2, 5).unwrap();
        assert!(dot(&x, &point(&[2, 1])) < dot(&x, &point(&[0, 2])));
        assert_eq!(dot(&x, &point(&[2, 1])), Rational::from_integer(35.into()));
    }

    #[test]
    fn lex_examples() {
        let id = SignedPermutation::identity(2);
        assert_eq!(lex_compare(&id, &[2, 1], &[0, 2]), Ordering::Less);
        assert_eq!(lex_compare(&id, &[1, 2], &[0, 2]), Ordering::Greater);
    }

    #[test]
    fn enumeration_counts_and_validation() {
        assert_eq!(SignedPermutation::all(1).len(), 2);
        assert_eq!(SignedPermutation::all(2).len(), 8);
        assert_eq!(SignedPermutation::all(3).len(), 48);
        assert!(SignedPermutation::new(vec![1, 1]).is_err());
        assert!(SignedPermutation::new(vec![0, 1]).is_err());
        assert_eq!(SignedPermutation::parse("-2 1\n").unwrap(), sp(&[-2, 1]));
    }

    #[test]
    fn flags() {
        let p = pentagon();
        let f = sigma_flag(&p, &SignedPermutation::identity(2)).unwrap();
        let g1: Vec<_> = f.faces[1].iter().map(|&v| p.vertex(v).clone()).collect();
        assert_eq!(g1, vec![point(&[0, 2]), point(&[1, 2])]);
        assert_eq!(p.vertex(f.vertex), &point(&[1, 2]));
        let f = sigma_flag(&p, &sp(&[-1, -2])).unwrap();
        assert_eq!(p.vertex(f.vertex), &point(&[0, 0]));
        let c = cube3();
        let f = sigma_flag(&c, &SignedPermutation::identity(3)).unwrap();
        assert_eq!(c.vertex(f.vertex), &point(&[1, 1, 1]));
    }
}
