//! Exhaustive comparison of the `x_σ` weighting with the lexicographic order.

use std::fmt;

use crate::par::Exec;
use crate::pivot::{lex_compare, SignedPermutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexCounterexample {
    pub sigma: SignedPermutation,
    pub x: Vec<i64>,
    pub y: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexReport {
    pub n: usize,
    pub k: u64,
    pub alpha: i64,
    pub sigmas: usize,
    /// Ordered pairs compared per permutation.
    pub pairs: usize,
    pub mismatches: u64,
    pub first: Option<LexCounterexample>,
}

impl LexReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

impl fmt::Display for LexReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lemma8: {} sigma, {} pairs, ", self.sigmas, self.pairs)?;
        match &self.first {
            None => write!(f, "ok"),
            Some(c) => write!(
                f,
                "{} mismatches (first: sigma {:?}, x {:?}, y {:?})",
                self.mismatches,
                c.sigma.as_slice(),
                c.x,
                c.y
            ),
        }
    }
}

/// For every signed permutation of `[n]` and every ordered pair of lattice
/// points of `[-k, k]^n`, compares `sign(x_σ·x − x_σ·y)` with the
/// lexicographic order. Any `alpha` is accepted, so values below `2k + 1` can
/// be probed for failures.
pub fn verify_lex_order(n: usize, k: u64, alpha: i64) -> LexReport {
    verify_lex_order_with(n, k, alpha, Exec::default())
}

pub fn verify_lex_order_with(n: usize, k: u64, alpha: i64, exec: Exec) -> LexReport {
    let k = k as i64;
    let side = (2 * k + 1) as usize;
    let pts: Vec<Vec<i64>> = (0..side.pow(n as u32))
        .map(|mut m| {
            (0..n)
                .map(|_| {
                    let c = (m % side) as i64 - k;
                    m /= side;
                    c
                })
                .collect()
        })
        .collect();
    let sigmas = SignedPermutation::all(n);
    let per_sigma = exec.map(&sigmas, |s| {
        let w: Vec<i128> = (0..n)
            .map(|i| s.sign(i) as i128 * (alpha as i128).pow(s.level(i) as u32))
            .collect();
        let vals: Vec<i128> = pts
            .iter()
            .map(|p| p.iter().zip(&w).map(|(&a, &b)| a as i128 * b).sum())
            .collect();
        let mut bad = 0u64;
        let mut first = None;
        for (i, x) in pts.iter().enumerate() {
            for (j, y) in pts.iter().enumerate() {
                if vals[i].cmp(&vals[j]) != lex_compare(s, x, y) {
                    bad += 1;
                    first.get_or_insert_with(|| LexCounterexample {
                        sigma: s.clone(),
                        x: x.clone(),
                        y: y.clone(),
                    });
                }
            }
        }
        (bad, first)
    });
    let mut mismatches = 0;
    let mut first = None;
    for (b, f) in per_sigma {
        mismatches += b;
        if first.is_none() {
            first = f;
        }
    }
    LexReport {
        n,
        k: k as u64,
        alpha,
        sigmas: sigmas.len(),
        pairs: pts.len() * pts.len(),
        mismatches,
        first,
    }
}
