//! Small exact linear-algebra kernels.
//!
//! Rational routines are used where matrices are tiny and called rarely;
//! the fraction-free `i128` routines back the subset enumerations, where
//! they run millions of times. Every `i128` operation is checked and
//! overflow surfaces as [`Error::Overflow`].

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row).take(ncols) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : row·x = 0 for every row}`, one vector per free column, with a
/// 1 in that free column.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (red, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[f] = Rational::one();
        for (row, &pc) in red.iter().zip(&pivots) {
            v[pc] = -row[f].clone();
        }
        basis.push(v);
    }
    basis
}

#[inline]
fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

#[inline]
fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

/// Bareiss determinant of a square matrix (consumed).
pub fn det_i128(mut a: Vec<Vec<i128>>) -> Result<i128> {
    let n = a.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = sub(mul(a[i][j], a[k][k])?, mul(a[i][k], a[k][j])?)?;
                debug_assert_eq!(t % prev, 0);
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    mul(sign, a[n - 1][n - 1])
}

/// Rank by fraction-free elimination.
pub fn rank_i128(rows: &[Vec<i128>]) -> Result<usize> {
    let m = rows.len();
    if m == 0 {
        return Ok(0);
    }
    let n = rows[0].len();
    let mut a = rows.to_vec();
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..m {
            for j in c + 1..n {
                let t = sub(mul(a[i][j], a[r][c])?, mul(a[i][c], a[r][j])?)?;
                debug_assert_eq!(t % prev, 0);
                a[i][j] = t / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        r += 1;
    }
    Ok(r)
}

/// For `d - 1` rows in `Z^d`, the vector of signed maximal minors: orthogonal to
/// every row, and zero exactly when the rows are dependent.
pub fn cofactor_normal(rows: &[Vec<i128>], d: usize) -> Result<Vec<i128>> {
    debug_assert_eq!(rows.len() + 1, d);
    let mut out = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let det = det_i128(minor)?;
        out.push(if j % 2 == 0 { det } else { -det });
    }
    Ok(out)
}

pub fn dot_i128(a: &[i128], b: &[i128]) -> Result<i128> {
    let mut acc = 0i128;
    for (&x, &y) in a.iter().zip(b) {
        acc = acc.checked_add(mul(x, y)?).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// Calls `f` on every `k`-subset of `0..m` whose smallest element is `first`,
/// in lexicographic order.
pub fn for_each_subset_with_first<F>(m: usize, k: usize, first: usize, mut f: F) -> Result<()>
where
    F: FnMut(&[usize]) -> Result<()>,
{
    if k == 0 || first >= m || m - first < k {
        return Ok(());
    }
    let mut idx: Vec<usize> = (first..first + k).collect();
    loop {
        f(&idx)?;
        // advance positions 1..k; position 0 stays pinned
        let mut i = k;
        loop {
            if i <= 1 {
                return Ok(());
            }
            i -= 1;
            if idx[i] < m - (k - i) {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Lowest-index-first greedy choice of rows that raise the rank of `base`.
pub fn greedy_independent(base: &[Vec<Rational>], candidates: &[Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut acc: Vec<Vec<Rational>> = base.to_vec();
    let mut r = rank(&acc, ncols);
    let mut chosen = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        acc.push(c.clone());
        let nr = rank(&acc, ncols);
        if nr > r {
            r = nr;
            chosen.push(i);
        } else {
            acc.pop();
        }
    }
    chosen
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn abs_max_i128(v: &[i128]) -> i128 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}
