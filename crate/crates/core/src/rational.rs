//! Exact scalars and the small vector helpers used throughout the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;
pub type Point = Vec<Rational>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn point(coords: &[i64]) -> Point {
    coords.iter().map(|&c| int(c)).collect()
}

/// Parses `p/q` or a bare integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Always `num/den`, even for integers.
pub fn num_den(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `(x, y, ...)` with integers plain and fractions as `p/q`.
pub fn fmt_point(p: &[Rational]) -> String {
    let cells: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", cells.join(", "))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[i64], x: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (&ai, xi) in a.iter().zip(x) {
        if ai != 0 {
            acc += xi * BigInt::from(ai);
        }
    }
    acc
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn to_rational_vec(v: &[i64]) -> Point {
    v.iter().map(|&x| int(x)).collect()
}

/// Least common multiple of the denominators of every coordinate.
pub fn common_denominator<'a, I>(points: I) -> BigInt
where
    I: IntoIterator<Item = &'a Point>,
{
    let mut l = BigInt::one();
    for p in points {
        for x in p {
            l = l.lcm(x.denom());
        }
    }
    l
}

pub fn is_integer_point(p: &[Rational]) -> bool {
    p.iter().all(|x| x.is_integer())
}

pub fn max_abs(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

/// Divides by the gcd of the entries; zero vectors are returned unchanged.
pub fn make_primitive_i128(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

pub fn make_primitive_i64(v: &mut [i64]) {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

pub fn rational_to_i128(r: &Rational) -> Option<i128> {
    if r.is_integer() {
        r.numer().to_i128()
    } else {
        None
    }
}

pub fn bigint_to_i128(b: &BigInt) -> Option<i128> {
    b.to_i128()
}

/// Scales a rational vector by the lcm of its denominators and makes the result
/// primitive; the direction is preserved.
pub fn primitive_integer_direction(v: &[Rational]) -> Option<Vec<i128>> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut out = Vec::with_capacity(v.len());
    for x in v {
        let scaled = x * Rational::from_integer(l.clone());
        out.push(scaled.numer().to_i128()?);
    }
    make_primitive_i128(&mut out);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3"), Some(int(3)));
        assert_eq!(parse_rational("-4/6"), Some(ratio(-2, 3)));
        assert_eq!(parse_rational(" 1/2 "), Some(ratio(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1.5"), None);
    }

    #[test]
    fn num_den_always_has_slash() {
        assert_eq!(num_den(&int(5)), "5/1");
        assert_eq!(num_den(&ratio(-6, 4)), "-3/2");
    }

    #[test]
    fn primitive_direction() {
        let v = vec![ratio(1, 2), ratio(-3, 4), int(0)];
        assert_eq!(primitive_integer_direction(&v), Some(vec![2, -3, 0]));
        assert_eq!(common_denominator(&[v]), BigInt::from(4));
    }
}
