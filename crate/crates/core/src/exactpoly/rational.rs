//! Exact rationals and the integer combinatorics used throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"p"` or `"p/q"`. Accepts a leading Unicode minus sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match t.split_once('/') {
        None => Ok(int(t.parse::<BigInt>().map_err(|_| bad())?)),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().map_err(|_| bad())?;
            let q = q.trim().parse::<BigInt>().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}

/// `base^e` for a possibly negative exponent.
pub fn pow_i(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), e.unsigned_abs() as usize)
    }
}

pub fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Generalised binomial coefficient `x(x-1)...(x-k+1)/k!`, zero for `k < 0`.
pub fn binomial_int(x: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if x >= 0 && k > x {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(x - i);
    }
    let (q, r) = num.div_rem(&factorial(k as u64));
    debug_assert!(r.is_zero());
    q
}

pub fn binomial(x: i64, k: i64) -> Rational {
    int(binomial_int(x, k))
}

/// `(k_1 + ... + k_n)! / (k_1! ... k_n!)`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    parts
        .iter()
        .fold(factorial(total), |acc, &k| acc / factorial(k))
}

/// Rising factorial `(x)_m = x(x+1)...(x+m-1)`.
pub fn pochhammer(x: &Rational, m: u64) -> Rational {
    let mut acc = Rational::one();
    let mut t = x.clone();
    for _ in 0..m {
        acc *= &t;
        t += Rational::one();
    }
    acc
}
