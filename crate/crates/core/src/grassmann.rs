//! Pluecker degrees of Grassmannians: Schubert's closed forms and a
//! tableau-counting oracle that shares no formula with them.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result};

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Degree of the Grassmannian of `l`-dimensional quotients of an `r`-dimensional space.
pub fn schubert_degree(l: u64, r: u64) -> Result<BigUint> {
    if l < 1 || l >= r {
        return Err(Error::Domain(format!("need 1 <= l < r, got l={l}, r={r}")));
    }
    let mut num = factorial(l * (r - l));
    let mut den = factorial(r - l);
    for k in 1..l {
        num *= factorial(k);
        den *= factorial(r - l + k);
    }
    Ok(num / den)
}

/// `(2r-4)! / ((r-2)! (r-1)!)`, the `(r-2)`-th Catalan number.
pub fn catalan_degree(r: u64) -> Result<BigUint> {
    if r < 2 {
        return Err(Error::Domain(format!("need r >= 2, got {r}")));
    }
    Ok(factorial(2 * r - 4) / (factorial(r - 2) * factorial(r - 1)))
}

/// Number of standard Young tableaux of the `rows x cols` rectangle, counted by
/// removing the largest entry from every corner of every subshape.
pub fn syt_count(rows: usize, cols: usize) -> BigUint {
    let mut memo: HashMap<Vec<usize>, BigUint> = HashMap::new();
    count_shape(&vec![cols; rows], &mut memo)
}

fn count_shape(shape: &[usize], memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
    let shape: Vec<usize> = shape.iter().copied().filter(|&c| c > 0).collect();
    if shape.is_empty() {
        return BigUint::one();
    }
    if let Some(v) = memo.get(&shape) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for i in 0..shape.len() {
        let is_corner = i + 1 == shape.len() || shape[i + 1] < shape[i];
        if is_corner {
            let mut sub = shape.clone();
            sub[i] -= 1;
            total += count_shape(&sub, memo);
        }
    }
    memo.insert(shape, total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn schubert_examples() {
        for r in 2..9 {
            assert_eq!(schubert_degree(1, r).unwrap(), u(1));
        }
        assert_eq!(schubert_degree(2, 4).unwrap(), u(2));
        assert_eq!(schubert_degree(2, 5).unwrap(), u(5));
        assert!(schubert_degree(3, 3).is_err());
        assert!(schubert_degree(0, 3).is_err());
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan_degree(2).unwrap(), u(1));
        assert_eq!(catalan_degree(4).unwrap(), u(2));
        assert_eq!(catalan_degree(5).unwrap(), u(5));
        assert!(catalan_degree(1).is_err());
    }

    #[test]
    fn syt_examples() {
        for k in 0..6 {
            assert_eq!(syt_count(1, k), u(1));
        }
        assert_eq!(syt_count(2, 2), u(2));
        assert_eq!(syt_count(2, 3), u(5));
        assert_eq!(syt_count(3, 3), u(42));
        assert_eq!(syt_count(0, 4), u(1));
    }
}
