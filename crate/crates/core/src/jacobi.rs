//! Exact Jacobi polynomials and the binomial sums `a_j` that enter the
//! degree formula for two-point Quot schemes.

use num_traits::{One, Zero};

use crate::exactpoly::{
    binomial, frac, int, is_integer, pochhammer, pow_i, rat, sign, to_i64, Rational,
};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub n: u64,
    pub z: Rational,
}

impl JacobiParams {
    pub fn new(alpha: Rational, beta: Rational, n: u64, z: Rational) -> Self {
        JacobiParams { alpha, beta, n, z }
    }

    pub fn ints(alpha: i64, beta: i64, n: u64, z: Rational) -> Self {
        Self::new(rat(alpha), rat(beta), n, z)
    }
}

/// `P^{a,b}_n(z) = ((a+1)_n / n!) 2F1(-n, n+a+b+1; a+1; (1-z)/2)`.
pub fn jacobi_hyp(p: &JacobiParams) -> Result<Rational> {
    let n = p.n;
    let a1 = &p.alpha + Rational::one();
    let c = &p.alpha + &p.beta + rat(n as i64 + 1);
    let x = (Rational::one() - &p.z) / rat(2);
    let mut sum = Rational::zero();
    let mut xm = Rational::one();
    let mut m_fact = Rational::one();
    for m in 0..=n {
        let den = pochhammer(&a1, m);
        if den.is_zero() {
            return Err(Error::Pole(m));
        }
        let num = pochhammer(&rat(-(n as i64)), m) * pochhammer(&c, m);
        sum += num / den * &xm / &m_fact;
        xm *= &x;
        m_fact *= rat(m as i64 + 1);
    }
    let n_fact: Rational = int(crate::exactpoly::factorial(n));
    Ok(pochhammer(&a1, n) / n_fact * sum)
}

/// Finite binomial form, valid for integer `alpha > 0` and `beta > -n - alpha - 1`.
pub fn jacobi_finite_sum(p: &JacobiParams) -> Result<Rational> {
    let alpha = to_i64(&p.alpha)
        .filter(|a| *a > 0)
        .ok_or_else(|| Error::Domain(format!("alpha = {} is not a positive integer", p.alpha)))?;
    if !is_integer(&p.beta) {
        return Err(Error::Domain(format!(
            "beta = {} is not an integer",
            p.beta
        )));
    }
    let beta = to_i64(&p.beta).ok_or_else(|| Error::Domain("beta out of range".into()))?;
    let n = p.n as i64;
    if beta <= -n - alpha - 1 {
        return Err(Error::Domain(format!(
            "beta = {beta} must exceed -n - alpha - 1 = {}",
            -n - alpha - 1
        )));
    }
    let x = (&p.z - Rational::one()) / rat(2);
    let mut sum = Rational::zero();
    let mut xm = Rational::one();
    for m in 0..=n {
        sum += &xm * binomial(n + alpha, m + alpha) * binomial(n + alpha + beta + m, m);
        xm *= &x;
    }
    Ok(sum)
}

/// `a_j = (-1)^{k+j} sum_{m=d-j}^{p} (-1/2)^m C(2p, p+m) C(r-1+m-k, m-d+j)`.
pub fn a_coeff_sum(r: i64, d: i64, k: i64, j: i64) -> Rational {
    let p = r - 1 + d;
    let half = frac(-1, 2);
    let mut acc = Rational::zero();
    for m in (d - j).max(0)..=p {
        acc += pow_i(&half, m) * binomial(2 * p, p + m) * binomial(r - 1 + m - k, m - d + j);
    }
    sign(k + j) * acc
}

/// `a_j = (-1)^{d-k} 2^{-(d-j)} P^{p+d-j, -p-k-j}_{r-1+j}(0)`.
pub fn a_coeff_jacobi(r: i64, d: i64, k: i64, j: i64) -> Result<Rational> {
    let p = r - 1 + d;
    let params = JacobiParams::ints(p + d - j, -p - k - j, (r - 1 + j) as u64, Rational::zero());
    Ok(sign(d - k) * pow_i(&rat(2), j - d) * jacobi_hyp(&params)?)
}

/// The coefficient `a_j` of `s_{d-k-j} s_j` in `J_{d-k}`, evaluated by both routes.
pub fn a_coeff(r: i64, d: i64, k: i64, j: i64) -> Result<Rational> {
    if r < 1 || d < 1 || !(0..=d).contains(&k) || !(0..=d - k).contains(&j) {
        return Err(Error::Domain(format!(
            "a_coeff needs r, d >= 1, 0 <= k <= d, 0 <= j <= d - k (got r={r}, d={d}, k={k}, j={j})"
        )));
    }
    let direct = a_coeff_sum(r, d, k, j);
    let via_jacobi = a_coeff_jacobi(r, d, k, j)?;
    if direct != via_jacobi {
        return Err(Error::CrossCheck(format!(
            "a_coeff(r={r}, d={d}, k={k}, j={j}): binomial sum {direct} != Jacobi form {via_jacobi}"
        )));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::binomial;

    #[test]
    fn hyp_examples() {
        for (a, b, z) in [(1, -2, rat(0)), (3, 5, frac(1, 3)), (-1, 0, rat(2))] {
            if let Ok(v) = jacobi_hyp(&JacobiParams::ints(a, b, 0, z)) {
                assert_eq!(v, rat(1));
            }
        }
        assert_eq!(
            jacobi_hyp(&JacobiParams::ints(1, -2, 1, rat(0))).unwrap(),
            frac(3, 2)
        );
        for (a, b, n) in [(2, -3, 4), (5, 1, 3), (1, -7, 6)] {
            assert_eq!(
                jacobi_hyp(&JacobiParams::ints(a, b, n, rat(1))).unwrap(),
                binomial(n as i64 + a, n as i64)
            );
        }
    }

    #[test]
    fn hyp_pole() {
        // (alpha + 1)_m vanishes at m = 2 for alpha = -2.
        let e = jacobi_hyp(&JacobiParams::ints(-2, 0, 2, rat(0)));
        assert!(matches!(e, Err(Error::Pole(_))));
    }

    #[test]
    fn finite_sum_examples() {
        assert_eq!(
            jacobi_finite_sum(&JacobiParams::ints(3, -2, 1, rat(0))).unwrap(),
            frac(5, 2)
        );
        assert_eq!(
            jacobi_finite_sum(&JacobiParams::ints(2, -3, 2, rat(0))).unwrap(),
            frac(11, 4)
        );
        assert_eq!(
            jacobi_finite_sum(&JacobiParams::ints(3, -3, 1, rat(0))).unwrap(),
            rat(3)
        );
    }

    #[test]
    fn finite_sum_domain() {
        assert!(matches!(
            jacobi_finite_sum(&JacobiParams::ints(0, 0, 1, rat(0))),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            jacobi_finite_sum(&JacobiParams::ints(1, -3, 1, rat(0))),
            Err(Error::Domain(_))
        ));
        let p = JacobiParams::new(frac(1, 2), rat(0), 1, rat(0));
        assert!(jacobi_finite_sum(&p).is_err());
    }

    #[test]
    fn a_coeff_examples() {
        assert_eq!(a_coeff(1, 1, 1, 0).unwrap(), frac(1, 2));
        assert_eq!(a_coeff(1, 1, 0, 1).unwrap(), frac(-3, 2));
        assert_eq!(a_coeff(2, 1, 0, 0).unwrap(), frac(-5, 4));
        assert!(a_coeff(2, 1, 2, 0).is_err());
    }
}
