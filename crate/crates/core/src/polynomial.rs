//! Univariate polynomials in the twist parameter `n`.

use num_traits::{One, Zero};

use crate::exactpoly::{format_rational, rat, Rational};
use crate::{Error, Result};

/// `sum_i coefficients[i] n^i`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePolynomial {
    pub coefficients: Vec<Rational>,
}

impl DegreePolynomial {
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        DegreePolynomial { coefficients }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| rat(x)).collect())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn coefficient(&self, i: usize) -> Rational {
        self.coefficients
            .get(i)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * n + c)
    }

    /// The unique polynomial of degree `< points.len()` through the given points.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Self> {
        let k = points.len();
        let mut coeffs = vec![Rational::zero(); k];
        for (i, (xi, yi)) in points.iter().enumerate() {
            // basis polynomial prod_{j != i} (n - x_j) / (x_i - x_j)
            let mut basis = vec![Rational::one()];
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                if xi == xj {
                    return Err(Error::Domain("repeated interpolation node".into()));
                }
                let mut next = vec![Rational::zero(); basis.len() + 1];
                for (e, b) in basis.iter().enumerate() {
                    next[e + 1] += b;
                    next[e] -= b * xj;
                }
                basis = next;
                denom *= xi - xj;
            }
            let scale = yi / denom;
            for (e, b) in basis.iter().enumerate() {
                coeffs[e] += b * &scale;
            }
        }
        Ok(Self::new(coeffs))
    }

    /// Interpolates `f` at `n = 0..=degree` and confirms the result at `n = degree + 1`.
    pub fn fit<F>(degree: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(i64) -> Result<Rational>,
    {
        let points = (0..=degree as i64)
            .map(|n| Ok((rat(n), f(n)?)))
            .collect::<Result<Vec<_>>>()?;
        let poly = Self::interpolate(&points)?;
        let check = degree as i64 + 1;
        let expected = f(check)?;
        let got = poly.eval(&rat(check));
        if expected != got {
            return Err(Error::CrossCheck(format!(
                "interpolant of degree <= {degree} predicts {got} at n = {check}, direct value is {expected}"
            )));
        }
        Ok(poly)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coefficients.iter().map(format_rational).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_recovers_polynomial() {
        let p =
            DegreePolynomial::fit(4, |n| Ok(rat(3 * n.pow(4) - 12 * n * n + 12 * n - 3))).unwrap();
        assert_eq!(p, DegreePolynomial::from_ints(&[-3, 12, -12, 0, 3]));
        assert_eq!(p.degree(), Some(4));
    }

    #[test]
    fn fit_detects_wrong_degree() {
        let e = DegreePolynomial::fit(1, |n| Ok(rat(n * n)));
        assert!(matches!(e, Err(Error::CrossCheck(_))));
    }

    #[test]
    fn trims_and_evaluates() {
        let p = DegreePolynomial::from_ints(&[1, -2, 1, 0, 0]);
        assert_eq!(p.coefficients.len(), 3);
        assert_eq!(p.eval(&rat(4)), rat(9));
        assert_eq!(DegreePolynomial::from_ints(&[0]).degree(), None);
    }
}
