//! Torus localisation on `Quot^l_{P^1}(O(a_1) + ... + O(a_r))`.
//!
//! The torus scales the summands with characters `e_i` and the coordinate of
//! `P^1` with `w`. The frame of `O(a_i)` has weight `e_i` at `0` and
//! `e_i + a_i w` at `infinity`; the frame of `O(n)` has weight `0` at `0` and
//! `n w` at `infinity`. Weights are drawn at random; every draw must give the
//! same integer.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exactpoly::{is_integer, Rational};
use crate::polynomial::DegreePolynomial;
use crate::symquot::compositions;
use crate::{Error, Result};

/// Lengths of a torus-fixed quotient at `0` (`b`) and at `infinity` (`c`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointDatum {
    pub b: Vec<u32>,
    pub c: Vec<u32>,
}

impl FixedPointDatum {
    pub fn length(&self) -> u32 {
        self.b.iter().chain(&self.c).sum()
    }
}

/// Characters of the torus on the summands and on `P^1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment {
    pub e: Vec<i64>,
    pub w: i64,
}

impl WeightAssignment {
    /// A draw with `|e_i| <= 10^6` and `1 <= w <= 10^6`.
    pub fn random(r: usize, rng: &mut impl Rng) -> Self {
        const BOUND: i64 = 1_000_000;
        WeightAssignment {
            e: (0..r).map(|_| rng.gen_range(-BOUND..=BOUND)).collect(),
            w: rng.gen_range(1..=BOUND),
        }
    }
}

/// All `(b, c)` of total length `l`; there are `C(l + 2r - 1, 2r - 1)`.
pub fn enumerate_fixed_points(r: usize, l: u32) -> Vec<FixedPointDatum> {
    compositions(l, 2 * r, l)
        .into_iter()
        .map(|v| FixedPointDatum {
            b: v[..r].to_vec(),
            c: v[r..].to_vec(),
        })
        .collect()
}

fn check_rank(pt: &FixedPointDatum, a: &[i64], wt: &WeightAssignment) -> Result<()> {
    let r = a.len();
    if pt.b.len() != r || pt.c.len() != r || wt.e.len() != r {
        return Err(Error::Domain(
            "fixed point, twists and weights must have length r".into(),
        ));
    }
    if wt.w == 0 {
        return Err(Error::Domain("w must be nonzero".into()));
    }
    Ok(())
}

/// Weights of `Hom(kernel, quotient)` at a fixed point.
pub fn tangent_weights(pt: &FixedPointDatum, a: &[i64], wt: &WeightAssignment) -> Result<Vec<i64>> {
    check_rank(pt, a, wt)?;
    let r = a.len();
    let (e, w) = (&wt.e, wt.w);
    let mut out = Vec::new();
    for j in 0..r {
        for i in 0..r {
            for k in 0..pt.b[j] as i64 {
                out.push(e[j] - e[i] + (k - pt.b[i] as i64) * w);
            }
            for k in 0..pt.c[j] as i64 {
                out.push(e[j] - e[i] + (a[j] - a[i]) * w + (pt.c[i] as i64 - k) * w);
            }
        }
    }
    if out.contains(&0) {
        return Err(Error::Domain("weight assignment is not generic".into()));
    }
    Ok(out)
}

/// Sum of the weights of `H^0(Q (x) O(n))`, the fibre of `O(n)^[l]`.
pub fn taut_weight_sum(
    pt: &FixedPointDatum,
    a: &[i64],
    n: i64,
    wt: &WeightAssignment,
) -> Result<i64> {
    check_rank(pt, a, wt)?;
    let (e, w) = (&wt.e, wt.w);
    let mut sum = 0i64;
    for j in 0..a.len() {
        for k in 0..pt.b[j] as i64 {
            sum += e[j] + k * w;
        }
        for k in 0..pt.c[j] as i64 {
            sum += e[j] + (a[j] + n) * w - k * w;
        }
    }
    Ok(sum)
}

fn localised_sum(a: &[i64], l: u32, n: i64, wt: &WeightAssignment) -> Result<Rational> {
    let top = l as usize * a.len();
    enumerate_fixed_points(a.len(), l)
        .par_iter()
        .map(|pt| {
            let num = num_traits::pow(BigInt::from(taut_weight_sum(pt, a, n, wt)?), top);
            let den = tangent_weights(pt, a, wt)?
                .into_iter()
                .fold(BigInt::one(), |acc, t| acc * t);
            Ok(Rational::new(num, den))
        })
        .try_reduce(Rational::zero, |x, y| Ok(x + y))
}

/// Number of independent weight draws per evaluation.
pub const DRAWS: u64 = 3;

/// `int_{Quot} c_1(O(n)^[l])^{lr}` by Atiyah-Bott, with consensus over `DRAWS`
/// seeded draws and an integrality check.
pub fn plucker_degree_localised(a: &[i64], l: u32, n: i64, seed: u64) -> Result<Rational> {
    if a.is_empty() {
        return Err(Error::Domain("need r >= 1".into()));
    }
    let mut values = Vec::with_capacity(DRAWS as usize);
    for draw in 0..DRAWS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(DRAWS).wrapping_add(draw));
        let value = loop {
            let wt = WeightAssignment::random(a.len(), &mut rng);
            match localised_sum(a, l, n, &wt) {
                Err(Error::Domain(msg)) if msg.contains("generic") => continue,
                other => break other?,
            }
        };
        values.push(value);
    }
    if values.iter().any(|v| *v != values[0]) {
        let shown: Vec<String> = values.iter().map(ToString::to_string).collect();
        return Err(Error::CrossCheck(format!(
            "weight draws disagree: {}",
            shown.join(", ")
        )));
    }
    if !is_integer(&values[0]) {
        return Err(Error::CrossCheck(format!(
            "localised degree {} is not an integer",
            values[0]
        )));
    }
    Ok(values.swap_remove(0))
}

/// The localised degree as a polynomial in `n`, fitted at `n = 0..=l` and verified at `l + 1`.
pub fn degree_polynomial_localised(a: &[i64], l: u32, seed: u64) -> Result<DegreePolynomial> {
    DegreePolynomial::fit(l as usize, |n| plucker_degree_localised(a, l, n, seed))
}
