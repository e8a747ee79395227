use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::{format_rational, parse_rational, Rational};
use super::ring::{Monomial, RingDescriptor};
use crate::{Error, Result};

/// Sparse element of a truncated ring: normal-form monomials with nonzero
/// rational coefficients, kept in lexicographic order.
#[derive(Clone, Debug)]
pub struct TruncPoly {
    ring: Arc<RingDescriptor>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for TruncPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for TruncPoly {}

fn same_ring(a: &Arc<RingDescriptor>, b: &Arc<RingDescriptor>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl TruncPoly {
    pub fn zero(ring: &Arc<RingDescriptor>) -> Self {
        TruncPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<RingDescriptor>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<RingDescriptor>, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.ngens()), c)
    }

    /// `c * m`, reduced to normal form.
    pub fn monomial(ring: &Arc<RingDescriptor>, m: Monomial, c: Rational) -> Self {
        Self::from_terms(ring, [(m, c)])
    }

    pub fn generator(ring: &Arc<RingDescriptor>, i: usize) -> Self {
        let mut e = vec![0; ring.ngens()];
        e[i] = 1;
        Self::monomial(ring, Monomial(e), Rational::one())
    }

    /// Sum of arbitrary (possibly non-normal) terms.
    pub fn from_terms<I>(ring: &Arc<RingDescriptor>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(
                m.0.len(),
                ring.ngens(),
                "monomial length does not match ring"
            );
            if c.is_zero() || !ring.fits_degree(&m.0) {
                continue;
            }
            let mut e = m.0;
            ring.reduce_into(&mut e, c, &mut out);
        }
        out.retain(|_, c| !c.is_zero());
        TruncPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ring.ngens()))
    }

    /// Coefficient of the fundamental class monomial.
    pub fn top_coefficient(&self) -> Rational {
        self.coefficient(&self.ring.top_monomial())
    }

    /// Graded piece of degree `k`.
    pub fn part(&self, k: u32) -> Self {
        TruncPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `Some(k)` when every term has degree `k`; the zero class is homogeneous of any degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, k: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(x) => {
                    *x += c;
                    if x.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Ok(TruncPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let ring = &self.ring;
        let mut out = BTreeMap::new();
        let n = ring.ngens();
        let mut exps = vec![0u32; n];
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                for i in 0..n {
                    exps[i] = ma.0[i] + mb.0[i];
                }
                if !ring.fits_degree(&exps) {
                    continue;
                }
                ring.reduce_into(&mut exps.clone(), ca * cb, &mut out);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(TruncPoly {
            ring: ring.clone(),
            terms: out,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        TruncPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse of a class with constant term one.
    pub fn series_inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(Error::NotUnit(format_rational(&c0)));
        }
        let one = Self::one(&self.ring);
        let nil = &one - self;
        // b_{k+1} = 1 + (1 - a) b_k converges after `dim` steps since 1 - a is nilpotent.
        let mut b = one.clone();
        for _ in 0..self.ring.dim() {
            b = &one + &(&nil * &b);
        }
        Ok(b)
    }

    /// Relabels generators so that block `b` moves to block `sigma[b]`.
    pub fn permute_blocks(&self, sigma: &[usize]) -> Result<Self> {
        let ring = &self.ring;
        let l = ring.nblocks();
        if !ring.blocks_identical() {
            return Err(Error::BlocksNotIdentical);
        }
        let mut seen = vec![false; l];
        if sigma.len() != l
            || sigma
                .iter()
                .any(|&t| t >= l || std::mem::replace(&mut seen[t], true))
        {
            return Err(Error::Domain(format!(
                "{sigma:?} is not a permutation of {l} blocks"
            )));
        }
        let width = ring.block_range(0).len();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; m.0.len()];
                for (b, &t) in sigma.iter().enumerate() {
                    e[t * width..(t + 1) * width].copy_from_slice(&m.0[b * width..(b + 1) * width]);
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Ok(TruncPoly {
            ring: ring.clone(),
            terms,
        })
    }

    /// Invariance under every block transposition (hence every permutation).
    pub fn is_block_symmetric(&self) -> Result<bool> {
        let l = self.ring.nblocks();
        for i in 0..l.saturating_sub(1) {
            let mut sigma: Vec<usize> = (0..l).collect();
            sigma.swap(i, i + 1);
            if self.permute_blocks(&sigma)? != *self {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `sum_sigma sigma^* self` over all block permutations.
    pub fn symmetrize(&self) -> Result<Self> {
        let l = self.ring.nblocks();
        let mut acc = Self::zero(&self.ring);
        for sigma in permutations(l) {
            acc = &acc + &self.permute_blocks(&sigma)?;
        }
        Ok(acc)
    }

    /// Places a class of a single-block ring into block `b` of a power of that ring.
    pub fn insert_block(&self, target: &Arc<RingDescriptor>, b: usize) -> Result<Self> {
        if self.ring.nblocks() != 1
            || b >= target.nblocks()
            || *target.block(b) != *self.ring.block(0)
        {
            return Err(Error::RingMismatch(format!(
                "cannot place {} into block {} of {}",
                self.ring, b, target
            )));
        }
        let range = target.block_range(b);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; target.ngens()];
            e[range.clone()].copy_from_slice(&m.0);
            (Monomial(e), c.clone())
        });
        Ok(Self::from_terms(target, terms))
    }

    /// Exterior product `a_1 x ... x a_l` in the `l`-th power ring.
    pub fn boxtimes(factors: &[&TruncPoly], target: &Arc<RingDescriptor>) -> Result<Self> {
        let mut acc = Self::one(target);
        for (b, f) in factors.iter().enumerate() {
            acc = acc.checked_mul(&f.insert_block(target, b)?)?;
        }
        Ok(acc)
    }

    /// Monomial-string to rational-string map.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    self.ring.format_monomial(m),
                    serde_json::Value::String(format_rational(c)),
                )
            })
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(ring: &Arc<RingDescriptor>, v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("class must be a JSON object".into()))?;
        let mut terms = Vec::new();
        for (k, c) in obj {
            let c = match c {
                serde_json::Value::String(s) => parse_rational(s)?,
                serde_json::Value::Number(n) => parse_rational(&n.to_string())?,
                _ => return Err(Error::Parse(format!("bad coefficient for {k}"))),
            };
            terms.push((ring.parse_monomial(k)?, c));
        }
        Ok(Self::from_terms(ring, terms))
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({})*{}", c, self.ring.format_monomial(m)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// Operator forms panic on ring mismatch; use the `checked_*` methods on untrusted input.

impl Add for &TruncPoly {
    type Output = TruncPoly;
    fn add(self, rhs: &TruncPoly) -> TruncPoly {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &TruncPoly {
    type Output = TruncPoly;
    fn sub(self, rhs: &TruncPoly) -> TruncPoly {
        self.checked_add(&-rhs)
            .expect("ring mismatch in subtraction")
    }
}

impl Mul for &TruncPoly {
    type Output = TruncPoly;
    fn mul(self, rhs: &TruncPoly) -> TruncPoly {
        self.checked_mul(rhs)
            .expect("ring mismatch in multiplication")
    }
}

impl Neg for &TruncPoly {
    type Output = TruncPoly;
    fn neg(self) -> TruncPoly {
        TruncPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{frac, rat};
    use super::*;

    fn p(ring: &Arc<RingDescriptor>, s: &str) -> TruncPoly {
        let v: serde_json::Value = serde_json::from_str(s).unwrap();
        TruncPoly::from_json(ring, &v).unwrap()
    }

    #[test]
    fn mul_examples() {
        let r = RingDescriptor::truncated(&[("h", 3)]);
        let a = p(&r, r#"{"1":"1","h":"1"}"#);
        let b = p(&r, r#"{"1":"1","h":"-1"}"#);
        assert_eq!(&a * &b, p(&r, r#"{"1":"1","h^2":"-1"}"#));
        let h = TruncPoly::generator(&r, 0);
        assert!((&h.pow(2) * &h).is_zero());

        let r2 = RingDescriptor::truncated(&[("h1", 2), ("h2", 2)]);
        let a = p(&r2, r#"{"1":"1","h1":"1"}"#);
        let b = p(&r2, r#"{"1":"1","h2":"1"}"#);
        assert_eq!(
            &a * &b,
            p(&r2, r#"{"1":"1","h1":"1","h2":"1","h1*h2":"1"}"#)
        );
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r = RingDescriptor::truncated(&[("h", 3)]);
        let s = RingDescriptor::truncated(&[("h", 4)]);
        let e = TruncPoly::one(&r).checked_mul(&TruncPoly::one(&s));
        assert!(matches!(e, Err(Error::RingMismatch(_))));
    }

    #[test]
    fn inverse_examples() {
        let r = RingDescriptor::truncated(&[("h", 3)]);
        let a = p(&r, r#"{"1":"1","h":"1"}"#);
        assert_eq!(
            a.series_inverse().unwrap(),
            p(&r, r#"{"1":"1","h":"-1","h^2":"1"}"#)
        );
        assert_eq!(
            a.pow(3).series_inverse().unwrap(),
            p(&r, r#"{"1":"1","h":"-3","h^2":"6"}"#)
        );
        let r2 = RingDescriptor::truncated(&[("h", 2)]);
        let b = p(&r2, r#"{"1":"1","h":"2"}"#);
        assert_eq!(b.series_inverse().unwrap(), p(&r2, r#"{"1":"1","h":"-2"}"#));
        assert!(matches!(
            p(&r2, r#"{"1":"2"}"#).series_inverse(),
            Err(Error::NotUnit(_))
        ));
    }

    #[test]
    fn permute_examples() {
        let r = RingDescriptor::truncated(&[("h", 3)]).power(2).unwrap();
        let h1 = TruncPoly::generator(&r, 0);
        let h2 = TruncPoly::generator(&r, 1);
        assert_eq!(h1.permute_blocks(&[1, 0]).unwrap(), h2);
        let x = &h1 * &h2.pow(2);
        assert_eq!(x.permute_blocks(&[1, 0]).unwrap(), &h2 * &h1.pow(2));
        let sym = &h1 * &h2;
        assert_eq!(sym.permute_blocks(&[1, 0]).unwrap(), sym);
        assert!(sym.is_block_symmetric().unwrap());
        assert!(h1.permute_blocks(&[0, 0]).is_err());
    }

    #[test]
    fn permute_needs_identical_blocks() {
        use super::super::ring::Block;
        let r = RingDescriptor::new(vec![
            Block::truncated(&[("h", 2)]),
            Block::truncated(&[("h", 3)]),
        ])
        .unwrap();
        let h = TruncPoly::generator(&r, 0);
        assert!(matches!(
            h.permute_blocks(&[1, 0]),
            Err(Error::BlocksNotIdentical)
        ));
    }

    #[test]
    fn json_layout() {
        let r = RingDescriptor::truncated(&[("h1", 3), ("z", 2)]);
        let a = p(&r, r#"{"h1^2*z^1":"-3/2","1":"2"}"#);
        assert_eq!(a.coefficient(&Monomial(vec![2, 1])), frac(-3, 2));
        assert_eq!(
            serde_json::to_string(&a.to_json()).unwrap(),
            r#"{"1":"2","h1^2*z^1":"-3/2"}"#
        );
        assert_eq!(a.constant_term(), rat(2));
    }

    #[test]
    fn permutation_listing() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(1), vec![vec![0]]);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
    }
}
