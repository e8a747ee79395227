//! Classes on the symmetric product `S^(l)`.
//!
//! A class `g` on `S^(l)` is stored as its pullback `pi^* g`, an invariant class
//! on `S^l`. Under this dictionary `pi_* b` is stored as `sum_sigma sigma^* b`
//! and `int_{S^(l)} g = (1/l!) int_{S^l} pi^* g`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::exactpoly::{
    binomial, factorial, int, pow_i, rat, sign, Monomial, Rational, RingDescriptor, TruncPoly,
};
use crate::linalg::{self, Solution};
use crate::polynomial::DegreePolynomial;
use crate::quot2;
use crate::varieties::{diagonal_class, segre_total, Divisor, Space, SplitBundle};
use crate::{Error, Result};

/// Invariant representative on `S^l` of a class on `S^(l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymClassRep {
    pub rep: TruncPoly,
    pub l: usize,
}

impl SymClassRep {
    /// Wraps an `S^l` class, verifying block-permutation invariance.
    pub fn new(rep: TruncPoly) -> Result<Self> {
        let l = rep.ring().nblocks();
        if !rep.is_block_symmetric()? {
            return Err(Error::CrossCheck("representative is not symmetric".into()));
        }
        Ok(SymClassRep { rep, l })
    }

    pub fn degree(&self) -> Option<u32> {
        self.rep.homogeneous_degree()
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

fn check_base(s: &Space, e: &SplitBundle) -> Result<()> {
    if s.bundle().is_some() {
        return Err(Error::Domain(
            "S must be a product of projective spaces".into(),
        ));
    }
    if e.nvars() != s.nvars() {
        return Err(Error::Domain("bundle does not live on S".into()));
    }
    Ok(())
}

/// Ordered `l`-tuples of integers in `0..=max` summing to `k`.
pub fn compositions(k: u32, l: usize, max: u32) -> Vec<Vec<u32>> {
    fn go(k: u32, l: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == l {
            if k <= max {
                cur.push(k);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for a in 0..=k.min(max) {
            cur.push(a);
            go(k - a, l, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if l == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(k, l, max, &mut Vec::new(), &mut out);
    out
}

/// `sum_m D` placed in every block of `S^l`: the pullback of `c_1(L^(l))`.
pub fn symmetric_divisor(
    s: &Space,
    target: &Arc<RingDescriptor>,
    d: &Divisor,
) -> Result<TruncPoly> {
    let class = s.divisor(d)?;
    let mut acc = TruncPoly::zero(target);
    for b in 0..target.nblocks() {
        acc = acc.checked_add(&class.insert_block(target, b)?)?;
    }
    Ok(acc)
}

/// Representative of `nu^l_k(E)`:
/// `(-1)^k sum_{k_1+..+k_l = k} (l(r-1)+k)! / prod (r-1+k_m)! . s_{k_1}(E) x ... x s_{k_l}(E)`.
pub fn nu_class(s: &Space, e: &SplitBundle, l: usize, k: u32) -> Result<SymClassRep> {
    check_base(s, e)?;
    let d = s.dim();
    if l == 0 || k > l as u32 * d {
        return Err(Error::Domain(format!(
            "need 0 <= k <= l dim S, got l={l}, k={k}"
        )));
    }
    let r = e.rank() as u64;
    let target = s.power_ring(l)?;
    let seg = segre_total(s.ring(), e)?;
    let parts: Vec<TruncPoly> = (0..=d).map(|i| seg.part(i)).collect();
    let top = factorial(l as u64 * (r - 1) + k as u64);
    let mut acc = TruncPoly::zero(&target);
    for tuple in compositions(k, l, d) {
        let den = tuple.iter().fold(num_bigint::BigInt::one(), |a, &km| {
            a * factorial(r - 1 + km as u64)
        });
        let coeff = Rational::new(top.clone(), den);
        let factors: Vec<&TruncPoly> = tuple.iter().map(|&km| &parts[km as usize]).collect();
        let term = TruncPoly::boxtimes(&factors, &target)?.scale(&coeff);
        acc = &acc + &term;
    }
    SymClassRep::new(acc.scale(&sign(k as i64)))
}

/// `(1/l!) int_{S^l} rep`.
pub fn integrate_sym(s: &Space, rep: &SymClassRep) -> Result<Rational> {
    if *rep.rep.ring().block(0) != *s.ring().block(0) {
        return Err(Error::RingMismatch(
            "representative is not on a power of S".into(),
        ));
    }
    Ok(rep.rep.top_coefficient() / int(factorial(rep.l as u64)))
}

/// `(-1)^{ld} (lp)! / (l! p!^l) (int_S s_d(E (x) L))^l`, checked against the
/// integral of `nu^l_{ld}(E (x) L)`.
pub fn leading_term(s: &Space, e: &SplitBundle, lc1: &Divisor, l: usize) -> Result<Rational> {
    check_base(s, e)?;
    if l == 0 {
        return Err(Error::Domain("l must be positive".into()));
    }
    let d = s.dim() as i64;
    let f = e.twist(lc1)?;
    let p = f.rank() as i64 - 1 + d;
    let li = l as i64;
    let sd = segre_total(s.ring(), &f)?.top_coefficient();
    let closed = sign(li * d) * int(factorial((li * p) as u64))
        / (int(factorial(l as u64)) * pow_i(&int(factorial(p as u64)), li))
        * pow_i(&sd, li);
    let nu = nu_class(s, &f, l, (li * d) as u32)?;
    let via_nu = integrate_sym(s, &nu)?;
    if closed != via_nu {
        return Err(Error::CrossCheck(format!(
            "leading term closed form {closed} != nu-integral {via_nu}"
        )));
    }
    Ok(closed)
}

/// `nu^l_k(E (x) L)`, checked against
/// `sum_j C(l(r-1)+k, k-j) c_1(L^(l))^{k-j} nu^l_j(E)`.
pub fn nu_twist_check(
    s: &Space,
    e: &SplitBundle,
    lc1: &Divisor,
    l: usize,
    k: u32,
) -> Result<SymClassRep> {
    let twisted = nu_class(s, &e.twist(lc1)?, l, k)?;
    let target = s.power_ring(l)?;
    let lsym = symmetric_divisor(s, &target, lc1)?;
    let r = e.rank() as i64;
    let mut rhs = TruncPoly::zero(&target);
    for j in 0..=k {
        let nu = nu_class(s, e, l, j)?;
        let c = binomial(l as i64 * (r - 1) + k as i64, (k - j) as i64);
        rhs = &rhs + &(&lsym.pow(k - j) * &nu.rep).scale(&c);
    }
    if rhs != twisted.rep {
        return Err(Error::CrossCheck(format!(
            "twisting identity fails for l={l}, k={k}"
        )));
    }
    Ok(twisted)
}

/// Where `multint` takes its `mu^l_k` classes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuSource {
    /// `l = 1` (where `mu = nu` exactly) or `l = 2` through the `P(E)^[2]` model.
    Computed,
    /// `nu^l_k`, valid only for `k < dim S`.
    NuBelowDimension,
}

/// `sum_k int_{S^(l)} sigma_{ld-k}(c_1(L_1^(l)), ..., c_1(L_{lp}^(l))) mu^l_k(E)`.
pub fn multint(
    s: &Space,
    e: &SplitBundle,
    l: usize,
    divisors: &[Divisor],
    source: MuSource,
) -> Result<Rational> {
    check_base(s, e)?;
    let d = s.dim();
    let p = e.rank() as u32 - 1 + d;
    if divisors.len() != l * p as usize {
        return Err(Error::Domain(format!(
            "need l p = {} divisors, got {}",
            l * p as usize,
            divisors.len()
        )));
    }
    let ld = l as u32 * d;
    let mu = |k: u32| -> Result<SymClassRep> {
        match source {
            MuSource::Computed if l == 1 => nu_class(s, e, 1, k),
            MuSource::Computed if l == 2 => quot2::mu2_class(s, e, k),
            MuSource::NuBelowDimension if k < d => nu_class(s, e, l, k),
            _ => Err(Error::Unsupported(format!(
                "mu^{l}_{k} has no computable model here"
            ))),
        }
    };
    let target = s.power_ring(l)?;
    let one = TruncPoly::one(&target);
    let mut sigma = one.clone();
    for dv in divisors {
        sigma = &sigma * &(&one + &symmetric_divisor(s, &target, dv)?);
    }
    let mut total = Rational::zero();
    for k in 0..=ld {
        let m = mu(k)?;
        total += integrate_sym(
            s,
            &SymClassRep {
                rep: &sigma.part(ld - k) * &m.rep,
                l,
            },
        )?;
    }
    Ok(total)
}

/// Result of testing whether a class comes from the big diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `rep = sum_i coefficients[i] pi_* Delta_{12*}(basis[i])`.
    Member {
        basis: Vec<String>,
        coefficients: Vec<Rational>,
    },
    /// A functional on monomials that kills the span but not `rep`.
    NotMember { witness: Vec<(String, Rational)> },
}

impl Certificate {
    pub fn is_member(&self) -> bool {
        matches!(self, Certificate::Member { .. })
    }
}

/// Places a class on `S^j` into the given blocks of `S^l`.
fn embed_blocks(a: &TruncPoly, target: &Arc<RingDescriptor>, positions: &[usize]) -> TruncPoly {
    let src = a.ring();
    let w = src.block_range(0).len();
    TruncPoly::from_terms(
        target,
        a.terms().iter().map(|(m, c)| {
            let mut e = vec![0u32; target.ngens()];
            for (b, &t) in positions.iter().enumerate() {
                e[t * w..(t + 1) * w].copy_from_slice(&m.0[b * w..(b + 1) * w]);
            }
            (Monomial(e), c.clone())
        }),
    )
}

/// Symmetrised pushforwards `pi_* Delta_{12*}(m)` for the monomial basis `m` of
/// `A^{k - d}(S^{l-1})`, the first factor of `S^{l-1}` being the merged point.
pub fn diagonal_spanning_set(s: &Space, l: usize, k: u32) -> Result<Vec<(String, TruncPoly)>> {
    let d = s.dim();
    if k < d {
        return Ok(Vec::new());
    }
    let target = s.power_ring(l)?;
    let diag = embed_blocks(&diagonal_class(s), &target, &[0, 1]);
    let src = s.power_ring(l - 1)?;
    let positions: Vec<usize> = std::iter::once(0).chain(2..l).collect();
    let mut out = Vec::new();
    for m in src.monomials_of_degree(k - d) {
        let a = TruncPoly::monomial(&src, m.clone(), Rational::one());
        let v = (&embed_blocks(&a, &target, &positions) * &diag).symmetrize()?;
        out.push((src.format_monomial(&m), v));
    }
    Ok(out)
}

/// Decides whether `rep` lies in the image of `A^{k-d}(Delta) -> A^k(S^(l))`.
pub fn diagonal_membership(s: &Space, l: usize, rep: &SymClassRep) -> Result<Certificate> {
    if !(2..=3).contains(&l) || rep.l != l {
        return Err(Error::Unsupported(format!(
            "diagonal membership for l = {l}"
        )));
    }
    let Some(k) = rep.rep.homogeneous_degree() else {
        if rep.is_zero() {
            return Ok(Certificate::Member {
                basis: vec![],
                coefficients: vec![],
            });
        }
        return Err(Error::Domain("class is not homogeneous".into()));
    };
    let target = s.power_ring(l)?;
    let span = diagonal_spanning_set(s, l, k)?;
    let coords = target.monomials_of_degree(k);
    let columns: Vec<Vec<Rational>> = span
        .iter()
        .map(|(_, v)| coords.iter().map(|m| v.coefficient(m)).collect())
        .collect();
    let rhs: Vec<Rational> = coords.iter().map(|m| rep.rep.coefficient(m)).collect();
    Ok(match linalg::solve(&columns, &rhs) {
        Solution::Solved(x) => Certificate::Member {
            basis: span.into_iter().map(|(n, _)| n).collect(),
            coefficients: x,
        },
        Solution::Inconsistent(y) => Certificate::NotMember {
            witness: coords
                .iter()
                .zip(y)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (target.format_monomial(m), c))
                .collect(),
        },
    })
}

/// `int_{S^[l]} c_1(L^[l])^{2l} = (2l)!/(l! 2^l) (int_S c_1(L)^2 + 2 - 2l)^l` on a K3 surface.
pub fn beauville_k3(l: u64, c1sq: &Rational) -> Result<Rational> {
    if l == 0 {
        return Err(Error::Domain("l must be positive".into()));
    }
    let c = int(factorial(2 * l)) / (int(factorial(l)) * pow_i(&rat(2), l as i64));
    Ok(c * pow_i(&(c1sq + rat(2 - 2 * l as i64)), l as i64))
}

/// Coefficients `a_k` with `mu^l_k = a_k sigma_k(h_1..h_l)` on `P^1`, read off the
/// Pluecker polynomial `sum_k n^{l-k} C(lr, l-k) a_k / k!`.
pub fn mu_p1_coeffs(r: u64, l: u64, poly: &DegreePolynomial) -> Result<Vec<Rational>> {
    if poly.degree().is_some_and(|deg| deg > l as usize) {
        return Err(Error::Domain(format!(
            "polynomial of degree {:?} exceeds l = {l}",
            poly.degree()
        )));
    }
    let lr = (l * r) as i64;
    (0..=l)
        .map(|k| {
            let b = binomial(lr, (l - k) as i64);
            if b.is_zero() {
                return Err(Error::Domain("vanishing binomial".into()));
            }
            Ok(poly.coefficient((l - k) as usize) * int(factorial(k)) / b)
        })
        .collect()
}

/// `(l(r-1))! / (r-1)!^l`.
pub fn mu0_closed_form(l: u64, r: u64) -> Rational {
    int(factorial(l * (r - 1))) / pow_i(&int(factorial(r - 1)), l as i64)
}

/// `(l(r-1)+1)! / ((r-1)!^{l-1} r!) . c_1(det E)^(l)`, valid for `dim S >= 2`.
pub fn mu1_closed_form(s: &Space, e: &SplitBundle, l: usize) -> Result<SymClassRep> {
    let r = e.rank() as u64;
    let l64 = l as u64;
    let c = int(factorial(l64 * (r - 1) + 1))
        / (pow_i(&int(factorial(r - 1)), l as i64 - 1) * int(factorial(r)));
    let mut det = Divisor::zero(s.nvars());
    for root in &e.roots {
        det = det.add(root)?;
    }
    let target = s.power_ring(l)?;
    SymClassRep::new(symmetric_divisor(s, &target, &det)?.scale(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::frac;

    fn space(d: &[u32]) -> Space {
        Space::projective_product(d).unwrap()
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 2, 5).len(), 3);
        assert_eq!(compositions(2, 3, 1).len(), 3);
        assert_eq!(compositions(0, 1, 0), vec![vec![0]]);
    }

    #[test]
    fn nu_examples() {
        let p2 = space(&[2]);
        let e = SplitBundle::trivial(3, 1);
        let nu0 = nu_class(&p2, &e, 2, 0).unwrap();
        assert_eq!(nu0.rep, TruncPoly::constant(p2.square_ring(), rat(6)));

        let e = SplitBundle::from_int_roots(&[vec![1], vec![1]]).unwrap();
        let nu1 = nu_class(&p2, &e, 2, 1).unwrap();
        let sq = p2.square_ring();
        let expect = (&TruncPoly::generator(sq, 0) + &TruncPoly::generator(sq, 1)).scale(&rat(6));
        assert_eq!(nu1.rep, expect);

        let triv = SplitBundle::trivial(2, 1);
        for k in 1..=4 {
            assert!(nu_class(&p2, &triv, 2, k).unwrap().is_zero());
        }
        assert!(nu_class(&p2, &triv, 2, 5).is_err());
    }

    #[test]
    fn integrate_sym_examples() {
        let p1 = space(&[1]);
        let sq = p1.square_ring();
        let rep = SymClassRep::new(
            (&TruncPoly::generator(sq, 0) * &TruncPoly::generator(sq, 1)).scale(&rat(2)),
        )
        .unwrap();
        assert_eq!(integrate_sym(&p1, &rep).unwrap(), rat(1));
        let nu0 = nu_class(&p1, &SplitBundle::trivial(2, 1), 2, 0).unwrap();
        assert_eq!(integrate_sym(&p1, &nu0).unwrap(), rat(0));
        let cube = p1.power_ring(3).unwrap();
        let t = TruncPoly::monomial(&cube, Monomial(vec![1, 1, 1]), rat(6));
        assert_eq!(
            integrate_sym(&p1, &SymClassRep::new(t).unwrap()).unwrap(),
            rat(1)
        );
    }

    #[test]
    fn leading_term_examples() {
        let p1 = space(&[1]);
        let e = SplitBundle::trivial(2, 1);
        assert_eq!(
            leading_term(&p1, &e, &Divisor::from_ints(&[3]), 1).unwrap(),
            rat(6)
        );
        assert_eq!(
            leading_term(&p1, &e, &Divisor::from_ints(&[1]), 2).unwrap(),
            rat(12)
        );
        let o = SplitBundle::trivial(1, 1);
        assert_eq!(
            leading_term(&p1, &o, &Divisor::from_ints(&[2]), 3).unwrap(),
            rat(8)
        );
    }

    #[test]
    fn twist_identity_examples() {
        let p2 = space(&[2]);
        let e = SplitBundle::trivial(2, 1);
        let zero = Divisor::zero(1);
        assert_eq!(
            nu_twist_check(&p2, &e, &zero, 2, 2).unwrap(),
            nu_class(&p2, &e, 2, 2).unwrap()
        );
        let k0 = nu_twist_check(&p2, &e, &Divisor::from_ints(&[1]), 2, 0).unwrap();
        assert_eq!(k0.rep, TruncPoly::constant(p2.square_ring(), rat(2)));
        nu_twist_check(&p2, &e, &Divisor::from_ints(&[1]), 2, 2).unwrap();
    }

    #[test]
    fn membership_examples() {
        let p2 = space(&[2]);
        let sq = p2.square_ring();
        let zero = SymClassRep::new(TruncPoly::zero(sq)).unwrap();
        assert!(diagonal_membership(&p2, 2, &zero).unwrap().is_member());
        let diag = SymClassRep::new(diagonal_class(&p2)).unwrap();
        assert!(diagonal_membership(&p2, 2, &diag).unwrap().is_member());
        let h1h2 =
            SymClassRep::new(&TruncPoly::generator(sq, 0) * &TruncPoly::generator(sq, 1)).unwrap();
        match diagonal_membership(&p2, 2, &h1h2).unwrap() {
            Certificate::NotMember { witness } => assert!(!witness.is_empty()),
            other => panic!("{other:?}"),
        }
        let cube = p2.power_ring(4).unwrap();
        let c = SymClassRep::new(TruncPoly::zero(&cube)).unwrap();
        assert!(diagonal_membership(&p2, 4, &c).is_err());
    }

    #[test]
    fn beauville_examples() {
        assert_eq!(beauville_k3(1, &frac(7, 3)).unwrap(), frac(7, 3));
        assert_eq!(beauville_k3(2, &rat(4)).unwrap(), rat(12));
        assert_eq!(beauville_k3(3, &rat(2)).unwrap(), rat(-120));
    }

    #[test]
    fn p1_coefficient_examples() {
        let a = mu_p1_coeffs(2, 2, &DegreePolynomial::from_ints(&[6, -16, 12])).unwrap();
        assert_eq!(a, vec![rat(2), rat(-4), rat(12)]);
        let a = mu_p1_coeffs(1, 1, &DegreePolynomial::from_ints(&[0, 1])).unwrap();
        assert_eq!(a, vec![rat(1), rat(0)]);
        assert!(mu_p1_coeffs(2, 1, &DegreePolynomial::from_ints(&[1, 1, 1])).is_err());
        // binomial(lr, l) a_0 = (lr)! / (l! (r-1)!^l)
        for (l, r) in [(2u64, 3u64), (3, 2), (4, 3)] {
            let lhs = binomial((l * r) as i64, l as i64) * mu0_closed_form(l, r);
            let rhs = int(factorial(l * r))
                / (int(factorial(l)) * pow_i(&int(factorial(r - 1)), l as i64));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn multint_rejects_unavailable_classes() {
        let p1 = space(&[1]);
        let e = SplitBundle::trivial(1, 1);
        let divs = vec![Divisor::from_ints(&[1]); 3];
        assert!(matches!(
            multint(&p1, &e, 3, &divs, MuSource::Computed),
            Err(Error::Unsupported(_))
        ));
        assert!(multint(&p1, &e, 2, &divs, MuSource::Computed).is_err());
    }
}
