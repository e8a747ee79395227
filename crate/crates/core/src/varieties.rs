//! Chow rings of products of projective spaces and of projectivised split
//! bundles over them, with the characteristic-class calculus built on top.
//!
//! Conventions:
//! * the Segre class is the inverse of the Chern class, `s(V) c(V) = 1`, and
//!   `s(X)` means the Segre class of the tangent bundle;
//! * `P(E)` is the bundle of rank-one quotients of `E`, with `zeta = c_1(O(1))`
//!   subject to `prod_i (zeta - D_i) = 0`, so that `f_* zeta^(r-1+k) = (-1)^k s_k(E)`;
//! * the relative tangent bundle of `P(E)` has Chern class `prod_i (1 + zeta - D_i)`.

use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::exactpoly::{rat, Block, BundleRelation, Monomial, Rational, RingDescriptor, TruncPoly};
use crate::{Error, Result};

/// Integer-or-rational combination `sum_i a_i h_i` of the hyperplane classes of a base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor(pub Vec<Rational>);

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor(vec![Rational::zero(); n])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Divisor(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `n * sum_i h_i`, the pullback of `O(n, ..., n)`.
    pub fn uniform(nvars: usize, n: i64) -> Self {
        Divisor(vec![rat(n); nvars])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Divisor) -> Result<Divisor> {
        if self.len() != other.len() {
            return Err(Error::Domain(format!(
                "divisors over {} and {} hyperplane classes",
                self.len(),
                other.len()
            )));
        }
        Ok(Divisor(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn scale(&self, c: &Rational) -> Divisor {
        Divisor(self.0.iter().map(|a| a * c).collect())
    }

    /// The class `sum_i a_i h_i` in a ring whose first generators are the `h_i`.
    pub fn class_in(&self, ring: &Arc<RingDescriptor>) -> TruncPoly {
        let n = ring.ngens();
        TruncPoly::from_terms(
            ring,
            self.0.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (Monomial(e), c.clone())
            }),
        )
    }
}

/// `O(D_1) + ... + O(D_r)`, given by its Chern roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitBundle {
    pub roots: Vec<Divisor>,
}

impl SplitBundle {
    pub fn new(roots: Vec<Divisor>) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::Domain("a bundle needs rank at least 1".into()));
        }
        let n = roots[0].len();
        if roots.iter().any(|d| d.len() != n) {
            return Err(Error::Domain("Chern roots over different bases".into()));
        }
        Ok(SplitBundle { roots })
    }

    /// `O^r` over a base with `nvars` hyperplane classes.
    pub fn trivial(rank: usize, nvars: usize) -> Self {
        SplitBundle {
            roots: vec![Divisor::zero(nvars); rank],
        }
    }

    pub fn from_int_roots(roots: &[Vec<i64>]) -> Result<Self> {
        Self::new(roots.iter().map(|r| Divisor::from_ints(r)).collect())
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    pub fn nvars(&self) -> usize {
        self.roots[0].len()
    }

    /// `E (x) L`: every root shifted by `c_1(L)`.
    pub fn twist(&self, l: &Divisor) -> Result<SplitBundle> {
        Ok(SplitBundle {
            roots: self.roots.iter().map(|d| d.add(l)).collect::<Result<_>>()?,
        })
    }
}

/// Supported varieties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceDescriptor {
    ProjProduct { dims: Vec<u32> },
    ProjBundle { base: Vec<u32>, bundle: SplitBundle },
}

/// A supported variety with its Chow ring.
#[derive(Debug)]
pub struct Space {
    descriptor: SpaceDescriptor,
    ring: Arc<RingDescriptor>,
    base_ring: Arc<RingDescriptor>,
    square: OnceLock<Arc<RingDescriptor>>,
}

impl Clone for Space {
    fn clone(&self) -> Self {
        Space {
            descriptor: self.descriptor.clone(),
            ring: self.ring.clone(),
            base_ring: self.base_ring.clone(),
            square: self.square.clone(),
        }
    }
}

fn hyperplane_names(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["h".to_string()]
    } else {
        (1..=n).map(|i| format!("h{i}")).collect()
    }
}

fn product_block(dims: &[u32]) -> Block {
    let names = hyperplane_names(dims.len());
    Block::truncated(
        &names
            .iter()
            .zip(dims)
            .map(|(n, d)| (n.as_str(), d + 1))
            .collect::<Vec<_>>(),
    )
}

impl Space {
    pub fn new(descriptor: SpaceDescriptor) -> Result<Self> {
        match descriptor {
            SpaceDescriptor::ProjProduct { dims } => Self::projective_product(&dims),
            SpaceDescriptor::ProjBundle { base, bundle } => Self::projective_bundle(&base, &bundle),
        }
    }

    /// `P^{d_1} x ... x P^{d_k}`.
    pub fn projective_product(dims: &[u32]) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Domain(format!(
                "projective factor dimensions must be positive, got {dims:?}"
            )));
        }
        let ring = RingDescriptor::new(vec![product_block(dims)])?;
        Ok(Space {
            descriptor: SpaceDescriptor::ProjProduct {
                dims: dims.to_vec(),
            },
            base_ring: ring.clone(),
            ring,
            square: OnceLock::new(),
        })
    }

    /// `P(E)` over `P^{d_1} x ... x P^{d_k}`.
    pub fn projective_bundle(base: &[u32], bundle: &SplitBundle) -> Result<Self> {
        let base_space = Self::projective_product(base)?;
        if bundle.nvars() != base.len() {
            return Err(Error::Domain(format!(
                "bundle roots have {} coefficients, base has {} factors",
                bundle.nvars(),
                base.len()
            )));
        }
        let base_ring = base_space.ring.clone();
        let k = base.len();
        let r = bundle.rank();
        let c = chern_total(&base_ring, bundle)?;
        let chern = (1..=r as u32)
            .map(|i| {
                c.part(i)
                    .terms()
                    .iter()
                    .map(|(m, x)| {
                        let mut e = m.0.clone();
                        e.push(0);
                        (e, x.clone())
                    })
                    .collect()
            })
            .collect();
        let mut block = product_block(base);
        block.generators.push(("z".to_string(), r as u32));
        block.relation = Some(BundleRelation {
            zeta: k,
            rank: r as u32,
            chern,
        });
        let ring = RingDescriptor::new(vec![block])?;
        Ok(Space {
            descriptor: SpaceDescriptor::ProjBundle {
                base: base.to_vec(),
                bundle: bundle.clone(),
            },
            ring,
            base_ring,
            square: OnceLock::new(),
        })
    }

    pub fn descriptor(&self) -> &SpaceDescriptor {
        &self.descriptor
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    /// Ring of the base for a bundle, of the space itself otherwise.
    pub fn base_ring(&self) -> &Arc<RingDescriptor> {
        &self.base_ring
    }

    pub fn base_dims(&self) -> &[u32] {
        match &self.descriptor {
            SpaceDescriptor::ProjProduct { dims } => dims,
            SpaceDescriptor::ProjBundle { base, .. } => base,
        }
    }

    /// Number of hyperplane classes `h_i`.
    pub fn nvars(&self) -> usize {
        self.base_dims().len()
    }

    pub fn base_dim(&self) -> u32 {
        self.base_dims().iter().sum()
    }

    pub fn dim(&self) -> u32 {
        self.ring.dim()
    }

    pub fn bundle(&self) -> Option<&SplitBundle> {
        match &self.descriptor {
            SpaceDescriptor::ProjBundle { bundle, .. } => Some(bundle),
            SpaceDescriptor::ProjProduct { .. } => None,
        }
    }

    /// The base as a space of its own.
    pub fn base(&self) -> Space {
        Space::projective_product(self.base_dims()).expect("base of a valid space")
    }

    /// Ring of `X x X`.
    pub fn square_ring(&self) -> &Arc<RingDescriptor> {
        self.square
            .get_or_init(|| self.ring.power(2).expect("single-block ring"))
    }

    pub fn power_ring(&self, l: usize) -> Result<Arc<RingDescriptor>> {
        if l == 2 {
            return Ok(self.square_ring().clone());
        }
        self.ring.power(l)
    }

    /// `c_1(O(1))` of a projective bundle.
    pub fn zeta(&self) -> Result<TruncPoly> {
        match self.bundle() {
            Some(_) => Ok(TruncPoly::generator(&self.ring, self.nvars())),
            None => Err(Error::Domain("zeta is only defined on P(E)".into())),
        }
    }

    /// A base divisor as a class on this space.
    pub fn divisor(&self, d: &Divisor) -> Result<TruncPoly> {
        if d.len() != self.nvars() {
            return Err(Error::Domain(format!(
                "divisor has {} coefficients, space has {} hyperplane classes",
                d.len(),
                self.nvars()
            )));
        }
        Ok(d.class_in(&self.ring))
    }

    /// `f^*` from the base ring (or the identity for a projective product).
    pub fn pullback(&self, a: &TruncPoly) -> Result<TruncPoly> {
        self.pullback_power(a, &self.ring)
    }

    /// `(f x ... x f)^*` from `S^l` into `X^l`.
    pub fn pullback_power(&self, a: &TruncPoly, target: &Arc<RingDescriptor>) -> Result<TruncPoly> {
        let src = a.ring();
        let k = self.nvars();
        let l = src.nblocks();
        if target.nblocks() != l
            || *target.block(0) != *self.ring.block(0)
            || *src.block(0) != *self.base_ring.block(0)
        {
            return Err(Error::RingMismatch(
                "pullback between unrelated rings".into(),
            ));
        }
        let w = target.block_range(0).len();
        Ok(TruncPoly::from_terms(
            target,
            a.terms().iter().map(|(m, c)| {
                let mut e = vec![0u32; target.ngens()];
                for b in 0..l {
                    e[b * w..b * w + k].copy_from_slice(&m.0[b * k..(b + 1) * k]);
                }
                (Monomial(e), c.clone())
            }),
        ))
    }

    /// `(f x ... x f)_*` from `X^l` to `S^l`: the coefficient of `zeta^(r-1)` in every factor.
    pub fn pushforward_power(
        &self,
        a: &TruncPoly,
        target: &Arc<RingDescriptor>,
    ) -> Result<TruncPoly> {
        let Some(bundle) = self.bundle() else {
            return Ok(a.clone());
        };
        let r = bundle.rank() as u32;
        let k = self.nvars();
        let l = a.ring().nblocks();
        if *a.ring().block(0) != *self.ring.block(0)
            || target.nblocks() != l
            || *target.block(0) != *self.base_ring.block(0)
        {
            return Err(Error::RingMismatch(
                "pushforward between unrelated rings".into(),
            ));
        }
        let w = k + 1;
        Ok(TruncPoly::from_terms(
            target,
            a.terms()
                .iter()
                .filter(|(m, _)| (0..l).all(|b| m.0[b * w + k] == r - 1))
                .map(|(m, c)| {
                    let mut e = Vec::with_capacity(l * k);
                    for b in 0..l {
                        e.extend_from_slice(&m.0[b * w..b * w + k]);
                    }
                    (Monomial(e), c.clone())
                }),
        ))
    }
}

fn check_base_ring(ring: &Arc<RingDescriptor>, e: &SplitBundle) -> Result<()> {
    if ring.nblocks() != 1 || ring.block(0).relation.is_some() {
        return Err(Error::RingMismatch(
            "bundles live on a projective product".into(),
        ));
    }
    if e.nvars() != ring.ngens() {
        return Err(Error::Domain(format!(
            "bundle roots have {} coefficients, base has {} generators",
            e.nvars(),
            ring.ngens()
        )));
    }
    Ok(())
}

/// `prod_i (1 + D_i)`.
pub fn chern_total(base: &Arc<RingDescriptor>, e: &SplitBundle) -> Result<TruncPoly> {
    check_base_ring(base, e)?;
    let one = TruncPoly::one(base);
    Ok(e.roots
        .iter()
        .fold(one.clone(), |acc, d| &acc * &(&one + &d.class_in(base))))
}

/// `c(E)^{-1}`; its degree-`k` part is `s_k(E)`.
pub fn segre_total(base: &Arc<RingDescriptor>, e: &SplitBundle) -> Result<TruncPoly> {
    chern_total(base, e)?.series_inverse()
}

/// `c(T_X)`.
pub fn tangent_chern(x: &Space) -> TruncPoly {
    let ring = x.ring();
    let one = TruncPoly::one(ring);
    let mut c = one.clone();
    for (i, d) in x.base_dims().iter().enumerate() {
        let h = TruncPoly::generator(ring, i);
        c = &c * &(&one + &h).pow(d + 1);
    }
    if let Some(bundle) = x.bundle() {
        let z = x.zeta().expect("bundle space");
        for root in &bundle.roots {
            let factor = &(&one + &z) - &root.class_in(ring);
            c = &c * &factor;
        }
    }
    c
}

/// `s(X) = c(T_X)^{-1}`.
pub fn segre_scheme(x: &Space) -> TruncPoly {
    tangent_chern(x)
        .series_inverse()
        .expect("total Chern class has constant term 1")
}

/// `E (x) L` for a homogeneous degree-one class `L` on the base.
pub fn twist(e: &SplitBundle, lc1: &TruncPoly) -> Result<SplitBundle> {
    if !lc1.is_homogeneous_of(1) {
        return Err(Error::DegreeMismatch(1));
    }
    let ring = lc1.ring();
    check_base_ring(ring, e)?;
    let coeffs = (0..ring.ngens())
        .map(|i| {
            let mut m = vec![0; ring.ngens()];
            m[i] = 1;
            lc1.coefficient(&Monomial(m))
        })
        .collect();
    e.twist(&Divisor(coeffs))
}

/// `int_X a`.
pub fn integrate(x: &Space, a: &TruncPoly) -> Result<Rational> {
    if **a.ring() != **x.ring() {
        return Err(Error::RingMismatch(format!(
            "class on {} integrated over {}",
            a.ring(),
            x.ring()
        )));
    }
    Ok(a.top_coefficient())
}

/// `f_*` for `f: P(E) -> S`.
pub fn pushforward_projbundle(x: &Space, a: &TruncPoly) -> Result<TruncPoly> {
    if x.bundle().is_none() {
        return Err(Error::Domain("not a projective bundle".into()));
    }
    if **a.ring() != **x.ring() {
        return Err(Error::RingMismatch("class is not on this bundle".into()));
    }
    x.pushforward_power(a, x.base_ring())
}

/// Class of the diagonal in `X x X`.
pub fn diagonal_class(x: &Space) -> TruncPoly {
    let sq = x.square_ring().clone();
    match x.bundle() {
        None => product_diagonal(x.base_dims(), &sq),
        Some(bundle) => {
            let base = x.base();
            let base_diag = product_diagonal(x.base_dims(), base.square_ring());
            let pulled = x
                .pullback_power(&base_diag, &sq)
                .expect("base square embeds in the bundle square");
            // Fibre-square diagonal: zero locus of K_1 -> E -> O_2(1), K_1 = ker(E -> O_1(1)).
            let r = bundle.rank() as u32;
            let one = TruncPoly::one(&sq);
            let c_e = chern_total(x.base_ring(), bundle).expect("bundle on its base");
            let c_e1 = x
                .pullback(&c_e)
                .and_then(|c| c.insert_block(&sq, 0))
                .expect("pullback into first factor");
            let z = x.zeta().expect("bundle space");
            let z1 = z.insert_block(&sq, 0).unwrap();
            let z2 = z.insert_block(&sq, 1).unwrap();
            let c_k = &c_e1 * &(&one + &z1).series_inverse().unwrap();
            let mut top = TruncPoly::zero(&sq);
            for i in 0..r {
                let term = &c_k.part(i) * &z2.pow(r - 1 - i);
                top = if i % 2 == 0 {
                    &top + &term
                } else {
                    &top - &term
                };
            }
            &pulled * &top
        }
    }
}

fn product_diagonal(dims: &[u32], sq: &Arc<RingDescriptor>) -> TruncPoly {
    let k = dims.len();
    let w = sq.block_range(0).len();
    let mut acc = TruncPoly::one(sq);
    for (i, &d) in dims.iter().enumerate() {
        let factor = TruncPoly::from_terms(
            sq,
            (0..=d).map(|a| {
                let mut e = vec![0u32; sq.ngens()];
                e[i] = a;
                e[w + i] = d - a;
                (Monomial(e), Rational::one())
            }),
        );
        acc = &acc * &factor;
    }
    debug_assert!(k <= w);
    acc
}

/// `Delta_* a = (a x 1) . [Delta]`.
pub fn diagonal_pushforward(x: &Space, a: &TruncPoly) -> Result<TruncPoly> {
    let lifted = a.insert_block(x.square_ring(), 0)?;
    Ok(&lifted * &diagonal_class(x))
}

/// `int_X c_top(T_X)`.
pub fn euler_number(x: &Space) -> Rational {
    tangent_chern(x).top_coefficient()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1() -> Space {
        Space::projective_product(&[1]).unwrap()
    }
    fn p2() -> Space {
        Space::projective_product(&[2]).unwrap()
    }

    fn poly(ring: &Arc<RingDescriptor>, s: &str) -> TruncPoly {
        TruncPoly::from_json(ring, &serde_json::from_str(s).unwrap()).unwrap()
    }

    #[test]
    fn chern_examples() {
        let s = p2();
        let e = SplitBundle::from_int_roots(&[vec![1], vec![2]]).unwrap();
        assert_eq!(
            chern_total(s.ring(), &e).unwrap(),
            poly(s.ring(), r#"{"1":"1","h":"3","h^2":"2"}"#)
        );
        let triv = SplitBundle::trivial(3, 1);
        assert_eq!(
            chern_total(s.ring(), &triv).unwrap(),
            TruncPoly::one(s.ring())
        );
        let o5 = SplitBundle::from_int_roots(&[vec![5]]).unwrap();
        assert_eq!(
            chern_total(p1().ring(), &o5).unwrap(),
            poly(p1().ring(), r#"{"1":"1","h":"5"}"#)
        );
    }

    #[test]
    fn segre_examples() {
        let o3 = SplitBundle::from_int_roots(&[vec![3]]).unwrap();
        assert_eq!(
            segre_total(p1().ring(), &o3).unwrap(),
            poly(p1().ring(), r#"{"1":"1","h":"-3"}"#)
        );
        let e = SplitBundle::from_int_roots(&[vec![1], vec![1]]).unwrap();
        assert_eq!(
            segre_total(p2().ring(), &e).unwrap(),
            poly(p2().ring(), r#"{"1":"1","h":"-2","h^2":"3"}"#)
        );
        let triv = SplitBundle::trivial(2, 1);
        assert_eq!(
            segre_total(p2().ring(), &triv).unwrap(),
            TruncPoly::one(p2().ring())
        );
    }

    #[test]
    fn segre_of_spaces() {
        assert_eq!(
            segre_scheme(&p1()),
            poly(p1().ring(), r#"{"1":"1","h":"-2"}"#)
        );
        assert_eq!(
            segre_scheme(&p2()),
            poly(p2().ring(), r#"{"1":"1","h":"-3","h^2":"6"}"#)
        );
    }

    #[test]
    fn trivial_bundle_over_p1_is_p1_cross_p1() {
        let x = Space::projective_bundle(&[1], &SplitBundle::trivial(2, 1)).unwrap();
        let y = Space::projective_product(&[1, 1]).unwrap();
        // identify h -> h1, z -> h2
        let s = segre_scheme(&x);
        let t = segre_scheme(&y);
        let mapped = TruncPoly::from_terms(
            y.ring(),
            s.terms().iter().map(|(m, c)| (m.clone(), c.clone())),
        );
        assert_eq!(mapped, t);
        assert_eq!(
            t,
            poly(y.ring(), r#"{"1":"1","h1":"-2","h2":"-2","h1*h2":"4"}"#)
        );
    }

    #[test]
    fn twist_examples() {
        let s = p1();
        let e = SplitBundle::trivial(2, 1);
        let l = Divisor::from_ints(&[2]).class_in(s.ring());
        assert_eq!(
            twist(&e, &l).unwrap(),
            SplitBundle::from_int_roots(&[vec![2], vec![2]]).unwrap()
        );
        assert_eq!(twist(&e, &TruncPoly::zero(s.ring())).unwrap(), e);
        let e = SplitBundle::from_int_roots(&[vec![0], vec![1]]).unwrap();
        let t = twist(&e, &TruncPoly::generator(p2().ring(), 0)).unwrap();
        assert_eq!(
            segre_total(p2().ring(), &t).unwrap().part(1),
            poly(p2().ring(), r#"{"h":"-3"}"#)
        );
        let bad = poly(s.ring(), r#"{"1":"1"}"#);
        assert!(matches!(twist(&e, &bad), Err(Error::DegreeMismatch(1))));
    }

    #[test]
    fn integrate_examples() {
        let s = p2();
        assert_eq!(
            integrate(&s, &poly(s.ring(), r#"{"h^2":"1"}"#)).unwrap(),
            rat(1)
        );
        let q = Space::projective_product(&[1, 1]).unwrap();
        assert_eq!(
            integrate(&q, &poly(q.ring(), r#"{"h1*h2":"1"}"#)).unwrap(),
            rat(1)
        );
        let x = Space::projective_bundle(&[1], &SplitBundle::trivial(2, 1)).unwrap();
        assert_eq!(
            integrate(&x, &poly(x.ring(), r#"{"z*h":"1"}"#)).unwrap(),
            rat(1)
        );
        assert_eq!(
            integrate(&s, &poly(s.ring(), r#"{"h":"5"}"#)).unwrap(),
            rat(0)
        );
    }

    #[test]
    fn projbundle_pushforward_examples() {
        let e = SplitBundle::from_int_roots(&[vec![1], vec![2]]).unwrap();
        let x = Space::projective_bundle(&[1], &e).unwrap();
        let z = x.zeta().unwrap();
        assert_eq!(
            pushforward_projbundle(&x, &z).unwrap(),
            TruncPoly::one(x.base_ring())
        );
        assert_eq!(
            pushforward_projbundle(&x, &z.pow(2)).unwrap(),
            poly(x.base_ring(), r#"{"h":"3"}"#)
        );
        assert!(pushforward_projbundle(&x, &TruncPoly::one(x.ring()))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn rank_one_bundle_is_the_base() {
        let e = SplitBundle::from_int_roots(&[vec![3, -1]]).unwrap();
        let x = Space::projective_bundle(&[1, 2], &e).unwrap();
        let z = x.zeta().unwrap();
        let d = x.divisor(&e.roots[0]).unwrap();
        assert_eq!(z, d);
        assert_eq!(x.dim(), 3);
    }

    #[test]
    fn diagonal_examples() {
        let s = p1();
        assert_eq!(
            diagonal_class(&s),
            poly(s.square_ring(), r#"{"h[1]":"1","h[2]":"1"}"#)
        );
        let s = p2();
        assert_eq!(
            diagonal_class(&s),
            poly(
                s.square_ring(),
                r#"{"h[1]^2":"1","h[1]*h[2]":"1","h[2]^2":"1"}"#
            )
        );
        let q = Space::projective_product(&[1, 1]).unwrap();
        let d = diagonal_class(&q);
        assert_eq!((&d * &d).top_coefficient(), rat(4));
    }

    #[test]
    fn diagonal_pushforward_examples() {
        let s = p2();
        let sq = s.square_ring();
        assert_eq!(
            diagonal_pushforward(&s, &TruncPoly::one(s.ring())).unwrap(),
            diagonal_class(&s)
        );
        let h = TruncPoly::generator(s.ring(), 0);
        let dh = diagonal_pushforward(&s, &h).unwrap();
        assert_eq!(dh, poly(sq, r#"{"h[1]^2*h[2]":"1","h[1]*h[2]^2":"1"}"#));
        let b = TruncPoly::generator(s.ring(), 0)
            .insert_block(sq, 0)
            .unwrap();
        assert_eq!((&dh * &b).top_coefficient(), rat(1));
        assert_eq!(integrate(&s, &(&h * &h)).unwrap(), rat(1));
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_number(&p2()), rat(3));
        assert_eq!(
            euler_number(&Space::projective_product(&[1, 1]).unwrap()),
            rat(4)
        );
        let x = Space::projective_bundle(&[2], &SplitBundle::trivial(3, 1)).unwrap();
        assert_eq!(euler_number(&x), rat(9));
        assert_eq!(x.dim(), 4);
    }

    #[test]
    fn invalid_spaces() {
        assert!(Space::projective_product(&[]).is_err());
        assert!(Space::projective_product(&[0, 1]).is_err());
        let e = SplitBundle::from_int_roots(&[vec![1, 1]]).unwrap();
        assert!(Space::projective_bundle(&[1], &e).is_err());
        assert!(SplitBundle::new(vec![]).is_err());
    }
}
