//! Integrals over the Hilbert scheme of two points of a supported variety `X`.
//!
//! The flag Hilbert scheme `X^[1,2]` is the blow-up of `X x X` along the
//! diagonal and double covers `X^[2]`. On it `c_1(L^[2])` pulls back to
//! `c_1(L x L) + c_1(O(1))`, and `c_1(O(1))^m` pushes forward to
//! `-Delta_* s_{m - dim X}(X)` for `m >= 1`. Every `X^[2]` integral is
//! therefore half of an integral over `X x X`.

use num_traits::Zero;

use crate::exactpoly::{binomial, pow_i, rat, Rational, TruncPoly};
use crate::varieties::{diagonal_pushforward, integrate, segre_scheme, Space};
use crate::{Error, Result};

/// Degree-one class `M` on `X` together with a power `N`.
#[derive(Clone, Debug)]
pub struct PairPushforwardRequest<'a> {
    pub space: &'a Space,
    pub divisor: TruncPoly,
    pub power: u32,
}

fn check_divisor(x: &Space, m: &TruncPoly) -> Result<()> {
    if **m.ring() != **x.ring() {
        return Err(Error::RingMismatch("divisor is not a class on X".into()));
    }
    if !m.is_homogeneous_of(1) {
        return Err(Error::DegreeMismatch(1));
    }
    Ok(())
}

/// Pushforward of `c_1(O(1))^m` from the blow-up of `X x X` along the diagonal.
pub fn blowup_power_pushforward(x: &Space, m: u32) -> TruncPoly {
    blowup_power_with(x, m, &segre_scheme(x))
}

fn blowup_power_with(x: &Space, m: u32, segre: &TruncPoly) -> TruncPoly {
    let sq = x.square_ring();
    let d = x.dim();
    if m == 0 {
        return TruncPoly::one(sq);
    }
    if m < d {
        return TruncPoly::zero(sq);
    }
    let s = segre.part(m - d);
    -&diagonal_pushforward(x, &s).expect("Segre class lives on X")
}

/// `sum_{m=0}^{N} C(N, m) (M x 1 + 1 x M)^{N-m} . phi_* c_1(O(1))^m`, a class on `X x X`.
pub fn pair_power_pushforward(req: &PairPushforwardRequest<'_>) -> Result<TruncPoly> {
    check_divisor(req.space, &req.divisor)?;
    Ok(pair_power_with(
        req.space,
        &req.divisor,
        req.power,
        &segre_scheme(req.space),
    ))
}

fn pair_power_with(x: &Space, m_class: &TruncPoly, n: u32, segre: &TruncPoly) -> TruncPoly {
    let sq = x.square_ring();
    let boxplus = &m_class.insert_block(sq, 0).unwrap() + &m_class.insert_block(sq, 1).unwrap();
    // powers[e] = (M x 1 + 1 x M)^e
    let mut powers = vec![TruncPoly::one(sq)];
    for e in 1..=n {
        let next = &powers[e as usize - 1] * &boxplus;
        powers.push(next);
    }
    let mut acc = TruncPoly::zero(sq);
    for m in 0..=n {
        let blow = blowup_power_with(x, m, segre);
        if blow.is_zero() {
            continue;
        }
        let term = (&powers[(n - m) as usize] * &blow).scale(&binomial(n as i64, m as i64));
        acc = &acc + &term;
    }
    acc
}

/// Both evaluations of `int_{X^[2]} c_1(M^[2])^{2 dim X}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hilb2Routes {
    pub closed_form: Rational,
    pub blowup: Rational,
}

/// The two routes computed with an explicitly supplied Segre class of `X`.
pub fn hilb2_routes_with_segre(x: &Space, m: &TruncPoly, segre: &TruncPoly) -> Result<Hilb2Routes> {
    check_divisor(x, m)?;
    let d = x.dim();
    if d == 0 {
        return Err(Error::Domain("X must have positive dimension".into()));
    }
    let di = d as i64;
    let ring = x.ring();
    let mut mpow = vec![TruncPoly::one(ring)];
    for e in 1..=d {
        let next = &mpow[e as usize - 1] * m;
        mpow.push(next);
    }
    let top = integrate(x, &mpow[d as usize])?;
    let half = Rational::new(1.into(), 2.into());
    let mut sum = Rational::zero();
    for k in 0..=d {
        let integrand = &mpow[(d - k) as usize] * &segre.part(k);
        sum += binomial(2 * di, di + k as i64)
            * pow_i(&rat(2), -(k as i64))
            * integrate(x, &integrand)?;
    }
    let closed_form = &half * binomial(2 * di, di) * &top * &top - pow_i(&rat(2), di - 1) * sum;

    let classes = pair_power_with(x, m, 2 * d, segre);
    let blowup = &half * classes.top_coefficient();
    Ok(Hilb2Routes {
        closed_form,
        blowup,
    })
}

/// `int_{X^[2]} c_1(M^[2])^{2 dim X}`; both routes must agree.
pub fn hilb2_degree(x: &Space, m: &TruncPoly) -> Result<Rational> {
    let routes = hilb2_routes_with_segre(x, m, &segre_scheme(x))?;
    if routes.closed_form != routes.blowup {
        return Err(Error::CrossCheck(format!(
            "Hilbert-square closed form {} != blow-up integral {}",
            routes.closed_form, routes.blowup
        )));
    }
    Ok(routes.closed_form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::{Divisor, SplitBundle};

    fn div(x: &Space, c: &[i64]) -> TruncPoly {
        x.divisor(&Divisor::from_ints(c)).unwrap()
    }

    #[test]
    fn blowup_examples() {
        let p1 = Space::projective_product(&[1]).unwrap();
        assert_eq!(
            blowup_power_pushforward(&p1, 0),
            TruncPoly::one(p1.square_ring())
        );
        let sq = p1.square_ring();
        let expect = -&(&TruncPoly::generator(sq, 0) + &TruncPoly::generator(sq, 1));
        assert_eq!(blowup_power_pushforward(&p1, 1), expect);

        let p2 = Space::projective_product(&[2]).unwrap();
        let sq = p2.square_ring();
        let h1 = TruncPoly::generator(sq, 0);
        let h2 = TruncPoly::generator(sq, 1);
        let expect = (&(&h1.pow(2) * &h2) + &(&h1 * &h2.pow(2))).scale(&rat(3));
        assert_eq!(blowup_power_pushforward(&p2, 3), expect);
        assert!(blowup_power_pushforward(&p2, 1).is_zero());
    }

    #[test]
    fn pair_power_examples() {
        let p1 = Space::projective_product(&[1]).unwrap();
        let m = div(&p1, &[3]);
        let req = PairPushforwardRequest {
            space: &p1,
            divisor: m.clone(),
            power: 0,
        };
        assert_eq!(
            pair_power_pushforward(&req).unwrap(),
            TruncPoly::one(p1.square_ring())
        );
        let req = PairPushforwardRequest {
            space: &p1,
            divisor: m,
            power: 2,
        };
        assert_eq!(
            pair_power_pushforward(&req).unwrap().top_coefficient(),
            rat(8)
        );

        let p2 = Space::projective_product(&[2]).unwrap();
        let req = PairPushforwardRequest {
            space: &p2,
            divisor: div(&p2, &[1]),
            power: 4,
        };
        let c = pair_power_pushforward(&req).unwrap();
        assert_eq!(c.permute_blocks(&[1, 0]).unwrap(), c);
        assert!(c.is_homogeneous_of(4));
    }

    #[test]
    fn hilb2_examples() {
        let p1 = Space::projective_product(&[1]).unwrap();
        assert_eq!(hilb2_degree(&p1, &div(&p1, &[3])).unwrap(), rat(4));
        let p2 = Space::projective_product(&[2]).unwrap();
        assert_eq!(hilb2_degree(&p2, &div(&p2, &[2])).unwrap(), rat(21));
        let q = Space::projective_product(&[1, 1]).unwrap();
        assert_eq!(hilb2_degree(&q, &div(&q, &[1, 1])).unwrap(), rat(2));
        assert_eq!(
            hilb2_degree(&q, &div(&q, &[3, 1])).unwrap(),
            rat(12 * 9 - 16 * 3 + 6)
        );
    }

    #[test]
    fn hilb2_on_projective_bundle() {
        let x = Space::projective_bundle(&[1], &SplitBundle::trivial(2, 1)).unwrap();
        let n = 2;
        let m = &div(&x, &[n]) + &x.zeta().unwrap();
        assert_eq!(hilb2_degree(&x, &m).unwrap(), rat(12 * n * n - 16 * n + 6));
    }

    #[test]
    fn rejects_non_divisors() {
        let p1 = Space::projective_product(&[1]).unwrap();
        assert!(hilb2_degree(&p1, &TruncPoly::one(p1.ring())).is_err());
    }
}
