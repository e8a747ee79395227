use std::sync::Arc;

use proptest::prelude::*;

use quotdeg::exactpoly::{
    format_rational, frac, parse_rational, rat, Rational, RingDescriptor, TruncPoly,
};
use quotdeg::grassmann::{schubert_degree, syt_count};
use quotdeg::hilb2::{hilb2_routes_with_segre, pair_power_pushforward, PairPushforwardRequest};
use quotdeg::jacobi::{a_coeff_jacobi, a_coeff_sum, jacobi_finite_sum, jacobi_hyp, JacobiParams};
use quotdeg::linalg::{solve, Solution};
use quotdeg::polynomial::DegreePolynomial;
use quotdeg::symquot::{integrate_sym, nu_class, SymClassRep};
use quotdeg::varieties::{
    chern_total, diagonal_pushforward, integrate, pushforward_projbundle, segre_scheme,
    segre_total, Divisor, Space, SplitBundle,
};

fn bases() -> Vec<Vec<u32>> {
    vec![vec![1], vec![2], vec![3], vec![1, 1], vec![2, 1]]
}

fn class_from(ring: &Arc<RingDescriptor>, coeffs: &[i64]) -> TruncPoly {
    let monos: Vec<_> = (0..=ring.dim())
        .flat_map(|k| ring.monomials_of_degree(k))
        .collect();
    TruncPoly::from_terms(
        ring,
        monos
            .into_iter()
            .zip(coeffs.iter().cycle())
            .map(|(m, &c)| (m, rat(c))),
    )
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 1..40)
}

fn bundle(nvars: usize) -> impl Strategy<Value = SplitBundle> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, nvars), 1..=3)
        .prop_map(|roots| SplitBundle::from_int_roots(&roots).unwrap())
}

fn space_and_bundle() -> impl Strategy<Value = (Vec<u32>, SplitBundle)> {
    prop::sample::select(bases()).prop_flat_map(|dims| {
        let n = dims.len();
        (Just(dims), bundle(n))
    })
}

fn any_space() -> impl Strategy<Value = Space> {
    (space_and_bundle(), any::<bool>()).prop_map(|((dims, e), on_bundle)| {
        if on_bundle && dims.iter().sum::<u32>() <= 2 {
            Space::projective_bundle(&dims, &e).unwrap()
        } else {
            Space::projective_product(&dims).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(x in any_space(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let ring = x.ring();
        let (a, b, c) = (class_from(ring, &a), class_from(ring, &b), class_from(ring, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, TruncPoly::zero(ring));
        prop_assert_eq!(&a * &TruncPoly::one(ring), a);
    }

    #[test]
    fn series_inverse_is_inverse(x in any_space(), a in coeffs()) {
        let ring = x.ring();
        let a = class_from(ring, &a);
        let u = &(&a - &TruncPoly::constant(ring, a.constant_term())) + &TruncPoly::one(ring);
        let inv = u.series_inverse().unwrap();
        prop_assert_eq!(&u * &inv, TruncPoly::one(ring));
        if a.constant_term() != rat(1) {
            prop_assert!(a.series_inverse().is_err());
        }
    }

    #[test]
    fn block_permutation_is_a_homomorphism(dims in prop::sample::select(bases()), a in coeffs(), b in coeffs()) {
        let x = Space::projective_product(&dims).unwrap();
        let sq = x.square_ring();
        let (a, b) = (class_from(sq, &a), class_from(sq, &b));
        let swap = |p: &TruncPoly| p.permute_blocks(&[1, 0]).unwrap();
        prop_assert_eq!(swap(&(&a * &b)), &swap(&a) * &swap(&b));
        prop_assert_eq!(swap(&swap(&a)), a.clone());
        prop_assert!(a.symmetrize().unwrap().is_block_symmetric().unwrap());
    }

    #[test]
    fn projection_formula(x in any_space(), a in coeffs(), b in coeffs()) {
        let ring = x.ring();
        let (a, b) = (class_from(ring, &a), class_from(ring, &b));
        let pushed = diagonal_pushforward(&x, &a).unwrap();
        let b2 = b.insert_block(x.square_ring(), 1).unwrap();
        prop_assert_eq!((&pushed * &b2).top_coefficient(), integrate(&x, &(&a * &b)).unwrap());
    }

    #[test]
    fn segre_inverts_chern((dims, e) in space_and_bundle()) {
        let x = Space::projective_product(&dims).unwrap();
        let ring = x.ring();
        prop_assert_eq!(&chern_total(ring, &e).unwrap() * &segre_total(ring, &e).unwrap(), TruncPoly::one(ring));
    }

    #[test]
    fn bundle_pushforward_gives_signed_segre((dims, e) in space_and_bundle()) {
        let x = Space::projective_bundle(&dims, &e).unwrap();
        let seg = segre_total(x.base_ring(), &e).unwrap();
        let z = x.zeta().unwrap();
        let r = e.rank() as u32;
        for k in 0..=x.base_dim() {
            let pushed = pushforward_projbundle(&x, &z.pow(r - 1 + k)).unwrap();
            let want = if k % 2 == 0 { seg.part(k) } else { -&seg.part(k) };
            prop_assert_eq!(pushed, want);
        }
    }

    #[test]
    fn twist_composes((dims, e) in space_and_bundle(), a in prop::collection::vec(-3i64..=3, 2), b in prop::collection::vec(-3i64..=3, 2)) {
        let k = dims.len();
        let (a, b) = (Divisor::from_ints(&a[..k]), Divisor::from_ints(&b[..k]));
        let lhs = e.twist(&a).unwrap().twist(&b).unwrap();
        prop_assert_eq!(lhs, e.twist(&a.add(&b).unwrap()).unwrap());
    }

    #[test]
    fn hilb2_routes_agree(x in any_space(), m in prop::collection::vec(-3i64..=3, 3)) {
        let mut class = x.divisor(&Divisor::from_ints(&m[..x.nvars()])).unwrap();
        if let Ok(z) = x.zeta() {
            class = &class + &z.scale(&rat(m[2]));
        }
        let routes = hilb2_routes_with_segre(&x, &class, &segre_scheme(&x)).unwrap();
        prop_assert_eq!(routes.closed_form, routes.blowup);
        let req = PairPushforwardRequest { space: &x, divisor: class, power: x.dim() + 1 };
        let pushed = pair_power_pushforward(&req).unwrap();
        prop_assert!(pushed.is_zero() || pushed.is_homogeneous_of(x.dim() + 1));
    }

    #[test]
    fn symmetrised_integral(dims in prop::sample::select(vec![vec![1u32], vec![2]]), l in 2usize..=3, a in coeffs()) {
        let x = Space::projective_product(&dims).unwrap();
        let ring = x.power_ring(l).unwrap();
        let beta = class_from(&ring, &a);
        let pushed = SymClassRep::new(beta.symmetrize().unwrap()).unwrap();
        prop_assert_eq!(integrate_sym(&x, &pushed).unwrap(), beta.top_coefficient());
    }

    #[test]
    fn nu_is_symmetric((dims, e) in space_and_bundle(), l in 1usize..=3, k in 0u32..=3) {
        let x = Space::projective_product(&dims).unwrap();
        prop_assume!(dims.iter().sum::<u32>() <= 2);
        prop_assume!(k <= l as u32 * x.dim());
        let nu = nu_class(&x, &e, l, k).unwrap();
        prop_assert!(nu.rep.is_block_symmetric().unwrap());
        prop_assert!(nu.is_zero() || nu.rep.is_homogeneous_of(k));
    }

    #[test]
    fn jacobi_routes_agree(alpha in 1i64..=10, beta in -10i64..=0, n in 0u64..=8, z in prop::sample::select(vec![frac(0, 1), frac(1, 2), frac(-1, 2), frac(1, 1)])) {
        prop_assume!(beta > -(n as i64) - alpha - 1);
        let p = JacobiParams::ints(alpha, beta, n, z);
        prop_assert_eq!(jacobi_finite_sum(&p).unwrap(), jacobi_hyp(&p).unwrap());
        let at_one = JacobiParams::ints(alpha, beta, n, rat(1));
        prop_assert_eq!(jacobi_hyp(&at_one).unwrap(), quotdeg::exactpoly::binomial(n as i64 + alpha, n as i64));
    }

    #[test]
    fn a_coeff_routes_agree(r in 1i64..=5, d in 1i64..=4, k in 0i64..=4, j in 0i64..=4) {
        prop_assume!(k <= d && j <= d - k);
        prop_assert_eq!(a_coeff_sum(r, d, k, j), a_coeff_jacobi(r, d, k, j).unwrap());
    }

    #[test]
    fn linear_solve_is_sound(cols in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..4), b in prop::collection::vec(-3i64..=3, 4)) {
        let cols: Vec<Vec<Rational>> = cols.iter().map(|c| c.iter().map(|&x| rat(x)).collect()).collect();
        let b: Vec<Rational> = b.iter().map(|&x| rat(x)).collect();
        let dot = |u: &[Rational], v: &[Rational]| -> Rational { u.iter().zip(v).map(|(x, y)| x * y).sum() };
        match solve(&cols, &b) {
            Solution::Solved(x) => {
                for i in 0..4 {
                    let row: Rational = cols.iter().zip(&x).map(|(c, xj)| &c[i] * xj).sum();
                    prop_assert_eq!(&row, &b[i]);
                }
            }
            Solution::Inconsistent(y) => {
                for c in &cols {
                    prop_assert_eq!(dot(&y, c), rat(0));
                }
                prop_assert_ne!(dot(&y, &b), rat(0));
            }
        }
    }

    #[test]
    fn interpolation_roundtrip(c in prop::collection::vec(-20i64..=20, 1..6)) {
        let p = DegreePolynomial::from_ints(&c);
        let deg = c.len() - 1;
        let fitted = DegreePolynomial::fit(deg, |n| Ok(p.eval(&rat(n)))).unwrap();
        prop_assert_eq!(fitted, p);
    }

    #[test]
    fn rational_format_roundtrip(p in -1000i64..1000, q in 1i64..1000) {
        let x = frac(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn schubert_counts_tableaux(r in 2u64..=9, l in 1u64..=4) {
        prop_assume!(l < r);
        prop_assert_eq!(schubert_degree(l, r).unwrap(), syt_count(l as usize, (r - l) as usize));
    }
}
