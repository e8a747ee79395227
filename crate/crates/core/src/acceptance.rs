//! The acceptance suite, shared by the test target and `quotdeg selftest`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exactpoly::{rat, Rational, TruncPoly};
use crate::grassmann::{catalan_degree, schubert_degree, syt_count};
use crate::hilb2::hilb2_routes_with_segre;
use crate::jacobi::{a_coeff_jacobi, a_coeff_sum, jacobi_finite_sum, jacobi_hyp, JacobiParams};
use crate::localise::{degree_polynomial_localised, plucker_degree_localised};
use crate::polynomial::DegreePolynomial;
use crate::quot2::{
    degree2_polynomial, degree2_report, delta2_class, delta2_constant, leading_split,
    mu2_top_integral, nu_predicted_coefficient, Pipeline, Quot2Family, Quot2Instance,
};
use crate::symquot::{leading_term, mu0_closed_form, mu1_closed_form, nu_class, nu_twist_check};
use crate::varieties::{
    diagonal_class, diagonal_pushforward, euler_number, integrate, segre_scheme, Divisor, Space,
    SplitBundle,
};

type Check = std::result::Result<String, String>;

/// One acceptance criterion.
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub run: fn() -> Check,
}

/// Result of running a criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} criterion {:>2} {:<28} {:>8.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "convention lock",
            run: convention_lock,
        },
        Criterion {
            id: 2,
            name: "pipeline agreement",
            run: pipeline_agreement,
        },
        Criterion {
            id: 3,
            name: "golden polynomials",
            run: golden_polynomials,
        },
        Criterion {
            id: 4,
            name: "localisation oracle",
            run: localisation_oracle,
        },
        Criterion {
            id: 5,
            name: "grassmannian",
            run: grassmannian,
        },
        Criterion {
            id: 6,
            name: "jacobi",
            run: jacobi,
        },
        Criterion {
            id: 7,
            name: "diagonal support",
            run: diagonal_support,
        },
        Criterion {
            id: 8,
            name: "nu laws",
            run: nu_laws,
        },
        Criterion {
            id: 9,
            name: "nu-predicted coefficients",
            run: predicted_coefficients,
        },
        Criterion {
            id: 10,
            name: "engine invariants",
            run: engine_invariants,
        },
    ]
}

/// Runs every criterion whose name or number contains `filter`.
pub fn run_suite(filter: Option<&str>) -> Vec<Outcome> {
    criteria()
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.name.contains(f) || c.id.to_string() == f))
        .map(|c| run_one(&c))
        .collect()
}

pub fn run_one(c: &Criterion) -> Outcome {
    let start = Instant::now();
    let res = (c.run)();
    Outcome {
        id: c.id,
        name: c.name,
        passed: res.is_ok(),
        detail: res.unwrap_or_else(|e| e),
        elapsed: start.elapsed(),
    }
}

fn err<E: std::fmt::Display>(ctx: impl std::fmt::Display) -> impl FnOnce(E) -> String {
    move |e| format!("{ctx}: {e}")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(dims: &[u32]) -> Space {
    Space::projective_product(dims).expect("valid dims")
}

/// Multisets of size `1..=max_rank` drawn from `choices`.
pub fn root_multisets(choices: &[Vec<i64>], max_rank: usize) -> Vec<Vec<Vec<i64>>> {
    fn go(
        choices: &[Vec<i64>],
        start: usize,
        left: usize,
        cur: &mut Vec<Vec<i64>>,
        out: &mut Vec<Vec<Vec<i64>>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..choices.len() {
            cur.push(choices[i].clone());
            go(choices, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(choices, 0, max_rank, &mut Vec::new(), &mut out);
    out
}

fn coefficient_vectors(nvars: usize, values: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|v| values.iter().map(move |&x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

/// `(dims, roots)` for every base and split bundle in the main test matrix.
pub fn bundle_matrix() -> Vec<(Vec<u32>, Vec<Vec<i64>>)> {
    let mut out = Vec::new();
    for dims in [vec![1u32], vec![2], vec![3], vec![1, 1]] {
        for roots in root_multisets(&coefficient_vectors(dims.len(), &[-1, 0, 1, 2]), 3) {
            out.push((dims.clone(), roots));
        }
    }
    out
}

fn instance(
    dims: &[u32],
    roots: &[Vec<i64>],
    n: i64,
) -> std::result::Result<Quot2Instance, String> {
    let e = SplitBundle::from_int_roots(roots).map_err(err("bundle"))?;
    Quot2Instance::new(dims, e, Divisor::uniform(dims.len(), n)).map_err(err("instance"))
}

/// Criterion 1 with a caller-supplied Segre class of `X`; a wrong convention fails it.
pub fn convention_lock_with(segre: impl Fn(&Space) -> TruncPoly) -> Check {
    let p1 = p(&[1]);
    let s = segre(&p1);
    for n in 0..=5i64 {
        let m = p1
            .divisor(&Divisor::from_ints(&[n]))
            .map_err(err("divisor"))?;
        let routes = hilb2_routes_with_segre(&p1, &m, &s).map_err(err("hilb2"))?;
        let want = rat((n - 1) * (n - 1));
        ensure(routes.closed_form == want && routes.blowup == want, || {
            format!(
                "n={n}: closed form {}, blow-up {}, expected {want}",
                routes.closed_form, routes.blowup
            )
        })?;
    }
    Ok("(n-1)^2 for n = 0..5 on both routes".into())
}

fn convention_lock() -> Check {
    convention_lock_with(segre_scheme)
}

fn pipeline_agreement() -> Check {
    let jobs: Vec<_> = bundle_matrix()
        .into_iter()
        .flat_map(|(dims, roots)| (0..=4).map(move |n| (dims.clone(), roots.clone(), n)))
        .collect();
    jobs.par_iter().try_for_each(|(dims, roots, n)| {
        let inst = instance(dims, roots, *n)?;
        let rep = degree2_report(&inst, Pipeline::All)
            .map_err(err(format!("{dims:?} {roots:?} n={n}")))?;
        ensure(rep.agree(), || format!("{dims:?} {roots:?} n={n}: {rep:?}"))?;
        let mu = mu2_top_integral(&inst).map_err(err("mu^2 integral"))?;
        ensure(Some(&mu) == rep.formula.as_ref(), || {
            format!("{dims:?} {roots:?} n={n}: mu^2 integral {mu} != degree")
        })
    })?;
    ensure(jobs.len() >= 300, || {
        format!("only {} instances", jobs.len())
    })?;
    Ok(format!(
        "{} instances, three pipelines and the mu^2 integral agree",
        jobs.len()
    ))
}

fn golden_polynomials() -> Check {
    let cases: [(&[u32], usize, &[i64]); 3] = [
        (&[1], 1, &[1, -2, 1]),
        (&[1], 2, &[6, -16, 12]),
        (&[2], 1, &[-3, 12, -12, 0, 3]),
    ];
    for (dims, r, want) in cases {
        let fam = Quot2Family::new(dims, SplitBundle::trivial(r, 1), Divisor::zero(1), None);
        let got = degree2_polynomial(&fam, Pipeline::All).map_err(err("degree2_polynomial"))?;
        ensure(got == DegreePolynomial::from_ints(want), || {
            format!(
                "P^{dims:?}, rank {r}: got {:?}, want {want:?}",
                got.to_strings()
            )
        })?;
    }
    Ok("3 polynomials exact".into())
}

fn localisation_oracle() -> Check {
    let bundles = root_multisets(&[vec![-1], vec![0], vec![1]], 3);
    bundles
        .par_iter()
        .try_for_each(|roots| -> std::result::Result<(), String> {
            let a: Vec<i64> = roots.iter().map(|v| v[0]).collect();
            let local =
                degree_polynomial_localised(&a, 2, 0).map_err(err(format!("localise {a:?}")))?;
            let fam = Quot2Family::new(
                &[1],
                SplitBundle::from_int_roots(roots).map_err(err("bundle"))?,
                Divisor::zero(1),
                None,
            );
            let quot =
                degree2_polynomial(&fam, Pipeline::All).map_err(err(format!("quot2 {a:?}")))?;
            ensure(local == quot, || {
                format!(
                    "{a:?}: localised {:?} vs {:?}",
                    local.to_strings(),
                    quot.to_strings()
                )
            })?;
            let base = plucker_degree_localised(&a, 2, 3, 0).map_err(err("localise"))?;
            for m in 1..=2 {
                let shifted: Vec<i64> = a.iter().map(|x| x + m).collect();
                let v = plucker_degree_localised(&shifted, 2, 3 - m, 0).map_err(err("localise"))?;
                ensure(v == base, || {
                    format!("{a:?}: twist by {m} changes {base} to {v}")
                })?;
            }
            Ok(())
        })?;
    Ok(format!(
        "{} bundles, polynomials equal, twist-invariant",
        bundles.len()
    ))
}

fn grassmannian() -> Check {
    let mut count = 0;
    for r in 2..=12u64 {
        for l in 1..=4u64.min(r - 1) {
            let s = schubert_degree(l, r).map_err(err("schubert"))?;
            ensure(s == syt_count(l as usize, (r - l) as usize), || {
                format!("l={l}, r={r}: {s} vs tableaux")
            })?;
            ensure(
                s == schubert_degree(r - l, r).map_err(err("schubert"))?,
                || format!("duality fails at l={l}, r={r}"),
            )?;
            count += 1;
        }
    }
    for r in 3..=20u64 {
        ensure(catalan_degree(r).ok() == schubert_degree(2, r).ok(), || {
            format!("Catalan mismatch at r={r}")
        })?;
    }
    Ok(format!(
        "{count} Schubert degrees match tableaux; Catalan r <= 20"
    ))
}

fn jacobi() -> Check {
    let zs = [
        rat(0),
        Rational::new(1.into(), 2.into()),
        Rational::new((-1).into(), 2.into()),
        rat(1),
        rat(-1),
    ];
    let mut count = 0;
    for alpha in 1..=10i64 {
        for beta in -10..=0i64 {
            for n in 0..=8u64 {
                if beta <= -(n as i64) - alpha - 1 {
                    continue;
                }
                for z in &zs {
                    let params = JacobiParams::ints(alpha, beta, n, z.clone());
                    let fin = jacobi_finite_sum(&params).map_err(err("finite sum"))?;
                    let hyp = jacobi_hyp(&params).map_err(err("hypergeometric"))?;
                    ensure(fin == hyp, || {
                        format!("alpha={alpha} beta={beta} n={n} z={z}: {fin} vs {hyp}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    for r in 1..=5i64 {
        for d in 1..=4i64 {
            for k in 0..=d {
                for j in 0..=d - k {
                    let a = a_coeff_sum(r, d, k, j);
                    let b = a_coeff_jacobi(r, d, k, j).map_err(err("a_coeff"))?;
                    ensure(a == b, || {
                        format!("a_coeff r={r} d={d} k={k} j={j}: {a} vs {b}")
                    })?;
                }
            }
        }
    }
    Ok(format!("{count} grid points; a_coeff routes agree"))
}

fn diagonal_support() -> Check {
    let constants: Vec<String> = bundle_matrix()
        .par_iter()
        .map(|(dims, roots)| -> std::result::Result<String, String> {
            let ctx = format!("{dims:?} {roots:?}");
            let s = p(dims);
            let e = SplitBundle::from_int_roots(roots).map_err(err("bundle"))?;
            for k in 0..=2 * s.dim() {
                delta2_class(&s, &e, k).map_err(err(format!("{ctx} k={k}")))?;
            }
            let c = delta2_constant(&s, &e).map_err(err(format!("{ctx} constant")))?;
            for n in 0..=4 {
                let inst = instance(dims, roots, n)?;
                let degree = degree2_report(&inst, Pipeline::Formula)
                    .and_then(|r| r.value())
                    .map_err(err(&ctx))?;
                leading_split(&inst, &degree).map_err(err(format!("{ctx} n={n}")))?;
            }
            Ok(c.to_string())
        })
        .collect::<std::result::Result<_, _>>()?;
    let mut distinct = constants.clone();
    distinct.sort();
    distinct.dedup();
    Ok(format!(
        "{} bundles certified; {} distinct diagonal constants",
        constants.len(),
        distinct.len()
    ))
}

fn nu_laws() -> Check {
    for dims in [[2u32], [3]] {
        let s = p(&dims);
        for r in 1..=4usize {
            let roots: Vec<Vec<i64>> = (0..r).map(|i| vec![i as i64 - 1]).collect();
            let e = SplitBundle::from_int_roots(&roots).map_err(err("bundle"))?;
            for l in 1..=4usize {
                let ring = s.power_ring(l).map_err(err("power ring"))?;
                let nu0 = nu_class(&s, &e, l, 0).map_err(err("nu_0"))?;
                let want0 = TruncPoly::constant(&ring, mu0_closed_form(l as u64, r as u64));
                ensure(nu0.rep == want0, || {
                    format!("nu^{l}_0 on P^{dims:?}, r={r}")
                })?;
                let nu1 = nu_class(&s, &e, l, 1).map_err(err("nu_1"))?;
                let want1 = mu1_closed_form(&s, &e, l).map_err(err("closed form"))?;
                ensure(nu1 == want1, || format!("nu^{l}_1 on P^{dims:?}, r={r}"))?;
                let triv = SplitBundle::trivial(r, 1);
                for k in 1..=(l as u32 * s.dim()).min(3) {
                    let z = nu_class(&s, &triv, l, k).map_err(err("nu"))?;
                    ensure(z.is_zero(), || format!("nu^{l}_{k}(O^{r}) != 0"))?;
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for trial in 0..50 {
        let dims: &[u32] = if trial % 2 == 0 { &[1] } else { &[2] };
        let s = p(dims);
        let r = rng.gen_range(1..=3usize);
        let roots: Vec<Vec<i64>> = (0..r).map(|_| vec![rng.gen_range(-2..=2)]).collect();
        let e = SplitBundle::from_int_roots(&roots).map_err(err("bundle"))?;
        let l = rng.gen_range(1..=3usize);
        let k = rng.gen_range(0..=l as u32 * s.dim());
        let lc1 = Divisor::from_ints(&[rng.gen_range(-3..=3)]);
        nu_twist_check(&s, &e, &lc1, l, k).map_err(err(format!("trial {trial}")))?;
    }

    for (dims, roots) in bundle_matrix()
        .into_iter()
        .filter(|(d, r)| d.len() == 1 && d[0] <= 2 && r.len() <= 2)
    {
        let s = p(&dims);
        let e = SplitBundle::from_int_roots(&roots).map_err(err("bundle"))?;
        for l in 1..=3 {
            leading_term(&s, &e, &Divisor::from_ints(&[2]), l)
                .map_err(err(format!("{dims:?} {roots:?} l={l}")))?;
        }
    }
    Ok(
        "closed forms for nu_0, nu_1; trivial vanishing; 50 twisting identities; leading terms"
            .into(),
    )
}

fn predicted_coefficients() -> Check {
    let mut count = 0;
    for (dims, roots) in bundle_matrix()
        .into_iter()
        .filter(|(d, r)| d.iter().sum::<u32>() == 2 && r.len() <= 2)
    {
        let e = SplitBundle::from_int_roots(&roots).map_err(err("bundle"))?;
        let fam = Quot2Family::new(&dims, e, Divisor::zero(dims.len()), None);
        let poly = degree2_polynomial(&fam, Pipeline::Formula)
            .map_err(err(format!("{dims:?} {roots:?}")))?;
        let predicted = nu_predicted_coefficient(&fam, 0).map_err(err("prediction"))?;
        ensure(poly.coefficient(4) == predicted, || {
            format!("{dims:?} {roots:?}: n^4 coefficient")
        })?;
        count += 1;
    }
    Ok(format!("{count} surface instances"))
}

fn random_class(
    ring: &std::sync::Arc<crate::exactpoly::RingDescriptor>,
    rng: &mut ChaCha8Rng,
    unit: bool,
) -> TruncPoly {
    let mut terms = Vec::new();
    for k in 0..=ring.dim() {
        for m in ring.monomials_of_degree(k) {
            if rng.gen_bool(0.5) {
                terms.push((m, rat(rng.gen_range(-4..=4))));
            }
        }
    }
    let mut a = TruncPoly::from_terms(ring, terms);
    if unit {
        a = &(&a - &TruncPoly::constant(ring, a.constant_term())) + &TruncPoly::one(ring);
    }
    a
}

fn engine_invariants() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut spaces = vec![p(&[1]), p(&[2]), p(&[3]), p(&[1, 1]), p(&[1, 2])];
    for roots in [
        vec![vec![0], vec![0]],
        vec![vec![1], vec![-1]],
        vec![vec![0], vec![1], vec![2]],
    ] {
        let e = SplitBundle::from_int_roots(&roots).map_err(err("bundle"))?;
        spaces.push(Space::projective_bundle(&[1], &e).map_err(err("bundle space"))?);
        spaces.push(Space::projective_bundle(&[2], &e).map_err(err("bundle space"))?);
    }
    for x in &spaces {
        let ring = x.ring();
        for _ in 0..5 {
            let (a, b, c) = (
                random_class(ring, &mut rng, false),
                random_class(ring, &mut rng, false),
                random_class(ring, &mut rng, false),
            );
            ensure(&(&a * &b) * &c == &a * &(&b * &c), || {
                format!("associativity on {ring}")
            })?;
            ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || {
                format!("distributivity on {ring}")
            })?;
            ensure(&a * &b == &b * &a, || format!("commutativity on {ring}"))?;
            let u = random_class(ring, &mut rng, true);
            let inv = u.series_inverse().map_err(err("inverse"))?;
            ensure((&u * &inv) == TruncPoly::one(ring), || {
                format!("series inverse on {ring}")
            })?;
            let lhs = integrate(x, &(&b * &a)).map_err(err("integrate"))?;
            let pushed = diagonal_pushforward(x, &a).map_err(err("pushforward"))?;
            let b1 = b.insert_block(x.square_ring(), 1).map_err(err("insert"))?;
            ensure((&pushed * &b1).top_coefficient() == lhs, || {
                format!("projection formula on {ring}")
            })?;
        }
        let diag = diagonal_class(x);
        ensure(
            diag.permute_blocks(&[1, 0]).map_err(err("swap"))? == diag,
            || format!("diagonal of {ring} not symmetric"),
        )?;
        let self_int = (&diag * &diag).top_coefficient();
        ensure(self_int == euler_number(x), || {
            format!("{ring}: Delta^2 = {self_int}, Euler {}", euler_number(x))
        })?;
    }
    Ok(format!("{} spaces", spaces.len()))
}
