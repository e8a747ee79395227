//! Pluecker degree of the Quot scheme of length-two quotients, and the
//! classes `mu^2_k`, `delta^2_k` on `S^(2)`.
//!
//! Three pipelines compute `deg w^2`:
//! * `formula`: the closed expression in Segre classes of `S` and `E (x) L`
//!   with the Jacobi-type coefficients `a_j`;
//! * `projbundle`: the same sum written through `I_m = int zeta^{p-m} s_m(P(E (x) L))`;
//! * `geometric`: the Hilbert-square integral over `P(E)^[2]` of `c_1(L(1)^[2])^{2p}`.

use num_traits::Zero;

use crate::exactpoly::{binomial, pow_i, rat, sign, Rational, TruncPoly};
use crate::hilb2::{hilb2_degree, pair_power_pushforward, PairPushforwardRequest};
use crate::jacobi::a_coeff;
use crate::polynomial::DegreePolynomial;
use crate::symquot::{
    diagonal_membership, integrate_sym, leading_term, nu_class, symmetric_divisor, Certificate,
    SymClassRep,
};
use crate::varieties::{
    diagonal_class, integrate, segre_scheme, segre_total, Divisor, Space, SplitBundle,
};
use crate::{Error, Result};

/// The data `(S, E, L)` with `S` a product of projective spaces.
#[derive(Clone, Debug)]
pub struct Quot2Instance {
    pub space: Space,
    pub bundle: SplitBundle,
    pub lc1: Divisor,
}

impl Quot2Instance {
    pub fn new(dims: &[u32], bundle: SplitBundle, lc1: Divisor) -> Result<Self> {
        let space = Space::projective_product(dims)?;
        if space.dim() == 0 {
            return Err(Error::Domain("S must have positive dimension".into()));
        }
        if bundle.nvars() != space.nvars() || lc1.len() != space.nvars() {
            return Err(Error::Domain("bundle or divisor does not live on S".into()));
        }
        Ok(Quot2Instance { space, bundle, lc1 })
    }

    pub fn d(&self) -> u32 {
        self.space.dim()
    }

    pub fn r(&self) -> u32 {
        self.bundle.rank() as u32
    }

    pub fn p(&self) -> u32 {
        self.r() - 1 + self.d()
    }

    /// `E (x) L`.
    pub fn twisted(&self) -> Result<SplitBundle> {
        self.bundle.twist(&self.lc1)
    }
}

/// `L = twist + n H`: an instance for every integer `n`.
#[derive(Clone, Debug)]
pub struct Quot2Family {
    pub dims: Vec<u32>,
    pub bundle: SplitBundle,
    pub twist: Divisor,
    pub polarization: Divisor,
}

impl Quot2Family {
    /// `H` defaults to the sum of the hyperplane classes.
    pub fn new(
        dims: &[u32],
        bundle: SplitBundle,
        twist: Divisor,
        polarization: Option<Divisor>,
    ) -> Self {
        let polarization = polarization.unwrap_or_else(|| Divisor::uniform(dims.len(), 1));
        Quot2Family {
            dims: dims.to_vec(),
            bundle,
            twist,
            polarization,
        }
    }

    pub fn at(&self, n: i64) -> Result<Quot2Instance> {
        let lc1 = self.twist.add(&self.polarization.scale(&rat(n)))?;
        Quot2Instance::new(&self.dims, self.bundle.clone(), lc1)
    }
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// Closed form
/// `(1/2) C(2p,p) (int s_d(F))^2 - 2^{p-1} sum_k int s_k(S) J_{d-k}(F)`, `F = E (x) L`.
pub fn degree2_formula(inst: &Quot2Instance) -> Result<Rational> {
    let s = &inst.space;
    let (d, r, p) = (inst.d() as i64, inst.r() as i64, inst.p() as i64);
    let sf = segre_total(s.ring(), &inst.twisted()?)?;
    let ss = segre_scheme(s);
    let sd = sf.top_coefficient();
    let mut sum = Rational::zero();
    for k in 0..=d {
        let mut j_class = TruncPoly::zero(s.ring());
        for j in 0..=d - k {
            let a = a_coeff(r, d, k, j)?;
            j_class = &j_class + &(&sf.part((d - k - j) as u32) * &sf.part(j as u32)).scale(&a);
        }
        sum += integrate(s, &(&ss.part(k as u32) * &j_class))?;
    }
    Ok(half() * binomial(2 * p, p) * &sd * &sd - pow_i(&rat(2), p - 1) * sum)
}

/// `I_m` from the Segre classes of `S` and `F`; the inner sum must vanish for `k > m`.
fn i_closed(inst: &Quot2Instance, m: i64) -> Result<Rational> {
    let s = &inst.space;
    let (d, r) = (inst.d() as i64, inst.r() as i64);
    let sf = segre_total(s.ring(), &inst.twisted()?)?;
    let ss = segre_scheme(s);
    let mut total = Rational::zero();
    for k in 0..=d {
        let mut inner = TruncPoly::zero(s.ring());
        for j in 0..=d - k {
            let c = sign(j) * binomial(r - 1 + m - k, m - d + j);
            inner = &inner + &(&sf.part((d - k - j) as u32) * &sf.part(j as u32)).scale(&c);
        }
        if k > m && !inner.is_zero() {
            return Err(Error::CrossCheck(format!(
                "inner sum of I_{m} is nonzero at k = {k}"
            )));
        }
        total += sign(m + k) * integrate(s, &(&ss.part(k as u32) * &inner))?;
    }
    Ok(total)
}

/// `I_m = int_{P(F)} zeta^{p-m} s_m(P(F))` evaluated on the bundle's Chow ring.
fn i_direct(x: &Space, m: u32, p: u32) -> Result<Rational> {
    let z = x.zeta()?;
    integrate(x, &(&z.pow(p - m) * &segre_scheme(x).part(m)))
}

/// `(1/2) C(2p,p) I_0^2 - 2^{p-1} sum_m C(2p,p+m) 2^{-m} I_m`, each `I_m` checked both ways.
pub fn degree2_projbundle(inst: &Quot2Instance) -> Result<Rational> {
    let p = inst.p();
    let pi = p as i64;
    let f = inst.twisted()?;
    let x = Space::projective_bundle(inst.space.base_dims(), &f)?;
    let mut is = Vec::with_capacity(p as usize + 1);
    for m in 0..=p {
        let closed = i_closed(inst, m as i64)?;
        let direct = i_direct(&x, m, p)?;
        if closed != direct {
            return Err(Error::CrossCheck(format!(
                "I_{m}: closed form {closed} != direct {direct}"
            )));
        }
        is.push(closed);
    }
    let sd = segre_total(inst.space.ring(), &f)?.top_coefficient();
    if is[0] != sign(inst.d() as i64) * &sd {
        return Err(Error::CrossCheck("I_0 != (-1)^d int s_d(E (x) L)".into()));
    }
    let mut sum = Rational::zero();
    for (m, im) in is.iter().enumerate() {
        let m = m as i64;
        sum += binomial(2 * pi, pi + m) * pow_i(&rat(2), -m) * im;
    }
    Ok(half() * binomial(2 * pi, pi) * &is[0] * &is[0] - pow_i(&rat(2), pi - 1) * sum)
}

/// `int_{P(E)^[2]} c_1(L(1)^[2])^{2p}`.
pub fn degree2_geometric(inst: &Quot2Instance) -> Result<Rational> {
    let x = Space::projective_bundle(inst.space.base_dims(), &inst.bundle)?;
    let m = &x.divisor(&inst.lc1)? + &x.zeta()?;
    hilb2_degree(&x, &m)
}

/// Which pipelines to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Pipeline {
    #[default]
    All,
    Formula,
    Projbundle,
    Geometric,
}

impl std::str::FromStr for Pipeline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Pipeline::All),
            "formula" => Ok(Pipeline::Formula),
            "projbundle" => Ok(Pipeline::Projbundle),
            "geometric" => Ok(Pipeline::Geometric),
            other => Err(Error::Parse(format!("unknown pipeline {other:?}"))),
        }
    }
}

/// Values of the pipelines that were run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree2Report {
    pub formula: Option<Rational>,
    pub projbundle: Option<Rational>,
    pub geometric: Option<Rational>,
}

impl Degree2Report {
    fn values(&self) -> impl Iterator<Item = &Rational> {
        [&self.formula, &self.projbundle, &self.geometric]
            .into_iter()
            .flatten()
    }

    pub fn agree(&self) -> bool {
        let mut it = self.values();
        match it.next() {
            Some(first) => it.all(|v| v == first),
            None => false,
        }
    }

    /// The common value, or a cross-check error listing all values.
    pub fn value(&self) -> Result<Rational> {
        if !self.agree() {
            return Err(Error::CrossCheck(format!(
                "pipelines disagree: formula {:?}, projbundle {:?}, geometric {:?}",
                self.formula.as_ref().map(ToString::to_string),
                self.projbundle.as_ref().map(ToString::to_string),
                self.geometric.as_ref().map(ToString::to_string),
            )));
        }
        Ok(self.values().next().expect("nonempty").clone())
    }
}

/// Runs the requested pipelines concurrently.
pub fn degree2_report(inst: &Quot2Instance, pipeline: Pipeline) -> Result<Degree2Report> {
    let want = |p: Pipeline| pipeline == Pipeline::All || pipeline == p;
    let run =
        |p: Pipeline, f: fn(&Quot2Instance) -> Result<Rational>| -> Result<Option<Rational>> {
            if want(p) {
                f(inst).map(Some)
            } else {
                Ok(None)
            }
        };
    let (formula, (projbundle, geometric)) = rayon::join(
        || run(Pipeline::Formula, degree2_formula),
        || {
            rayon::join(
                || run(Pipeline::Projbundle, degree2_projbundle),
                || run(Pipeline::Geometric, degree2_geometric),
            )
        },
    );
    Ok(Degree2Report {
        formula: formula?,
        projbundle: projbundle?,
        geometric: geometric?,
    })
}

/// `deg w^2`, requiring all selected pipelines to agree.
pub fn degree2(inst: &Quot2Instance, pipeline: Pipeline) -> Result<Rational> {
    degree2_report(inst, pipeline)?.value()
}

/// `C(2p, 2d-j) (1/2) int_{S^2} (H x 1 + 1 x H)^{2d-j} nu^2_j(E (x) twist)`, the
/// predicted coefficient of `n^{2d-j}` for `j < d`.
pub fn nu_predicted_coefficient(fam: &Quot2Family, j: u32) -> Result<Rational> {
    let base = fam.at(0)?;
    let d = base.d();
    if j >= d {
        return Err(Error::Domain(format!(
            "prediction needs j < d = {d}, got {j}"
        )));
    }
    let s = &base.space;
    let nu = nu_class(s, &base.twisted()?, 2, j)?;
    let h = symmetric_divisor(s, s.square_ring(), &fam.polarization)?;
    let rep = SymClassRep {
        rep: &h.pow(2 * d - j) * &nu.rep,
        l: 2,
    };
    Ok(binomial(2 * base.p() as i64, (2 * d - j) as i64) * integrate_sym(s, &rep)?)
}

/// `deg w^2` as a polynomial in `n`, interpolated at `n = 0..=2d`, verified at
/// `n = 2d + 1`, with the coefficients of `n^{2d-j}` (`j < d`) checked against
/// the `nu`-prediction.
pub fn degree2_polynomial(fam: &Quot2Family, pipeline: Pipeline) -> Result<DegreePolynomial> {
    let d = fam.at(0)?.d();
    let poly = DegreePolynomial::fit(2 * d as usize, |n| degree2(&fam.at(n)?, pipeline))?;
    for j in 0..d {
        let predicted = nu_predicted_coefficient(fam, j)?;
        let got = poly.coefficient((2 * d - j) as usize);
        if predicted != got {
            return Err(Error::CrossCheck(format!(
                "coefficient of n^{}: interpolated {got}, nu-predicted {predicted}",
                2 * d - j
            )));
        }
    }
    Ok(poly)
}

/// `(f x f)_*` of the pushed power `N = 2(r-1)+k` of `zeta` from the blow-up of `P(E)^2`.
pub fn mu2_class(s: &Space, e: &SplitBundle, k: u32) -> Result<SymClassRep> {
    if s.bundle().is_some() || e.nvars() != s.nvars() {
        return Err(Error::Domain(
            "S must be a product of projective spaces carrying E".into(),
        ));
    }
    if k > 2 * s.dim() {
        return Err(Error::Domain(format!(
            "need k <= 2 dim S = {}, got {k}",
            2 * s.dim()
        )));
    }
    let x = Space::projective_bundle(s.base_dims(), e)?;
    let n = 2 * (e.rank() as u32 - 1) + k;
    let req = PairPushforwardRequest {
        space: &x,
        divisor: x.zeta()?,
        power: n,
    };
    let pushed = x.pushforward_power(&pair_power_pushforward(&req)?, s.square_ring())?;
    if pushed.permute_blocks(&[1, 0])? != pushed {
        return Err(Error::CrossCheck(
            "mu^2 representative is not swap-symmetric".into(),
        ));
    }
    Ok(SymClassRep { rep: pushed, l: 2 })
}

/// `mu^2_k - nu^2_k`; zero below `dim S`, and certified to come from the diagonal.
pub fn delta2_class(s: &Space, e: &SplitBundle, k: u32) -> Result<SymClassRep> {
    let mu = mu2_class(s, e, k)?;
    let nu = nu_class(s, e, 2, k)?;
    let delta = SymClassRep {
        rep: &mu.rep - &nu.rep,
        l: 2,
    };
    if k < s.dim() && !delta.is_zero() {
        return Err(Error::CrossCheck(format!(
            "delta^2_{k} is nonzero below dim S"
        )));
    }
    if let Certificate::NotMember { .. } = diagonal_membership(s, 2, &delta)? {
        return Err(Error::CrossCheck(format!(
            "delta^2_{k} is not supported on the diagonal"
        )));
    }
    Ok(delta)
}

/// The constant `c` with `delta^2_d = c . 2 Delta_* 1`.
pub fn delta2_constant(s: &Space, e: &SplitBundle) -> Result<Rational> {
    let delta = delta2_class(s, e, s.dim())?;
    let unit = diagonal_class(s).scale(&rat(2));
    let (m, u) = unit
        .terms()
        .iter()
        .next()
        .expect("diagonal class is nonzero");
    let c = delta.rep.coefficient(m) / u;
    if delta.rep != unit.scale(&c) {
        return Err(Error::CrossCheck(
            "delta^2_d is not a multiple of the diagonal".into(),
        ));
    }
    Ok(c)
}

/// `deg w^2` split as leading term plus `int delta^2_{2d}(E (x) L)`; checks the
/// split against `degree` and returns both parts.
pub fn leading_split(inst: &Quot2Instance, degree: &Rational) -> Result<(Rational, Rational)> {
    let s = &inst.space;
    let lead = leading_term(s, &inst.bundle, &inst.lc1, 2)?;
    let delta = integrate_sym(s, &delta2_class(s, &inst.twisted()?, 2 * inst.d())?)?;
    if &(&lead + &delta) != degree {
        return Err(Error::CrossCheck(format!(
            "leading term {lead} + delta integral {delta} != degree {degree}"
        )));
    }
    Ok((lead, delta))
}

/// `int_{S^(2)} mu^2_{2d}(E (x) L)`.
pub fn mu2_top_integral(inst: &Quot2Instance) -> Result<Rational> {
    let s = &inst.space;
    integrate_sym(s, &mu2_class(s, &inst.twisted()?, 2 * inst.d())?)
}

/// `(2(r-1))! / (r-1)!^2`.
pub fn mu2_constant(r: u64) -> Rational {
    crate::symquot::mu0_closed_form(2, r)
}
