use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use quotdeg::acceptance::{convention_lock_with, run_suite, Outcome};
use quotdeg::exactpoly::{format_rational, parse_rational, Rational};
use quotdeg::grassmann::{schubert_degree, syt_count};
use quotdeg::hilb2::hilb2_routes_with_segre;
use quotdeg::jacobi::{jacobi_hyp, JacobiParams};
use quotdeg::localise::{degree_polynomial_localised, plucker_degree_localised};
use quotdeg::polynomial::DegreePolynomial;
use quotdeg::quot2::{
    degree2_polynomial, degree2_report, delta2_class, delta2_constant, mu2_class, Pipeline,
};
use quotdeg::schema::InstanceFile;
use quotdeg::symquot::{
    beauville_k3, diagonal_membership, integrate_sym, leading_term, mu_p1_coeffs, multint,
    nu_class, Certificate, MuSource, SymClassRep,
};
use quotdeg::varieties::{segre_scheme, tangent_chern, Divisor, Space, SplitBundle};
use quotdeg::{Error, Result};

#[derive(Parser)]
#[command(
    name = "quotdeg",
    version,
    about = "Exact Pluecker degrees of Quot schemes of points"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn rational(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// `a,b;c,d`: a list of integer vectors.
#[derive(Clone, Debug)]
struct Rows(Vec<Vec<i64>>);

fn int_rows(s: &str) -> std::result::Result<Rows, String> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}")))
                .collect()
        })
        .collect::<std::result::Result<_, _>>()
        .map(Rows)
}

#[derive(Subcommand)]
enum Command {
    /// Pluecker degree of the length-two Quot scheme.
    Degree2 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        #[arg(long, default_value = "all")]
        pipeline: String,
        /// Report the degree as a polynomial in `n`.
        #[arg(long)]
        polynomial: bool,
        /// CSV table over a range such as `n=0..8` (inclusive).
        #[arg(long)]
        sweep: Option<String>,
    },
    /// Top self-intersection of c_1(M^[2]) on the Hilbert square of X.
    Hilb2 {
        #[arg(long, value_delimiter = ',')]
        dims: Vec<u32>,
        /// Roots of E as `a,b;c,d`; X is then P(E).
        #[arg(long, value_parser = int_rows, allow_hyphen_values = true)]
        roots: Option<Rows>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        divisor: Vec<i64>,
        /// Coefficient of zeta in M when X is a projective bundle.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        zeta: i64,
    },
    /// Representative of nu^l_k(E).
    Nu {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        k: u32,
    },
    /// Representative of mu^2_k(E).
    Mu2 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// delta^2_k(E) with its diagonal certificate, or the constant at k = dim S.
    Delta2 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Leading term of deg w^l.
    Leading {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
    },
    /// Multilinear integral over the divisors listed in the instance file.
    Multint {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        l: Option<usize>,
        /// Use nu^l_k in place of mu^l_k (valid only for k < dim S).
        #[arg(long)]
        nu_below_dimension: bool,
    },
    /// Degree of the Grassmannian of l-quotients of C^r.
    Grassmann {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        r: u64,
        /// Also count standard tableaux.
        #[arg(long)]
        oracle: bool,
    },
    /// Jacobi polynomial value.
    Jacobi {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        beta: Rational,
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        z: Rational,
    },
    /// Torus localisation on Quot schemes of P^1.
    Localise {
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        roots: Vec<i64>,
        #[arg(long)]
        l: u32,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        #[arg(long)]
        polynomial: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Beauville's K3 evaluation.
    Beauville {
        #[arg(long)]
        l: u64,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        c1sq: Rational,
    },
    /// mu^l_k coefficients on P^1 from a degree polynomial.
    MuP1Coeffs {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        l: u64,
        /// Coefficients in increasing powers of n.
        #[arg(long, value_delimiter = ',', value_parser = rational, allow_hyphen_values = true)]
        poly: Vec<Rational>,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long)]
        filter: Option<String>,
        /// Run the convention lock with a deliberately wrong Segre class.
        #[arg(long, hide = true)]
        corrupt_convention: bool,
    },
}

enum Output {
    Json(Value),
    Csv(String),
    Report(Value, bool),
}

fn s(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

fn strings(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(s).collect())
}

fn load(path: &PathBuf) -> Result<InstanceFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    InstanceFile::parse(&text)
}

fn need<T>(v: Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("missing {what} (flag or instance field)")))
}

fn class_json(rep: &SymClassRep) -> Value {
    rep.rep.to_json()
}

fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::Member {
            basis,
            coefficients,
        } => json!({
            "member": true,
            "basis": basis,
            "coefficients": strings(coefficients),
        }),
        Certificate::NotMember { witness } => json!({
            "member": false,
            "witness": witness.iter().map(|(m, c)| json!([m, format_rational(c)])).collect::<Vec<_>>(),
        }),
    }
}

fn parse_sweep(spec: &str) -> Result<(i64, i64)> {
    let range = spec
        .strip_prefix("n=")
        .ok_or_else(|| Error::Parse(format!("sweep must look like n=A..B, got {spec:?}")))?;
    let (a, b) = range
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("sweep must look like n=A..B, got {spec:?}")))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("{x:?}: {e}")))
    };
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(Error::Parse(format!("empty sweep {spec:?}")));
    }
    Ok((a, b))
}

fn selftest_report(outcomes: &[Outcome]) -> (Value, bool) {
    let passed = outcomes.iter().all(|o| o.passed);
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "id": o.id,
                "name": o.name,
                "status": if o.passed { "pass" } else { "fail" },
                "runtime_ms": o.elapsed.as_millis() as u64,
                "detail": o.detail,
            })
        })
        .collect();
    (json!({"criteria": rows, "passed": passed}), passed)
}

fn run(cmd: Command) -> Result<Output> {
    Ok(match cmd {
        Command::Degree2 {
            input,
            n,
            pipeline,
            polynomial,
            sweep,
        } => {
            let file = load(&input)?;
            let pipeline: Pipeline = pipeline.parse()?;
            if let Some(spec) = sweep {
                let (a, b) = parse_sweep(&spec)?;
                let fam = file.family()?;
                let rows: Vec<Result<String>> = {
                    use rayon::prelude::*;
                    (a..=b)
                        .into_par_iter()
                        .map(|n| {
                            let v = degree2_report(&fam.at(n)?, pipeline)?.value()?;
                            Ok(format!("{n},{}", format_rational(&v)))
                        })
                        .collect()
                };
                let mut out = String::from("n,degree\n");
                for row in rows {
                    out.push_str(&row?);
                    out.push('\n');
                }
                Output::Csv(out)
            } else if polynomial {
                let poly = degree2_polynomial(&file.family()?, pipeline)?;
                Output::Json(json!({"coefficients": poly.to_strings(), "pipelines_agree": true}))
            } else {
                let rep = degree2_report(&file.instance(n)?, pipeline)?;
                let value = rep.value()?;
                Output::Json(json!({"degree": s(&value), "pipelines_agree": rep.agree()}))
            }
        }
        Command::Hilb2 {
            dims,
            roots,
            divisor,
            zeta,
        } => {
            let x = match &roots {
                Some(Rows(roots)) => {
                    Space::projective_bundle(&dims, &SplitBundle::from_int_roots(roots)?)?
                }
                None => Space::projective_product(&dims)?,
            };
            let mut m = x.divisor(&Divisor::from_ints(&divisor))?;
            if zeta != 0 {
                m = &m + &x.zeta()?.scale(&quotdeg::exactpoly::rat(zeta));
            }
            let routes = hilb2_routes_with_segre(&x, &m, &segre_scheme(&x))?;
            if routes.closed_form != routes.blowup {
                return Err(Error::CrossCheck(format!(
                    "closed form {} != blow-up {}",
                    routes.closed_form, routes.blowup
                )));
            }
            Output::Json(json!({"degree": s(&routes.closed_form), "routes_agree": true}))
        }
        Command::Nu { input, l, k } => {
            let file = load(&input)?;
            let space = file.space()?;
            let rep = nu_class(
                &space,
                &file.bundle()?,
                need(l.or(file.l.map(|x| x as usize)), "l")?,
                k,
            )?;
            Output::Json(
                json!({"class": class_json(&rep), "integral": s(&integrate_sym(&space, &rep)?)}),
            )
        }
        Command::Mu2 { input, k } => {
            let file = load(&input)?;
            let space = file.space()?;
            let rep = mu2_class(&space, &file.bundle()?, k)?;
            Output::Json(
                json!({"class": class_json(&rep), "integral": s(&integrate_sym(&space, &rep)?)}),
            )
        }
        Command::Delta2 { input, k } => {
            let file = load(&input)?;
            let space = file.space()?;
            let e = file.bundle()?;
            match k {
                Some(k) => {
                    let rep = delta2_class(&space, &e, k)?;
                    let cert = diagonal_membership(&space, 2, &rep)?;
                    Output::Json(
                        json!({"class": class_json(&rep), "certificate": certificate_json(&cert)}),
                    )
                }
                None => Output::Json(json!({"constant": s(&delta2_constant(&space, &e)?)})),
            }
        }
        Command::Leading { input, l, n } => {
            let file = load(&input)?;
            let inst = file.instance(n)?;
            let l = need(l.or(file.l.map(|x| x as usize)), "l")?;
            let v = leading_term(&inst.space, &inst.bundle, &inst.lc1, l)?;
            Output::Json(json!({"leading_term": s(&v)}))
        }
        Command::Multint {
            input,
            l,
            nu_below_dimension,
        } => {
            let file = load(&input)?;
            let l = need(l.or(file.l.map(|x| x as usize)), "l")?;
            let divisors = need(file.divisors(), "divisors")?;
            let source = if nu_below_dimension {
                MuSource::NuBelowDimension
            } else {
                MuSource::Computed
            };
            let e = file.bundle()?.twist(&file.twist()?)?;
            let v = multint(&file.space()?, &e, l, &divisors, source)?;
            Output::Json(json!({"value": s(&v)}))
        }
        Command::Grassmann { l, r, oracle } => {
            let deg = schubert_degree(l, r)?;
            let mut out = json!({"degree": deg.to_string()});
            if oracle {
                let count = syt_count(l as usize, (r - l) as usize);
                if count != deg {
                    return Err(Error::CrossCheck(format!(
                        "Schubert {deg} != tableaux {count}"
                    )));
                }
                out["oracle"] = Value::String(count.to_string());
            }
            Output::Json(out)
        }
        Command::Jacobi { alpha, beta, n, z } => {
            let v = jacobi_hyp(&JacobiParams::new(alpha, beta, n, z))?;
            Output::Json(json!({"value": s(&v)}))
        }
        Command::Localise {
            r,
            roots,
            l,
            n,
            polynomial,
            seed,
        } => {
            if roots.is_empty() {
                return Err(Error::Parse("--roots is required".into()));
            }
            if r.is_some_and(|r| r != roots.len()) {
                return Err(Error::Parse(format!(
                    "--r {} but {} roots",
                    r.unwrap(),
                    roots.len()
                )));
            }
            if polynomial {
                let poly = degree_polynomial_localised(&roots, l, seed)?;
                Output::Json(json!({"coefficients": poly.to_strings()}))
            } else {
                let v = plucker_degree_localised(&roots, l, need(n, "n")?, seed)?;
                Output::Json(json!({"degree": s(&v)}))
            }
        }
        Command::Beauville { l, c1sq } => {
            Output::Json(json!({"value": s(&beauville_k3(l, &c1sq)?)}))
        }
        Command::MuP1Coeffs { r, l, poly } => {
            let a = mu_p1_coeffs(r, l, &DegreePolynomial::new(poly))?;
            Output::Json(json!({"coefficients": strings(&a)}))
        }
        Command::Selftest {
            filter,
            corrupt_convention,
        } => {
            let outcomes = if corrupt_convention {
                let start = std::time::Instant::now();
                let res = convention_lock_with(tangent_chern);
                vec![Outcome {
                    id: 1,
                    name: "convention lock",
                    passed: res.is_ok(),
                    detail: res.unwrap_or_else(|e| e),
                    elapsed: start.elapsed(),
                }]
            } else {
                run_suite(filter.as_deref())
            };
            let (report, passed) = selftest_report(&outcomes);
            Output::Report(report, passed)
        }
    })
}

fn configure_threads() {
    if let Some(n) = std::env::var("QUOTDEG_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            println!("{}", json!({"error": e.to_string().trim()}));
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    configure_threads();
    match run(cli.command) {
        Ok(Output::Json(v)) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Ok(Output::Csv(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(v, passed)) => {
            println!("{v}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            println!("{}", json!({"error": e.to_string()}));
            ExitCode::from(if e.is_cross_check() { 3 } else { 2 })
        }
    }
}
