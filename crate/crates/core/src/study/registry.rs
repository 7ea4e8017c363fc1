//! Named test functions and boundary value problems.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use crate::bvp::{BvpProblem, Homogeneous, RealFn, Robin};
use crate::error::{FcError, Result};

pub type Params = BTreeMap<String, f64>;

pub const FUNCTION_IDS: &[&str] = &["smooth-osc", "abspow", "xsin", "endpoint-pow", "exp-neg-cos", "inv-shift", "const"];
pub const PROBLEM_IDS: &[&str] = &["coskx", "euler-log"];

/// A registered function with its resolved parameters.
#[derive(Clone)]
pub struct TestFunction {
    pub id: String,
    pub params: Params,
    pub formula: String,
    /// Hoelder-type regularity that bounds the attainable rate, when finite.
    pub regularity: Option<f64>,
    pub f: RealFn,
}

impl TestFunction {
    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }
}

/// Parses `k=v` pairs.
pub fn parse_params<S: AsRef<str>>(pairs: &[S]) -> Result<Params> {
    let mut out = Params::new();
    for p in pairs {
        let p = p.as_ref();
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| FcError::Parse(format!("expected key=value, got '{p}'")))?;
        let v = parse_value(v.trim())?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

/// A real number or a fraction `p/q`.
fn parse_value(s: &str) -> Result<f64> {
    let bad = || FcError::Parse(format!("bad number '{s}'"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            Ok(p / q)
        }
        None => s.parse().map_err(|_| bad()),
    }
}

fn resolve(id: &str, given: &Params, defaults: &[(&str, f64)]) -> Result<Params> {
    let mut out: Params = defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    for (k, v) in given {
        if !out.contains_key(k) {
            return Err(FcError::Parse(format!("'{id}' has no parameter '{k}'")));
        }
        out.insert(k.clone(), *v);
    }
    Ok(out)
}

pub fn function_registry(id: &str, params: &Params) -> Result<TestFunction> {
    let (params, formula, regularity, f): (Params, String, Option<f64>, RealFn) = match id {
        "smooth-osc" => {
            let p = resolve(id, params, &[])?;
            let f: RealFn = Arc::new(|x: f64| ((65.5 * PI * x - 27.0 * PI).sin() - (20.6 * PI * x).cos()).exp());
            (p, "exp(sin(65.5 pi x - 27 pi) - cos(20.6 pi x))".into(), None, f)
        }
        "abspow" => {
            let p = resolve(id, params, &[("p", 3.5)])?;
            let e = p["p"];
            (p, format!("|x - 1/2|^{e}"), Some(e), Arc::new(move |x: f64| (x - 0.5).abs().powf(e)))
        }
        "xsin" => {
            let p = resolve(id, params, &[("alpha", 1.7)])?;
            let a = p["alpha"];
            // The removable singularity is filled with its limit.
            let f: RealFn = Arc::new(move |x: f64| if x == 0.0 { 0.0 } else { x.powf(a) * (1.0 / x).sin() });
            (p, format!("x^{a} sin(1/x), f(0) = 0"), Some(a - 1.0), f)
        }
        "endpoint-pow" => {
            let p = resolve(id, params, &[("beta", 0.4)])?;
            let e = 3.0 + p["beta"];
            (p, format!("(1 - x)^{e}"), Some(e), Arc::new(move |x: f64| (1.0 - x).max(0.0).powf(e)))
        }
        "exp-neg-cos" => {
            let p = resolve(id, params, &[("k", 200.0)])?;
            let k = p["k"];
            (p, format!("exp(-cos({k} x))"), None, Arc::new(move |x: f64| (-(k * x).cos()).exp()))
        }
        "inv-shift" => {
            let p = resolve(id, params, &[("eps", 0.02)])?;
            let eps = p["eps"];
            if eps <= 0.0 {
                return Err(FcError::Parse("eps must be positive".into()));
            }
            (p, format!("1/(x + {eps})"), None, Arc::new(move |x: f64| 1.0 / (x + eps)))
        }
        "const" => {
            let p = resolve(id, params, &[("value", 1.0)])?;
            let v = p["value"];
            (p, format!("{v}"), None, Arc::new(move |_| v))
        }
        _ => return Err(FcError::UnknownFunction(id.to_string())),
    };
    Ok(TestFunction {
        id: id.to_string(),
        params,
        formula,
        regularity,
        f,
    })
}

/// A registered BVP in the form `u'' + P u' + Q u + R = 0`.
#[derive(Clone)]
pub struct RegisteredProblem {
    pub id: String,
    pub params: Params,
    /// How the textbook form maps onto `P`, `Q`, `R`.
    pub conversion: String,
    pub problem: BvpProblem,
}

/// Solves `[[a, b], [c, d]] (x, y) = (e, f)`.
fn solve2(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> (f64, f64) {
    let det = a * d - b * c;
    ((e * d - b * f) / det, (a * f - c * e) / det)
}

/// `-lambda u'' + u = cos(k x)`, `u(0) = u(1) = 0`.
pub fn coskx_problem(lambda: f64, k: f64) -> Result<BvpProblem> {
    if lambda <= 0.0 {
        return Err(FcError::Parse("lambda must be positive".into()));
    }
    let s = 1.0 / lambda.sqrt();
    let amp = 1.0 / (1.0 + lambda * k * k);
    // u = amp cos(kx) + A e^{sx} + B e^{-sx}
    let (ca, cb) = solve2(1.0, 1.0, s.exp(), (-s).exp(), -amp, -amp * k.cos());
    Ok(BvpProblem {
        p: Arc::new(|_| 0.0),
        q: Arc::new(move |_| -1.0 / lambda),
        r: Arc::new(move |x| (k * x).cos() / lambda),
        left: Robin::dirichlet(0.0),
        right: Robin::dirichlet(0.0),
        h1: Homogeneous::new(move |x| (s * x).exp(), move |x| s * (s * x).exp()),
        h2: Homogeneous::new(move |x| (-s * x).exp(), move |x| -s * (-s * x).exp()),
        exact_solution: Some(Arc::new(move |x| amp * (k * x).cos() + ca * (s * x).exp() + cb * (-s * x).exp())),
    })
}

/// `(x+eps)^2 u'' + 2 (x+eps) u' - 2 u = sin(log(x+eps))`, `u(0) = 1`, `u(1) = 2`.
pub fn euler_log_problem(eps: f64) -> Result<BvpProblem> {
    if eps <= 0.0 {
        return Err(FcError::Parse("eps must be positive".into()));
    }
    let up = move |x: f64| {
        let l = (x + eps).ln();
        -(3.0 * l.sin() + l.cos()) / 10.0
    };
    // u = up + C1 (x+eps) + C2 (x+eps)^{-2}
    let (c1, c2) = solve2(eps, eps.powi(-2), 1.0 + eps, (1.0 + eps).powi(-2), 1.0 - up(0.0), 2.0 - up(1.0));
    Ok(BvpProblem {
        p: Arc::new(move |x| 2.0 / (x + eps)),
        q: Arc::new(move |x| -2.0 / (x + eps).powi(2)),
        r: Arc::new(move |x| -(x + eps).ln().sin() / (x + eps).powi(2)),
        left: Robin::dirichlet(1.0),
        right: Robin::dirichlet(2.0),
        h1: Homogeneous::new(move |x| x + eps, |_| 1.0),
        h2: Homogeneous::new(move |x| (x + eps).powi(-2), move |x| -2.0 * (x + eps).powi(-3)),
        exact_solution: Some(Arc::new(move |x| up(x) + c1 * (x + eps) + c2 * (x + eps).powi(-2))),
    })
}

pub fn problem_registry(id: &str, params: &Params) -> Result<RegisteredProblem> {
    let (params, conversion, problem) = match id {
        "coskx" => {
            let p = resolve(id, params, &[("lambda", 0.1), ("k", 100.0)])?;
            let prob = coskx_problem(p["lambda"], p["k"])?;
            (p, "-lambda u'' + u = cos(kx)  ->  P = 0, Q = -1/lambda, R = cos(kx)/lambda".to_string(), prob)
        }
        "euler-log" => {
            let p = resolve(id, params, &[("eps", 0.02)])?;
            let prob = euler_log_problem(p["eps"])?;
            (
                p,
                "(x+eps)^2 u'' + 2(x+eps) u' - 2u = sin(log(x+eps))  ->  P = 2/(x+eps), Q = -2/(x+eps)^2, R = -sin(log(x+eps))/(x+eps)^2"
                    .to_string(),
                prob,
            )
        }
        _ => return Err(FcError::UnknownProblem(id.to_string())),
    };
    Ok(RegisteredProblem {
        id: id.to_string(),
        params,
        conversion,
        problem,
    })
}
