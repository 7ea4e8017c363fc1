//! Shape functions and blending-to-zero continuations of Gram polynomials.
//!
//! A right shape function `eta_l^R` equals 1 at `x = 1`, vanishes at `x = b`,
//! and is flat at both ends through `d - 1` derivatives. Multiplying it with
//! the extrapolated right Gram polynomial `p_l^R(x) = p_l(2(x-1)/delta + 1)`
//! gives the continuation `p_l^{R,e}`, which matches `p_l^R` to order `d - 1`
//! at `x = 1` and decays to zero at `x = b`. The left counterparts are
//! obtained by reflection `x -> b + 1 - x`.
//!
//! Four families are provided:
//!
//! * [`ShapeFamily::Hermite`]: two-point Hermite blends. No free parameters;
//!   the continuation is a polynomial of degree `2d - 1` and is evaluated
//!   without ever dividing by `p_l^R`.
//! * [`ShapeFamily::Bump`]: `phi(1-t) / (phi(t) + phi(1-t))` with
//!   `phi(t) = exp(-a / t^r)`.
//! * [`ShapeFamily::DoubleExp`]: a plateau on `[0, r1]`, a double-exponential
//!   transition on `(r1, r2)`, and zero on `[r2, 1]`.
//! * [`ShapeFamily::RegBeta`]: two-stage descent `1 -> mu_l -> 0` joined at
//!   `sigma_l`, built from the regularized incomplete Beta function.

use std::fmt;
use std::path::Path;

use num_rational::Ratio;

use crate::error::{FcError, Result};
use crate::grid::FcConfig;
use crate::gram::GramBasis;
use crate::poly;

/// Per-`l` parameters of the regularized-Beta family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParams {
    /// Intermediate level reached at the join point.
    pub mu: f64,
    /// Join point as a fraction of `[1, b]`: `sigma = 1 + sigma_tilde (b - 1)`.
    pub sigma_tilde: f64,
}

/// Default regularized-Beta parameters for `l = 0..5`.
pub const TABLE_SIGMA_TILDE: [f64; 5] = [0.5, 0.6, 0.4, 0.2, 0.1];
pub const TABLE_MU: [f64; 5] = [1e-10, 1e-10, 1e-8, 1e-10, 1e-5];

pub const DEFAULT_BUMP_A: f64 = 1.0;
pub const DEFAULT_BUMP_R: f64 = 2.0;
pub const DEFAULT_DOUBLE_EXP_R1: f64 = 0.2;
pub const DEFAULT_DOUBLE_EXP_R2: f64 = 0.8;

#[derive(Debug, Clone, PartialEq)]
pub enum ShapeFamily {
    Hermite,
    Bump { a: f64, r: f64 },
    DoubleExp { r1: f64, r2: f64 },
    RegBeta { params: Vec<BetaParams> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl ShapeFamily {
    pub fn bump() -> Self {
        ShapeFamily::Bump {
            a: DEFAULT_BUMP_A,
            r: DEFAULT_BUMP_R,
        }
    }

    pub fn double_exp() -> Self {
        ShapeFamily::DoubleExp {
            r1: DEFAULT_DOUBLE_EXP_R1,
            r2: DEFAULT_DOUBLE_EXP_R2,
        }
    }

    /// Regularized-Beta family with the default parameter table (first `d` columns).
    pub fn reg_beta_default(d: usize) -> Result<Self> {
        if d > TABLE_MU.len() {
            return Err(FcError::InvalidShape(format!(
                "default regularized-Beta parameters cover d <= {}; supply a shape config for d = {d}",
                TABLE_MU.len()
            )));
        }
        let params = (0..d)
            .map(|l| BetaParams {
                mu: TABLE_MU[l],
                sigma_tilde: TABLE_SIGMA_TILDE[l],
            })
            .collect();
        Ok(ShapeFamily::RegBeta { params })
    }

    /// Family by CLI name (`hermite`, `bump`, `doubleexp`, `beta`) with default parameters.
    pub fn from_name(name: &str, d: usize) -> Result<Self> {
        match name {
            "hermite" => Ok(ShapeFamily::Hermite),
            "bump" => Ok(ShapeFamily::bump()),
            "doubleexp" => Ok(ShapeFamily::double_exp()),
            "beta" => ShapeFamily::reg_beta_default(d),
            other => Err(FcError::InvalidShape(format!("unknown family `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ShapeFamily::Hermite => "hermite",
            ShapeFamily::Bump { .. } => "bump",
            ShapeFamily::DoubleExp { .. } => "doubleexp",
            ShapeFamily::RegBeta { .. } => "beta",
        }
    }

    /// Checks parameter ranges against `d`.
    pub fn validate(&self, d: usize) -> Result<()> {
        let bad = |msg: String| Err(FcError::InvalidShape(msg));
        match self {
            ShapeFamily::Hermite => Ok(()),
            ShapeFamily::Bump { a, r } => {
                if !(*a > 0.0 && *r > 0.0 && a.is_finite() && r.is_finite()) {
                    return bad(format!("bump needs a > 0 and r > 0 (got a = {a}, r = {r})"));
                }
                Ok(())
            }
            ShapeFamily::DoubleExp { r1, r2 } => {
                if !(0.0 <= *r1 && r1 < r2 && *r2 <= 1.0) {
                    return bad(format!("double-exponential needs 0 <= r1 < r2 <= 1 (got {r1}, {r2})"));
                }
                Ok(())
            }
            ShapeFamily::RegBeta { params } => {
                if params.len() != d {
                    return bad(format!("expected {d} (mu, sigma_tilde) pairs, got {}", params.len()));
                }
                for (l, p) in params.iter().enumerate() {
                    if !(p.mu > 0.0 && p.mu < 1.0) {
                        return bad(format!("mu_{l} = {} must lie in (0, 1)", p.mu));
                    }
                    if !(p.sigma_tilde > 0.0 && p.sigma_tilde < 1.0) {
                        return bad(format!("sigma_tilde_{l} = {} must lie in (0, 1)", p.sigma_tilde));
                    }
                }
                Ok(())
            }
        }
    }

    /// Resolved parameters as `key=value` pairs, in a fixed order.
    pub fn describe(&self) -> Vec<(String, String)> {
        let mut out = vec![("family".to_string(), self.name().to_string())];
        match self {
            ShapeFamily::Hermite => {}
            ShapeFamily::Bump { a, r } => {
                out.push(("bump_a".into(), format!("{a:e}")));
                out.push(("bump_r".into(), format!("{r:e}")));
            }
            ShapeFamily::DoubleExp { r1, r2 } => {
                out.push(("r1".into(), format!("{r1:e}")));
                out.push(("r2".into(), format!("{r2:e}")));
            }
            ShapeFamily::RegBeta { params } => {
                let mu: Vec<String> = params.iter().map(|p| format!("{:e}", p.mu)).collect();
                let st: Vec<String> = params.iter().map(|p| format!("{:e}", p.sigma_tilde)).collect();
                out.push(("mu".into(), mu.join(" ")));
                out.push(("sigma_tilde".into(), st.join(" ")));
            }
        }
        out
    }
}

impl fmt::Display for ShapeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.describe().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Parses regularized-Beta parameters, one `ell mu sigma_tilde` line per `l`.
/// Blank lines and `#` comments are ignored.
pub fn parse_beta_params(text: &str, d: usize) -> Result<Vec<BetaParams>> {
    let mut slots: Vec<Option<BetaParams>> = vec![None; d];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let err = || FcError::Parse(format!("shape config line {}: `{raw}`", lineno + 1));
        if fields.len() != 3 {
            return Err(err());
        }
        let l: usize = fields[0].parse().map_err(|_| err())?;
        let mu: f64 = fields[1].parse().map_err(|_| err())?;
        let sigma_tilde: f64 = fields[2].parse().map_err(|_| err())?;
        if l >= d {
            // Extra columns beyond d are allowed and skipped.
            continue;
        }
        if slots[l].is_some() {
            return Err(FcError::Parse(format!("shape config: duplicate entry for ell = {l}")));
        }
        slots[l] = Some(BetaParams { mu, sigma_tilde });
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(l, s)| s.ok_or_else(|| FcError::Parse(format!("shape config: missing ell = {l}"))))
        .collect()
}

pub fn load_beta_params(path: &Path, d: usize) -> Result<Vec<BetaParams>> {
    parse_beta_params(&std::fs::read_to_string(path)?, d)
}

// ---------------------------------------------------------------------------
// Regularized incomplete Beta function B_d(s) = I_s(d+2, d+2).

/// Exact coefficients `c_k` with `B_d(s) = s^{d+2} sum_k c_k s^k`, `k = 0..=d+1`.
pub fn reg_beta_coeffs_exact(d: usize) -> Vec<Ratio<i128>> {
    let factorial = |k: usize| -> i128 { (1..=k as i128).product() };
    // 1 / B(d+2, d+2) = (2d+3)! / ((d+1)!)^2
    let scale = Ratio::new(factorial(2 * d + 3), factorial(d + 1) * factorial(d + 1));
    let mut binom: i128 = 1;
    (0..=d + 1)
        .map(|k| {
            if k > 0 {
                binom = binom * (d + 2 - k) as i128 / k as i128;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            scale * Ratio::new(sign * binom, (d + 2 + k) as i128)
        })
        .collect()
}

fn ratio_to_f64(r: &Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Precomputed `B_d` in floating point.
#[derive(Debug, Clone)]
pub struct RegBeta {
    d: usize,
    coeffs: Vec<f64>,
}

impl RegBeta {
    pub fn new(d: usize) -> Self {
        let coeffs = reg_beta_coeffs_exact(d).iter().map(ratio_to_f64).collect();
        RegBeta { d, coeffs }
    }

    fn lower_half(&self, s: f64) -> f64 {
        s.powi(self.d as i32 + 2) * poly::horner(&self.coeffs, s)
    }

    /// `B_d(s)` for `s` in `[0, 1]`; uses `B_d(s) = 1 - B_d(1 - s)` on the upper half.
    pub fn value(&self, s: f64) -> f64 {
        if s <= 0.5 {
            self.lower_half(s)
        } else {
            1.0 - self.lower_half(1.0 - s)
        }
    }

    /// `1 - B_d(s)`, accurate when the result is tiny.
    pub fn complement(&self, s: f64) -> f64 {
        if s >= 0.5 {
            self.lower_half(1.0 - s)
        } else {
            1.0 - self.lower_half(s)
        }
    }
}

pub fn reg_beta(d: usize, s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(FcError::DomainError { x: s, lo: 0.0, hi: 1.0 });
    }
    Ok(RegBeta::new(d).value(s))
}

// ---------------------------------------------------------------------------
// Two-point Hermite basis.

/// Exact monomial coefficients (in `t`) of the unit-interval Hermite basis
/// `H_m(t) = t^m (1-t)^d / m! * sum_{l=0}^{d-m-1} C(d+l-1, d-1) t^l`,
/// which satisfies `H_m^{(k)}(0) = delta_{mk}` and `H_m^{(k)}(1) = 0` for `k < d`.
pub fn hermite_unit_coeffs_exact(d: usize, m: usize) -> Vec<Ratio<i128>> {
    let binom = |n: usize, k: usize| -> i128 {
        if k > n {
            return 0;
        }
        let mut acc: i128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as i128 / (i + 1) as i128;
        }
        acc
    };
    let m_fact: i128 = (1..=m as i128).product();
    let mut out = vec![Ratio::from_integer(0i128); 2 * d];
    for l in 0..d.saturating_sub(m) {
        let s = binom(d + l - 1, d - 1);
        for j in 0..=d {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            out[m + l + j] += Ratio::new(sign * s * binom(d, j), m_fact);
        }
    }
    out
}

/// Closed-form two-point Hermite basis polynomial `p_m^{x1,x2}(x)`:
/// `(p_m^{x1,x2})^{(k)}(x1) = delta_{mk}` and `(p_m^{x1,x2})^{(k)}(x2) = 0` for `k < d`.
pub fn hermite_two_point(d: usize, m: usize, x1: f64, x2: f64, x: f64) -> Result<f64> {
    if x1 == x2 {
        return Err(FcError::DegenerateNodes(x1));
    }
    if m >= d {
        return Err(FcError::IndexOutOfRange {
            index: m as i64,
            limit: d as i64,
        });
    }
    let t = (x - x1) / (x2 - x1);
    Ok((x - x1).powi(m as i32) / poly::factorial(m)
        * ((x - x2) / (x1 - x2)).powi(d as i32)
        * hermite_tail_sum(d, m, t))
}

fn hermite_tail_sum(d: usize, m: usize, t: f64) -> f64 {
    let weights: Vec<f64> = (0..d - m).map(|l| poly::binomial(d + l - 1, d - 1)).collect();
    poly::horner(&weights, t)
}

/// Hermite blending continuation in factored form `(1 - t)^d Q(t)`, where
/// `t` runs from 0 at the matched endpoint to 1 at the far endpoint.
#[derive(Debug, Clone)]
pub struct HermiteBlend {
    d: usize,
    start: f64,
    end: f64,
    /// Coefficients of `Q`, degree `d - 1`.
    inner: Vec<f64>,
}

impl HermiteBlend {
    /// `sum_m w_m p_m^{start,end}(x)` where `w_m` are the derivatives to match at `start`.
    pub fn new(d: usize, start: f64, end: f64, derivs: &[f64]) -> Self {
        let span = end - start;
        let mut inner = vec![0.0; d];
        for (m, &w) in derivs.iter().enumerate().take(d) {
            let scaled = w * span.powi(m as i32) / poly::factorial(m);
            for l in 0..d - m {
                inner[m + l] += scaled * poly::binomial(d + l - 1, d - 1);
            }
        }
        HermiteBlend { d, start, end, inner }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = (x - self.start) / (self.end - self.start);
        (1.0 - t).powi(self.d as i32) * poly::horner(&self.inner, t)
    }

    /// Monomial coefficients in `t` of the full blend (degree `2d - 1`).
    pub fn expanded_coeffs(&self) -> Vec<f64> {
        let mut out = vec![0.0; 2 * self.d];
        for (k, &q) in self.inner.iter().enumerate() {
            for j in 0..=self.d {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                out[k + j] += q * sign * poly::binomial(self.d, j);
            }
        }
        out
    }

    /// Length of the blending interval in `x`.
    pub fn span(&self) -> f64 {
        self.end - self.start
    }
}

// ---------------------------------------------------------------------------
// Shape function evaluation.

/// `p_l^R(x) = p_l(2(x-1)/delta + 1)`.
pub fn gram_right(basis: &GramBasis, cfg: &FcConfig, l: usize, x: f64) -> Result<f64> {
    basis.eval(l, 2.0 * (x - 1.0) / cfg.delta() + 1.0)
}

/// `p_l^L(x) = p_l(2(x-b)/delta - 1)`.
pub fn gram_left(basis: &GramBasis, cfg: &FcConfig, l: usize, x: f64) -> Result<f64> {
    basis.eval(l, 2.0 * (x - cfg.b_f64()) / cfg.delta() - 1.0)
}

/// Hermite blend matching `p_l^R` (resp. `p_l^L`) at `x = 1` (resp. `x = b`).
pub fn hermite_blend(basis: &GramBasis, cfg: &FcConfig, l: usize, side: Side) -> HermiteBlend {
    let d = basis.d();
    let scale = 2.0 / cfg.delta();
    let b = cfg.b_f64();
    let derivs: Vec<f64> = (0..d)
        .map(|m| {
            let pm = match side {
                Side::Right => basis.deriv_at_right(l, m),
                Side::Left => basis.deriv_at_left(l, m),
            };
            scale.powi(m as i32) * pm
        })
        .collect();
    match side {
        Side::Right => HermiteBlend::new(d, 1.0, b, &derivs),
        Side::Left => HermiteBlend::new(d, b, 1.0, &derivs),
    }
}

fn check_extension_domain(cfg: &FcConfig, x: f64) -> Result<()> {
    let b = cfg.b_f64();
    if !(1.0..=b).contains(&x) {
        return Err(FcError::DomainError { x, lo: 1.0, hi: b });
    }
    Ok(())
}

fn bump_phi(a: f64, r: f64, t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-a / t.powf(r)).exp()
    }
}

fn bump_eta(a: f64, r: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    if t >= 1.0 {
        return 0.0;
    }
    let num = bump_phi(a, r, 1.0 - t);
    num / (bump_phi(a, r, t) + num)
}

fn double_exp_psi(s: f64) -> f64 {
    if s <= 0.0 {
        1.0
    } else if s >= 1.0 {
        0.0
    } else {
        (2.0 * (-1.0 / s).exp() / (s - 1.0)).exp()
    }
}

fn double_exp_eta(r1: f64, r2: f64, t: f64) -> f64 {
    if t <= r1 {
        1.0
    } else if t >= r2 {
        0.0
    } else {
        double_exp_psi((t - r1) / (r2 - r1))
    }
}

fn reg_beta_eta(beta: &RegBeta, p: &BetaParams, b: f64, x: f64) -> f64 {
    let sigma = 1.0 + p.sigma_tilde * (b - 1.0);
    if x <= 1.0 {
        1.0
    } else if x <= sigma {
        let xi = (x - 1.0) / (sigma - 1.0);
        (1.0 - p.mu) * beta.complement(xi) + p.mu
    } else if x < b {
        let xi = (x - sigma) / (b - sigma);
        p.mu * beta.complement(xi)
    } else {
        0.0
    }
}

/// Right shape function `eta_l^R(x)` on `[1, b]`.
pub fn eta_right(family: &ShapeFamily, basis: &GramBasis, cfg: &FcConfig, l: usize, x: f64) -> Result<f64> {
    check_extension_domain(cfg, x)?;
    if l >= basis.d() {
        return Err(FcError::IndexOutOfRange {
            index: l as i64,
            limit: basis.d() as i64,
        });
    }
    let b = cfg.b_f64();
    let t = ((x - 1.0) / (b - 1.0)).clamp(0.0, 1.0);
    Ok(match family {
        ShapeFamily::Hermite => {
            let blend = hermite_blend(basis, cfg, l, Side::Right);
            blend.eval(x) / gram_right(basis, cfg, l, x)?
        }
        ShapeFamily::Bump { a, r } => bump_eta(*a, *r, t),
        ShapeFamily::DoubleExp { r1, r2 } => double_exp_eta(*r1, *r2, t),
        ShapeFamily::RegBeta { params } => {
            let p = params.get(l).ok_or_else(|| {
                FcError::InvalidShape(format!("no regularized-Beta parameters for ell = {l}"))
            })?;
            reg_beta_eta(&RegBeta::new(basis.d()), p, b, x)
        }
    })
}

/// Left shape function: `eta_l^L(x) = eta_l^R(b + 1 - x)`, except for the
/// Hermite family, which matches `p_l^L` at `x = b` directly.
pub fn eta_left(family: &ShapeFamily, basis: &GramBasis, cfg: &FcConfig, l: usize, x: f64) -> Result<f64> {
    check_extension_domain(cfg, x)?;
    match family {
        ShapeFamily::Hermite => {
            if l >= basis.d() {
                return Err(FcError::IndexOutOfRange {
                    index: l as i64,
                    limit: basis.d() as i64,
                });
            }
            let blend = hermite_blend(basis, cfg, l, Side::Left);
            Ok(blend.eval(x) / gram_left(basis, cfg, l, x)?)
        }
        _ => eta_right(family, basis, cfg, l, cfg.b_f64() + 1.0 - x),
    }
}

/// Evaluator for `p_l^{R,e}` or `p_l^{L,e}` at arbitrary points of `[1, b]`.
pub struct BlendEvaluator<'a> {
    family: &'a ShapeFamily,
    basis: &'a GramBasis,
    cfg: &'a FcConfig,
    l: usize,
    side: Side,
    hermite: Option<HermiteBlend>,
    beta: Option<RegBeta>,
}

impl<'a> BlendEvaluator<'a> {
    pub fn new(family: &'a ShapeFamily, basis: &'a GramBasis, cfg: &'a FcConfig, l: usize, side: Side) -> Result<Self> {
        if l >= basis.d() {
            return Err(FcError::IndexOutOfRange {
                index: l as i64,
                limit: basis.d() as i64,
            });
        }
        family.validate(basis.d())?;
        let hermite = matches!(family, ShapeFamily::Hermite).then(|| hermite_blend(basis, cfg, l, side));
        let beta = matches!(family, ShapeFamily::RegBeta { .. }).then(|| RegBeta::new(basis.d()));
        Ok(BlendEvaluator {
            family,
            basis,
            cfg,
            l,
            side,
            hermite,
            beta,
        })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_extension_domain(self.cfg, x)?;
        if let Some(h) = &self.hermite {
            return Ok(h.eval(x));
        }
        let b = self.cfg.b_f64();
        let (gram, xr) = match self.side {
            Side::Right => (gram_right(self.basis, self.cfg, self.l, x)?, x),
            Side::Left => (gram_left(self.basis, self.cfg, self.l, x)?, b + 1.0 - x),
        };
        let t = ((xr - 1.0) / (b - 1.0)).clamp(0.0, 1.0);
        let eta = match self.family {
            ShapeFamily::Hermite => unreachable!(),
            ShapeFamily::Bump { a, r } => bump_eta(*a, *r, t),
            ShapeFamily::DoubleExp { r1, r2 } => double_exp_eta(*r1, *r2, t),
            ShapeFamily::RegBeta { params } => {
                reg_beta_eta(self.beta.as_ref().unwrap(), &params[self.l], b, xr)
            }
        };
        Ok(gram * eta)
    }
}

/// Tabulated continuations `p_l^{R,e}`, `p_l^{L,e}` on the extension grid.
#[derive(Debug, Clone)]
pub struct BlendTable {
    cfg: FcConfig,
    family: ShapeFamily,
    basis: GramBasis,
    right_values: Vec<Vec<f64>>,
    left_values: Vec<Vec<f64>>,
}

impl BlendTable {
    pub fn cfg(&self) -> &FcConfig {
        &self.cfg
    }
    pub fn family(&self) -> &ShapeFamily {
        &self.family
    }
    pub fn basis(&self) -> &GramBasis {
        &self.basis
    }
    /// `right_values[l][j] = p_l^{R,e}(x_{n+1+j})`.
    pub fn right_values(&self) -> &[Vec<f64>] {
        &self.right_values
    }
    /// `left_values[l][j] = p_l^{L,e}(x_{n+1+j})`.
    pub fn left_values(&self) -> &[Vec<f64>] {
        &self.left_values
    }
}

pub fn build_blend_table(family: &ShapeFamily, basis: &GramBasis, cfg: &FcConfig) -> Result<BlendTable> {
    if basis.d() != cfg.d() {
        return Err(FcError::ConfigMismatch);
    }
    let points = cfg.extension_points();
    let tabulate = |side: Side| -> Result<Vec<Vec<f64>>> {
        (0..basis.d())
            .map(|l| {
                let ev = BlendEvaluator::new(family, basis, cfg, l, side)?;
                points.iter().map(|&x| ev.eval(x)).collect()
            })
            .collect()
    };
    Ok(BlendTable {
        cfg: cfg.clone(),
        family: family.clone(),
        basis: basis.clone(),
        right_values: tabulate(Side::Right)?,
        left_values: tabulate(Side::Left)?,
    })
}
