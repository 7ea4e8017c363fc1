//! Self-check suites run by `fcgram verify`.

use std::str::FromStr;

use num_complex::Complex64;

use crate::bvp::solve_bvp;
use crate::continuation::{build_extension, continuation_sup_norm, SampledFunction};
use crate::error::{FcError, Result};
use crate::gram::{build_gram_basis, GramBasis};
use crate::grid::{validate_config, FcConfig, Rational};
use crate::shape::{build_blend_table, eta_left, eta_right, hermite_two_point, ShapeFamily, Side};
use crate::study::harness::{run_convergence, StudySpec, BVP_DEFAULT_MAX_N};
use crate::study::registry::{problem_registry, Params};
use crate::study::tables::{compare_to_table, ReferenceTable, TableReport, REFERENCE_TABLES};
use crate::trig::TrigInterpolant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Convergence sweeps compared against the stored BVP tables.
    PaperTables,
    /// Fast structural properties of the method.
    Invariants,
}

impl FromStr for Suite {
    type Err = FcError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-tables" => Ok(Suite::PaperTables),
            "invariants" => Ok(Suite::Invariants),
            _ => Err(FcError::Parse(format!("unknown suite '{s}' (expected paper-tables or invariants)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Largest `|<p_k, p_l> - delta_kl|` over the nodes.
pub fn orthonormality_residual(basis: &GramBasis) -> f64 {
    let d = basis.d();
    let v = basis.node_values();
    let mut worst: f64 = 0.0;
    for k in 0..d {
        for l in 0..d {
            let ip: f64 = (0..d).map(|j| v[k][j] * v[l][j]).sum();
            worst = worst.max((ip - if k == l { 1.0 } else { 0.0 }).abs());
        }
    }
    worst
}

/// `m`-th finite difference of `g` at `x` with step `h` (backward when `h < 0`), divided by `h^m`.
pub fn finite_difference(g: &dyn Fn(f64) -> Result<f64>, x: f64, h: f64, m: usize) -> Result<f64> {
    let mut acc = 0.0;
    for k in 0..=m {
        let sign = if (m - k) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * crate::poly::binomial(m, k) * g(x + k as f64 * h)?;
    }
    Ok(acc / h.powi(m as i32))
}

/// Richardson extrapolation of [`finite_difference`] over steps `h, 2h, .., 2^(levels-1) h`,
/// cancelling the `h, h^2, ..` truncation terms of the one-sided estimate.
/// `h` is the finest step, so round-off is no worse than for the plain estimate.
pub fn extrapolated_difference(g: &dyn Fn(f64) -> Result<f64>, x: f64, h: f64, m: usize, levels: usize) -> Result<f64> {
    let mut table = (0..levels.max(1))
        .map(|i| finite_difference(g, x, h * f64::from(1u32 << i), m))
        .collect::<Result<Vec<_>>>()?;
    for j in 1..table.len() {
        let f = f64::from(1u32 << j);
        for i in 0..table.len() - j {
            table[i] = (f * table[i] - table[i + 1]) / (f - 1.0);
        }
    }
    Ok(table[0])
}

/// Richardson levels used at the endpoints by [`endpoint_flatness`].
pub const FLATNESS_LEVELS: usize = 4;

/// Points per interval used to estimate the derivative scale in [`endpoint_flatness`].
pub const FLATNESS_SCALE_POINTS: usize = 2000;

/// Worst flatness violation of one family: the largest
/// `|FD_m(endpoint)| / max_x |FD_m(x)|` over `l < d`, both sides, both
/// endpoints and `m = 1..d-1`.
///
/// The endpoint estimate is Richardson-extrapolated from base step `h`, which is `1e-3` times the width of the transition adjacent to the
/// endpoint (`sigma - 1` or `b - sigma` for the two-stage Beta profile,
/// `b - 1` otherwise). For the Hermite family the shape function has poles
/// at roots of the Gram factor, so the equivalent polynomial conditions are
/// checked instead: the blend minus `p_l^R` at the matched end and the
/// blend itself at the far end.
pub fn endpoint_flatness(family: &ShapeFamily, cfg: &FcConfig) -> Result<f64> {
    use crate::shape::{gram_left, gram_right, BlendEvaluator};
    let basis = build_gram_basis(cfg.d())?;
    let d = cfg.d();
    let b = cfg.b_f64();
    let mut worst: f64 = 0.0;
    for l in 0..d {
        let (w_near, w_far) = match family {
            ShapeFamily::RegBeta { params } => {
                let sigma = 1.0 + params[l].sigma_tilde * (b - 1.0);
                (sigma - 1.0, b - sigma)
            }
            _ => (b - 1.0, b - 1.0),
        };
        for side in [Side::Right, Side::Left] {
            let ev = BlendEvaluator::new(family, &basis, cfg, l, side)?;
            let (start, end) = match side {
                Side::Right => (1.0, b),
                Side::Left => (b, 1.0),
            };
            let dir = (end - start).signum();
            let hermite = matches!(family, ShapeFamily::Hermite);
            let shape = |x: f64| -> Result<f64> {
                match side {
                    Side::Right => eta_right(family, &basis, cfg, l, x),
                    Side::Left => eta_left(family, &basis, cfg, l, x),
                }
            };
            let gram = |x: f64| -> Result<f64> {
                match side {
                    Side::Right => gram_right(&basis, cfg, l, x),
                    Side::Left => gram_left(&basis, cfg, l, x),
                }
            };
            let near = |x: f64| -> Result<f64> {
                if hermite {
                    Ok(ev.eval(x)? - gram(x)?)
                } else {
                    shape(x)
                }
            };
            let far = |x: f64| -> Result<f64> {
                if hermite {
                    ev.eval(x)
                } else {
                    shape(x)
                }
            };
            for m in 1..d {
                for (point, g, width) in [(start, &near as &dyn Fn(f64) -> Result<f64>, w_near), (end, &far, w_far)] {
                    let h = 1e-3 * width * if point == start { dir } else { -dir };
                    let at_end = extrapolated_difference(g, point, h, m, FLATNESS_LEVELS)?.abs();
                    // derivative scale of the profile itself over the interval
                    let span = (b - 1.0) - m as f64 * h.abs();
                    let mut scale: f64 = 0.0;
                    for k in 0..=FLATNESS_SCALE_POINTS {
                        let x = 1.0 + span * k as f64 / FLATNESS_SCALE_POINTS as f64;
                        scale = scale.max(finite_difference(&far, x, h.abs(), m)?.abs());
                    }
                    if scale > 0.0 {
                        worst = worst.max(at_end / scale);
                    }
                }
            }
        }
    }
    Ok(worst)
}

/// Continuation values built directly from two-point Hermite polynomials:
/// the right projection's derivatives are matched at 1, the left one's at `b`.
pub fn direct_hermite_continuation(samples: &SampledFunction, basis: &GramBasis, cfg: &FcConfig) -> Result<Vec<f64>> {
    let d = basis.d();
    let n = cfg.n();
    let v = samples.values();
    let right = &v[n + 1 - d..];
    let left = &v[..d];
    let scale = 2.0 / cfg.delta();
    let b = cfg.b_f64();
    // derivatives of the projected polynomials at the matching points
    let mut dr = vec![0.0; d];
    let mut dl = vec![0.0; d];
    for l in 0..d {
        let ar = basis.discrete_inner(right, l)?;
        let al = basis.discrete_inner(left, l)?;
        for m in 0..d {
            dr[m] += ar * scale.powi(m as i32) * basis.deriv_at_right(l, m);
            dl[m] += al * scale.powi(m as i32) * basis.deriv_at_left(l, m);
        }
    }
    cfg.extension_points()
        .iter()
        .map(|&x| {
            let mut acc = 0.0;
            for m in 0..d {
                acc += dr[m] * hermite_two_point(d, m, 1.0, b, x)?;
                acc += dl[m] * hermite_two_point(d, m, b, 1.0, x)?;
            }
            Ok(acc)
        })
        .collect()
}

/// Max relative deviation between the tabulated Hermite extension and the direct blend.
pub fn hermite_equivalence_error(f: impl Fn(f64) -> f64, cfg: &FcConfig) -> Result<f64> {
    let basis = build_gram_basis(cfg.d())?;
    let table = build_blend_table(&ShapeFamily::Hermite, &basis, cfg)?;
    let samples = SampledFunction::from_fn(cfg, f)?;
    let ext = build_extension(&samples, &table, &basis, cfg)?;
    let direct = direct_hermite_continuation(&samples, &basis, cfg)?;
    let scale = direct.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(f64::MIN_POSITIVE);
    Ok(ext
        .continuation()
        .iter()
        .zip(&direct)
        .map(|(a, b)| (a - b).abs() / scale)
        .fold(0.0, f64::max))
}

fn two() -> Rational {
    Rational::integer(2).expect("nonzero denominator")
}

fn invariant_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();

    let worst = (2..=7).map(|d| build_gram_basis(d).map(|b| orthonormality_residual(&b))).collect::<Result<Vec<_>>>()?;
    let w = worst.iter().cloned().fold(0.0, f64::max);
    out.push(Check::new("gram orthonormality d=2..7", w <= 1e-10, format!("max residual {w:.2e}")));

    let cfg = validate_config(32, two(), 5)?;
    let basis = build_gram_basis(5)?;
    let families = [ShapeFamily::Hermite, ShapeFamily::bump(), ShapeFamily::double_exp(), ShapeFamily::reg_beta_default(5)?];
    let mut endpoint_ok = true;
    for fam in &families {
        for l in 0..5 {
            endpoint_ok &= eta_right(fam, &basis, &cfg, l, 1.0)? == 1.0 && eta_right(fam, &basis, &cfg, l, 2.0)? == 0.0;
            endpoint_ok &= eta_left(fam, &basis, &cfg, l, 2.0)? == 1.0 && eta_left(fam, &basis, &cfg, l, 1.0)? == 0.0;
        }
    }
    out.push(Check::new("shape endpoint values d=5 b=2", endpoint_ok, "eta(1)=1, eta(b)=0 on both sides"));
    for fam in &families {
        let r = endpoint_flatness(fam, &cfg)?;
        out.push(Check::new(format!("{} endpoint flatness d=5 b=2", fam.name()), r <= 1e-4, format!("worst ratio {r:.2e}")));
    }

    // a fixed in-span trigonometric polynomial on 48 points of period 3/2
    let period = Rational::new(3, 2)?;
    let m = 48;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
    for (i, l) in [-7i64, -2, 0, 2, 7, 23].iter().enumerate() {
        let c = Complex64::new(0.3 * i as f64 - 0.4, 0.1 * i as f64);
        coeffs[(l + 24) as usize] += c;
        if *l != 0 {
            coeffs[(24 - l) as usize] += c.conj();
        }
    }
    coeffs[24].im = 0.0;
    let t = TrigInterpolant::from_coeffs(period, coeffs.clone())?;
    let samples: Vec<f64> = (0..m).map(|j| t.eval(1.5 * j as f64 / m as f64)).collect();
    let back = TrigInterpolant::from_samples(period, &samples)?;
    let dev = (0..m).map(|i| (back.coeffs()[i] - coeffs[i]).norm()).fold(0.0, f64::max);
    out.push(Check::new("trigonometric reproduction", dev <= 1e-12, format!("max coefficient deviation {dev:.2e}")));

    let mut worst: f64 = 0.0;
    for (d, n) in [(3, 64), (5, 64), (3, 256), (5, 256)] {
        let cfg = validate_config(n, two(), d)?;
        worst = worst.max(hermite_equivalence_error(|x| (3.0 * x).sin() + x * x, &cfg)?);
    }
    out.push(Check::new("hermite extension equals direct two-point blend", worst <= 1e-10, format!("max relative deviation {worst:.2e}")));

    let herm = build_blend_table(&ShapeFamily::Hermite, &basis, &cfg)?;
    let beta = build_blend_table(&families[3], &basis, &cfg)?;
    let sh = continuation_sup_norm(&herm, 4, Side::Right)?;
    let sb = continuation_sup_norm(&beta, 4, Side::Right)?;
    out.push(Check::new(
        "sup-norm of p_4 continuation, n=32",
        (sh - 2627.0).abs() <= 0.05 * 2627.0 && sb <= sh / 20.0,
        format!("hermite {sh:.1}, beta {sb:.2}, ratio {:.1}", sh / sb),
    ));

    for (id, params) in [("coskx", vec![("k", 100.0)]), ("euler-log", vec![("eps", 0.02)])] {
        let params: Params = params.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        let p = problem_registry(id, &params)?;
        let prob = &p.problem;
        let cfg = validate_config(64, two(), 5)?;
        let mut worst: f64 = 0.0;
        for fam in [ShapeFamily::Hermite, ShapeFamily::reg_beta_default(5)?] {
            let sol = solve_bvp(prob, &cfg, &fam)?;
            let (r0, r1) = sol.boundary_residuals(prob);
            worst = worst.max((r0.abs() + r1.abs()) / (1.0 + prob.left.c.abs() + prob.right.c.abs()));
        }
        out.push(Check::new(format!("{id} boundary conditions, n=64"), worst <= 1e-11, format!("scaled residual {worst:.2e}")));
    }
    Ok(out)
}

/// Runs one table's sweep up to `max_n` and compares within one decade.
pub fn check_table(table: &ReferenceTable, max_n: usize) -> Result<TableReport> {
    let params: Params = [(table.param.0.to_string(), table.param.1)].into_iter().collect();
    let problem = problem_registry(table.problem, &params)?;
    let family = ShapeFamily::from_name(table.method.family_name(), 5)?;
    let ns: Vec<usize> = table.ns().into_iter().filter(|&n| n <= max_n).collect();
    let rows = run_convergence(&StudySpec::bvp(problem, family, ns))?;
    compare_to_table(&rows, table, 1.0)
}

fn table_checks(large: bool) -> Result<Vec<Check>> {
    let max_n = if large { 1 << 12 } else { BVP_DEFAULT_MAX_N };
    REFERENCE_TABLES
        .iter()
        .map(|t| {
            let rep = check_table(t, max_n)?;
            let detail: Vec<String> = rep
                .rows
                .iter()
                .map(|r| {
                    let mark = if r.passed() { "" } else { "!" };
                    format!("{mark}n={} e={:.2e}/{:.2e}", r.n, r.e_n, r.e_ref)
                })
                .collect();
            Ok(Check::new(rep.label, rep.passed(), detail.join(" ")))
        })
        .collect()
}

pub fn run_suite(suite: Suite, large: bool) -> Result<Vec<Check>> {
    match suite {
        Suite::Invariants => invariant_checks(),
        Suite::PaperTables => table_checks(large),
    }
}
