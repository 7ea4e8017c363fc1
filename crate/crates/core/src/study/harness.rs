//! Convergence sweeps, CSV output and shape tabulation.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::bvp::{bvp_error, solve_bvp};
use crate::continuation::{build_extension, SampledFunction};
use crate::error::{FcError, Result};
use crate::gram::build_gram_basis;
use crate::grid::{validate_config, FcConfig, Rational};
use crate::shape::{build_blend_table, eta_left, eta_right, BlendEvaluator, ShapeFamily, Side};
use crate::study::registry::{RegisteredProblem, TestFunction};
use crate::trig::{approx_error, dft_coeffs, noc, ConvergenceRow, DEFAULT_REF_GRID};

/// Largest BVP size run without an explicit opt-in.
pub const BVP_DEFAULT_MAX_N: usize = 1 << 10;

#[derive(Clone)]
pub enum StudyKind {
    Approx(TestFunction),
    Bvp(RegisteredProblem),
}

#[derive(Clone)]
pub struct StudySpec {
    pub kind: StudyKind,
    pub d: usize,
    pub b: Rational,
    pub family: ShapeFamily,
    pub n_range: Vec<usize>,
    pub ref_grid: usize,
}

impl StudySpec {
    pub fn approx(f: TestFunction, d: usize, b: Rational, family: ShapeFamily, n_range: Vec<usize>) -> Self {
        StudySpec {
            kind: StudyKind::Approx(f),
            d,
            b,
            family,
            n_range,
            ref_grid: DEFAULT_REF_GRID,
        }
    }

    /// BVP sweeps always use `b = 2`, `d = 5`.
    pub fn bvp(p: RegisteredProblem, family: ShapeFamily, n_range: Vec<usize>) -> Self {
        StudySpec {
            kind: StudyKind::Bvp(p),
            d: 5,
            b: Rational::integer(2).expect("nonzero denominator"),
            family,
            n_range,
            ref_grid: DEFAULT_REF_GRID,
        }
    }

    /// Checks the n range and every configuration.
    pub fn validate(&self) -> Result<Vec<FcConfig>> {
        if self.n_range.is_empty() {
            return Err(FcError::Parse("empty n range".into()));
        }
        for w in self.n_range.windows(2) {
            if w[1] != 2 * w[0] {
                return Err(FcError::NonDyadicSequence(w[1]));
            }
        }
        self.family.validate(self.d)?;
        self.n_range.iter().map(|&n| validate_config(n, self.b, self.d)).collect()
    }

    /// `# key=value` lines that fully describe the run.
    pub fn header(&self) -> Vec<(String, String)> {
        let mut h = Vec::new();
        match &self.kind {
            StudyKind::Approx(f) => {
                h.push(("kind".into(), "approx".into()));
                h.push(("function".into(), f.id.clone()));
                h.push(("formula".into(), f.formula.clone()));
                for (k, v) in &f.params {
                    h.push((format!("param.{k}"), format!("{v}")));
                }
            }
            StudyKind::Bvp(p) => {
                h.push(("kind".into(), "bvp".into()));
                h.push(("problem".into(), p.id.clone()));
                h.push(("conversion".into(), p.conversion.clone()));
                for (k, v) in &p.params {
                    h.push((format!("param.{k}"), format!("{v}")));
                }
            }
        }
        h.push(("d".into(), self.d.to_string()));
        h.push(("b".into(), self.b.to_string()));
        h.extend(self.family.describe());
        let ns: Vec<String> = self.n_range.iter().map(|n| n.to_string()).collect();
        h.push(("n_range".into(), ns.join(" ")));
        h.push(("ref_grid".into(), self.ref_grid.to_string()));
        h
    }
}

/// Parses `2^a:2^b` (or plain integers `lo:hi`) into the dyadic list `lo, 2 lo, .., hi`.
pub fn parse_n_range(s: &str) -> Result<Vec<usize>> {
    let bad = || FcError::Parse(format!("bad n range '{s}', expected 2^a:2^b"));
    let one = |t: &str| -> Result<usize> {
        let t = t.trim();
        match t.strip_prefix("2^") {
            Some(e) => {
                let e: u32 = e.parse().map_err(|_| bad())?;
                1usize.checked_shl(e).filter(|_| e < 40).ok_or_else(bad)
            }
            None => t.parse().map_err(|_| bad()),
        }
    };
    let (lo, hi) = match s.split_once(':') {
        Some((a, b)) => (one(a)?, one(b)?),
        None => {
            let v = one(s)?;
            (v, v)
        }
    };
    if lo == 0 || hi < lo || !(hi / lo).is_power_of_two() || hi % lo != 0 {
        return Err(bad());
    }
    Ok(std::iter::successors(Some(lo), |&n| (n < hi).then_some(2 * n)).collect())
}

/// `e_n` for one approximation run.
pub fn approx_error_at(f: &TestFunction, cfg: &FcConfig, family: &ShapeFamily, ref_grid: usize) -> Result<f64> {
    let basis = build_gram_basis(cfg.d())?;
    let table = build_blend_table(family, &basis, cfg)?;
    let samples = SampledFunction::from_fn(cfg, &*f.f)?;
    let ext = build_extension(&samples, &table, &basis, cfg)?;
    let t = dft_coeffs(&ext)?;
    approx_error(&*f.f, &t, ref_grid)
}

fn error_at(spec: &StudySpec, cfg: &FcConfig) -> Result<f64> {
    match &spec.kind {
        StudyKind::Approx(f) => approx_error_at(f, cfg, &spec.family, spec.ref_grid),
        StudyKind::Bvp(p) => {
            let sol = solve_bvp(&p.problem, cfg, &spec.family)?;
            bvp_error(&p.problem, &sol, spec.ref_grid)
        }
    }
}

/// Runs every `n` in parallel and fills in the orders of convergence.
pub fn run_convergence(spec: &StudySpec) -> Result<Vec<ConvergenceRow>> {
    let cfgs = spec.validate()?;
    let rows = cfgs
        .par_iter()
        .map(|cfg| {
            error_at(spec, cfg)
                .map(|e| ConvergenceRow::new(cfg.n(), e))
                .map_err(|source| FcError::SweepFailed {
                    n: cfg.n(),
                    source: Box::new(source),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    noc(&rows)
}

/// CSV text: `# key=value` lines, then `n,e_n,noc_n` rows.
pub fn render_csv(header: &[(String, String)], rows: &[ConvergenceRow]) -> String {
    let mut out = String::new();
    for (k, v) in header {
        let _ = writeln!(out, "# {k}={v}");
    }
    out.push_str("n,e_n,noc_n\n");
    for r in rows {
        let noc = r.noc_n.map(|v| format!("{v:.6}")).unwrap_or_default();
        let _ = writeln!(out, "{},{:.6e},{}", r.n, r.e_n, noc);
    }
    out
}

/// Reads back the rows of [`render_csv`] output, skipping header lines.
pub fn parse_csv_rows(text: &str) -> Result<Vec<ConvergenceRow>> {
    let bad = |line: &str| FcError::Parse(format!("bad CSV row '{line}'"));
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty() && *l != "n,e_n,noc_n")
        .map(|line| {
            let mut it = line.split(',');
            let n = it.next().and_then(|v| v.parse().ok()).ok_or_else(|| bad(line))?;
            let e_n = it.next().and_then(|v| v.parse().ok()).ok_or_else(|| bad(line))?;
            let noc_n = match it.next() {
                Some("") | None => None,
                Some(v) => Some(v.parse().map_err(|_| bad(line))?),
            };
            Ok(ConvergenceRow { n, e_n, noc_n })
        })
        .collect()
}

/// Stagnation: three consecutive `noc` values in `[-0.5, 0.5]` with the
/// corresponding errors within a factor 3 of their geometric mean.
/// Returns the level `E` of the first such run.
pub fn detect_stagnation(rows: &[ConvergenceRow]) -> Option<f64> {
    rows.windows(3).find_map(|w| {
        let flat = w.iter().all(|r| r.noc_n.is_some_and(|v| (-0.5..=0.5).contains(&v)));
        if !flat {
            return None;
        }
        let level = (w.iter().map(|r| r.e_n.ln()).sum::<f64>() / 3.0).exp();
        w.iter().all(|r| r.e_n <= 3.0 * level && r.e_n >= level / 3.0).then_some(level)
    })
}

/// Mean of the available `noc` values among rows whose `n` is in `ns`.
pub fn mean_noc(rows: &[ConvergenceRow], ns: &[usize]) -> Option<f64> {
    let vals: Vec<f64> = rows.iter().filter(|r| ns.contains(&r.n)).filter_map(|r| r.noc_n).collect();
    (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
}

/// One sample of a tabulated shape function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeSample {
    pub x: f64,
    pub eta_right: f64,
    pub eta_left: f64,
    pub blend_right: f64,
    pub blend_left: f64,
}

/// Samples `eta_l` and `p_l^e` on both sides at `samples` equispaced points of `[1, b]`.
/// The Gram factor depends on `cfg.n()` through the matching width.
pub fn shape_dump(family: &ShapeFamily, cfg: &FcConfig, l: usize, samples: usize) -> Result<Vec<ShapeSample>> {
    if samples < 2 {
        return Err(FcError::LengthMismatch { expected: 2, got: samples });
    }
    let basis = build_gram_basis(cfg.d())?;
    let right = BlendEvaluator::new(family, &basis, cfg, l, Side::Right)?;
    let left = BlendEvaluator::new(family, &basis, cfg, l, Side::Left)?;
    let b = cfg.b_f64();
    (0..samples)
        .map(|k| {
            let x = (1.0 + (b - 1.0) * k as f64 / (samples - 1) as f64).min(b);
            Ok(ShapeSample {
                x,
                eta_right: eta_right(family, &basis, cfg, l, x)?,
                eta_left: eta_left(family, &basis, cfg, l, x)?,
                blend_right: right.eval(x)?,
                blend_left: left.eval(x)?,
            })
        })
        .collect()
}

pub fn render_shape_csv(header: &[(String, String)], rows: &[ShapeSample]) -> String {
    let mut out = String::new();
    for (k, v) in header {
        let _ = writeln!(out, "# {k}={v}");
    }
    out.push_str("x,eta_right,eta_left,blend_right,blend_left\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
            r.x, r.eta_right, r.eta_left, r.blend_right, r.blend_left
        );
    }
    out
}
