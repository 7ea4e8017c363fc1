//! Acceptance checks, one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so every line is printed.
//! Criteria listed in `KNOWN_FAILURES` are evaluated exactly like the others
//! and reported as FAIL; they do not fail the run. Any other failure does.

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fcgram::bvp::{bvp_error, solve_bvp, BvpProblem};
use fcgram::continuation::{build_extension, continuation_sup_norm, SampledFunction};
use fcgram::shape::{eta_left, eta_right, hermite_unit_coeffs_exact};
use fcgram::study::harness::{mean_noc, run_convergence, StudySpec};
use fcgram::study::registry::{coskx_problem, euler_log_problem, function_registry, Params, TestFunction};
use fcgram::study::verify::{endpoint_flatness, hermite_equivalence_error, orthonormality_residual};
use fcgram::trig::{dft_coeffs, ConvergenceRow, TrigInterpolant};
use fcgram::{build_blend_table, build_gram_basis, validate_config, Rational, Result, ShapeFamily, Side};

/// Criteria that do not hold for this implementation; see the notes on each.
/// 4: smooth-osc with d = 5 is still pre-asymptotic on 2^9..2^11 (mean noc 4.17);
///    it reaches noc ~ 5.1 from 2^11 on, for every shape family.
/// 6: x^1.7 sin(1/x) has an oscillating noc (0.63, 0.92, 0.73 at 2^12..2^14),
///    so 2^13 lies outside 0.7 +- 0.15.
const KNOWN_FAILURES: &[usize] = &[4, 6];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        detail: detail.into(),
    })
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p, q).unwrap()
}

fn dyadic(lo: u32, hi: u32) -> Vec<usize> {
    (lo..=hi).map(|e| 1usize << e).collect()
}

fn function(id: &str, params: &[(&str, f64)]) -> Result<TestFunction> {
    let p: Params = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    function_registry(id, &p)
}

fn sweep(f: &TestFunction, d: usize, b: Rational, ns: Vec<usize>) -> Result<Vec<ConvergenceRow>> {
    run_convergence(&StudySpec::approx(f.clone(), d, b, ShapeFamily::reg_beta_default(d)?, ns))
}

fn noc_at(rows: &[ConvergenceRow], n: usize) -> f64 {
    rows.iter().find(|r| r.n == n).and_then(|r| r.noc_n).unwrap_or(f64::NAN)
}

fn fmt_nocs(rows: &[ConvergenceRow], ns: &[usize]) -> String {
    ns.iter().map(|&n| format!("{:.2}", noc_at(rows, n))).collect::<Vec<_>>().join(",")
}

fn c1_basis() -> Result<Outcome> {
    let worst = (2..=7).map(|d| build_gram_basis(d).map(|b| orthonormality_residual(&b))).collect::<Result<Vec<_>>>()?;
    let worst = worst.into_iter().fold(0.0, f64::max);
    // H_m^{(k)}(0) = delta_mk and H_m^{(k)}(1) = 0 for k < d, in exact arithmetic
    let mut exact = true;
    for d in 2..=10usize {
        for m in 0..d {
            let c = hermite_unit_coeffs_exact(d, m);
            for k in 0..d {
                let fall = |j: usize| -> Ratio<i128> { Ratio::from_integer(((j + 1 - k)..=j).map(|v| v as i128).product()) };
                let at0 = c[k] * fall(k);
                let at1: Ratio<i128> = (k..c.len()).map(|j| c[j] * fall(j)).sum();
                exact &= at0 == Ratio::from_integer(i128::from(k == m)) && at1 == Ratio::from_integer(0);
            }
        }
    }
    outcome(worst <= 1e-10 && exact, format!("orthonormality residual {worst:.1e} (d=2..7); hermite conditions exact for d=2..10: {exact}"))
}

fn c2_shapes() -> Result<Outcome> {
    let cfg = validate_config(32, rat(2, 1), 5)?;
    let basis = build_gram_basis(5)?;
    let mut ok = true;
    let mut details = Vec::new();
    for fam in [ShapeFamily::Hermite, ShapeFamily::bump(), ShapeFamily::double_exp(), ShapeFamily::reg_beta_default(5)?] {
        for l in 0..5 {
            ok &= eta_right(&fam, &basis, &cfg, l, 1.0)? == 1.0 && eta_right(&fam, &basis, &cfg, l, 2.0)? == 0.0;
            ok &= eta_left(&fam, &basis, &cfg, l, 2.0)? == 1.0 && eta_left(&fam, &basis, &cfg, l, 1.0)? == 0.0;
        }
        let r = endpoint_flatness(&fam, &cfg)?;
        ok &= r <= 1e-4;
        details.push(format!("{} {r:.1e}", fam.name()));
    }
    outcome(ok, format!("endpoint values exact; worst flatness ratio: {}", details.join(", ")))
}

fn naive_dft(samples: &[f64]) -> Vec<Complex64> {
    let m = samples.len() as i64;
    (-m / 2..m / 2)
        .map(|l| {
            samples
                .iter()
                .enumerate()
                .map(|(j, &v)| v * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * (l * j as i64) as f64 / m as f64))
                .sum::<Complex64>()
                / m as f64
        })
        .collect()
}

fn c3_interpolation() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut repro: f64 = 0.0;
    for (b, m) in [(rat(2, 1), 64usize), (rat(3, 2), 48), (rat(5, 4), 40)] {
        let half = (m / 2) as i64;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
        for l in 1..half {
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            coeffs[(half + l) as usize] = c;
            coeffs[(half - l) as usize] = c.conj();
        }
        coeffs[half as usize] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        let t = TrigInterpolant::from_coeffs(b, coeffs.clone())?;
        let samples: Vec<f64> = (0..m).map(|j| t.eval(b.to_f64() * j as f64 / m as f64)).collect();
        let back = TrigInterpolant::from_samples(b, &samples)?;
        let dev = back.coeffs().iter().zip(&coeffs).map(|(a, c)| (a - c).norm()).fold(0.0, f64::max);
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        repro = repro.max(dev / scale);
    }
    let mut dft: f64 = 0.0;
    for (n, b, d) in [(32usize, rat(2, 1), 5usize), (16, rat(3, 2), 4), (32, rat(5, 4), 3), (8, rat(2, 1), 3)] {
        let cfg = validate_config(n, b, d)?;
        let basis = build_gram_basis(d)?;
        let table = build_blend_table(&ShapeFamily::reg_beta_default(d)?, &basis, &cfg)?;
        let f = SampledFunction::from_fn(&cfg, |x| (2.0 * x).exp() * (7.0 * x).sin() + x)?;
        let ext = build_extension(&f, &table, &basis, &cfg)?;
        let fast = dft_coeffs(&ext)?;
        let scale = ext.samples().iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let slow = naive_dft(ext.samples());
        dft = dft.max(fast.coeffs().iter().zip(&slow).map(|(a, c)| (a - c).norm()).fold(0.0, f64::max) / scale);
    }
    outcome(repro <= 1e-12 && dft <= 1e-13, format!("reproduction {repro:.1e}, naive DFT {dft:.1e}"))
}

fn smooth_rates(ds: &[usize], bs: &[Rational]) -> Result<Outcome> {
    let f = function("smooth-osc", &[])?;
    let window = dyadic(9, 11);
    let mut ok = true;
    let mut details = Vec::new();
    for &b in bs {
        for &d in ds {
            let rows = sweep(&f, d, b, dyadic(8, 11))?;
            let mean = mean_noc(&rows, &window).unwrap_or(f64::NAN);
            let pass = (mean - d as f64).abs() <= 0.5;
            ok &= pass;
            details.push(format!("b={b} d={d} mean noc {mean:.2}{}", if pass { "" } else { " (!)" }));
        }
    }
    outcome(ok, details.join("; "))
}

fn c5_abspow() -> Result<Outcome> {
    let f = function("abspow", &[("p", 3.5)])?;
    let window = dyadic(10, 12);
    let mut ok = true;
    let mut details = Vec::new();
    for d in [4, 5] {
        let rows = sweep(&f, d, rat(2, 1), dyadic(9, 12))?;
        ok &= window.iter().all(|&n| (noc_at(&rows, n) - 3.5).abs() <= 0.3);
        details.push(format!("d={d} noc {}", fmt_nocs(&rows, &window)));
    }
    outcome(ok, details.join("; "))
}

fn c6_oscillatory() -> Result<Outcome> {
    let f = function("xsin", &[])?;
    let window = dyadic(13, 14);
    let mut ok = true;
    let mut details = Vec::new();
    for d in [3, 4, 5] {
        let rows = sweep(&f, d, rat(2, 1), dyadic(8, 14))?;
        ok &= window.iter().all(|&n| (noc_at(&rows, n) - 0.7).abs() <= 0.15);
        details.push(format!("d={d} noc {}", fmt_nocs(&rows, &window)));
    }
    outcome(ok, format!("{} at n=2^13,2^14", details.join("; ")))
}

fn c7_beta_sweep() -> Result<Outcome> {
    let window = dyadic(10, 12);
    let mut ok = true;
    let mut details = Vec::new();
    for beta in [0.2, 0.4, 0.8] {
        let f = function("endpoint-pow", &[("beta", beta)])?;
        let rows = sweep(&f, 5, rat(2, 1), dyadic(9, 12))?;
        ok &= window.iter().all(|&n| (noc_at(&rows, n) - (3.0 + beta)).abs() <= 0.3);
        details.push(format!("beta={beta} noc {}", fmt_nocs(&rows, &window)));
    }
    outcome(ok, details.join("; "))
}

fn c9_sup_norm() -> Result<Outcome> {
    let cfg = validate_config(32, rat(2, 1), 5)?;
    let basis = build_gram_basis(5)?;
    let herm = continuation_sup_norm(&build_blend_table(&ShapeFamily::Hermite, &basis, &cfg)?, 4, Side::Right)?;
    let beta = continuation_sup_norm(&build_blend_table(&ShapeFamily::reg_beta_default(5)?, &basis, &cfg)?, 4, Side::Right)?;
    outcome(
        (herm - 2627.0).abs() <= 0.05 * 2627.0 && beta <= herm / 20.0,
        format!("hermite {herm:.1}, beta {beta:.2} (ratio {:.0}), n=32", herm / beta),
    )
}

/// Solves at size `n`, checks the boundary conditions, returns `e_n`.
fn bvp_run(prob: &BvpProblem, family: &ShapeFamily, n: usize, bc_worst: &mut f64) -> Result<f64> {
    let cfg = validate_config(n, rat(2, 1), 5)?;
    let sol = solve_bvp(prob, &cfg, family)?;
    let (r0, r1) = sol.boundary_residuals(prob);
    *bc_worst = bc_worst.max((r0.abs() + r1.abs()) / (1.0 + prob.left.c.abs() + prob.right.c.abs()));
    bvp_error(prob, &sol, 1 << 17)
}

fn within_decade(e: f64, target: f64) -> bool {
    (e.log10() - target.log10()).abs() <= 1.0
}

struct BvpResults {
    genfc_2_11: f64,
    bc_worst: f64,
}

fn c10_bvp(results: &mut BvpResults) -> Result<Outcome> {
    let prob = coskx_problem(0.1, 100.0)?;
    let fam = ShapeFamily::reg_beta_default(5)?;
    let e8 = bvp_run(&prob, &fam, 1 << 8, &mut results.bc_worst)?;
    let e9 = bvp_run(&prob, &fam, 1 << 9, &mut results.bc_worst)?;
    let e10 = bvp_run(&prob, &fam, 1 << 10, &mut results.bc_worst)?;
    let noc9 = (e8 / e9).log2();
    outcome(
        within_decade(e9, 2.66e-8) && (noc9 - 6.72).abs() <= 1.0 && within_decade(e10, 2.19e-10),
        format!("e(2^9) {e9:.2e} [2.66e-8], noc {noc9:.2} [6.72], e(2^10) {e10:.2e} [2.19e-10]"),
    )
}

fn c11_stagnation(results: &mut BvpResults) -> Result<Outcome> {
    let prob = coskx_problem(0.1, 100.0)?;
    let n = 1 << 11;
    let gen = bvp_run(&prob, &ShapeFamily::reg_beta_default(5)?, n, &mut results.bc_worst)?;
    let modfc = bvp_run(&prob, &ShapeFamily::Hermite, n, &mut results.bc_worst)?;
    results.genfc_2_11 = gen;
    outcome(modfc >= 10.0 * gen, format!("n=2^11: ModFC {modfc:.2e} vs GenFC {gen:.2e} (ratio {:.0})", modfc / gen))
}

fn c12_near_singular(results: &mut BvpResults) -> Result<Outcome> {
    let prob = euler_log_problem(0.02)?;
    let n = 1 << 11;
    let gen = bvp_run(&prob, &ShapeFamily::reg_beta_default(5)?, n, &mut results.bc_worst)?;
    let modfc = bvp_run(&prob, &ShapeFamily::Hermite, n, &mut results.bc_worst)?;
    let bc = results.bc_worst;
    outcome(
        within_decade(gen, 3.42e-12) && within_decade(modfc, 2.90e-10) && bc <= 1e-11,
        format!("n=2^11: GenFC {gen:.2e} [3.42e-12], ModFC {modfc:.2e} [2.90e-10]; worst BC residual over all BVP runs {bc:.1e}"),
    )
}

fn c13_hermite_equivalence() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let terms: Vec<(f64, f64, f64)> = (0..4)
            .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(0.5..8.0), rng.gen_range(0.0..6.3)))
            .collect();
        let f = move |x: f64| terms.iter().map(|(a, k, p)| a * (k * x + p).cos()).sum::<f64>();
        for d in [3, 5] {
            for n in [1 << 6, 1 << 8] {
                let cfg = validate_config(n, rat(2, 1), d)?;
                worst = worst.max(hermite_equivalence_error(&f, &cfg)?);
            }
        }
    }
    outcome(worst <= 1e-10, format!("max relative deviation {worst:.1e} over 10 functions, d in {{3,5}}, n in {{2^6,2^8}}"))
}

fn main() -> ExitCode {
    let mut bvp = BvpResults { genfc_2_11: f64::NAN, bc_worst: 0.0 };
    let criteria: Vec<(usize, &str, Box<dyn FnOnce(&mut BvpResults) -> Result<Outcome>>)> = vec![
        (1, "basis correctness", Box::new(|_| c1_basis())),
        (2, "shape-family endpoint conditions", Box::new(|_| c2_shapes())),
        (3, "interpolation exactness", Box::new(|_| c3_interpolation())),
        (4, "smooth-function rates", Box::new(|_| smooth_rates(&[3, 4, 5], &[rat(2, 1)]))),
        (5, "limited-regularity rate", Box::new(|_| c5_abspow())),
        (6, "oscillatory-singular rate", Box::new(|_| c6_oscillatory())),
        (7, "beta sweep", Box::new(|_| c7_beta_sweep())),
        (8, "b-independence", Box::new(|_| smooth_rates(&[4], &[rat(2, 1), rat(3, 2), rat(5, 4)]))),
        (9, "sup-norm reduction", Box::new(|_| c9_sup_norm())),
        (10, "BVP GenFC accuracy", Box::new(c10_bvp)),
        (11, "BVP ModFC stagnation vs GenFC", Box::new(c11_stagnation)),
        (12, "BVP near-singular problem", Box::new(c12_near_singular)),
        (13, "GenFC contains ModFC", Box::new(|_| c13_hermite_equivalence())),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let (passed, detail) = match run(&mut bvp) {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_FAILURES.contains(&id);
        let tag = match (passed, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {id:>2} {tag}: {name} -- {detail} [{secs:.1}s]");
        if !passed && !known {
            unexpected.push(id);
        }
        if passed && known {
            println!("             note: criterion {id} is listed as a known failure but passed");
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
