//! Trigonometric interpolation against direct summation and cardinal functions.

use num_complex::Complex64;

use fcgram::continuation::{build_extension, SampledFunction};
use fcgram::trig::{eval_interpolant, lagrange_kernel, lagrange_kernel_on_grid, TrigInterpolant};
use fcgram::{build_blend_table, build_gram_basis, dft_coeffs, validate_config, Rational, ShapeFamily};

fn extension(n: usize, b: Rational, d: usize) -> fcgram::ExtendedData {
    let cfg = validate_config(n, b, d).unwrap();
    let basis = build_gram_basis(d).unwrap();
    let table = build_blend_table(&ShapeFamily::reg_beta_default(d).unwrap(), &basis, &cfg).unwrap();
    let f = SampledFunction::from_fn(&cfg, |x| (1.5 * x).cos() + x * x).unwrap();
    build_extension(&f, &table, &basis, &cfg).unwrap()
}

#[test]
fn interpolant_equals_cardinal_sum() {
    for (n, b) in [(16, Rational::integer(2).unwrap()), (16, Rational::new(3, 2).unwrap())] {
        let ext = extension(n, b, 4);
        let cfg = ext.cfg().clone();
        let t = dft_coeffs(&ext).unwrap();
        for &x in &[0.013, 0.37, 0.999, 1.21, 1.4] {
            if x >= cfg.b_f64() {
                continue;
            }
            let cardinal: f64 = ext
                .samples()
                .iter()
                .enumerate()
                .map(|(j, &v)| v * lagrange_kernel(j, x, &cfg).unwrap())
                .sum();
            assert!((cardinal - t.eval(x)).abs() < 1e-12, "x={x}: {cardinal} vs {}", t.eval(x));
        }
    }
}

#[test]
fn interpolation_at_nodes() {
    let ext = extension(32, Rational::new(5, 4).unwrap(), 5);
    let t = dft_coeffs(&ext).unwrap();
    let scale = ext.samples().iter().fold(0.0f64, |a, v| a.max(v.abs()));
    for (j, &v) in ext.samples().iter().enumerate() {
        assert!((t.eval(ext.cfg().point(j)) - v).abs() <= 1e-12 * scale);
    }
}

#[test]
fn cardinal_function_is_a_delta_on_the_grid() {
    for points in [10usize, 11] {
        for j in 0..points {
            for k in 0..points {
                let v = lagrange_kernel_on_grid(j, k as f64 / 4.0, 4, points).unwrap();
                let expected = if j == k { 1.0 } else { 0.0 };
                assert!((v - expected).abs() < 1e-13);
            }
        }
    }
}

#[test]
fn padded_evaluation_matches_direct() {
    let ext = extension(32, Rational::integer(2).unwrap(), 5);
    let t = dft_coeffs(&ext).unwrap();
    let fine = t.eval_uniform(256).unwrap();
    for (k, &v) in fine.iter().enumerate() {
        assert!((v - t.eval(2.0 * k as f64 / 256.0)).abs() < 1e-12);
    }
    let grid = t.eval_reference_grid(100).unwrap();
    for (j, &v) in grid.iter().enumerate() {
        assert!((v - t.eval(j as f64 / 100.0)).abs() < 1e-12);
    }
}

#[test]
fn derivative_of_a_sine() {
    let b = Rational::new(3, 2).unwrap();
    let m = 24;
    let w = 2.0 * std::f64::consts::PI / 1.5;
    let samples: Vec<f64> = (0..m).map(|j| (3.0 * w * 1.5 * j as f64 / m as f64).sin()).collect();
    let t = TrigInterpolant::from_samples(b, &samples).unwrap();
    let dt = t.derivative();
    for &x in &[0.1, 0.8, 1.3] {
        assert!((dt.eval(x) - 3.0 * w * (3.0 * w * x).cos()).abs() < 1e-11);
    }
}

#[test]
fn evaluation_domain() {
    let t = TrigInterpolant::from_coeffs(Rational::integer(2).unwrap(), vec![Complex64::new(1.0, 0.0); 4]).unwrap();
    assert!(eval_interpolant(&t, &[0.0, 1.99]).is_ok());
    assert!(eval_interpolant(&t, &[2.0]).is_err());
    assert!(eval_interpolant(&t, &[-0.1]).is_err());
}
