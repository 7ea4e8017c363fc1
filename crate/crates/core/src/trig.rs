//! Trigonometric interpolation of periodic data on the extended grid.
//!
//! Coefficients are indexed by `l = -M/2 .. M/2 - 1` where `M = n b` is even;
//! the Nyquist mode `l = -M/2` is kept unpaired and the real part of the
//! synthesized sum is returned.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::continuation::ExtendedData;
use crate::error::{FcError, Result};
use crate::grid::{FcConfig, Rational};

/// Default size of the reference grid `z_j = j/N` used for error measurement.
pub const DEFAULT_REF_GRID: usize = 1 << 17;

#[derive(Debug, Clone, PartialEq)]
pub struct TrigInterpolant {
    period: Rational,
    /// `coeffs[l + M/2] = c_l`.
    coeffs: Vec<Complex64>,
}

impl TrigInterpolant {
    /// Interpolant of `samples` taken at `x_j = j b / M`.
    pub fn from_samples(period: Rational, samples: &[f64]) -> Result<Self> {
        let m = samples.len();
        if m < 2 || m % 2 != 0 {
            return Err(FcError::LengthMismatch {
                expected: m + (m % 2),
                got: m,
            });
        }
        let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        FftPlanner::new().plan_fft_forward(m).process(&mut buf);
        let scale = 1.0 / m as f64;
        let half = m / 2;
        // FFT bin k holds mode k for k < M/2 and mode k - M otherwise.
        let coeffs = (0..m).map(|i| buf[(i + half) % m] * scale).collect();
        Ok(TrigInterpolant { period, coeffs })
    }

    /// Builds an interpolant from coefficients ordered `l = -M/2 .. M/2 - 1`.
    pub fn from_coeffs(period: Rational, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 || coeffs.len() % 2 != 0 {
            return Err(FcError::LengthMismatch {
                expected: coeffs.len() + (coeffs.len() % 2),
                got: coeffs.len(),
            });
        }
        Ok(TrigInterpolant { period, coeffs })
    }

    pub fn period(&self) -> Rational {
        self.period
    }

    pub fn num_modes(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_mode(&self) -> i64 {
        -(self.coeffs.len() as i64 / 2)
    }

    pub fn max_mode(&self) -> i64 {
        self.coeffs.len() as i64 / 2 - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `c_l`, zero outside the stored mode range.
    pub fn coeff(&self, l: i64) -> Complex64 {
        if l < self.min_mode() || l > self.max_mode() {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[(l - self.min_mode()) as usize]
    }

    /// `Re sum_l c_l e^{2 pi i l x / b}` by direct summation.
    pub fn eval(&self, x: f64) -> f64 {
        let b = self.period.to_f64();
        let phase = x / b;
        // Neumaier-compensated accumulation of the real parts.
        let mut sum = 0.0;
        let mut comp = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let l = self.min_mode() + i as i64;
            let frac = (l as f64 * phase).rem_euclid(1.0);
            let (s, co) = (2.0 * PI * frac).sin_cos();
            let term = c.re * co - c.im * s;
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
        }
        sum + comp
    }

    /// Values at `x_k = k b / m`, `k = 0..m`, by zero-padded inverse transform.
    /// `m` must be a multiple of the number of modes.
    pub fn eval_uniform(&self, m: usize) -> Result<Vec<f64>> {
        let modes = self.num_modes();
        if m == 0 || m % modes != 0 {
            return Err(FcError::LengthMismatch {
                expected: modes * (m / modes).max(1),
                got: m,
            });
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let l = self.min_mode() + i as i64;
            buf[l.rem_euclid(m as i64) as usize] = c;
        }
        FftPlanner::new().plan_fft_inverse(m).process(&mut buf);
        Ok(buf.into_iter().map(|z| z.re).collect())
    }

    /// Derivative interpolant: `c_l -> (2 pi i l / b) c_l`.
    pub fn derivative(&self) -> TrigInterpolant {
        let w = 2.0 * PI / self.period.to_f64();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let l = self.min_mode() + i as i64;
                c * Complex64::new(0.0, w * l as f64)
            })
            .collect();
        TrigInterpolant {
            period: self.period,
            coeffs,
        }
    }

    /// Values on the reference grid `z_j = j/N`, `j = 0..=N`. Uses the padded
    /// transform when `b N` is an integer multiple of the mode count.
    pub fn eval_reference_grid(&self, ref_grid: usize) -> Result<Vec<f64>> {
        if ref_grid < 2 {
            return Err(FcError::LengthMismatch {
                expected: 2,
                got: ref_grid,
            });
        }
        let fine = self.period.times_integer(ref_grid as i64).map(|m| m as usize);
        match fine {
            Some(m) if m % self.num_modes() == 0 => {
                let mut v = self.eval_uniform(m)?;
                v.truncate(ref_grid + 1);
                Ok(v)
            }
            _ => Ok((0..=ref_grid).map(|j| self.eval(j as f64 / ref_grid as f64)).collect()),
        }
    }
}

pub fn dft_coeffs(data: &ExtendedData) -> Result<TrigInterpolant> {
    let cfg = data.cfg();
    if data.samples().len() != cfg.total_points() {
        return Err(FcError::LengthMismatch {
            expected: cfg.total_points(),
            got: data.samples().len(),
        });
    }
    TrigInterpolant::from_samples(cfg.b(), data.samples())
}

/// Evaluates `t` at arbitrary points of `[0, b)` by direct summation.
pub fn eval_interpolant(t: &TrigInterpolant, points: &[f64]) -> Result<Vec<f64>> {
    let b = t.period().to_f64();
    points
        .iter()
        .map(|&x| {
            if !(0.0..b).contains(&x) {
                return Err(FcError::DomainError { x, lo: 0.0, hi: b });
            }
            Ok(t.eval(x))
        })
        .collect()
}

/// Cardinal function of node `j` on the grid `x_k = k/n`, `k = 0..points`,
/// with period `points / n`.
///
/// For an even number of points this is `sin(pi u) cot(pi u / points) / points`
/// with `u = n x - j`; for an odd number `sin(pi u) csc(pi u / points) / points`.
pub fn lagrange_kernel_on_grid(j: usize, x: f64, n: usize, points: usize) -> Result<f64> {
    if j >= points {
        return Err(FcError::IndexOutOfRange {
            index: j as i64,
            limit: points as i64,
        });
    }
    let u = x * n as f64 - j as f64;
    let np = points as f64;
    let arg = PI * u / np;
    if u.rem_euclid(np) == 0.0 {
        return Ok(1.0);
    }
    let s = (PI * u).sin();
    Ok(if points % 2 == 0 {
        s * arg.cos() / arg.sin() / np
    } else {
        s / arg.sin() / np
    })
}

/// Cardinal function `L_j^{(n+c)}` of the extended grid.
pub fn lagrange_kernel(j: usize, x: f64, cfg: &FcConfig) -> Result<f64> {
    lagrange_kernel_on_grid(j, x, cfg.n(), cfg.total_points())
}

/// `max_j |a_j - e_j| / max_j |e_j|`.
pub fn relative_sup_error(approx: &[f64], exact: &[f64]) -> Result<f64> {
    if approx.len() != exact.len() {
        return Err(FcError::LengthMismatch {
            expected: exact.len(),
            got: approx.len(),
        });
    }
    let denom = exact.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if denom == 0.0 {
        return Err(FcError::ZeroFunction);
    }
    let num = approx
        .iter()
        .zip(exact)
        .fold(0.0f64, |m, (a, e)| m.max((a - e).abs()));
    Ok(num / denom)
}

/// Relative sup-norm error of `t` against `f` on `z_j = j/N`, `j = 0..=N`.
pub fn approx_error(f: impl Fn(f64) -> f64, t: &TrigInterpolant, ref_grid: usize) -> Result<f64> {
    let approx = t.eval_reference_grid(ref_grid)?;
    let exact: Vec<f64> = (0..=ref_grid).map(|j| f(j as f64 / ref_grid as f64)).collect();
    relative_sup_error(&approx, &exact)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub e_n: f64,
    pub noc_n: Option<f64>,
}

impl ConvergenceRow {
    pub fn new(n: usize, e_n: f64) -> Self {
        ConvergenceRow { n, e_n, noc_n: None }
    }
}

/// Fills `noc_n = log2(e_{n/2} / e_n)` for every row after the first.
pub fn noc(rows: &[ConvergenceRow]) -> Result<Vec<ConvergenceRow>> {
    let mut out = rows.to_vec();
    if let Some(first) = out.first_mut() {
        first.noc_n = None;
    }
    for i in 1..out.len() {
        if out[i].n != 2 * out[i - 1].n {
            return Err(FcError::NonDyadicSequence(out[i].n));
        }
        out[i].noc_n = Some((out[i - 1].e_n / out[i].e_n).log2());
    }
    Ok(out)
}
