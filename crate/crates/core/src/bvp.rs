//! Fourier-continuation solver for linear two-point boundary value problems
//!
//! ```text
//! u'' + P u' + Q u + R = 0  on (0, 1),
//! a0 u(0) - b0 u'(0) = c0,   a1 u(1) + b1 u'(1) = c1.
//! ```
//!
//! The coefficient functions are continued to 2-periodic functions, the
//! periodic equation is collocated in Fourier space for
//! `v(x) = sum_{l=-n}^{n-1} v_l e^{pi i l x}` (a `4n x 2n` system solved in
//! least squares), and two homogeneous solutions restore the boundary
//! conditions: `u = Re v + xi1 h1 + xi2 h2`.

use std::f64::consts::PI;
use std::sync::Arc;

use faer::linalg::solvers::{Qr, SolveLstsq};
use faer::Mat;
use num_complex::Complex64;

use crate::continuation::{build_extension, SampledFunction};
use crate::error::{FcError, Result};
use crate::gram::{build_gram_basis, GramBasis};
use crate::grid::FcConfig;
use crate::shape::{build_blend_table, BlendTable, ShapeFamily};
use crate::trig::{dft_coeffs, relative_sup_error, TrigInterpolant};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A homogeneous solution and its first derivative.
#[derive(Clone)]
pub struct Homogeneous {
    pub value: RealFn,
    pub deriv: RealFn,
}

impl Homogeneous {
    pub fn new(value: impl Fn(f64) -> f64 + Send + Sync + 'static, deriv: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Homogeneous {
            value: Arc::new(value),
            deriv: Arc::new(deriv),
        }
    }
}

/// Robin data `a u - b u' = c` at `x = 0` or `a u + b u' = c` at `x = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Robin {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Robin {
    pub fn dirichlet(value: f64) -> Self {
        Robin { a: 1.0, b: 0.0, c: value }
    }
}

#[derive(Clone)]
pub struct BvpProblem {
    pub p: RealFn,
    pub q: RealFn,
    pub r: RealFn,
    pub left: Robin,
    pub right: Robin,
    pub h1: Homogeneous,
    pub h2: Homogeneous,
    pub exact_solution: Option<RealFn>,
}

impl BvpProblem {
    fn left_op(&self, value: f64, deriv: f64) -> f64 {
        self.left.a * value - self.left.b * deriv
    }

    fn right_op(&self, value: f64, deriv: f64) -> f64 {
        self.right.a * value + self.right.b * deriv
    }

    /// Boundary operators applied to `h1`, `h2`.
    pub fn boundary_matrix(&self) -> [[f64; 2]; 2] {
        let h = [&self.h1, &self.h2];
        let row0 = h.map(|hk| self.left_op((hk.value)(0.0), (hk.deriv)(0.0)));
        let row1 = h.map(|hk| self.right_op((hk.value)(1.0), (hk.deriv)(1.0)));
        [row0, row1]
    }

    /// 2-norm condition number of the boundary matrix.
    pub fn boundary_condition_number(&self) -> f64 {
        let [[a, b], [c, d]] = self.boundary_matrix();
        let fro2 = a * a + b * b + c * c + d * d;
        let det = (a * d - b * c).abs();
        if det == 0.0 {
            return f64::INFINITY;
        }
        // singular values s1 >= s2 satisfy s1^2 + s2^2 = fro2 and s1 s2 = det
        let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
        let s1 = ((fro2 + disc) / 2.0).sqrt();
        let s2 = det / s1;
        s1 / s2
    }

    /// Boundary residuals `(a0 u(0) - b0 u'(0) - c0, a1 u(1) + b1 u'(1) - c1)`.
    pub fn boundary_residuals(&self, u0: f64, du0: f64, u1: f64, du1: f64) -> (f64, f64) {
        (self.left_op(u0, du0) - self.left.c, self.right_op(u1, du1) - self.right.c)
    }
}

/// Fourier coefficients `c_m` of a continued coefficient function, zero-padded
/// outside `|m| <= n - 1`. Lookups are valid for `|m| <= 3n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffLookup {
    n: usize,
    /// `coeffs[m + n - 1]` for `|m| <= n - 1`.
    coeffs: Vec<Complex64>,
}

impl CoeffLookup {
    /// Keeps modes `|m| <= n - 1` of a `2n`-mode interpolant.
    pub fn from_interpolant(t: &TrigInterpolant) -> Self {
        let n = t.num_modes() / 2;
        let coeffs = (-(n as i64) + 1..=n as i64 - 1).map(|m| t.coeff(m)).collect();
        CoeffLookup { n, coeffs }
    }

    /// Lookup from explicit coefficients for `m = -(n-1) ..= n-1`.
    pub fn from_coeffs(n: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 2 * n - 1 {
            return Err(FcError::LengthMismatch {
                expected: 2 * n - 1,
                got: coeffs.len(),
            });
        }
        Ok(CoeffLookup { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, m: i64) -> Result<Complex64> {
        let n = self.n as i64;
        if m.abs() > 3 * n {
            return Err(FcError::IndexOutOfRange { index: m, limit: 3 * n });
        }
        if m.abs() >= n {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.coeffs[(m + n - 1) as usize])
    }
}

fn require_period_two(cfg: &FcConfig) -> Result<()> {
    if cfg.b().numerator() != 2 || cfg.b().denominator() != 1 {
        return Err(FcError::BadPeriod(format!("the BVP solver requires b = 2, got {}", cfg.b())));
    }
    Ok(())
}

/// Continues `g` with the given blend table and returns its zero-padded coefficients.
pub fn continue_coefficient(g: &dyn Fn(f64) -> f64, cfg: &FcConfig, basis: &GramBasis, blend: &BlendTable) -> Result<CoeffLookup> {
    require_period_two(cfg)?;
    let samples = SampledFunction::from_fn(cfg, g)?;
    let ext = build_extension(&samples, blend, basis, cfg)?;
    Ok(CoeffLookup::from_interpolant(&dft_coeffs(&ext)?))
}

/// Dense `4n x 2n` mode-collocation matrix. Row `k + 2n` (`-2n <= k <= 2n-1`),
/// column `l + n` (`-n <= l <= n-1`):
/// `(pi i l) P_{k-l} + Q_{k-l}`, minus `(pi k)^2` on the diagonal of the middle block.
pub fn assemble_system(p: &CoeffLookup, q: &CoeffLookup, n: usize) -> Result<Mat<Complex64>> {
    if p.n() != n || q.n() != n {
        return Err(FcError::LengthMismatch { expected: n, got: p.n().min(q.n()) });
    }
    let ni = n as i64;
    let mut a = Mat::<Complex64>::zeros(4 * n, 2 * n);
    for col in 0..2 * n {
        let l = col as i64 - ni;
        let dl = Complex64::new(0.0, PI * l as f64);
        for row in 0..4 * n {
            let k = row as i64 - 2 * ni;
            let m = k - l;
            if m.abs() >= ni {
                // Both lookups are zero-padded here; still validate the index.
                p.get(m)?;
                continue;
            }
            let mut v = dl * p.get(m)? + q.get(m)?;
            if k == l {
                v -= Complex64::new((PI * k as f64).powi(2), 0.0);
            }
            a[(row, col)] = v;
        }
    }
    Ok(a)
}

/// Right-hand side: `-R_k` on the middle block `-n <= k <= n-1`, zero elsewhere.
pub fn assemble_rhs(r: &CoeffLookup, n: usize) -> Result<Vec<Complex64>> {
    let ni = n as i64;
    (0..4 * n)
        .map(|row| {
            let k = row as i64 - 2 * ni;
            if (-ni..ni).contains(&k) {
                Ok(-r.get(k)?)
            } else {
                Ok(Complex64::new(0.0, 0.0))
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct LeastSquares {
    pub solution: Vec<Complex64>,
    pub residual_norm: f64,
}

/// `A x - rhs` for dense `A`.
pub fn residual(a: &Mat<Complex64>, x: &[Complex64], rhs: &[Complex64]) -> Vec<Complex64> {
    let xm = Mat::<Complex64>::from_fn(x.len(), 1, |i, _| x[i]);
    let ax = a * &xm;
    (0..rhs.len()).map(|i| ax[(i, 0)] - rhs[i]).collect()
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Minimizes `||A x - rhs||_2` by Householder QR.
pub fn solve_least_squares(a: &Mat<Complex64>, rhs: &[Complex64]) -> Result<LeastSquares> {
    let (m, ncols) = (a.nrows(), a.ncols());
    if rhs.len() != m {
        return Err(FcError::LengthMismatch { expected: m, got: rhs.len() });
    }
    if m < ncols {
        return Err(FcError::RankDeficient { rank: m, smallest: 0.0 });
    }
    let qr = Qr::new(a.as_ref());
    let r = qr.thin_R();
    let diag: Vec<f64> = (0..ncols).map(|i| r[(i, i)].norm()).collect();
    let largest = diag.iter().cloned().fold(0.0, f64::max);
    let tol = largest * m.max(ncols) as f64 * f64::EPSILON;
    let rank = diag.iter().filter(|&&v| v > tol).count();
    if rank < ncols {
        let smallest = diag.iter().cloned().fold(f64::INFINITY, f64::min);
        return Err(FcError::RankDeficient { rank, smallest });
    }
    let b = Mat::<Complex64>::from_fn(m, 1, |i, _| rhs[i]);
    let x = qr.solve_lstsq(&b);
    let solution: Vec<Complex64> = (0..ncols).map(|i| x[(i, 0)]).collect();
    let residual_norm = norm2(&residual(a, &solution, rhs));
    Ok(LeastSquares { solution, residual_norm })
}

/// Values and first derivatives of `Re v` at `x = 0` and `x = 1`, read off
/// the coefficients `v_l` of `sum_l v_l e^{pi i l x}`.
pub fn periodic_boundary_values(v: &TrigInterpolant) -> (f64, f64, f64, f64) {
    let (mut v0, mut v1, mut dv0, mut dv1) = (0.0, 0.0, 0.0, 0.0);
    for l in v.min_mode()..=v.max_mode() {
        let c = v.coeff(l);
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        // Re(i pi l c) = -pi l Im(c)
        let dc = -PI * l as f64 * c.im;
        v0 += c.re;
        v1 += sign * c.re;
        dv0 += dc;
        dv1 += sign * dc;
    }
    (v0, dv0, v1, dv1)
}

/// Scalars `(xi1, xi2)` so that `Re v + xi1 h1 + xi2 h2` meets both boundary conditions.
pub fn boundary_correction(v: &TrigInterpolant, prob: &BvpProblem) -> Result<(f64, f64)> {
    let [[a, b], [c, d]] = prob.boundary_matrix();
    let det = a * d - b * c;
    let scale = (a.abs() + b.abs()).max(c.abs() + d.abs()).powi(2);
    if !det.is_finite() || det.abs() <= 1e3 * f64::EPSILON * scale {
        return Err(FcError::SingularBoundaryMatrix(det));
    }
    let (v0, dv0, v1, dv1) = periodic_boundary_values(v);
    let (r0, r1) = prob.boundary_residuals(v0, dv0, v1, dv1);
    let (g0, g1) = (-r0, -r1);
    Ok(((g0 * d - b * g1) / det, (a * g1 - c * g0) / det))
}

#[derive(Debug, Clone)]
pub struct BvpSolution {
    pub v_coeffs: Vec<Complex64>,
    pub xi1: f64,
    pub xi2: f64,
    pub residual_norm: f64,
    pub cfg: FcConfig,
}

impl BvpSolution {
    /// The periodic part `v` as a 2-periodic interpolant with modes `-n..n-1`.
    pub fn periodic_part(&self) -> TrigInterpolant {
        TrigInterpolant::from_coeffs(self.cfg.b(), self.v_coeffs.clone()).expect("2n coefficients")
    }

    pub fn eval(&self, prob: &BvpProblem, x: f64) -> f64 {
        self.periodic_part().eval(x) + self.xi1 * (prob.h1.value)(x) + self.xi2 * (prob.h2.value)(x)
    }

    /// `u_n(z_j)` on `z_j = j/N`, `j = 0..=N`.
    pub fn eval_reference_grid(&self, prob: &BvpProblem, ref_grid: usize) -> Result<Vec<f64>> {
        let v = self.periodic_part().eval_reference_grid(ref_grid)?;
        Ok(v.into_iter()
            .enumerate()
            .map(|(j, vj)| {
                let x = j as f64 / ref_grid as f64;
                vj + self.xi1 * (prob.h1.value)(x) + self.xi2 * (prob.h2.value)(x)
            })
            .collect())
    }

    /// Boundary residuals of the assembled `u_n`.
    pub fn boundary_residuals(&self, prob: &BvpProblem) -> (f64, f64) {
        let (v0, dv0, v1, dv1) = periodic_boundary_values(&self.periodic_part());
        let u0 = v0 + self.xi1 * (prob.h1.value)(0.0) + self.xi2 * (prob.h2.value)(0.0);
        let u1 = v1 + self.xi1 * (prob.h1.value)(1.0) + self.xi2 * (prob.h2.value)(1.0);
        let du0 = dv0 + self.xi1 * (prob.h1.deriv)(0.0) + self.xi2 * (prob.h2.deriv)(0.0);
        let du1 = dv1 + self.xi1 * (prob.h1.deriv)(1.0) + self.xi2 * (prob.h2.deriv)(1.0);
        prob.boundary_residuals(u0, du0, u1, du1)
    }
}

/// Intermediate products of a solve, exposed for inspection and testing.
pub struct BvpSystem {
    pub p: CoeffLookup,
    pub q: CoeffLookup,
    pub r: CoeffLookup,
    pub matrix: Mat<Complex64>,
    pub rhs: Vec<Complex64>,
}

pub fn build_bvp_system(prob: &BvpProblem, cfg: &FcConfig, family: &ShapeFamily) -> Result<BvpSystem> {
    require_period_two(cfg)?;
    let basis = build_gram_basis(cfg.d())?;
    let blend = build_blend_table(family, &basis, cfg)?;
    let p = continue_coefficient(&*prob.p, cfg, &basis, &blend)?;
    let q = continue_coefficient(&*prob.q, cfg, &basis, &blend)?;
    let r = continue_coefficient(&*prob.r, cfg, &basis, &blend)?;
    let matrix = assemble_system(&p, &q, cfg.n())?;
    let rhs = assemble_rhs(&r, cfg.n())?;
    Ok(BvpSystem { p, q, r, matrix, rhs })
}

pub fn solve_bvp(prob: &BvpProblem, cfg: &FcConfig, family: &ShapeFamily) -> Result<BvpSolution> {
    let system = build_bvp_system(prob, cfg, family)?;
    let ls = solve_least_squares(&system.matrix, &system.rhs)?;
    drop(system);
    let v = TrigInterpolant::from_coeffs(cfg.b(), ls.solution.clone())?;
    let (xi1, xi2) = boundary_correction(&v, prob)?;
    Ok(BvpSolution {
        v_coeffs: ls.solution,
        xi1,
        xi2,
        residual_norm: ls.residual_norm,
        cfg: cfg.clone(),
    })
}

/// Relative sup-norm error of `u_n` against the exact solution on `z_j = j/N`.
pub fn bvp_error(prob: &BvpProblem, sol: &BvpSolution, ref_grid: usize) -> Result<f64> {
    let exact = prob
        .exact_solution
        .as_ref()
        .ok_or_else(|| FcError::UnknownProblem("problem has no exact solution".into()))?;
    let approx = sol.eval_reference_grid(prob, ref_grid)?;
    let reference: Vec<f64> = (0..=ref_grid).map(|j| exact(j as f64 / ref_grid as f64)).collect();
    relative_sup_error(&approx, &reference)
}
