//! Boundary projection and assembly of the periodic extended data.

use crate::error::{FcError, Result};
use crate::gram::GramBasis;
use crate::grid::FcConfig;
use crate::shape::{BlendEvaluator, BlendTable, Side};

/// Samples `f(x_j)`, `j = 0..=n`, on the main grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(FcError::LengthMismatch {
                expected: 2,
                got: values.len(),
            });
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(FcError::DomainError {
                x: values[bad],
                lo: f64::MIN,
                hi: f64::MAX,
            });
        }
        Ok(SampledFunction { values })
    }

    /// Samples `f` at `x_j = j/n`.
    pub fn from_fn(cfg: &FcConfig, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new((0..=cfg.n()).map(|j| f(cfg.point(j))).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Interior panel count implied by the sample count.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }
}

/// Periodic data on the extended grid plus the projection coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedData {
    cfg: FcConfig,
    samples: Vec<f64>,
    coeff_left: Vec<f64>,
    coeff_right: Vec<f64>,
}

impl ExtendedData {
    pub fn cfg(&self) -> &FcConfig {
        &self.cfg
    }
    /// All `n + c + 1` values on `x_0 .. x_{n+c}`.
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }
    /// Continuation values at `x_{n+1} .. x_{n+c}`.
    pub fn continuation(&self) -> &[f64] {
        &self.samples[self.cfg.n() + 1..]
    }
    pub fn coeff_left(&self) -> &[f64] {
        &self.coeff_left
    }
    pub fn coeff_right(&self) -> &[f64] {
        &self.coeff_right
    }
}

fn check_samples(f: &SampledFunction, cfg: &FcConfig) -> Result<()> {
    if f.values.len() != cfg.n() + 1 {
        return Err(FcError::LengthMismatch {
            expected: cfg.n() + 1,
            got: f.values.len(),
        });
    }
    Ok(())
}

/// Gram projection coefficients of the `d` samples at each edge.
///
/// `a_L[l] = sum_j f(j h) p_l(y_j)` and `a_R[l] = sum_j f(1 - (d-1-j) h) p_l(y_j)`.
pub fn boundary_coeffs(f: &SampledFunction, basis: &GramBasis, cfg: &FcConfig) -> Result<(Vec<f64>, Vec<f64>)> {
    check_samples(f, cfg)?;
    let d = basis.d();
    let n = cfg.n();
    let left = &f.values[..d];
    let right = &f.values[n + 1 - d..];
    let a_l = (0..d).map(|l| basis.discrete_inner(left, l)).collect::<Result<Vec<_>>>()?;
    let a_r = (0..d).map(|l| basis.discrete_inner(right, l)).collect::<Result<Vec<_>>>()?;
    Ok((a_l, a_r))
}

pub fn build_extension(f: &SampledFunction, blend: &BlendTable, basis: &GramBasis, cfg: &FcConfig) -> Result<ExtendedData> {
    if blend.cfg() != cfg || blend.basis() != basis {
        return Err(FcError::ConfigMismatch);
    }
    let (a_l, a_r) = boundary_coeffs(f, basis, cfg)?;
    let mut samples = Vec::with_capacity(cfg.total_points());
    samples.extend_from_slice(&f.values);
    for j in 0..cfg.c() {
        let mut acc = 0.0;
        for l in 0..basis.d() {
            acc += a_r[l] * blend.right_values()[l][j];
            acc += a_l[l] * blend.left_values()[l][j];
        }
        samples.push(acc);
    }
    Ok(ExtendedData {
        cfg: cfg.clone(),
        samples,
        coeff_left: a_l,
        coeff_right: a_r,
    })
}

/// Number of evaluation points used by [`continuation_sup_norm`].
pub const SUP_NORM_POINTS: usize = 4001;

/// `max |p_l^{R,e}|` (or `p_l^{L,e}`) over a fine equispaced sampling of `[1, b]`,
/// recomputed from the family rather than read from the table.
pub fn continuation_sup_norm(blend: &BlendTable, l: usize, side: Side) -> Result<f64> {
    let cfg = blend.cfg();
    let ev = BlendEvaluator::new(blend.family(), blend.basis(), cfg, l, side)?;
    let b = cfg.b_f64();
    let mut sup: f64 = 0.0;
    for k in 0..SUP_NORM_POINTS {
        let x = 1.0 + (b - 1.0) * k as f64 / (SUP_NORM_POINTS - 1) as f64;
        sup = sup.max(ev.eval(x.min(b))?.abs());
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::build_gram_basis;
    use crate::grid::{validate_config, Rational};
    use crate::shape::{build_blend_table, eta_left, eta_right, ShapeFamily};
    use approx::assert_relative_eq;

    fn setup(n: usize, d: usize, family: &ShapeFamily) -> (GramBasis, FcConfig, BlendTable) {
        let basis = build_gram_basis(d).unwrap();
        let cfg = validate_config(n, Rational::integer(2).unwrap(), d).unwrap();
        let table = build_blend_table(family, &basis, &cfg).unwrap();
        (basis, cfg, table)
    }

    #[test]
    fn constants_project_onto_p0() {
        let basis = build_gram_basis(5).unwrap();
        let cfg = validate_config(32, Rational::integer(2).unwrap(), 5).unwrap();
        let f = SampledFunction::from_fn(&cfg, |_| 1.0).unwrap();
        let (a_l, a_r) = boundary_coeffs(&f, &basis, &cfg).unwrap();
        for a in [&a_l, &a_r] {
            assert_relative_eq!(a[0], 5f64.sqrt(), epsilon = 1e-13);
            assert!(a[1..].iter().all(|v| v.abs() < 1e-13));
        }
    }

    #[test]
    fn left_edge_gram_polynomial_projects_to_unit_vector() {
        let basis = build_gram_basis(4).unwrap();
        let cfg = validate_config(32, Rational::integer(2).unwrap(), 4).unwrap();
        let delta = cfg.delta();
        let f = SampledFunction::from_fn(&cfg, |x| basis.eval(1, 2.0 * x / delta - 1.0).unwrap()).unwrap();
        let (a_l, _) = boundary_coeffs(&f, &basis, &cfg).unwrap();
        for (l, &a) in a_l.iter().enumerate() {
            let target = if l == 1 { 1.0 } else { 0.0 };
            assert!((a - target).abs() < 1e-12, "l = {l}: {a}");
        }
    }

    #[test]
    fn right_coefficient_by_direct_summation() {
        let basis = build_gram_basis(3).unwrap();
        let cfg = validate_config(64, Rational::integer(2).unwrap(), 3).unwrap();
        let f = SampledFunction::from_fn(&cfg, |x| x).unwrap();
        let (_, a_r) = boundary_coeffs(&f, &basis, &cfg).unwrap();
        let expected: f64 = (0..3).map(|j| (1.0 - (2 - j) as f64 / 64.0) / 3f64.sqrt()).sum();
        assert_relative_eq!(a_r[0], expected, epsilon = 1e-14);
    }

    #[test]
    fn interior_copied_and_constant_extension() {
        let fam = ShapeFamily::reg_beta_default(5).unwrap();
        let (basis, cfg, table) = setup(64, 5, &fam);
        let f = SampledFunction::from_fn(&cfg, |_| 1.0).unwrap();
        let ext = build_extension(&f, &table, &basis, &cfg).unwrap();
        assert_eq!(&ext.samples()[..=64], f.values());
        for (j, &x) in cfg.extension_points().iter().enumerate() {
            let expected = eta_right(&fam, &basis, &cfg, 0, x).unwrap() + eta_left(&fam, &basis, &cfg, 0, x).unwrap();
            assert_relative_eq!(ext.continuation()[j], expected, epsilon = 1e-13);
        }
    }

    #[test]
    fn zero_function_has_zero_extension() {
        let (basis, cfg, table) = setup(32, 4, &ShapeFamily::Hermite);
        let f = SampledFunction::from_fn(&cfg, |_| 0.0).unwrap();
        let ext = build_extension(&f, &table, &basis, &cfg).unwrap();
        assert!(ext.samples().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let (basis, cfg, table) = setup(32, 4, &ShapeFamily::Hermite);
        let other = validate_config(64, Rational::integer(2).unwrap(), 4).unwrap();
        let f = SampledFunction::from_fn(&other, |x| x).unwrap();
        assert_eq!(build_extension(&f, &table, &basis, &other), Err(FcError::ConfigMismatch));
        assert!(matches!(
            boundary_coeffs(&f, &basis, &cfg),
            Err(FcError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn polynomial_reproduction_at_right_edge() {
        let d = 5;
        let fam = ShapeFamily::reg_beta_default(d).unwrap();
        let (basis, cfg, _) = setup(64, d, &fam);
        let f = |x: f64| 1.0 - 2.0 * x + 0.5 * x.powi(3) - 3.0 * x.powi(4);
        let s = SampledFunction::from_fn(&cfg, f).unwrap();
        let (_, a_r) = boundary_coeffs(&s, &basis, &cfg).unwrap();
        let n = cfg.n();
        for j in n + 1 - d..=n {
            let x = cfg.point(j);
            let recon: f64 = (0..d)
                .map(|l| a_r[l] * crate::shape::gram_right(&basis, &cfg, l, x).unwrap())
                .sum();
            assert!((recon - f(x)).abs() < 1e-10);
        }
    }

    #[test]
    fn hermite_sup_norm_of_p4() {
        let (_, _, table) = setup(32, 5, &ShapeFamily::Hermite);
        let sup = continuation_sup_norm(&table, 4, Side::Right).unwrap();
        assert!((sup - 2627.0).abs() <= 0.05 * 2627.0, "sup = {sup}");
    }

    #[test]
    fn constant_term_sup_norm_is_bounded() {
        for fam in [ShapeFamily::bump(), ShapeFamily::double_exp(), ShapeFamily::reg_beta_default(5).unwrap()] {
            let (_, _, table) = setup(64, 5, &fam);
            for side in [Side::Left, Side::Right] {
                let sup = continuation_sup_norm(&table, 0, side).unwrap();
                assert!(sup <= 1.0 / 5f64.sqrt() + 1e-15);
            }
        }
    }
}
