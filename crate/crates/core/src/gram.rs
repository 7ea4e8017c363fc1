//! Gram polynomials: the polynomials orthonormal under the discrete inner
//! product `<p, q> = sum_j p(y_j) q(y_j)` on `d` equispaced nodes in `[-1, 1]`.
//!
//! The basis is built by modified Gram-Schmidt on the monomials `1, y, .., y^{d-1}`
//! with one reorthogonalization pass. Node values and monomial coefficients
//! are carried through the same sequence of updates, so the coefficient form
//! extends each `p_l` to the whole real line.

use crate::error::{FcError, Result};
use crate::grid::MAX_BASIS_SIZE;
use crate::poly;

#[derive(Debug, Clone, PartialEq)]
pub struct GramBasis {
    d: usize,
    nodes: Vec<f64>,
    /// Row `l` holds the monomial coefficients of `p_l` (length `d`, zero above `l`).
    coeffs: Vec<Vec<f64>>,
    /// `node_values[l][j] = p_l(y_j)`.
    node_values: Vec<Vec<f64>>,
    /// `endpoint_derivs_right[l][m] = p_l^{(m)}(1)`.
    endpoint_derivs_right: Vec<Vec<f64>>,
    /// `endpoint_derivs_left[l][m] = p_l^{(m)}(-1)`.
    endpoint_derivs_left: Vec<Vec<f64>>,
}

/// Equispaced nodes `y_j = -1 + 2j/(d-1)`.
pub fn gram_nodes(d: usize) -> Vec<f64> {
    (0..d)
        .map(|j| -1.0 + 2.0 * j as f64 / (d - 1) as f64)
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn build_gram_basis(d: usize) -> Result<GramBasis> {
    if !(2..=MAX_BASIS_SIZE).contains(&d) {
        return Err(FcError::BadBasisSize(d));
    }
    let nodes = gram_nodes(d);
    let mut values: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut coeffs: Vec<Vec<f64>> = Vec::with_capacity(d);

    for l in 0..d {
        let mut v: Vec<f64> = nodes.iter().map(|&y| y.powi(l as i32)).collect();
        let mut c = vec![0.0; d];
        c[l] = 1.0;
        for _pass in 0..2 {
            for (qv, qc) in values.iter().zip(&coeffs) {
                let r = dot(&v, qv);
                for (vi, qi) in v.iter_mut().zip(qv) {
                    *vi -= r * qi;
                }
                for (ci, qi) in c.iter_mut().zip(qc) {
                    *ci -= r * qi;
                }
            }
        }
        let norm = dot(&v, &v).sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        c.iter_mut().for_each(|x| *x /= norm);
        // Lower-degree components are round-off after orthogonalization; the
        // leading coefficient is 1/norm > 0, fixing the sign convention.
        for x in c.iter_mut().skip(l + 1) {
            *x = 0.0;
        }
        values.push(v);
        coeffs.push(c);
    }

    let endpoint = |y: f64| -> Vec<Vec<f64>> {
        coeffs
            .iter()
            .map(|c| (0..d).map(|m| poly::horner(&poly::derivative(c, m), y)).collect())
            .collect()
    };
    let endpoint_derivs_right = endpoint(1.0);
    let endpoint_derivs_left = endpoint(-1.0);

    Ok(GramBasis {
        d,
        nodes,
        coeffs,
        node_values: values,
        endpoint_derivs_right,
        endpoint_derivs_left,
    })
}

impl GramBasis {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn coeffs(&self, l: usize) -> &[f64] {
        &self.coeffs[l]
    }

    pub fn node_values(&self) -> &[Vec<f64>] {
        &self.node_values
    }

    /// `p_l^{(m)}(1)` for `m < d`.
    pub fn deriv_at_right(&self, l: usize, m: usize) -> f64 {
        self.endpoint_derivs_right[l][m]
    }

    /// `p_l^{(m)}(-1)` for `m < d`.
    pub fn deriv_at_left(&self, l: usize, m: usize) -> f64 {
        self.endpoint_derivs_left[l][m]
    }

    fn check_index(&self, l: usize) -> Result<()> {
        if l >= self.d {
            return Err(FcError::IndexOutOfRange {
                index: l as i64,
                limit: self.d as i64,
            });
        }
        Ok(())
    }

    /// `p_l(y)` for any real `y`.
    pub fn eval(&self, l: usize, y: f64) -> Result<f64> {
        self.check_index(l)?;
        Ok(poly::horner(&self.coeffs[l][..=l], y))
    }

    /// `p_l^{(m)}(y)`; zero whenever `m > l`.
    pub fn eval_deriv(&self, l: usize, m: usize, y: f64) -> Result<f64> {
        self.check_index(l)?;
        if m > l {
            return Ok(0.0);
        }
        Ok(poly::horner(&poly::derivative(&self.coeffs[l][..=l], m), y))
    }

    /// `sum_j samples[j] p_l(y_j)`.
    pub fn discrete_inner(&self, samples: &[f64], l: usize) -> Result<f64> {
        self.check_index(l)?;
        if samples.len() != self.d {
            return Err(FcError::LengthMismatch {
                expected: self.d,
                got: samples.len(),
            });
        }
        Ok(dot(samples, &self.node_values[l]))
    }
}

pub fn eval_gram(basis: &GramBasis, l: usize, y: f64) -> Result<f64> {
    basis.eval(l, y)
}

pub fn eval_gram_deriv(basis: &GramBasis, l: usize, m: usize, y: f64) -> Result<f64> {
    basis.eval_deriv(l, m, y)
}

pub fn discrete_inner(basis: &GramBasis, samples: &[f64], l: usize) -> Result<f64> {
    basis.discrete_inner(samples, l)
}
