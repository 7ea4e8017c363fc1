//! Dense polynomials in the monomial basis, coefficients in ascending order.

/// Horner evaluation of `sum_k coeffs[k] x^k`.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Coefficients of the `m`-th derivative.
pub fn derivative(coeffs: &[f64], m: usize) -> Vec<f64> {
    if m >= coeffs.len() {
        return Vec::new();
    }
    coeffs
        .iter()
        .enumerate()
        .skip(m)
        .map(|(k, &c)| c * falling_factorial(k, m))
        .collect()
}

/// `k (k-1) ... (k-m+1)` as a float.
pub fn falling_factorial(k: usize, m: usize) -> f64 {
    (0..m).fold(1.0, |acc, i| acc * (k - i) as f64)
}

pub fn factorial(m: usize) -> f64 {
    falling_factorial(m, m)
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64).round()
}
