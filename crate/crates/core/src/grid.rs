//! Discretization parameters and the extended equispaced grid.
//!
//! The physical interval is `[0, 1]` with `n` panels; the periodic extension
//! lives on `[0, b)` with `b > 1` rational. Admissibility (`n·b` an even
//! integer, `n >= d - 1`) is checked in exact integer arithmetic.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{FcError, Result};

/// Largest supported number of Gram polynomials.
pub const MAX_BASIS_SIZE: usize = 12;

/// Positive rational number in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(FcError::Parse("zero denominator".into()));
        }
        let r = Ratio::new(numerator, denominator);
        if *r.numer() <= 0 {
            return Err(FcError::BadPeriod(format!("{numerator}/{denominator}")));
        }
        Ok(Rational(r))
    }

    pub fn integer(value: i64) -> Result<Self> {
        Self::new(value, 1)
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator() as f64 / self.denominator() as f64
    }

    /// `self * k` if it is an integer.
    pub fn times_integer(&self, k: i64) -> Option<i64> {
        let num = self.numerator().checked_mul(k)?;
        (num % self.denominator() == 0).then(|| num / self.denominator())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator() == 1 {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

impl FromStr for Rational {
    type Err = FcError;

    /// Accepts `p/q`, an integer, or a terminating decimal such as `1.25`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || FcError::Parse(format!("cannot parse `{s}` as a rational"));
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            return Rational::new(p, q);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let frac_val: i64 = frac.parse().map_err(|_| bad())?;
            let den = 10i64.pow(frac.len() as u32);
            return Rational::new(int * den + frac_val, den);
        }
        let p: i64 = s.parse().map_err(|_| bad())?;
        Rational::new(p, 1)
    }
}

/// Discretization parameters together with every derived grid quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct FcConfig {
    n: usize,
    b: Rational,
    d: usize,
    c: usize,
    total_points: usize,
}

impl FcConfig {
    /// Number of panels on `[0, 1]`.
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn b(&self) -> Rational {
        self.b
    }
    /// Number of Gram polynomials.
    pub fn d(&self) -> usize {
        self.d
    }
    /// Number of grid points strictly inside `(1, b)`.
    pub fn c(&self) -> usize {
        self.c
    }
    /// `n·b`, the length of every periodic data vector and transform.
    pub fn total_points(&self) -> usize {
        self.total_points
    }
    pub fn h(&self) -> f64 {
        1.0 / self.n as f64
    }
    /// Width `(d-1)/n` of the boundary matching strip.
    pub fn delta(&self) -> f64 {
        (self.d - 1) as f64 / self.n as f64
    }
    pub fn b_f64(&self) -> f64 {
        self.b.to_f64()
    }

    /// Grid point `x_j = j·b/(n+c+1)`. Since `(n+c+1)/b = n` this is `j/n`,
    /// formed with a single rounding so every module sees identical values.
    pub fn point(&self, j: usize) -> f64 {
        j as f64 / self.n as f64
    }

    /// Extension grid points `x_{n+1} .. x_{n+c}`.
    pub fn extension_points(&self) -> Vec<f64> {
        (self.n + 1..=self.n + self.c).map(|j| self.point(j)).collect()
    }
}

pub fn validate_config(n: usize, b: Rational, d: usize) -> Result<FcConfig> {
    if !(2..=MAX_BASIS_SIZE).contains(&d) {
        return Err(FcError::BadBasisSize(d));
    }
    if b.numerator() <= b.denominator() {
        return Err(FcError::BadPeriod(b.to_string()));
    }
    let reject = |reason| FcError::NotInAdmissibleSet {
        n,
        b: b.to_string(),
        d,
        reason,
    };
    if n == 0 || n < d - 1 {
        return Err(reject("n must satisfy n >= d - 1"));
    }
    let nb = b
        .times_integer(n as i64)
        .ok_or_else(|| reject("n·b is not an integer"))?;
    if nb % 2 != 0 {
        return Err(reject("n·b must be even"));
    }
    let nb = nb as usize;
    // nb > n because b > 1, so c >= 0; c = 0 leaves no extension points.
    let c = nb - n - 1;
    if c < 1 {
        return Err(reject("extension interval holds no grid points (c < 1)"));
    }
    Ok(FcConfig {
        n,
        b,
        d,
        c,
        total_points: nb,
    })
}

/// The full periodic grid `x_0 .. x_{n+c}` on `[0, b)`.
pub fn main_grid(cfg: &FcConfig) -> Vec<f64> {
    (0..cfg.total_points()).map(|j| cfg.point(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn derived_quantities_for_b2() {
        let cfg = validate_config(64, r(2, 1), 5).unwrap();
        assert_eq!(cfg.c(), 63);
        assert_eq!(cfg.total_points(), 128);
        assert_eq!(cfg.h(), 1.0 / 64.0);
        assert_eq!(cfg.delta(), 4.0 / 64.0);
    }

    #[test]
    fn fractional_period() {
        let cfg = validate_config(64, r(3, 2), 4).unwrap();
        assert_eq!(cfg.c(), 31);
        assert_eq!(cfg.total_points(), 96);
    }

    #[test]
    fn n_lower_bound() {
        assert!(validate_config(4, r(2, 1), 5).is_ok());
        assert!(matches!(
            validate_config(3, r(2, 1), 5),
            Err(FcError::NotInAdmissibleSet { .. })
        ));
    }

    #[test]
    fn rejections() {
        // n·b = 7.5
        assert!(matches!(
            validate_config(5, r(3, 2), 3),
            Err(FcError::NotInAdmissibleSet { .. })
        ));
        // n·b = 15, odd
        assert!(matches!(
            validate_config(10, r(3, 2), 3),
            Err(FcError::NotInAdmissibleSet { .. })
        ));
        assert!(matches!(validate_config(8, r(1, 1), 3), Err(FcError::BadPeriod(_))));
        assert!(matches!(validate_config(8, r(3, 4), 3), Err(FcError::BadPeriod(_))));
        assert!(matches!(validate_config(8, r(2, 1), 1), Err(FcError::BadBasisSize(1))));
        assert!(matches!(validate_config(64, r(2, 1), 13), Err(FcError::BadBasisSize(13))));
    }

    #[test]
    fn admissibility_is_exact_at_large_n() {
        // 2^40 · 5/4 is an even integer; no floating rounding involved.
        let n = 1usize << 40;
        let cfg = validate_config(n, r(5, 4), 5).unwrap();
        assert_eq!(cfg.total_points(), 5 * (1usize << 38));
    }

    #[test]
    fn small_grid_values() {
        let cfg = validate_config(4, r(2, 1), 3).unwrap();
        assert_eq!(main_grid(&cfg), vec![0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75]);
    }

    #[test]
    fn grid_layout() {
        for (n, b) in [(64, r(2, 1)), (64, r(3, 2)), (128, r(5, 4))] {
            let cfg = validate_config(n, b, 4).unwrap();
            let x = main_grid(&cfg);
            assert_eq!(x.len(), cfg.total_points());
            assert_eq!(x[n], 1.0);
            let step = b.to_f64() / cfg.total_points() as f64;
            for w in x.windows(2) {
                assert!((w[1] - w[0] - step).abs() <= 4.0 * f64::EPSILON);
            }
            assert!(x[..=n].iter().all(|&v| (0.0..=1.0).contains(&v)));
            assert!(x[n + 1..].iter().all(|&v| v > 1.0 && v < b.to_f64()));
        }
    }

    #[test]
    fn parse_rational() {
        assert_eq!("3/2".parse::<Rational>().unwrap(), r(3, 2));
        assert_eq!("6/4".parse::<Rational>().unwrap(), r(3, 2));
        assert_eq!("2".parse::<Rational>().unwrap(), r(2, 1));
        assert_eq!("1.25".parse::<Rational>().unwrap(), r(5, 4));
        assert!("x/2".parse::<Rational>().is_err());
        assert_eq!(r(10, 4).to_string(), "5/2");
    }
}
