//! Generalized FC-Gram Fourier continuation.
//!
//! A function sampled on `x_j = j/n`, `j = 0..=n`, is extended to a smooth
//! `b`-periodic function by projecting the `d` samples at each edge onto
//! Gram polynomials and blending each projection to zero over `[1, b]`
//! with a selectable shape family. The extended samples are interpolated by
//! a trigonometric polynomial; the same machinery drives a spectral solver
//! for linear second-order boundary value problems.

pub mod bvp;
pub mod continuation;
pub mod error;
pub mod gram;
pub mod grid;
pub mod poly;
pub mod shape;
pub mod study;
pub mod trig;

pub use continuation::{build_extension, ExtendedData, SampledFunction};
pub use error::{FcError, Result};
pub use gram::{build_gram_basis, GramBasis};
pub use grid::{validate_config, FcConfig, Rational};
pub use shape::{build_blend_table, BlendTable, ShapeFamily, Side};
pub use trig::{dft_coeffs, TrigInterpolant};
