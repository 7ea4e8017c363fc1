//! Continues samples of a non-periodic function to a periodic one and measures
//! the trigonometric interpolant against the function on a fine grid.

use fcgram::trig::approx_error;
use fcgram::{build_blend_table, build_extension, build_gram_basis, dft_coeffs, validate_config, Rational, SampledFunction, ShapeFamily};

fn main() -> fcgram::Result<()> {
    let f = |x: f64| (3.0 * x).exp() * (7.0 * x).sin() + x;
    let d = 5;
    let basis = build_gram_basis(d)?;
    let family = ShapeFamily::reg_beta_default(d)?;
    for n in [32, 64, 128, 256] {
        let cfg = validate_config(n, Rational::integer(2)?, d)?;
        let table = build_blend_table(&family, &basis, &cfg)?;
        let samples = SampledFunction::from_fn(&cfg, f)?;
        let ext = build_extension(&samples, &table, &basis, &cfg)?;
        let interp = dft_coeffs(&ext)?;
        let err = approx_error(f, &interp, 1 << 14)?;
        println!("n = {n:4}  c = {:4}  modes = {:4}  e_n = {err:.3e}", cfg.c(), interp.num_modes());
    }
    Ok(())
}
