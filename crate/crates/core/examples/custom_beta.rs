//! Builds a regularized-Beta family from a parameter file and checks the
//! continuation of a polynomial edge against the default parameters.

use fcgram::shape::parse_beta_params;
use fcgram::trig::approx_error;
use fcgram::{build_blend_table, build_extension, build_gram_basis, dft_coeffs, validate_config, Rational, SampledFunction, ShapeFamily};

const PARAMS: &str = "
# ell  mu     sigma_tilde
0      1e-10  0.5
1      1e-10  0.5
2      1e-8   0.5
3      1e-8   0.3
4      1e-6   0.2
";

fn main() -> fcgram::Result<()> {
    let d = 5;
    let custom = ShapeFamily::RegBeta { params: parse_beta_params(PARAMS, d)? };
    custom.validate(d)?;
    let basis = build_gram_basis(d)?;
    let f = |x: f64| (1.0 + x * x).recip();
    for (label, fam) in [("default", ShapeFamily::reg_beta_default(d)?), ("custom", custom)] {
        print!("{label:>8}:");
        for n in [32, 128, 512] {
            let cfg = validate_config(n, Rational::new(5, 2)?, d)?;
            let table = build_blend_table(&fam, &basis, &cfg)?;
            let ext = build_extension(&SampledFunction::from_fn(&cfg, f)?, &table, &basis, &cfg)?;
            print!("  n={n} e={:.2e}", approx_error(f, &dft_coeffs(&ext)?, 1 << 14)?);
        }
        println!();
    }
    Ok(())
}
