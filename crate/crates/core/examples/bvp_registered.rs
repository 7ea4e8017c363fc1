//! Solves the built-in boundary value problems and reports error and
//! boundary residuals for both blending families.

use fcgram::bvp::{bvp_error, solve_bvp};
use fcgram::study::registry::{parse_params, problem_registry};
use fcgram::{validate_config, Rational, ShapeFamily};

fn main() -> fcgram::Result<()> {
    for (id, params) in [("coskx", vec!["lambda=0.1", "k=100"]), ("euler-log", vec!["eps=0.02"])] {
        let problem = problem_registry(id, &parse_params(&params)?)?.problem;
        for fam in [ShapeFamily::Hermite, ShapeFamily::reg_beta_default(5)?] {
            for n in [64, 128, 256] {
                let cfg = validate_config(n, Rational::integer(2)?, 5)?;
                let sol = solve_bvp(&problem, &cfg, &fam)?;
                let (r0, r1) = sol.boundary_residuals(&problem);
                let err = bvp_error(&problem, &sol, 1 << 15)?;
                println!("{id:>9} {:>7} n={n:3}  e_n={err:.3e}  bc=({r0:.1e}, {r1:.1e})", fam.name());
            }
        }
    }
    Ok(())
}
