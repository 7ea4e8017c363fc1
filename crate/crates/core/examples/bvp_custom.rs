//! Sets up a boundary value problem by hand:
//! `u'' - 4u + r(x) = 0` on [0, 1] with `u(0) = 0` and `u'(1) + u(1) = g`.

use std::sync::Arc;

use fcgram::bvp::{bvp_error, solve_bvp, BvpProblem, Homogeneous, Robin};
use fcgram::{validate_config, Rational, ShapeFamily};

fn main() -> fcgram::Result<()> {
    let u = |x: f64| (3.0 * x).sin() + x * x;
    let du = |x: f64| 3.0 * (3.0 * x).cos() + 2.0 * x;
    let problem = BvpProblem {
        p: Arc::new(|_| 0.0),
        q: Arc::new(|_| -4.0),
        r: Arc::new(|x| 13.0 * (3.0 * x).sin() - 2.0 + 4.0 * x * x),
        left: Robin::dirichlet(0.0),
        right: Robin { a: 1.0, b: 1.0, c: u(1.0) + du(1.0) },
        h1: Homogeneous::new(|x| (2.0 * x).exp(), |x| 2.0 * (2.0 * x).exp()),
        h2: Homogeneous::new(|x| (-2.0 * x).exp(), |x| -2.0 * (-2.0 * x).exp()),
        exact_solution: Some(Arc::new(u)),
    };
    let fam = ShapeFamily::reg_beta_default(5)?;
    for n in [16, 32, 64, 128] {
        let cfg = validate_config(n, Rational::integer(2)?, 5)?;
        let sol = solve_bvp(&problem, &cfg, &fam)?;
        println!("n={n:3}  e_n={:.3e}  u(0.5)={:.12}  exact={:.12}", bvp_error(&problem, &sol, 1 << 14)?, sol.eval(&problem, 0.5), u(0.5));
    }
    Ok(())
}
