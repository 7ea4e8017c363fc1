//! Sweeps n for a registered test function and prints the CSV the CLI writes.

use fcgram::study::harness::{render_csv, run_convergence, StudySpec};
use fcgram::study::registry::{function_registry, parse_params};
use fcgram::{Rational, ShapeFamily};

fn main() -> fcgram::Result<()> {
    let f = function_registry("abspow", &parse_params(&["p=3.5"])?)?;
    let mut spec = StudySpec::approx(f, 5, Rational::integer(2)?, ShapeFamily::reg_beta_default(5)?, (5..=10).map(|e| 1 << e).collect());
    spec.ref_grid = 1 << 15;
    let rows = run_convergence(&spec)?;
    print!("{}", render_csv(&spec.header(), &rows));
    Ok(())
}
