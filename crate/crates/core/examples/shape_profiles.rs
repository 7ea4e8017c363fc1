//! Tabulates the blending profile of every shape family for the constant term.

use fcgram::study::harness::shape_dump;
use fcgram::{validate_config, Rational, ShapeFamily};

fn main() -> fcgram::Result<()> {
    let cfg = validate_config(32, Rational::integer(2)?, 5)?;
    let families = [ShapeFamily::Hermite, ShapeFamily::bump(), ShapeFamily::double_exp(), ShapeFamily::reg_beta_default(5)?];
    println!("{:>6} {:>12} {:>12} {:>12} {:>12}", "x", "hermite", "bump", "doubleexp", "beta");
    let dumps = families.iter().map(|f| shape_dump(f, &cfg, 0, 11)).collect::<fcgram::Result<Vec<_>>>()?;
    for i in 0..11 {
        print!("{:6.2}", dumps[0][i].x);
        for d in &dumps {
            print!(" {:12.5e}", d[i].blend_right);
        }
        println!();
    }
    Ok(())
}
