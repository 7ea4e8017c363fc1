//! Compares how large the continued Gram polynomials get on [1, b] for each family.

use fcgram::continuation::continuation_sup_norm;
use fcgram::{build_blend_table, build_gram_basis, validate_config, Rational, ShapeFamily, Side};

fn main() -> fcgram::Result<()> {
    let d = 5;
    let basis = build_gram_basis(d)?;
    let cfg = validate_config(32, Rational::integer(2)?, d)?;
    let families = [ShapeFamily::Hermite, ShapeFamily::bump(), ShapeFamily::double_exp(), ShapeFamily::reg_beta_default(d)?];
    print!("{:>10}", "family");
    for l in 0..d {
        print!(" {:>10}", format!("l={l}"));
    }
    println!();
    for fam in &families {
        let table = build_blend_table(fam, &basis, &cfg)?;
        print!("{:>10}", fam.name());
        for l in 0..d {
            print!(" {:10.3e}", continuation_sup_norm(&table, l, Side::Right)?);
        }
        println!();
    }
    Ok(())
}
