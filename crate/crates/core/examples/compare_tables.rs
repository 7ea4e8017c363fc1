//! Reruns the stored BVP convergence tables up to n = 256 and prints the
//! row-by-row comparison.

use fcgram::study::tables::REFERENCE_TABLES;
use fcgram::study::verify::check_table;

fn main() -> fcgram::Result<()> {
    for table in REFERENCE_TABLES.iter().filter(|t| t.label.contains("k=100") || t.label.contains("1/50")) {
        let report = check_table(table, 256)?;
        println!("{} [{}]", report.label, if report.passed() { "pass" } else { "FAIL" });
        for r in &report.rows {
            let noc = r.noc_n.map_or("-".to_string(), |v| format!("{v:.2}"));
            println!("  n={:4} e={:.2e} ref={:.2e} decades={:+.2} noc={noc}", r.n, r.e_n, r.e_ref, r.decades);
        }
    }
    Ok(())
}
