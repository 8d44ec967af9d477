//! Check the bundled corpus of explicit power-sum identities.

use binlength::cli::identities::run_identity_suite;

fn main() {
    let report = run_identity_suite();
    let mut failed = 0;
    for r in &report {
        if !r.passed {
            failed += 1;
        }
        println!("{} {}", if r.passed { "ok  " } else { "FAIL" }, r.id);
    }
    println!("{} records, {failed} failed", report.len());
    std::process::exit(i32::from(failed > 0));
}
