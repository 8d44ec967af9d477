//! Brute-force search over small integer linear forms, compared with the
//! kernel-based length over Q.

use binlength::binform::BinaryForm;
use binlength::exactnum::FieldDescriptor;
use binlength::oracle::{brute_force_min_length_q, SearchBudget};
use binlength::special::length_over_field;
use binlength::sylvester::SearchOptions;

fn main() -> binlength::error::Result<()> {
    let budget = SearchBudget::new(3, 4)?;
    let cubics = [[1, 0, 0, 1], [0, 1, 0, 0], [1, 0, -3, 0], [1, 3, 3, 1], [2, 0, 1, 1]];
    for c in cubics {
        let f = BinaryForm::from_ints(&c);
        let engine = length_over_field(&f, FieldDescriptor::Q, &SearchOptions::default())?;
        let brute = brute_force_min_length_q(&f, budget)?;
        let shown = brute.as_ref().map(|(r, _)| r.to_string()).unwrap_or_else(|| "none".into());
        println!("{f:<24} engine {}..{}  brute force {shown}", engine.lower, engine.upper);
        if let Some((r, rep)) = brute {
            println!("    {rep}");
            assert!(r >= engine.lower);
        }
    }
    Ok(())
}
