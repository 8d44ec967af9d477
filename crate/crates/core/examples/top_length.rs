//! Forms of maximal complex length: x^a y^b and friends.

use binlength::binform::BinaryForm;
use binlength::exactnum::int;
use binlength::special::top_length_detect;
use binlength::sylvester::min_length_over_c;

fn main() -> binlength::error::Result<()> {
    for d in 3..=6 {
        for b in 1..d {
            let f = BinaryForm::monomial(int(1), d, b);
            let (rc, _) = min_length_over_c(&f)?;
            let top = top_length_detect(&f)
                .map(|(l, m)| format!("top length via {l}, {m}"))
                .unwrap_or_default();
            println!("{f:<12} complex length {rc}  {top}");
        }
    }
    Ok(())
}
