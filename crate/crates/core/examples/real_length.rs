//! Real length: the count of real linear factors against sign changes of a
//! real representation.

use binlength::binform::{real_root_census, BinaryForm};
use binlength::reallen::{quartic_real_length, real_length_bounds, verify_1864};

fn main() -> binlength::error::Result<()> {
    let quartics = [
        ("x^4 - 5x^2y^2 + 4y^4, four real roots", BinaryForm::from_ints(&[1, 0, -5, 0, 4])),
        ("x^4 + y^4, definite", BinaryForm::from_ints(&[1, 0, 0, 0, 1])),
        ("x^4 + 6x^2y^2 + y^4", BinaryForm::from_ints(&[1, 0, 6, 0, 1])),
        ("(x + 2y)^4", BinaryForm::from_ints(&[1, 8, 24, 32, 16])),
    ];
    for (name, f) in &quartics {
        let (len, rep) = quartic_real_length(f)?;
        println!("{name}: real length {len}");
        if let Some(rep) = rep.filter(|r| r.len() > 1) {
            let (tau, sigma, ok) = verify_1864(&rep)?;
            println!("    {rep}\n    real roots {tau} <= sign changes {sigma}: {ok}");
        }
    }

    // Higher degree goes through the general bounds.
    let f = BinaryForm::from_ints(&[1, 0, -1, 0, 0, 0]); // x^3 (x^2 - y^2)
    let res = real_length_bounds(&f)?;
    println!(
        "{f}: {} real roots, real length in [{}, {}] ({})",
        real_root_census(&f).0,
        res.lower,
        res.upper,
        res.status()
    );
    Ok(())
}
