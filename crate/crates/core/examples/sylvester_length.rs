//! Length over a chosen field, with the Hankel kernel behind the answer.
//!
//! `cargo run --example sylvester_length -- "x^3 + y^3" "Q(sqrt -3)"`

use binlength::binform::BinaryForm;
use binlength::cli::parse::parse_form;
use binlength::exactnum::FieldDescriptor;
use binlength::special::length_over_field;
use binlength::sylvester::{hankel, kernel_basis, min_length_over_c, SearchOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let f: BinaryForm = match args.next() {
        Some(s) => parse_form(&s)?,
        None => BinaryForm::from_ints(&[1, 0, 0, 1]),
    };
    let field: FieldDescriptor = args.next().as_deref().unwrap_or("Q").parse()?;

    let (rc, _) = min_length_over_c(&f)?;
    println!("f = {f}, complex length {rc}");
    for r in 1..=f.degree().min(rc + 1) {
        let h = hankel(&f, r)?;
        println!("  H_{r}: rank {}, kernel dimension {}", h.rank(), kernel_basis(&h).len());
    }

    let res = length_over_field(&f, field, &SearchOptions::default())?;
    println!("length over {field}: [{}, {}] ({})", res.lower, res.upper, res.status());
    println!("  lower bound: {}", res.lower_provenance);
    println!("  upper bound: {}", res.upper_provenance);
    if let Some(rep) = &res.representation {
        println!("  {rep}");
    }
    Ok(())
}
