//! The lengths of one quintic over several fields at once.

use binlength::binform::BinaryForm;
use binlength::exactnum::FieldDescriptor;
use binlength::special::cabinet;
use binlength::sylvester::SearchOptions;

fn main() -> binlength::error::Result<()> {
    // 3x^5 - 20x^3y^2 + 10xy^4
    let phi = BinaryForm::from_ints(&[3, 0, -20, 0, 10, 0]);
    let fields = [
        FieldDescriptor::Q,
        FieldDescriptor::gaussian(),
        FieldDescriptor::quadratic(-2)?,
        FieldDescriptor::R,
        FieldDescriptor::C,
    ];
    let cab = cabinet(&phi, &fields, &SearchOptions::with_height(12))?;
    println!("f = {phi}, complex length {}", cab.complex_length);
    for (k, res) in &cab.entries {
        let shown = match res.value() {
            Some(v) => v.to_string(),
            None => format!("{}..{}", res.lower, res.upper),
        };
        println!("  {:<12} {shown:<6} {}", k.to_string(), res.status());
    }
    println!("lengths attained: {:?}", cab.summary);
    Ok(())
}
