//! Binary forms: normalized coefficients, factorization over Q, splitting
//! fields and the apolarity pairing.

use binlength::binform::{
    apolar_apply, factor_over_q, real_root_census, splits_distinct, BinaryForm,
};
use binlength::exactnum::FieldDescriptor;

fn main() -> binlength::error::Result<()> {
    // x^4 - y^4 = (x - y)(x + y)(x^2 + y^2)
    let f = BinaryForm::from_ints(&[1, 0, 0, 0, -1]);
    println!("f = {f}");
    println!("normalized coefficients: {:?}", f.normalized().iter().map(|c| c.to_string()).collect::<Vec<_>>());

    let fac = factor_over_q(&f)?;
    for (l, m) in &fac.linear_factors {
        println!("  linear factor {l} ^ {m}");
    }
    for (g, m) in &fac.nonlinear_factors {
        println!("  irreducible   {g} ^ {m}");
    }
    assert_eq!(fac.expand(), f);

    let (real, _) = real_root_census(&f);
    println!("real linear factors: {real}");
    for field in [FieldDescriptor::Q, FieldDescriptor::gaussian(), FieldDescriptor::R] {
        let split = splits_distinct(&f, field).and_then(|s| s.forms().map(|v| v.len()));
        println!("splits into distinct factors over {field}: {}", split.is_some());
    }

    // The apolar action of h(x, y) = x^2 + y^2 is the Laplacian, up to scale.
    let h = BinaryForm::from_ints(&[1, 0, 1]);
    println!("(x^2 + y^2) acting on f: {}", apolar_apply(&h, &f)?);
    Ok(())
}
