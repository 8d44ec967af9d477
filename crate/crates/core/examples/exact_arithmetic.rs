//! Arithmetic in Q(sqrt d): products, norms, conjugates and square roots.
//!
//! Run with `cargo run --example exact_arithmetic`.

use binlength::exactnum::{field_sqrt, ratio, FieldDescriptor, FieldElement};

fn main() -> binlength::error::Result<()> {
    let k = FieldDescriptor::quadratic(2)?;
    let s = FieldElement::sqrt_generator(k)?;
    let a = FieldElement::new(ratio(3, 2), ratio(-1, 1), k)?;

    let prod = &a * &s;
    println!("field      {k}");
    println!("a          {a}");
    println!("a * sqrt2  {prod}");
    println!("conj(a)    {}", a.conjugate());
    println!("N(a)       {}", a.norm());
    println!("Tr(a)      {}", a.trace());
    println!("1/a        {}", a.inv()?);

    let sq = a.pow(2);
    let root = field_sqrt(&sq).expect("a square has a root");
    println!("sqrt(a^2)  {root}  (equals +-a: {})", root == a || root == -&a);

    let gi = FieldDescriptor::gaussian();
    let i = FieldElement::sqrt_generator(gi)?;
    println!("i^2 over {gi} = {}", i.pow(2));
    println!("sqrt(-1) in Q? {}", field_sqrt(&FieldElement::from_int(-1)).map(|r| r.to_string()).unwrap_or("no, needs Q(i)".into()));
    Ok(())
}
