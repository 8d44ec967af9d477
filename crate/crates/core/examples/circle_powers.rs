//! Lengths of (x^2 + y^2)^k, which depend on where tan(pi/(k+1)) lives.

use binlength::exactnum::FieldDescriptor;
use binlength::special::{circle_power_length, tan_pi_over};

fn main() -> binlength::error::Result<()> {
    let fields = [FieldDescriptor::Q, FieldDescriptor::quadratic(3)?, FieldDescriptor::quadratic(2)?, FieldDescriptor::R];
    for k in 1..=7 {
        let tan = tan_pi_over(k + 1).map(|t| t.to_string()).unwrap_or_else(|| "not quadratic".into());
        print!("k = {k}  tan(pi/{}) = {tan:<16}", k + 1);
        for field in fields {
            let res = circle_power_length(k, field)?;
            let v = res.value().map(|v| v.to_string()).unwrap_or_else(|| format!("{}..{}", res.lower, res.upper));
            print!("  {field}: {v}");
        }
        println!();
    }
    Ok(())
}
