//! Searching for squares of the quartic Gamma(a, b, m, n), which decide
//! whether x^4 + 6(a/b) x^2y^2 + y^4 has rational length 3.
//!
//! `cargo run --example gamma_search -- 4 1 50`

use binlength::special::{gamma_square_search, gamma_witness, search_27x2_5y2};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let (a, b, bound) = match args.as_slice() {
        [a, b, n] => (*a, *b, *n as u64),
        [a, b] => (*a, *b, 200),
        _ => (38, 3, 200),
    };
    println!("lambda = {a}/{b}, scanning coprime 0 <= m <= n <= {bound}");
    match gamma_square_search(a, b, bound)? {
        Some((m, n, root)) => {
            println!("Gamma({a}, {b}, {m}, {n}) = {root}^2");
            if let Some(rep) = gamma_witness(a, b, m, n)? {
                println!("three-term representation: {rep}");
            }
        }
        None => println!("no square found; the rational length may be 4"),
    }
    match search_27x2_5y2(50) {
        Some((x, y, z)) => println!("27x^2 + 5y^2 = z^2 has ({x}, {y}, {z})"),
        None => println!("27x^2 + 5y^2 is never a nonzero square for |x|, |y| <= 50"),
    }
    Ok(())
}
