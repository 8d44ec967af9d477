//! Lengths of binary forms as sums of powers of linear forms, computed
//! exactly over `Q`, quadratic fields, `R` and `C`.
//!
//! Every answer is a [`sylvester::LengthResult`]: an exact value or an
//! interval, each end tagged with the witness or rule that supports it.
//! Start from [`special::length_over_field`] or [`special::cabinet`]; the
//! `examples/` directory has one runnable program per piece.

pub mod binform;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod factor;
pub mod linalg;
pub mod oracle;
pub mod reallen;
pub mod special;
pub mod sylvester;
pub mod upoly;
