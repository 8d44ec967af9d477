//! Text input: monomial sums such as `3x^5-20x^3y^2+10xy^4`, and
//! comma-separated raw coefficient lists.

use num_traits::{One, Zero};

use crate::binform::BinaryForm;
use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, Rational};

struct Monomial {
    coeff: Rational,
    x: usize,
    y: usize,
}

fn parse_exponent(chars: &[char], i: &mut usize) -> Result<usize> {
    if *i < chars.len() && chars[*i] == '^' {
        *i += 1;
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        if start == *i {
            return Err(Error::Parse("missing exponent after '^'".into()));
        }
        let s: String = chars[start..*i].iter().collect();
        s.parse().map_err(|_| Error::Parse(format!("bad exponent {s}")))
    } else {
        Ok(1)
    }
}

fn parse_term(text: &str) -> Result<Monomial> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut sign = Rational::one();
    while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
        if chars[i] == '-' {
            sign = -sign;
        }
        i += 1;
    }
    let start = i;
    while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
        i += 1;
    }
    let coeff = if start == i {
        Rational::one()
    } else {
        let s: String = chars[start..i].iter().collect();
        parse_rational(&s)?
    };
    if i < chars.len() && chars[i] == '*' {
        i += 1;
    }
    let (mut x, mut y) = (0, 0);
    while i < chars.len() {
        let var = chars[i];
        i += 1;
        let e = parse_exponent(&chars, &mut i)?;
        match var {
            'x' => x += e,
            'y' => y += e,
            '*' => continue,
            other => return Err(Error::Parse(format!("unexpected character '{other}' in term '{text}'"))),
        }
    }
    if start == i && x == 0 && y == 0 {
        return Err(Error::Parse(format!("empty term '{text}'")));
    }
    Ok(Monomial { coeff: sign * coeff, x, y })
}

/// Parse a homogeneous form. Terms with equal monomials are summed; the
/// degree is the common total degree of the terms.
pub fn parse_form(text: &str) -> Result<BinaryForm> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty form".into()));
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    for c in compact.chars() {
        let after_op = matches!(current.chars().last(), None | Some('+') | Some('-') | Some('^'));
        if (c == '+' || c == '-') && !after_op {
            terms.push(std::mem::take(&mut current));
        }
        current.push(c);
    }
    terms.push(current);
    let monomials: Vec<Monomial> = terms.iter().map(|t| parse_term(t)).collect::<Result<_>>()?;
    let d = monomials[0].x + monomials[0].y;
    if let Some(m) = monomials.iter().find(|m| m.x + m.y != d) {
        return Err(Error::NotHomogeneous(format!(
            "terms of degree {d} and {} in '{text}'",
            m.x + m.y
        )));
    }
    if d == 0 {
        return Err(Error::Parse("constant forms are not supported".into()));
    }
    let mut raw = vec![Rational::zero(); d + 1];
    for m in monomials {
        raw[m.y] += m.coeff;
    }
    let f = BinaryForm::from_raw(raw)?;
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    Ok(f)
}

/// Raw coefficients `c_0, ..., c_d` (of `x^d, x^(d-1) y, ..., y^d`).
pub fn parse_coeffs(text: &str) -> Result<BinaryForm> {
    let raw: Vec<Rational> = text
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<_>>()?;
    if raw.len() < 2 {
        return Err(Error::Parse("need at least two coefficients".into()));
    }
    let f = BinaryForm::from_raw(raw)?;
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    Ok(f)
}
