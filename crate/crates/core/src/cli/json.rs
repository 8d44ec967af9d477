//! JSON encoding of forms, field elements and results.
//!
//! Rationals are written as `"p/q"`, elements of `Q(sqrt d)` with a nonzero
//! irrational part as `{"a": "p/q", "b": "p/q", "d": d}`. Objects use
//! `serde_json`'s default sorted maps, so output is byte-stable.

use serde_json::{json, Map, Value};

use crate::binform::{BinaryForm, LinearForm};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, FieldDescriptor, FieldElement, Rational};
use crate::special::Cabinet;
use crate::sylvester::{LengthResult, Representation, SylvesterCertificate};

pub fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn element(e: &FieldElement) -> Value {
    if e.is_rational() {
        rational(e.rat_part())
    } else {
        json!({
            "a": format_rational(e.rat_part()),
            "b": format_rational(e.quad_part()),
            "d": e.radicand(),
        })
    }
}

/// Inverse of [`element`]. A bare number is accepted for a rational.
pub fn parse_element(v: &Value) -> Result<FieldElement> {
    match v {
        Value::String(s) => Ok(FieldElement::rational(parse_rational(s)?)),
        Value::Number(n) => Ok(FieldElement::rational(parse_rational(&n.to_string())?)),
        Value::Object(m) => {
            let get = |k: &str| -> Result<Rational> {
                match m.get(k) {
                    Some(Value::String(s)) => parse_rational(s),
                    Some(Value::Number(n)) => parse_rational(&n.to_string()),
                    _ => Err(Error::Parse(format!("field element needs \"{k}\""))),
                }
            };
            let d = m
                .get("d")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse("field element needs integer \"d\"".into()))?;
            FieldElement::new(get("a")?, get("b")?, FieldDescriptor::quadratic(d)?)
        }
        _ => Err(Error::Parse(format!("not a field element: {v}"))),
    }
}

pub fn form(f: &BinaryForm) -> Value {
    json!({
        "degree": f.degree(),
        "raw": f.raw().iter().map(rational).collect::<Vec<_>>(),
        "normalized": f.normalized().iter().map(rational).collect::<Vec<_>>(),
        "text": f.to_string(),
    })
}

pub fn linear_form(l: &LinearForm) -> Value {
    json!({ "alpha": element(&l.alpha), "beta": element(&l.beta) })
}

pub fn representation(rep: &Representation) -> Value {
    Value::Array(
        rep.terms()
            .iter()
            .map(|(lambda, l)| {
                json!({
                    "lambda": element(lambda),
                    "alpha": element(&l.alpha),
                    "beta": element(&l.beta),
                })
            })
            .collect(),
    )
}

pub fn certificate(c: &SylvesterCertificate) -> Value {
    json!({
        "r": c.r(),
        "kernel_coords": c.kernel_coords.iter().map(|x| Value::String(x.to_string())).collect::<Vec<_>>(),
        "h": form(&c.h),
        "factors": c.factors().iter().map(linear_form).collect::<Vec<_>>(),
        "field": c.field.to_string(),
    })
}

pub fn length_result(f: &BinaryForm, res: &LengthResult) -> Value {
    let mut m = Map::new();
    m.insert("form".into(), form(f));
    m.insert("field".into(), Value::String(res.field.to_string()));
    m.insert(
        "length".into(),
        json!({
            "lower": res.lower,
            "upper": res.upper,
            "exact": res.is_exact(),
            "status": res.status(),
            "provenance": {
                "lower": res.lower_provenance.to_string(),
                "upper": res.upper_provenance.to_string(),
            },
        }),
    );
    if let Some(c) = &res.certificate {
        m.insert("sylvester_form".into(), certificate(c));
    }
    if let Some(rep) = &res.representation {
        m.insert("representation".into(), representation(rep));
        m.insert("representation_field".into(), Value::String(rep.field().to_string()));
    }
    if let Some(t) = res.tau {
        m.insert("tau".into(), json!(t));
    }
    if let Some(s) = res.sigma {
        m.insert("sigma".into(), json!(s));
    }
    Value::Object(m)
}

pub fn cabinet(f: &BinaryForm, c: &Cabinet) -> Value {
    json!({
        "form": form(f),
        "complex_length": c.complex_length,
        "summary": c.summary.iter().collect::<Vec<_>>(),
        "entries": c.entries.iter().map(|(_, r)| length_result(f, r)).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    #[test]
    fn element_round_trip() {
        let k = FieldDescriptor::quadratic(-2).unwrap();
        let e = FieldElement::new(ratio(1, 2), ratio(-3, 1), k).unwrap();
        let v = element(&e);
        assert_eq!(v, json!({"a": "1/2", "b": "-3/1", "d": -2}));
        assert_eq!(parse_element(&v).unwrap(), e);
        let q = FieldElement::rational(ratio(-7, 3));
        assert_eq!(element(&q), json!("-7/3"));
        assert_eq!(parse_element(&json!("-7/3")).unwrap(), q);
        assert_eq!(parse_element(&json!(5)).unwrap(), FieldElement::from_int(5));
    }

    #[test]
    fn form_encoding() {
        let v = form(&BinaryForm::from_ints(&[1, 0, 1]));
        assert_eq!(v["raw"], json!(["1/1", "0/1", "1/1"]));
        assert_eq!(v["normalized"], json!(["1/1", "0/1", "1/1"]));
        assert_eq!(v["degree"], json!(2));
    }
}
