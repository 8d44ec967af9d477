//! Regression corpus of explicit identities between sums of powers and
//! binary forms. Each record is checked by an independent expansion.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::binform::BinaryForm;
use crate::error::Result;
use crate::exactnum::{int, ratio, FieldDescriptor, FieldElement, Rational};
use crate::oracle::expand_raw_terms;
use crate::special::xkyk_identity_verify;

/// How a record is checked.
#[derive(Debug, Clone, PartialEq)]
pub enum IdentityCheck {
    /// `sum lambda (alpha x + beta y)^d = scale * target`.
    Expansion {
        terms: Vec<(FieldElement, FieldElement, FieldElement)>,
        scale: Rational,
        target: BinaryForm,
    },
    /// The `x^k y^k` identity over `Q(zeta_(2k+2))` at a given `w`.
    Cyclotomic { k: usize, w: Rational },
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityRecord {
    pub id: String,
    pub description: String,
    pub check: IdentityCheck,
}

impl IdentityRecord {
    pub fn verify(&self) -> Result<bool> {
        match &self.check {
            IdentityCheck::Expansion { terms, scale, target } => {
                let got = expand_raw_terms(terms, target.degree())?;
                Ok(got.len() == target.raw().len()
                    && got
                        .iter()
                        .zip(target.raw())
                        .all(|(g, c)| *g == FieldElement::rational(c * scale)))
            }
            IdentityCheck::Cyclotomic { k, w } => xkyk_identity_verify(*k, w),
        }
    }
}

fn q(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

fn fq(r: &Rational) -> FieldElement {
    FieldElement::rational(r.clone())
}

fn expansion(
    id: impl Into<String>,
    description: impl Into<String>,
    terms: Vec<(FieldElement, FieldElement, FieldElement)>,
    scale: Rational,
    target: BinaryForm,
) -> IdentityRecord {
    IdentityRecord {
        id: id.into(),
        description: description.into(),
        check: IdentityCheck::Expansion { terms, scale, target },
    }
}

fn phi() -> BinaryForm {
    BinaryForm::from_ints(&[3, 0, -20, 0, 10, 0])
}

/// Deterministic sample of `n` rationals `p/q` with `|p| <= 40`,
/// `1 <= q <= 12`, avoiding the values in `avoid`.
pub fn sample_rationals(seed: u64, n: usize, avoid: &[Rational]) -> Vec<Rational> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out: Vec<Rational> = Vec::new();
    while out.len() < n {
        let r = ratio(rng.gen_range(-40..=40), rng.gen_range(1..=12));
        if !avoid.contains(&r) && !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// Pairs `(a, b)` for the `x^2 y` family with `a`, `b`, `-(a+b)` distinct.
pub fn e3reps_pairs() -> Vec<(Rational, Rational)> {
    [(1, 0), (2, 1), (3, -1), (0, 1), (5, 2), (-4, 3), (7, -3), (1, 3), (-2, -5), (6, 11)]
        .iter()
        .map(|&(a, b)| (int(a), int(b)))
        .chain([(ratio(1, 2), ratio(-1, 3))])
        .take(10)
        .collect()
}

/// Every record of the corpus.
pub fn corpus() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    let gi = FieldDescriptor::gaussian();
    let i = FieldElement::sqrt_generator(gi).expect("Q(i)");
    out.push(expansion(
        "phi-gaussian-length-3",
        "phi = x^5 + (x + iy)^5 + (x - iy)^5",
        vec![(q(1), q(1), q(0)), (q(1), q(1), i.clone()), (q(1), q(1), -&i)],
        int(1),
        phi(),
    ));
    out.push(expansion(
        "phi-rational-length-5",
        "6 phi = 36x^5 - 10(x+y)^5 - 10(x-y)^5 + (x+2y)^5 + (x-2y)^5",
        vec![
            (q(36), q(1), q(0)),
            (q(-10), q(1), q(1)),
            (q(-10), q(1), q(-1)),
            (q(1), q(1), q(2)),
            (q(1), q(1), q(-2)),
        ],
        int(6),
        phi(),
    ));
    let k2 = FieldDescriptor::quadratic(-2).expect("field");
    let s2 = FieldElement::sqrt_generator(k2).expect("Q(sqrt -2)");
    out.push(expansion(
        "phi-minus-two-length-4",
        "24 phi = 4(x + sqrt(-2) y)^5 + 4(x - sqrt(-2) y)^5 + (2x + sqrt(-2) y)^5 + (2x - sqrt(-2) y)^5",
        vec![(q(4), q(1), s2.clone()), (q(4), q(1), -&s2), (q(1), q(2), s2.clone()), (q(1), q(2), -&s2)],
        int(24),
        phi(),
    ));
    for (a, b) in e3reps_pairs() {
        let two = int(2);
        let scale = int(3) * (&a - &b) * (&a + &two * &b) * (&two * &a + &b);
        out.push(expansion(
            format!("x2y-three-powers a={a} b={b}"),
            "3(a-b)(a+2b)(2a+b) x^2y = (a+2b)(ax+y)^3 - (2a+b)(bx+y)^3 + (a-b)(-(a+b)x+y)^3",
            vec![
                (fq(&(&a + &two * &b)), fq(&a), q(1)),
                (fq(&-(&two * &a + &b)), fq(&b), q(1)),
                (fq(&(&a - &b)), fq(&-(&a + &b)), q(1)),
            ],
            scale,
            BinaryForm::from_ints(&[0, 1, 0, 0]),
        ));
    }
    out.extend(sample_rationals(11, 20, &[int(1)]).iter().map(symmetric_quartic_record));
    out.extend(sample_rationals(13, 20, &[int(1)]).iter().map(skew_quartic_record));
    out.push(expansion(
        "quartic-x2-times-definite",
        "x^2(2x^2 + 12y^2) = (x+y)^4 + (x-y)^4 - 2y^4",
        vec![(q(1), q(1), q(1)), (q(1), q(1), q(-1)), (q(-2), q(0), q(1))],
        int(1),
        BinaryForm::from_ints(&[2, 0, 12, 0, 0]),
    ));
    let ws = [int(1), int(2), ratio(-1, 2), ratio(3, 5), ratio(-7, 3)];
    for k in 1..=8 {
        for w in &ws {
            out.push(IdentityRecord {
                id: format!("xkyk-roots-of-unity k={k} w={w}"),
                description: "sum_j (z^j w x + z^-j w^-1 y)^(2k) = (k+1) C(2k,k) x^k y^k, z = exp(2 pi i/(2k+2))".into(),
                check: IdentityCheck::Cyclotomic { k, w: w.clone() },
            });
        }
    }
    out.push(circle_power_fourteen());
    out
}

/// `(rx+y)^4 + (x+ry)^4 - (r^3+r)(x+y)^4` as a multiple of a symmetric
/// quartic. Degenerate at `r = 1`.
pub fn symmetric_quartic_record(r: &Rational) -> IdentityRecord {
    let t = r * r + r + int(1);
    let lam6 = int(-6) * r / &t;
    let r3r = r * r * r + r;
    expansion(
        format!("symmetric-quartic-family r={r}"),
        "(rx+y)^4 + (x+ry)^4 - (r^3+r)(x+y)^4 = (r-1)^2(r^2+r+1)(x^4 - 6r/(r^2+r+1) x^2y^2 + y^4)",
        vec![(q(1), fq(r), q(1)), (q(1), q(1), fq(r)), (fq(&-r3r), q(1), q(1))],
        (r - int(1)) * (r - int(1)) * &t,
        BinaryForm::from_raw(vec![int(1), int(0), lam6, int(0), int(1)]).expect("quartic"),
    )
}

/// `(r^4+1)(x+y)^4 - (rx+y)^4 - (x+ry)^4` as a multiple of
/// `x^3y + c x^2y^2 + xy^3`. Degenerate at `r = 1`.
pub fn skew_quartic_record(r: &Rational) -> IdentityRecord {
    let t = r * r + r + int(1);
    let mid = int(3) * (int(1) + r) * (int(1) + r) / (int(2) * &t);
    let r4 = r * r * r * r + int(1);
    expansion(
        format!("skew-quartic-family r={r}"),
        "(r^4+1)(x+y)^4 - (rx+y)^4 - (x+ry)^4 = 4(r-1)^2(r^2+r+1)(x^3y + 3(1+r)^2/(2(r^2+r+1)) x^2y^2 + xy^3)",
        vec![(fq(&r4), q(1), q(1)), (q(-1), fq(r), q(1)), (q(-1), q(1), fq(r))],
        int(4) * (r - int(1)) * (r - int(1)) * &t,
        BinaryForm::from_raw(vec![int(0), int(1), mid, int(1), int(0)]).expect("quartic"),
    )
}

/// `429/256 (x^2+y^2)^7` as eight fourteenth powers over `Q(sqrt 2)`,
/// with `rho = sqrt 2 - 1`.
fn circle_power_fourteen() -> IdentityRecord {
    let k = FieldDescriptor::quadratic(2).expect("field");
    let rho = FieldElement::new(int(-1), int(1), k).expect("rho");
    let c = FieldElement::new(ratio(1, 2), ratio(1, 4), k).expect("c").pow(7);
    let one = q(1).lift(k);
    let terms = vec![
        (q(1), q(1), q(0)),
        (q(1), q(0), q(1)),
        (fq(&ratio(1, 128)), q(1), q(1)),
        (fq(&ratio(1, 128)), q(1), q(-1)),
        (c.clone(), one.clone(), rho.clone()),
        (c.clone(), one.clone(), -&rho),
        (c.clone(), rho.clone(), one.clone()),
        (c, rho, -&one),
    ];
    expansion(
        "circle-power-degree-14",
        "429/256 (x^2+y^2)^7 = x^14 + y^14 + ((x+y)^14 + (x-y)^14)/128 + ((2+sqrt2)/4)^7 sum (x +- rho y)^14 + (rho x +- y)^14",
        terms,
        ratio(429, 256),
        BinaryForm::from_ints(&[1, 0, 1]).pow(7),
    )
}

/// Outcome of one record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub id: String,
    pub description: String,
    pub passed: bool,
    pub error: Option<String>,
}

/// Check every record of the corpus.
pub fn run_identity_suite() -> Vec<IdentityOutcome> {
    corpus()
        .into_iter()
        .map(|rec| {
            let (passed, error) = match rec.verify() {
                Ok(ok) => (ok, None),
                Err(e) => (false, Some(e.to_string())),
            };
            IdentityOutcome { id: rec.id, description: rec.description, passed, error }
        })
        .collect()
}
