//! Independent checks: expansion by repeated multiplication, exhaustive
//! small-height search for rational representations, power-matrix ranks
//! and a few explicit families.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::binform::{mul_raw, BinaryForm, LinearForm};
use crate::error::{Error, Result};
use crate::exactnum::{int, FieldDescriptor, FieldElement, Rational};
use crate::linalg;
use crate::sylvester::{recover_coefficients, Representation};

/// Bounds for the brute-force search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest absolute coordinate of a candidate linear form.
    pub height: u64,
    /// Largest number of summands tried.
    pub max_r: usize,
}

impl SearchBudget {
    pub fn new(height: u64, max_r: usize) -> Result<Self> {
        if height == 0 {
            return Err(Error::OutOfRange { index: 0, max: usize::MAX });
        }
        Ok(Self { height, max_r })
    }
}

/// Raw coefficients of `sum lambda (alpha x + beta y)^d`, with no
/// normalization of the summands and no binomial tables: each power is built
/// by repeated multiplication.
pub fn expand_raw_terms(
    terms: &[(FieldElement, FieldElement, FieldElement)],
    d: usize,
) -> Result<Vec<FieldElement>> {
    let field = terms
        .iter()
        .flat_map(|(l, a, b)| [l.field(), a.field(), b.field()])
        .try_fold(FieldDescriptor::Q, |acc, f| acc.join(&f))
        .ok_or_else(|| Error::FieldMismatch("summands".into(), "mixed quadratic fields".into()))?;
    let mut acc = vec![FieldElement::zero().lift(field); d + 1];
    for (lambda, alpha, beta) in terms {
        let lin = [alpha.lift(field), beta.lift(field)];
        let mut p = vec![lambda.lift(field)];
        for _ in 0..d {
            p = mul_raw(&p, &lin);
        }
        for (slot, c) in acc.iter_mut().zip(p) {
            *slot = (&*slot + &c).lift(field);
        }
    }
    Ok(acc)
}

/// The form `sum lambda_k l_k^d` of a representation, expanded afresh.
/// Fails with `NotRational` if the expansion has irrational coefficients.
pub fn expand_representation(rep: &Representation) -> Result<BinaryForm> {
    let terms: Vec<_> = rep
        .terms()
        .iter()
        .map(|(l, f)| (l.clone(), f.alpha.clone(), f.beta.clone()))
        .collect();
    let raw = expand_raw_terms(&terms, rep.degree())?;
    let q: Option<Vec<Rational>> = raw.iter().map(|c| c.to_rational()).collect();
    BinaryForm::from_raw(q.ok_or(Error::NotRational)?)
}

/// Primitive integer pairs `(alpha, beta)` with `max(|alpha|, |beta|) <= h`
/// and first nonzero entry positive, sorted by height and then by slope
/// `beta / alpha` (the form `y` last within its height).
pub fn candidate_forms(height: u64) -> Vec<(i64, i64)> {
    let h = height as i64;
    let mut out: Vec<(i64, i64)> = Vec::new();
    for a in 0..=h {
        for b in -h..=h {
            if (a == 0 && b <= 0) || a.gcd(&b) != 1 {
                continue;
            }
            out.push((a, b));
        }
    }
    let slope_cmp = |p: &(i64, i64), q: &(i64, i64)| -> Ordering {
        match (p.0 == 0, q.0 == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (p.1 * q.0).cmp(&(q.1 * p.0)),
        }
    };
    out.sort_by(|p, q| {
        let hp = p.0.abs().max(p.1.abs());
        let hq = q.0.abs().max(q.1.abs());
        hp.cmp(&hq).then_with(|| slope_cmp(p, q))
    });
    out
}

/// Calls `visit` on each `k`-subset of `start..n` in lexicographic order,
/// prefixed by `prefix`, until it returns `Some`.
fn combinations<T>(
    prefix: &mut Vec<usize>,
    start: usize,
    n: usize,
    k: usize,
    visit: &mut impl FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    if k == 0 {
        return visit(prefix);
    }
    for i in start..n {
        if n - i < k {
            break;
        }
        prefix.push(i);
        let hit = combinations(prefix, i + 1, n, k - 1, visit);
        prefix.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// Smallest `r <= max_r` for which some `r` candidate forms of height at
/// most `budget.height` give a representation of `f` over `Q` with all
/// coefficients nonzero, and the first such representation in canonical
/// order. This is an upper bound for `L_Q(f)` only; minimality needs a
/// matching lower bound from elsewhere.
pub fn brute_force_min_length_q(f: &BinaryForm, budget: SearchBudget) -> Result<Option<(usize, Representation)>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let d = f.degree();
    let cands = candidate_forms(budget.height);
    let powers: Vec<Vec<FieldElement>> = cands
        .iter()
        .map(|&(a, b)| {
            (0..=d)
                .map(|j| FieldElement::rational(pow_i(a, d - j) * pow_i(b, j)))
                .collect()
        })
        .collect();
    let rhs: Vec<FieldElement> = f.normalized().iter().cloned().map(FieldElement::rational).collect();
    let powers_p: Vec<Vec<u64>> = cands
        .iter()
        .map(|&(a, b)| (0..=d).map(|j| mul_p(pow_p(a, d - j), pow_p(b, j))).collect())
        .collect();
    let rhs_p: Option<Vec<u64>> = f.normalized().iter().map(rational_mod_p).collect();
    let n = cands.len();
    for r in 1..=budget.max_r.min(d + 1).min(n) {
        let hit = (0..n).into_par_iter().find_map_first(|first| {
            let mut prefix = vec![first];
            combinations(&mut prefix, first + 1, n, r - 1, &mut |idx: &[usize]| {
                // Reduction mod p never raises a rank, so a rank above r
                // for [A | b] mod p rules the subset out.
                if let Some(b) = &rhs_p {
                    let m: Vec<Vec<u64>> = (0..=d)
                        .map(|j| idx.iter().map(|&i| powers_p[i][j]).chain([b[j]]).collect())
                        .collect();
                    if rank_mod_p(m) > r {
                        return None;
                    }
                }
                let a: Vec<Vec<FieldElement>> = (0..=d)
                    .map(|j| idx.iter().map(|&i| powers[i][j].clone()).collect())
                    .collect();
                let x = linalg::solve(&a, &rhs)?;
                x.iter().all(|v| !v.is_zero()).then(|| idx.to_vec())
            })
        });
        if let Some(idx) = hit {
            let forms: Vec<LinearForm> = idx
                .iter()
                .map(|&i| LinearForm::from_ints(cands[i].0, cands[i].1))
                .collect::<Result<_>>()?;
            let rep = recover_coefficients(f, &forms)?
                .ok_or_else(|| Error::InvariantViolation("oracle system became inconsistent".into()))?;
            return Ok(Some((r, rep)));
        }
    }
    Ok(None)
}

const P: u64 = (1 << 61) - 1;

fn mul_p(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow_p(a: i64, e: usize) -> u64 {
    let base = a.rem_euclid(P as i64) as u64;
    (0..e).fold(1, |acc, _| mul_p(acc, base))
}

fn inv_p(a: u64) -> u64 {
    let (mut acc, mut base, mut e) = (1u64, a, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_p(acc, base);
        }
        base = mul_p(base, base);
        e >>= 1;
    }
    acc
}

fn rational_mod_p(q: &Rational) -> Option<u64> {
    let p = BigInt::from(P);
    let reduce = |x: &BigInt| -> u64 {
        let r = ((x % &p) + &p) % &p;
        r.to_u64().expect("reduced mod p")
    };
    let den = reduce(q.denom());
    (den != 0).then(|| mul_p(reduce(q.numer()), inv_p(den)))
}

fn rank_mod_p(mut m: Vec<Vec<u64>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inv_p(m[rank][c]);
        for i in rank + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let factor = mul_p(m[i][c], inv);
            for k in c..cols {
                let sub = mul_p(factor, m[rank][k]);
                m[i][k] = (m[i][k] + P - sub) % P;
            }
        }
        rank += 1;
    }
    rank
}

fn pow_i(a: i64, e: usize) -> Rational {
    Rational::from_integer(BigInt::from(a).pow(e as u32))
}

/// The `d + 1` forms `i x + (d - i) y`, `0 <= i <= d`, whose `d`-th powers
/// span all forms of degree `d`.
pub fn biermann_basis(d: usize) -> Result<Vec<LinearForm>> {
    if d == 0 {
        return Err(Error::OutOfRange { index: 0, max: usize::MAX });
    }
    let pairs: Vec<(i64, i64)> = (0..=d as i64).map(|i| (i, d as i64 - i)).collect();
    let m: Vec<Vec<BigInt>> = pairs
        .iter()
        .map(|&(a, b)| (0..=d).map(|j| BigInt::from(a).pow((d - j) as u32) * BigInt::from(b).pow(j as u32)).collect())
        .collect();
    if linalg::det_bareiss(&m).is_zero() {
        return Err(Error::InvariantViolation(format!("power matrix of degree {d} is singular")));
    }
    pairs.iter().map(|&(a, b)| LinearForm::from_ints(a, b)).collect()
}

/// The unique combination of the basis powers equal to `f`.
pub fn biermann_decompose(f: &BinaryForm) -> Result<Representation> {
    let basis = biermann_basis(f.degree())?;
    recover_coefficients(f, &basis)?
        .ok_or_else(|| Error::InvariantViolation("basis powers do not span".into()))
}

/// Rank of the matrix whose rows are the normalized coefficients of
/// `l^d` for each given form.
pub fn power_matrix_rank(forms: &[LinearForm], d: usize) -> Result<usize> {
    let field = forms
        .iter()
        .try_fold(FieldDescriptor::Q, |acc, l| acc.join(&l.field()))
        .ok_or_else(|| Error::FieldMismatch("forms".into(), "mixed quadratic fields".into()))?;
    let rows: Vec<Vec<FieldElement>> = forms
        .iter()
        .map(|l| l.lift(field).power_normalized(d))
        .collect();
    Ok(linalg::rank(&rows))
}

/// `3(a-b)(a+2b)(2a+b) x^2 y = (a+2b)(ax+y)^3 - (2a+b)(bx+y)^3 + (a-b)(-(a+b)x+y)^3`.
pub fn e3reps_family(a: &Rational, b: &Rational) -> Result<Representation> {
    let two = int(2);
    if a == b || *a == -(&two * b) || *b == -(&two * a) {
        return Err(Error::Degenerate(format!("(a, b) = ({a}, {b})")));
    }
    let scale = int(3) * (a - b) * (a + &two * b) * (&two * a + b);
    let target = BinaryForm::from_raw(vec![int(0), scale, int(0), int(0)])?;
    let fe = |q: Rational| FieldElement::rational(q);
    let one = fe(int(1));
    let terms = vec![
        (fe(a + &two * b), fe(a.clone()), one.clone()),
        (fe(-(&two * a + b)), fe(b.clone()), one.clone()),
        (fe(a - b), fe(-(a + b)), one),
    ];
    Representation::from_raw_terms(FieldDescriptor::Q, terms, target)
}

fn forms_match(a: &LinearForm, b: &LinearForm) -> bool {
    match a.field().join(&b.field()) {
        Some(_) => a.proportional(b),
        None => false,
    }
}

fn terms_match(x: &(FieldElement, LinearForm), y: &(FieldElement, LinearForm)) -> bool {
    forms_match(&x.1, &y.1)
        && match x.0.field().join(&y.0.field()) {
            Some(_) => x.0 == y.0,
            None => false,
        }
}

/// Compare two honest representations of the same form. Different ones
/// need at least `d + 2` distinct summand forms between them, hence
/// `r + s >= d + 2`. Returns whether the two are the same representation;
/// errors if they differ with too few forms.
pub fn collision_check(p: &Representation, q: &Representation) -> Result<bool> {
    if p.target() != q.target() {
        return Err(Error::InvariantViolation("representations of different forms".into()));
    }
    let d = p.degree();
    let same = p.len() == q.len()
        && p.terms().iter().all(|t| q.terms().iter().any(|u| terms_match(t, u)));
    if same {
        return Ok(true);
    }
    let mut union: Vec<LinearForm> = p.forms();
    for l in q.forms() {
        if !union.iter().any(|u| forms_match(u, &l)) {
            union.push(l);
        }
    }
    if union.len() < d + 2 || p.len() + q.len() < d + 2 {
        return Err(Error::InvariantViolation(format!(
            "two different representations with {} and {} terms in degree {d}",
            p.len(),
            q.len()
        )));
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn phi() -> BinaryForm {
        BinaryForm::from_ints(&[3, 0, -20, 0, 10, 0])
    }

    #[test]
    fn modular_rank() {
        assert_eq!(rational_mod_p(&ratio(1, 2)).map(|h| mul_p(h, 2)), Some(1));
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_mod_p(vec![vec![1, 2, 3], vec![0, 1, 1], vec![1, 3, 4]]), 2);
        assert_eq!(rank_mod_p(vec![vec![P - 1, 0], vec![0, 5]]), 2);
    }

    #[test]
    fn expansion_examples() {
        let k = FieldDescriptor::quadratic(-2).unwrap();
        let s = FieldElement::sqrt_generator(k).unwrap();
        let one = FieldElement::from_int(1);
        let two = FieldElement::from_int(2);
        let terms = vec![
            (FieldElement::from_int(4), one.clone(), s.clone()),
            (FieldElement::from_int(4), one.clone(), -&s),
            (one.clone(), two.clone(), s.clone()),
            (one.clone(), two.clone(), -&s),
        ];
        let raw = expand_raw_terms(&terms, 5).unwrap();
        let want: Vec<FieldElement> = phi().raw().iter().map(|c| FieldElement::rational(c * int(24)).lift(k)).collect();
        assert_eq!(raw, want);
        let rep = Representation::new(FieldDescriptor::Q, vec![(one.clone(), LinearForm::x())], BinaryForm::from_ints(&[1, 0, 0, 0])).unwrap();
        assert_eq!(expand_representation(&rep).unwrap(), BinaryForm::from_ints(&[1, 0, 0, 0]));
    }

    #[test]
    fn candidate_order() {
        assert_eq!(candidate_forms(1), vec![(1, -1), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(candidate_forms(2).len(), 8);
        assert_eq!(candidate_forms(3).len(), 16);
    }

    #[test]
    fn brute_force_examples() {
        let f = BinaryForm::from_ints(&[0, 6, 0, 0]);
        let (r, rep) = brute_force_min_length_q(&f, SearchBudget::new(2, 3).unwrap()).unwrap().unwrap();
        assert_eq!(r, 3);
        assert_eq!(expand_representation(&rep).unwrap(), f);
        let f = BinaryForm::from_ints(&[1, 0, 0, 1]);
        let (r, rep) = brute_force_min_length_q(&f, SearchBudget::new(1, 3).unwrap()).unwrap().unwrap();
        assert_eq!(r, 2);
        assert_eq!(rep.forms(), vec![LinearForm::x(), LinearForm::y()]);
        let (r, rep) = brute_force_min_length_q(&phi(), SearchBudget::new(2, 5).unwrap()).unwrap().unwrap();
        assert_eq!(r, 5);
        let mut forms = rep.forms();
        forms.sort_by_key(|l| l.sort_key());
        let mut want: Vec<LinearForm> = [(1, 0), (1, 1), (1, -1), (1, 2), (1, -2)]
            .iter()
            .map(|&(a, b)| LinearForm::from_ints(a, b).unwrap())
            .collect();
        want.sort_by_key(|l| l.sort_key());
        assert_eq!(forms, want);
    }

    #[test]
    fn biermann() {
        assert_eq!(biermann_basis(2).unwrap().len(), 3);
        assert_eq!(biermann_basis(3).unwrap().len(), 4);
        let rep = biermann_decompose(&phi()).unwrap();
        assert_eq!(expand_representation(&rep).unwrap(), phi());
    }

    #[test]
    fn e3reps_examples() {
        let rep = e3reps_family(&int(1), &int(0)).unwrap();
        assert_eq!(rep.target(), &BinaryForm::from_ints(&[0, 6, 0, 0]));
        let rep = e3reps_family(&int(2), &int(1)).unwrap();
        assert_eq!(rep.target(), &BinaryForm::from_ints(&[0, 60, 0, 0]));
        assert!(e3reps_family(&int(1), &int(1)).is_err());
        assert!(e3reps_family(&int(2), &int(-1)).is_err());
        assert!(e3reps_family(&ratio(1, 2), &int(-1)).is_err());
    }

    #[test]
    fn collisions() {
        let f = BinaryForm::from_ints(&[0, 6, 0, 0]);
        let a = e3reps_family(&int(1), &int(0)).unwrap();
        let b = brute_force_min_length_q(&f, SearchBudget::new(3, 3).unwrap()).unwrap().unwrap().1;
        let c = crate::special::universal_sylvester_construction(&f, FieldDescriptor::Q).unwrap().1;
        assert!(collision_check(&a, &a).unwrap());
        for (p, q) in [(&a, &b), (&a, &c), (&b, &c)] {
            let same = collision_check(p, q).unwrap();
            assert!(same || p.len() + q.len() >= 5);
        }
    }

    #[test]
    fn power_matrix() {
        let forms: Vec<LinearForm> = (0..5).map(|i| LinearForm::from_ints(1, i).unwrap()).collect();
        assert_eq!(power_matrix_rank(&forms, 4).unwrap(), 5);
        let mut more = forms.clone();
        more.push(LinearForm::y());
        assert_eq!(power_matrix_rank(&more, 4).unwrap(), 5);
    }
}
