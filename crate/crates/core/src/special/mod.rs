//! Closed-form families and classification rules for particular shapes of
//! forms, plus the generic degree-`d` construction and cabinet assembly.

pub mod cyclotomic;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::binform::{
    apply_linear_change, binomial, cubic_invariants, form_gcd, is_squarefree,
    BinaryForm, LinearForm, Split,
};
use crate::error::{Error, Result};
use crate::exactnum::{
    bigint_sqrt_exact, int, rational_squarefree_class, sqrt_in, FieldDescriptor, FieldElement,
    Rational,
};
use crate::reallen;
use crate::sylvester::{
    self, certificate_from_coords, hankel, kernel_basis_int, min_length_over_c,
    recover_coefficients, representation_from_certificate, LengthResult, Provenance,
    Representation, SearchOptions, SylvesterCertificate,
};

pub use cyclotomic::{cyclotomic_polynomial, root_of_unity_sum, CyclotomicElement};

/// Smallest exact field holding a square root of the rational `q`.
fn sqrt_field(q: &Rational) -> Result<FieldDescriptor> {
    match rational_squarefree_class(q) {
        None => Err(Error::Degenerate("square root of zero".into())),
        Some(c) => FieldDescriptor::quadratic(c),
    }
}

fn contains_sqrt(field: FieldDescriptor, q: &Rational) -> Result<bool> {
    Ok(match field {
        FieldDescriptor::C => true,
        FieldDescriptor::R => !q.is_negative(),
        _ => sqrt_in(&FieldElement::rational(q.clone()), field)?.is_some(),
    })
}

/// Length of a cubic over `field`.
///
/// Cubes have length 1 and cubics with a repeated factor length 3. A
/// squarefree cubic has length 2 exactly when `sqrt(-3 disc)` lies in the
/// field, and 3 otherwise.
pub fn cubic_length(f: &BinaryForm, field: FieldDescriptor) -> Result<LengthResult> {
    if f.degree() != 3 {
        return Err(Error::DegreeMismatch { expected: 3, got: f.degree() });
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if hankel(f, 2)?.rank() <= 1 {
        let cert = certificate_from_coords(f, 1, FieldDescriptor::Q, &[BigInt::one()])
            .ok_or_else(|| Error::InvariantViolation("cube without a rational root form".into()))?;
        let rep = representation_from_certificate(f, &cert)?;
        return Ok(LengthResult::exact(
            field,
            1,
            Provenance::theorem("nonzero-form"),
            Provenance::witness("cube"),
        )
        .with_representation(rep)
        .with_certificate(Some(cert)));
    }
    let (_, disc) = cubic_invariants(f)?;
    let three = |lower: &str| -> Result<LengthResult> {
        let (cert, rep) = construction_certificate(f, FieldDescriptor::Q)?;
        Ok(LengthResult::exact(field, 3, Provenance::theorem(lower), Provenance::witness("degree-d-construction"))
            .with_representation(Some(rep))
            .with_certificate(Some(cert)))
    };
    if disc.is_zero() {
        return three("repeated-factor-cubic");
    }
    let m3d = int(-3) * &disc;
    if !contains_sqrt(field, &m3d)? {
        return three("cubic-discriminant");
    }
    let wfield = sqrt_field(&m3d)?;
    let cert = certificate_from_coords(f, 2, wfield, &[BigInt::one()])
        .ok_or_else(|| Error::InvariantViolation("hessian does not split".into()))?;
    let rep = representation_from_certificate(f, &cert)?;
    Ok(LengthResult::exact(field, 2, Provenance::theorem("not-a-cube"), Provenance::witness("hessian-split"))
        .with_representation(rep)
        .with_certificate(Some(cert)))
}

/// `(l, l')` with `f = c l^(d-1) l'` and `l`, `l'` distinct, when `f` has
/// that shape. These are exactly the forms of complex length `d`.
pub fn top_length_detect(f: &BinaryForm) -> Option<(LinearForm, LinearForm)> {
    let d = f.degree();
    if d < 3 || f.is_zero() {
        return None;
    }
    let g = form_gcd(f, &form_gcd(&f.partial_x(), &f.partial_y()));
    if g.degree() != d - 2 {
        return None;
    }
    let gg = form_gcd(&g, &form_gcd(&g.partial_x(), &g.partial_y()));
    let ell = g.div_exact(&gg)?;
    if ell.degree() != 1 || !ell.pow(d - 2).proportional(&g) {
        return None;
    }
    let rest = f.div_exact(&ell.pow(d - 1))?;
    let to_lin = |b: &BinaryForm| {
        LinearForm::new(FieldElement::rational(b.raw()[0].clone()), FieldElement::rational(b.raw()[1].clone()))
    };
    let (l, lp) = (to_lin(&ell).ok()?, to_lin(&rest).ok()?);
    (!l.proportional(&lp)).then_some((l, lp))
}

/// Checks `sum_{j=0}^{k} (z^j w x + z^-j w^-1 y)^(2k) = (k+1) C(2k,k) x^k y^k`
/// with `z` a primitive `(2k+2)`-th root of unity, by expansion in
/// `Q(z)`. Each coefficient is also compared against the closed-form root
/// of unity sum.
pub fn xkyk_identity_verify(k: usize, w: &Rational) -> Result<bool> {
    if w.is_zero() {
        return Err(Error::Degenerate("w = 0".into()));
    }
    if k == 0 {
        return Err(Error::OutOfRange { index: 0, max: 8 });
    }
    let n = 2 * k + 2;
    let d = 2 * k;
    let winv = Rational::one() / w;
    let zero = CyclotomicElement::from_rational(n, Rational::zero());
    let mut coeffs = vec![zero; d + 1];
    for j in 0..=k as i64 {
        let a = CyclotomicElement::zeta_pow(n, j).scale(w);
        let b = CyclotomicElement::zeta_pow(n, -j).scale(&winv);
        for (t, slot) in coeffs.iter_mut().enumerate() {
            let term = a.pow(d - t).mul(&b.pow(t))?.scale(&binomial(d, t));
            *slot = slot.add(&term)?;
        }
    }
    let target = |t: usize| -> Rational {
        if t == k {
            int((k + 1) as i64) * binomial(d, k)
        } else {
            Rational::zero()
        }
    };
    for (t, c) in coeffs.iter().enumerate() {
        let Some(v) = c.to_rational() else {
            return Ok(false);
        };
        // the sum over j collapses to (k+1) or 0
        let closed = binomial(d, t)
            * pow_rational(w, d as i64 - 2 * t as i64)
            * root_of_unity_sum(k + 1, k as i64 - t as i64);
        if v != closed || v != target(t) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn pow_rational(q: &Rational, e: i64) -> Rational {
    let base = if e < 0 { Rational::one() / q } else { q.clone() };
    (0..e.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}

/// `tan(pi/m)` when it lies in `Q` or a real quadratic field.
pub fn tan_pi_over(m: usize) -> Option<FieldElement> {
    let q3 = FieldDescriptor::Quadratic(3);
    let q2 = FieldDescriptor::Quadratic(2);
    let el = |a: Rational, b: Rational, f| FieldElement::new(a, b, f).ok();
    match m {
        3 => el(int(0), int(1), q3),
        4 => Some(FieldElement::from_int(1)),
        6 => el(int(0), Rational::new(1.into(), 3.into()), q3),
        8 => el(int(-1), int(1), q2),
        12 => el(int(2), int(-1), q3),
        _ => None,
    }
}

/// The `k + 1` forms `cos(j pi/(k+1)) x + sin(j pi/(k+1)) y` up to scale,
/// when `tan(pi/(k+1))` is available exactly.
pub fn circle_forms(k: usize) -> Option<Vec<LinearForm>> {
    if k == 1 {
        return Some(vec![LinearForm::x(), LinearForm::y()]);
    }
    let t = tan_pi_over(k + 1)?;
    let field = t.field();
    let mut c = FieldElement::from_int(1).lift(field);
    let mut s = FieldElement::zero().lift(field);
    let mut out = Vec::with_capacity(k + 1);
    for _ in 0..=k {
        out.push(LinearForm::new(c.clone(), s.clone()).ok()?);
        let c2 = (&c - &(&t * &s)).lift(field);
        let s2 = (&s + &(&t * &c)).lift(field);
        c = c2;
        s = s2;
    }
    Some(out)
}

fn tan_in_field(k: usize, field: FieldDescriptor) -> bool {
    if k == 1 || !field.is_exact() {
        return true;
    }
    match tan_pi_over(k + 1) {
        Some(t) => field.contains(&t.field()) || t.is_rational(),
        None => false,
    }
}

/// `L_K((x^2 + y^2)^k)`.
///
/// Equal to `k + 1` exactly when `tan(pi/(k+1))` lies in `K`; this always
/// holds over `R` and `C`. Otherwise the length is at least `k + 2`, and at
/// most `2k`, which settles `k = 2`.
pub fn circle_power_length(k: usize, field: FieldDescriptor) -> Result<LengthResult> {
    if k == 0 {
        return Err(Error::OutOfRange { index: 0, max: usize::MAX });
    }
    let f = BinaryForm::from_ints(&[1, 0, 1]).pow(k);
    circle_power_result(&f, k, field)
}

fn circle_power_result(f: &BinaryForm, k: usize, field: FieldDescriptor) -> Result<LengthResult> {
    let d = 2 * k;
    if tan_in_field(k, field) {
        let rep = match circle_forms(k) {
            Some(forms) => recover_coefficients(f, &forms)?,
            None => None,
        };
        let upper = if rep.is_some() {
            Provenance::witness("circle-tangent-forms")
        } else {
            Provenance::theorem("circle-power-tangent")
        };
        return Ok(LengthResult::exact(field, k + 1, Provenance::theorem("antidiagonal-hankel"), upper)
            .with_representation(rep));
    }
    let (cert, rep) = construction_certificate(f, FieldDescriptor::Q)?;
    let lower = Provenance::theorem("circle-power-tangent");
    let upper = Provenance::witness("degree-d-construction");
    let res = if k + 2 >= d {
        LengthResult::exact(field, d, lower, upper)
    } else {
        LengthResult::interval(field, k + 2, d, lower, upper)
    };
    Ok(res.with_representation(Some(rep)).with_certificate(Some(cert)))
}

/// `4a^3 b m^4 + (b^4 - 6a^2 b^2 - 3a^4) m^2 n^2 + 4a^3 b n^4`.
pub fn gamma_quartic(a: &BigInt, b: &BigInt, m: &BigInt, n: &BigInt) -> BigInt {
    let a2 = a * a;
    let a3 = &a2 * a;
    let b2 = b * b;
    let m2 = m * m;
    let n2 = n * n;
    let outer = BigInt::from(4) * &a3 * b;
    let mid = &b2 * &b2 - BigInt::from(6) * &a2 * &b2 - BigInt::from(3) * &a2 * &a2;
    &outer * &m2 * &m2 + mid * &m2 * &n2 + outer * &n2 * &n2
}

fn check_lambda(a: i64, b: i64) -> Result<()> {
    if b == 0 {
        return Err(Error::DivisionByZero);
    }
    if a == 0 || a.abs() == b.abs() {
        return Err(Error::Degenerate(format!("lambda = {a}/{b} satisfies lambda^3 = lambda")));
    }
    Ok(())
}

/// Coprime `(m, n)` with `0 <= m <= n <= bound`, in order of `n` then `m`,
/// accepted by `test`.
fn gamma_scan<T: Send>(
    bound: u64,
    test: impl Fn(i64, i64) -> Option<T> + Sync,
) -> Option<(i64, i64, T)> {
    (1..=bound as i64).into_par_iter().find_map_first(|n| {
        (0..=n)
            .filter(|m| m.gcd(&n) == 1)
            .find_map(|m| test(m, n).map(|t| (m, n, t)))
    })
}

fn gamma_root(a: i64, b: i64, m: i64, n: i64) -> Option<BigInt> {
    let g = gamma_quartic(&a.into(), &b.into(), &m.into(), &n.into());
    if g.is_positive() {
        bigint_sqrt_exact(&g)
    } else {
        None
    }
}

/// First coprime `(m, n)` with `0 <= m <= n <= bound` making `Gamma(a, b, m, n)`
/// a nonzero square, with its square root. `Gamma` is symmetric in `m, n`
/// and even in each, so this covers all `|m|, |n| <= bound`.
pub fn gamma_square_search(a: i64, b: i64, bound: u64) -> Result<Option<(i64, i64, BigInt)>> {
    check_lambda(a, b)?;
    Ok(gamma_scan(bound, |m, n| gamma_root(a, b, m, n)))
}

/// The length-3 representation of `x^4 + 6 lambda x^2 y^2 + y^4`,
/// `lambda = a/b`, attached to `(m, n)`. Its Sylvester form is
/// `(m x + n y)((lambda n^2 - lambda^2 m^2) x^2 + (lambda^2 - 1) m n xy + (lambda m^2 - lambda^2 n^2) y^2)`,
/// whose quadratic factor has discriminant `Gamma / b^4`.
pub fn gamma_witness(a: i64, b: i64, m: i64, n: i64) -> Result<Option<Representation>> {
    check_lambda(a, b)?;
    let lam = Rational::new(a.into(), b.into());
    let f = BinaryForm::from_raw(vec![int(1), int(0), int(6) * &lam, int(0), int(1)])?;
    gamma_witness_for(&f, &lam, m, n)
}

fn gamma_witness_for(f: &BinaryForm, lam: &Rational, m: i64, n: i64) -> Result<Option<Representation>> {
    let (mq, nq) = (int(m), int(n));
    let l2 = lam * lam;
    let quad = BinaryForm::from_raw(vec![
        lam * &nq * &nq - &l2 * &mq * &mq,
        (&l2 - int(1)) * &mq * &nq,
        lam * &mq * &mq - &l2 * &nq * &nq,
    ])?;
    let h = BinaryForm::from_raw(vec![mq, nq])?.mul(&quad);
    match sylvester::certificate_for_form(f, &h, FieldDescriptor::Q) {
        Some(cert) => representation_from_certificate(f, &cert),
        None => Ok(None),
    }
}

/// `4 Gamma(1, 2, m, n) = 27 (m^2 - n^2)^2 + 5 (m^2 + n^2)^2`, checked at `(m, n)`.
pub fn gamma_half_reduction_holds(m: i64, n: i64) -> bool {
    let (m, n) = (BigInt::from(m), BigInt::from(n));
    let x = &m * &m - &n * &n;
    let y = &m * &m + &n * &n;
    BigInt::from(4) * gamma_quartic(&1.into(), &2.into(), &m, &n)
        == BigInt::from(27) * &x * &x + BigInt::from(5) * &y * &y
}

/// The residue argument behind `27 X^2 + 5 Y^2 = Z^2` having only the zero
/// solution: modulo 5 it reads `2 X^2 = Z^2`, forcing `5 | X` and `5 | Z`,
/// and then `25 | 5 Y^2` forces `5 | Y`, so any solution descends to a
/// smaller one. Checked over all residues.
pub fn mod5_lemma_holds() -> bool {
    let forces_zero = (0..5).all(|x: i64| {
        (0..5).all(|z: i64| (2 * x * x - z * z).rem_euclid(5) != 0 || (x == 0 && z == 0))
    });
    let y_step = (0..25).all(|y: i64| (5 * y * y).rem_euclid(25) != 0 || y % 5 == 0);
    forces_zero && y_step
}

/// Nonzero integer solution of `27 X^2 + 5 Y^2 = Z^2` with
/// `0 <= X, Y <= bound`, if any.
pub fn search_27x2_5y2(bound: u64) -> Option<(i64, i64, BigInt)> {
    (0..=bound as i64).into_par_iter().find_map_first(|x| {
        (0..=bound as i64).find_map(|y| {
            if x == 0 && y == 0 {
                return None;
            }
            let s = BigInt::from(27 * x * x + 5 * y * y);
            bigint_sqrt_exact(&s).map(|z| (x, y, z))
        })
    })
}

/// Length-2 descent.
///
/// Takes the degree-2 Sylvester form `h = c0 x^2 + c1 xy + c2 y^2` and
/// `u = (c1^2 - 4 c0 c2) / c2^2` (or `c1^2` when `c2 = 0`). Returns `u`
/// and a length-2 representation over `K` when `sqrt u` lies in `K`, else
/// over `Q(sqrt u)`. `None` when `f` has no honest length-2 complex
/// representation.
pub fn two_power_descend(
    f: &BinaryForm,
    field: FieldDescriptor,
) -> Result<Option<(FieldElement, Representation)>> {
    if f.degree() < 3 {
        return Err(Error::DegreeMismatch { expected: 3, got: f.degree() });
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let basis = kernel_basis_int(&hankel(f, 2)?);
    if basis.len() != 1 {
        return Ok(None);
    }
    let cert0 = certificate_from_coords(f, 2, FieldDescriptor::C, &[BigInt::one()]);
    let Some(cert0) = cert0 else {
        return Ok(None);
    };
    let c = cert0.h.raw();
    let disc = &c[1] * &c[1] - int(4) * &c[0] * &c[2];
    let u = if c[2].is_zero() { disc } else { disc / (&c[2] * &c[2]) };
    let target = if contains_sqrt(field, &u)? && field.is_exact() {
        field
    } else {
        let w = sqrt_field(&u)?;
        if field.is_exact() && field != FieldDescriptor::Q && !w.contains(&field) {
            return Err(Error::UnsupportedField(format!("{field} adjoined sqrt({u})")));
        }
        w
    };
    let cert = certificate_from_coords(f, 2, target, &[BigInt::one()])
        .ok_or_else(|| Error::InvariantViolation("degree-2 form does not split".into()))?;
    let rep = representation_from_certificate(f, &cert)?
        .ok_or_else(|| Error::InvariantViolation("no length-2 representation".into()))?;
    Ok(Some((FieldElement::rational(u), rep)))
}

/// `f_l = sum alpha_j^l (x + alpha_j y)^d` for `g = prod (x + alpha_j y)`,
/// computed from the power sums `p_(l+k)` of the roots via Newton's
/// identities, without ever leaving `Q`.
pub fn power_sum_family(g: &BinaryForm, ell: usize, d: usize) -> Result<BinaryForm> {
    let r = g.degree();
    if g.raw()[0] != Rational::one() {
        return Err(Error::Degenerate("g must be monic in x".into()));
    }
    if !is_squarefree(g) {
        return Err(Error::Degenerate("g has a repeated root".into()));
    }
    if d + 1 <= 2 * r {
        return Err(Error::Degenerate(format!("need d > 2r - 1, got d = {d}, r = {r}")));
    }
    let e = g.raw();
    let top = ell + d;
    let mut p: Vec<Rational> = Vec::with_capacity(top + 1);
    p.push(int(r as i64));
    for n in 1..=top {
        let mut s = Rational::zero();
        for i in 1..=n.min(r) {
            let sign = if i % 2 == 1 { int(1) } else { int(-1) };
            let term = if i == n { int(n as i64) * &e[i] } else { &e[i] * &p[n - i] };
            s += sign * term;
        }
        p.push(s);
    }
    BinaryForm::from_normalized(p[ell..=top].to_vec())
}

/// A split degree-`d` Sylvester form and the length-`d` representation it
/// yields, both over `Q`.
///
/// With `e_k` the elementary symmetric functions of distinct rationals
/// `gamma_1, ..., gamma_(d-1)`, the form
/// `h = (alpha x + beta y) prod (x + gamma_j y)` with
/// `alpha = sum a_(k+1) e_k`, `beta = -sum a_k e_k` lies in `ker H_d(f)`.
/// The gammas are taken as `s+1, ..., s+d-1` for the first `s` giving
/// distinct factors. When `a_0 = 0` the form is first moved by
/// `y -> y + c x`.
pub fn universal_sylvester_construction(
    f: &BinaryForm,
    _field: FieldDescriptor,
) -> Result<(BinaryForm, Representation)> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let d = f.degree();
    let (g, shift) = if f.normalized()[0].is_zero() {
        let c = (1..)
            .find(|c| !f.eval(&int(1), &int(*c)).is_zero())
            .expect("nonzero form has a nonzero value");
        let m = [[int(1), int(0)], [int(c), int(1)]];
        (apply_linear_change(f, m)?, c)
    } else {
        (f.clone(), 0)
    };
    let a = g.normalized();
    for s in 0..(50 * d as i64 + 50) {
        // e_k of {s+1, ..., s+d-1}
        let mut e = vec![Rational::one()];
        for j in 1..d as i64 {
            let gamma = int(s + j);
            let mut next = e.clone();
            next.push(Rational::zero());
            for k in 1..next.len() {
                next[k] = &e.get(k).cloned().unwrap_or_default() + &gamma * &e[k - 1];
            }
            e = next;
        }
        let alpha: Rational = (0..d).map(|k| &a[k + 1] * &e[k]).sum();
        let beta: Rational = -(0..d).map(|k| &a[k] * &e[k]).sum::<Rational>();
        if alpha.is_zero() && beta.is_zero() {
            continue;
        }
        // summand for factor p x + q y is q x - p y; then undo the shift
        let mut factors: Vec<(Rational, Rational)> = (1..d as i64).map(|j| (int(1), int(s + j))).collect();
        factors.push((alpha, beta));
        let summands: Vec<LinearForm> = factors
            .iter()
            .map(|(p, q)| {
                let (al, be) = (q.clone(), -p.clone());
                LinearForm::new(
                    FieldElement::rational(&al - int(shift) * &be),
                    FieldElement::rational(be),
                )
            })
            .collect::<Result<_>>()?;
        if !pairwise_distinct(&summands) {
            continue;
        }
        let h = summands
            .iter()
            .map(|l| l.apolar_partner().to_form().expect("rational"))
            .fold(BinaryForm::from_ints(&[1]), |acc, l| acc.mul(&l));
        let hm = hankel(f, d)?;
        if hm.apply(h.raw()).iter().any(|v| !v.is_zero()) {
            return Err(Error::InvariantViolation("constructed form not in ker H_d".into()));
        }
        let rep = recover_coefficients(f, &summands)?
            .ok_or_else(|| Error::InvariantViolation("construction system inconsistent".into()))?;
        return Ok((h, rep));
    }
    Err(Error::InvariantViolation("no admissible gamma sequence found".into()))
}

/// The degree-`d` construction packaged as a certificate over `field`. The
/// factors of `h` are read off the summands, so no factoring is needed.
pub fn construction_certificate(
    f: &BinaryForm,
    field: FieldDescriptor,
) -> Result<(SylvesterCertificate, Representation)> {
    let (h, rep) = universal_sylvester_construction(f, field)?;
    let mut factors: Vec<LinearForm> = rep.forms().iter().map(|l| l.apolar_partner().lift(field)).collect();
    factors.sort_by_key(|l| l.sort_key());
    let cert = SylvesterCertificate { h, field, split: Split::Linear(factors), kernel_coords: vec![] };
    Ok((cert, rep))
}

fn pairwise_distinct(forms: &[LinearForm]) -> bool {
    forms
        .iter()
        .enumerate()
        .all(|(i, a)| forms[i + 1..].iter().all(|b| !a.proportional(b)))
}

/// `x^4 + 6 lambda x^2 y^2 + y^4` up to scale: returns `lambda`.
fn symmetric_quartic_lambda(f: &BinaryForm) -> Option<Rational> {
    let a = f.normalized();
    (f.degree() == 4 && !a[0].is_zero() && a[0] == a[4] && a[1].is_zero() && a[3].is_zero())
        .then(|| &a[2] / &a[0])
}

/// `k` with `f` proportional to `(x^2 + y^2)^k`.
fn circle_power_exponent(f: &BinaryForm) -> Option<usize> {
    let d = f.degree();
    if d % 2 != 0 || d == 0 {
        return None;
    }
    let k = d / 2;
    BinaryForm::from_ints(&[1, 0, 1]).pow(k).proportional(f).then_some(k)
}

/// Rule-based lengths for shapes with a closed-form answer over an exact
/// field. `None` when no rule applies.
pub fn certify_over_field(
    f: &BinaryForm,
    field: FieldDescriptor,
    opts: &SearchOptions,
) -> Result<Option<LengthResult>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if f.degree() == 3 {
        return cubic_length(f, field).map(Some);
    }
    if let Some(k) = circle_power_exponent(f) {
        return circle_power_result(f, k, field).map(Some);
    }
    if field == FieldDescriptor::Q {
        if let Some(lam) = symmetric_quartic_lambda(f) {
            return symmetric_quartic_over_q(f, &lam, opts);
        }
    }
    Ok(None)
}

fn symmetric_quartic_over_q(
    f: &BinaryForm,
    lam: &Rational,
    opts: &SearchOptions,
) -> Result<Option<LengthResult>> {
    let one = int(1);
    if lam.is_zero() || lam.abs() == one || *lam <= Rational::new((-1).into(), 3.into()) {
        return Ok(None);
    }
    let (a, b) = (lam.numer(), lam.denom());
    let (Ok(a), Ok(b)) = (i64::try_from(a), i64::try_from(b)) else {
        return Ok(None);
    };
    let bound = opts.height.min(2000);
    if let Some((m, n, rep)) = gamma_scan(bound, |m, n| {
        gamma_root(a, b, m, n)?;
        gamma_witness_for(f, lam, m, n).ok().flatten()
    }) {
        let prov = Provenance::witness(format!("gamma-square at (m, n) = ({m}, {n})"));
        return Ok(Some(
            LengthResult::exact(FieldDescriptor::Q, 3, Provenance::theorem("complex-sylvester-bound"), prov)
                .with_representation(Some(rep)),
        ));
    }
    let tag = if (a, b) == (1, 3) {
        "gamma-never-square"
    } else if (a, b) == (1, 2) {
        "gamma-descent-mod-5"
    } else {
        return Ok(None);
    };
    let (cert, rep) = construction_certificate(f, FieldDescriptor::Q)?;
    Ok(Some(
        LengthResult::exact(FieldDescriptor::Q, 4, Provenance::theorem(tag), Provenance::witness("degree-d-construction"))
            .with_representation(Some(rep))
            .with_certificate(Some(cert)),
    ))
}

/// `L_K(f)` for any supported field.
pub fn length_over_field(
    f: &BinaryForm,
    field: FieldDescriptor,
    opts: &SearchOptions,
) -> Result<LengthResult> {
    match field {
        FieldDescriptor::C => {
            let (r, cert) = min_length_over_c(f)?;
            let upper = Provenance::witness(format!("squarefree-kernel-member of degree {r}"));
            let lower = if r == 1 {
                Provenance::theorem("nonzero-form")
            } else {
                Provenance::theorem("no-squarefree-kernel-member-below")
            };
            Ok(LengthResult::exact(field, r, lower, upper).with_certificate(Some(cert)))
        }
        FieldDescriptor::R => reallen::real_length_bounds_with(f, opts),
        _ => sylvester::min_length_over_k(f, field, opts),
    }
}

/// Lengths of one form over several fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Cabinet {
    pub entries: Vec<(FieldDescriptor, LengthResult)>,
    /// Exact lengths achieved, sorted.
    pub summary: BTreeSet<usize>,
    pub complex_length: usize,
}

impl Cabinet {
    pub fn get(&self, field: FieldDescriptor) -> Option<&LengthResult> {
        self.entries.iter().find(|(f, _)| *f == field).map(|(_, r)| r)
    }
}

/// Lengths that can occur for a form of degree `d` and complex length `r`:
/// `r` itself and `d - r + 2, ..., d`.
pub fn allowed_lengths(d: usize, r: usize) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = ((d + 2).saturating_sub(r).max(1)..=d).collect();
    s.insert(r);
    s
}

/// Assemble the cabinet over `fields` and check it against the structural
/// constraints: the allowed length set, the `{2}` / `{2, d}` rule for
/// complex length 2, `d >= 2k - 1` for `k` distinct lengths, and
/// monotonicity under field inclusion.
pub fn cabinet(f: &BinaryForm, fields: &[FieldDescriptor], opts: &SearchOptions) -> Result<Cabinet> {
    let d = f.degree();
    let (rc, _) = min_length_over_c(f)?;
    let mut entries = Vec::new();
    for &k in fields {
        entries.push((k, length_over_field(f, k, opts)?));
    }
    let summary: BTreeSet<usize> = entries.iter().filter_map(|(_, r)| r.value()).collect();
    let allowed = allowed_lengths(d, rc);
    if let Some(bad) = summary.iter().find(|v| !allowed.contains(v)) {
        return Err(Error::InvariantViolation(format!(
            "length {bad} outside the allowed set {allowed:?}"
        )));
    }
    if rc == 2 && summary.iter().any(|&v| v != 2 && v != d) {
        return Err(Error::InvariantViolation("complex length 2 but a length other than 2 or d".into()));
    }
    if d + 1 < 2 * summary.len() {
        return Err(Error::InvariantViolation(format!("{} distinct lengths in degree {d}", summary.len())));
    }
    for (i, (ka, ra)) in entries.iter().enumerate() {
        for (kb, rb) in &entries[i + 1..] {
            let clash = (kb.contains(ka) && ra.upper < rb.lower) || (ka.contains(kb) && rb.upper < ra.lower);
            if clash {
                return Err(Error::InvariantViolation(format!(
                    "lengths over {ka} and {kb} violate field monotonicity"
                )));
            }
        }
        if ra.lower < rc {
            return Err(Error::InvariantViolation(format!("length over {ka} below the complex length")));
        }
    }
    Ok(Cabinet { entries, summary, complex_length: rc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn phi() -> BinaryForm {
        BinaryForm::from_ints(&[3, 0, -20, 0, 10, 0])
    }

    #[test]
    fn cubic_examples() {
        let q = FieldDescriptor::Q;
        let r = cubic_length(&BinaryForm::from_ints(&[1, 0, 0, 1]), q).unwrap();
        assert_eq!(r.value(), Some(2));
        assert_eq!(r.representation.unwrap().len(), 2);
        for k in [q, FieldDescriptor::R, FieldDescriptor::C, FieldDescriptor::gaussian()] {
            assert_eq!(cubic_length(&BinaryForm::from_ints(&[0, 3, 0, 0]), k).unwrap().value(), Some(3));
            assert_eq!(cubic_length(&BinaryForm::from_ints(&[1, 0, 0, 0]), k).unwrap().value(), Some(1));
        }
        // x(x - y)(x + y): three real roots
        let split = BinaryForm::from_ints(&[1, 0, -1, 0]);
        assert_eq!(cubic_length(&split, FieldDescriptor::R).unwrap().value(), Some(3));
        assert_eq!(cubic_length(&split, FieldDescriptor::C).unwrap().value(), Some(2));
        assert_eq!(cubic_length(&split, FieldDescriptor::quadratic(-3).unwrap()).unwrap().value(), Some(2));
        // (x+iy)^3 + (x-iy)^3 = 2x^3 - 6xy^2
        let f = BinaryForm::from_ints(&[2, 0, -6, 0]);
        assert_eq!(cubic_length(&f, q).unwrap().value(), Some(3));
        let res = cubic_length(&f, FieldDescriptor::gaussian()).unwrap();
        assert_eq!(res.value(), Some(2));
    }

    #[test]
    fn top_length_examples() {
        let (l, lp) = top_length_detect(&BinaryForm::from_ints(&[0, 4, 0, 0, 0])).unwrap();
        assert_eq!((l, lp), (LinearForm::x(), LinearForm::y()));
        assert!(top_length_detect(&BinaryForm::from_ints(&[1, 0, 0, 1])).is_none());
        let xpy = BinaryForm::from_ints(&[1, 1]);
        let f = xpy.pow(3).mul(&BinaryForm::from_ints(&[1, -1]));
        let (l, lp) = top_length_detect(&f).unwrap();
        assert_eq!(l, LinearForm::from_ints(1, 1).unwrap());
        assert_eq!(lp, LinearForm::from_ints(1, -1).unwrap());
        assert_eq!(min_length_over_c(&f).unwrap().0, 4);
        assert!(top_length_detect(&xpy.pow(4)).is_none());
    }

    #[test]
    fn xkyk_identities() {
        assert!(xkyk_identity_verify(1, &int(1)).unwrap());
        assert!(xkyk_identity_verify(2, &int(1)).unwrap());
        assert!(xkyk_identity_verify(3, &int(2)).unwrap());
        assert!(xkyk_identity_verify(8, &ratio(-3, 7)).unwrap());
        assert!(xkyk_identity_verify(2, &int(0)).is_err());
    }

    #[test]
    fn circle_powers() {
        let q = FieldDescriptor::Q;
        assert_eq!(circle_power_length(2, q).unwrap().value(), Some(4));
        assert_eq!(circle_power_length(3, q).unwrap().value(), Some(4));
        assert_eq!(circle_power_length(1, q).unwrap().value(), Some(2));
        let r = circle_power_length(4, q).unwrap();
        assert_eq!((r.lower, r.upper), (6, 8));
        let q2 = FieldDescriptor::quadratic(2).unwrap();
        let r = circle_power_length(7, q2).unwrap();
        assert_eq!(r.value(), Some(8));
        let rep = r.representation.unwrap();
        assert_eq!(rep.len(), 8);
        // lambda on x^14 is 256/429 after scaling the target to (x^2+y^2)^7
        let xl = rep.terms().iter().find(|(_, l)| *l == LinearForm::x()).unwrap();
        assert_eq!(xl.0, FieldElement::rational(ratio(256, 429)));
        let q3 = FieldDescriptor::quadratic(3).unwrap();
        for k in [2, 5, 11] {
            assert_eq!(circle_power_length(k, q3).unwrap().value(), Some(k + 1));
        }
        assert_eq!(circle_power_length(4, FieldDescriptor::R).unwrap().value(), Some(5));
        // degree 14 is past the factoring cap; the certificate must not need it
        let r = circle_power_length(7, q).unwrap();
        assert_eq!((r.lower, r.upper), (9, 14));
        let f = BinaryForm::from_ints(&[1, 0, 1]).pow(7);
        assert!(r.certificate.unwrap().verify(&f));
    }

    #[test]
    fn gamma_values() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(gamma_quartic(&b(38), &b(3), &b(2), &b(19)), b(276906) * b(276906));
        assert_eq!(gamma_quartic(&b(4), &b(1), &b(1), &b(2)), b(30 * 30));
        for (m, n) in [(1, 0), (2, 3), (-5, 7)] {
            let s = m * m + n * n;
            assert_eq!(gamma_quartic(&b(1), &b(3), &b(m), &b(n)), b(12 * s * s));
        }
        assert_eq!(gamma_square_search(38, 3, 19).unwrap(), Some((2, 19, b(276906))));
        assert_eq!(gamma_square_search(1, 3, 60).unwrap(), None);
        assert_eq!(gamma_square_search(1, 2, 100).unwrap(), None);
        assert!(gamma_square_search(1, 1, 5).is_err());
    }

    #[test]
    fn gamma_witness_rebuild() {
        let rep = gamma_witness(38, 3, 2, 19).unwrap().unwrap();
        assert_eq!(rep.len(), 3);
        let f = BinaryForm::from_raw(vec![int(3), int(0), int(6 * 38), int(0), int(3)]).unwrap();
        let res = sylvester::min_length_over_k(&f, FieldDescriptor::Q, &SearchOptions::with_height(20)).unwrap();
        assert_eq!(res.value(), Some(3));
    }

    #[test]
    fn half_lambda_descent() {
        for (m, n) in [(0, 1), (3, 7), (10, -4)] {
            assert!(gamma_half_reduction_holds(m, n));
        }
        assert!(mod5_lemma_holds());
        assert_eq!(search_27x2_5y2(100), None);
        let f = BinaryForm::from_ints(&[2, 0, 6, 0, 2]);
        let res = sylvester::min_length_over_k(&f, FieldDescriptor::Q, &SearchOptions::with_height(20)).unwrap();
        assert_eq!(res.value(), Some(4));
        assert_eq!(res.lower_provenance.tag(), "gamma-descent-mod-5");
    }

    #[test]
    fn descent_examples() {
        let q = FieldDescriptor::Q;
        // (x + sqrt2 y)^4 + (x - sqrt2 y)^4
        let f = BinaryForm::from_ints(&[2, 0, 24, 0, 8]);
        let (u, rep) = two_power_descend(&f, q).unwrap().unwrap();
        assert_eq!(u, FieldElement::from_int(8));
        assert_eq!(rep.field(), FieldDescriptor::quadratic(2).unwrap());
        assert_eq!(rep.len(), 2);
        let conj: Vec<_> = rep.forms().iter().map(|l| l.conjugate()).collect();
        assert!(conj.iter().all(|c| rep.forms().contains(c)));

        let (u, rep) = two_power_descend(&BinaryForm::from_ints(&[1, 0, 0, 1]), q).unwrap().unwrap();
        assert_eq!(u, FieldElement::from_int(1));
        assert_eq!(rep.field(), q);

        let (u, rep) = two_power_descend(&BinaryForm::from_ints(&[2, 0, -12, 0, 2]), q).unwrap().unwrap();
        assert_eq!(u, FieldElement::from_int(-4));
        assert_eq!(rep.field(), FieldDescriptor::gaussian());

        assert!(two_power_descend(&phi(), q).unwrap().is_none());
    }

    #[test]
    fn power_sums() {
        let g = BinaryForm::from_ints(&[1, 0, -2]);
        let f = power_sum_family(&g, 0, 4).unwrap();
        assert_eq!(f.normalized(), &[int(2), int(0), int(4), int(0), int(8)]);
        assert_eq!(f, BinaryForm::from_ints(&[2, 0, 24, 0, 8]));
        let g = BinaryForm::from_ints(&[1, 0, 0, -2]);
        let f = power_sum_family(&g, 1, 8).unwrap();
        assert_eq!(min_length_over_c(&f).unwrap().0, 3);
        // a zero root contributes x^d at l = 0
        let g = BinaryForm::from_ints(&[1, 1, 0]);
        let f = power_sum_family(&g, 0, 4).unwrap();
        let want = BinaryForm::from_ints(&[1, 0, 0, 0, 0]).add(&BinaryForm::from_ints(&[1, 1]).pow(4)).unwrap();
        assert_eq!(f, want);
        assert!(power_sum_family(&BinaryForm::from_ints(&[1, 2, 1]), 0, 5).is_err());
        assert!(power_sum_family(&g, 0, 3).is_err());
    }

    #[test]
    fn construction_examples() {
        for f in [phi(), BinaryForm::from_ints(&[1, 0, 0, 1]), BinaryForm::from_ints(&[0, 0, 1, 0]), BinaryForm::from_ints(&[0, 0, 0, 0, 1])] {
            let (h, rep) = universal_sylvester_construction(&f, FieldDescriptor::Q).unwrap();
            assert_eq!(h.degree(), f.degree());
            assert!(is_squarefree(&h));
            assert!(crate::binform::splits_distinct(&h, FieldDescriptor::Q).is_some());
            assert!(crate::binform::apolar_apply(&h, &f).unwrap().is_zero());
            assert!(rep.len() <= f.degree());
        }
    }

    #[test]
    fn cabinets() {
        let opts = SearchOptions::with_height(10);
        let fields = [FieldDescriptor::gaussian(), FieldDescriptor::quadratic(-2).unwrap(), FieldDescriptor::R];
        let c = cabinet(&phi(), &fields, &opts).unwrap();
        assert_eq!(c.summary, BTreeSet::from([3, 4, 5]));
        let circle = BinaryForm::from_ints(&[1, 0, 2, 0, 1]);
        let c = cabinet(&circle, &[FieldDescriptor::Q, FieldDescriptor::R, FieldDescriptor::C], &opts).unwrap();
        assert_eq!(c.summary, BTreeSet::from([3, 4]));
        let c = cabinet(&BinaryForm::from_ints(&[1, 0, 0, 0]), &[FieldDescriptor::Q, FieldDescriptor::C], &opts).unwrap();
        assert_eq!(c.summary, BTreeSet::from([1]));
        assert_eq!(allowed_lengths(5, 3), BTreeSet::from([3, 4, 5]));
        assert_eq!(allowed_lengths(4, 2), BTreeSet::from([2, 4]));
    }
}
