//! Real lengths: sign changes against real factor counts, and the quartic
//! classification.
//!
//! For an honest real representation with at least two summands, ordered by
//! angle, the number `tau` of real linear factors of the target never
//! exceeds the number `sigma` of sign changes in
//! `(lambda_1, ..., lambda_r, (-1)^d lambda_1)`.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use num_traits::{One, Signed, Zero};

use crate::binform::{real_root_census, splits_distinct, BinaryForm, LinearForm, Split};
use crate::error::{Error, Result};
use crate::exactnum::{int, rational_squarefree_class, FieldDescriptor, FieldElement, Rational};
use crate::sylvester::{
    self, hankel, kernel_basis_int, min_length_over_c, recover_coefficients, LengthResult,
    Provenance, Representation, SearchOptions, SylvesterCertificate,
};

static TAU_SIGMA_CHECKS: AtomicUsize = AtomicUsize::new(0);
static TAU_SIGMA_FAILURES: AtomicUsize = AtomicUsize::new(0);

/// Number of real representations checked against `tau <= sigma` so far, in
/// this process.
pub fn tau_sigma_checks() -> usize {
    TAU_SIGMA_CHECKS.load(AtomicOrdering::Relaxed)
}

/// Number of those checks that failed. Anything but zero is a bug.
pub fn tau_sigma_failures() -> usize {
    TAU_SIGMA_FAILURES.load(AtomicOrdering::Relaxed)
}

/// Summands of a real representation in angular order.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularRepresentation {
    pub terms: Vec<(FieldElement, LinearForm)>,
}

impl AngularRepresentation {
    /// Sort the normalized summands of a real representation by angle in
    /// `(-pi/2, pi/2]`. Normalized forms have `alpha > 0`, or are `y`.
    pub fn from_representation(rep: &Representation) -> Result<Self> {
        if !rep.field().is_real() {
            return Err(Error::UnsupportedField(rep.field().to_string()));
        }
        let mut terms = rep.terms().to_vec();
        terms.sort_by(|a, b| a.1.angular_cmp(&b.1).unwrap_or(Ordering::Equal));
        Ok(Self { terms })
    }

    pub fn signs(&self) -> Vec<Ordering> {
        self.terms
            .iter()
            .map(|(l, _)| l.signum().unwrap_or(Ordering::Equal))
            .collect()
    }
}

/// Sign changes in `(lambda_1, ..., lambda_r, (-1)^d lambda_1)`.
pub fn sign_change_count(rep: &AngularRepresentation, d: usize) -> usize {
    sign_changes_closed(&rep.signs(), d)
}

/// Same count from bare signs.
pub fn sign_changes_closed(signs: &[Ordering], d: usize) -> usize {
    let Some(first) = signs.first() else {
        return 0;
    };
    let closing = if d % 2 == 0 { *first } else { first.reverse() };
    signs
        .iter()
        .chain(std::iter::once(&closing))
        .collect::<Vec<_>>()
        .windows(2)
        .filter(|w| w[0] != w[1] && *w[0] != Ordering::Equal && *w[1] != Ordering::Equal)
        .count()
}

/// `(tau, sigma, tau <= sigma)` for a real representation. With a single
/// summand the inequality does not apply and `ok` is reported as true.
pub fn verify_1864(rep: &Representation) -> Result<(usize, usize, bool)> {
    let ang = AngularRepresentation::from_representation(rep)?;
    if rep.target().is_zero() {
        return Err(Error::ZeroForm);
    }
    let (tau, _) = real_root_census(rep.target());
    let sigma = sign_change_count(&ang, rep.degree());
    Ok((tau, sigma, rep.len() < 2 || tau <= sigma))
}

/// Runtime check run on every real representation the crate constructs.
pub(crate) fn assert_tau_le_sigma(rep: &Representation) -> Result<()> {
    let (tau, sigma, ok) = verify_1864(rep)?;
    TAU_SIGMA_CHECKS.fetch_add(1, AtomicOrdering::Relaxed);
    if !ok {
        TAU_SIGMA_FAILURES.fetch_add(1, AtomicOrdering::Relaxed);
        return Err(Error::InvariantViolation(format!(
            "real representation with tau = {tau} > sigma = {sigma}"
        )));
    }
    Ok(())
}

/// Kernel member of `H_r(f)` splitting into distinct real factors, searched
/// up to the height bound.
fn real_split_member(f: &BinaryForm, r: usize, opts: &SearchOptions) -> Option<SylvesterCertificate> {
    let basis = kernel_basis_int(&hankel(f, r).ok()?);
    if basis.is_empty() {
        return None;
    }
    // exact fields first, so a representation can be recovered
    if let Some(c) = sylvester::kernel_splitting_search(f, r, FieldDescriptor::Q, &small(opts)) {
        return Some(c);
    }
    let mut found = None;
    for coords in shells(basis.len(), opts.height.min(12)) {
        let h = combine_form(&basis, &coords);
        if h.is_zero() {
            continue;
        }
        if let Some(split) = splits_distinct(&h, FieldDescriptor::R) {
            found = Some(SylvesterCertificate {
                h,
                field: FieldDescriptor::R,
                split,
                kernel_coords: coords.iter().map(|&c| c.into()).collect(),
            });
            break;
        }
    }
    found
}

fn small(opts: &SearchOptions) -> SearchOptions {
    SearchOptions { height: opts.height.min(8), ..opts.clone() }
}

fn combine_form(basis: &[Vec<num_bigint::BigInt>], coords: &[i64]) -> BinaryForm {
    let n = basis[0].len();
    let raw = (0..n)
        .map(|i| {
            let s: num_bigint::BigInt = basis.iter().zip(coords).map(|(b, &c)| &b[i] * c).sum();
            Rational::from_integer(s)
        })
        .collect();
    BinaryForm::from_raw(raw).expect("nonempty")
}

/// Primitive vectors with positive first nonzero entry by increasing
/// max-norm, then lexicographically.
pub(crate) fn shells(k: usize, height: u64) -> impl Iterator<Item = Vec<i64>> {
    (1..=height as i64).flat_map(move |m| {
        let side = 2 * m + 1;
        let total = side.pow(k as u32);
        (0..total).filter_map(move |mut idx| {
            let mut v = vec![0i64; k];
            for slot in v.iter_mut().rev() {
                *slot = idx % side - m;
                idx /= side;
            }
            let ok = v.iter().map(|x| x.abs()).max() == Some(m)
                && v.iter().find(|x| **x != 0).is_some_and(|x| *x > 0)
                && v.iter().fold(0i64, |g, x| num_integer::gcd(g, *x)) == 1;
            ok.then_some(v)
        })
    })
}

/// Bounds on `L_R(f)`, exact where a rule decides it.
pub fn real_length_bounds(f: &BinaryForm) -> Result<LengthResult> {
    real_length_bounds_with(f, &SearchOptions::default())
}

pub fn real_length_bounds_with(f: &BinaryForm, opts: &SearchOptions) -> Result<LengthResult> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let field = FieldDescriptor::R;
    let d = f.degree();
    let (rc, _) = min_length_over_c(f)?;
    let (tau, _) = real_root_census(f);
    let mut res = if rc == 1 {
        let rep = sylvester::min_length_over_k(f, FieldDescriptor::Q, opts)?.representation;
        LengthResult::exact(field, 1, Provenance::theorem("nonzero-form"), Provenance::witness("power-of-linear-form"))
            .with_representation(rep)
    } else if d == 3 {
        crate::special::cubic_length(f, field)?
    } else if d == 4 {
        let (len, rep) = quartic_real_length(f)?;
        let upper = if rep.is_some() {
            Provenance::witness("quartic-construction")
        } else {
            Provenance::theorem("real-quartic-classification")
        };
        LengthResult::exact(field, len, Provenance::theorem("real-quartic-classification"), upper)
            .with_representation(rep)
    } else if tau == d {
        let (cert, rep) = crate::special::construction_certificate(f, FieldDescriptor::Q)?;
        LengthResult::exact(field, d, Provenance::theorem("real-factor-count"), Provenance::witness("degree-d-construction"))
            .with_representation(Some(rep))
            .with_certificate(Some(cert))
    } else {
        general_real(f, rc, tau, opts)?
    };
    res.tau = Some(tau);
    if let Some(rep) = &res.representation {
        if rep.field().is_real() && rep.len() >= 2 {
            res.sigma = Some(verify_1864(rep)?.1);
        }
    }
    if res.lower < rc {
        return Err(Error::InvariantViolation("real length below complex length".into()));
    }
    Ok(res)
}

fn general_real(f: &BinaryForm, rc: usize, tau: usize, opts: &SearchOptions) -> Result<LengthResult> {
    let field = FieldDescriptor::R;
    let d = f.degree();
    let (mut lower, mut lower_prov) = if tau > rc {
        (tau, Provenance::theorem("real-factor-count"))
    } else {
        (rc, Provenance::theorem("complex-sylvester-bound"))
    };
    let mut undecided = false;
    // Degree d is covered by the construction below.
    for r in lower..d {
        let basis = kernel_basis_int(&hankel(f, r)?);
        let ruled_out = basis.is_empty()
            || (basis.len() == 1 && splits_distinct(&combine_form(&basis, &[1]), field).is_none());
        if ruled_out {
            if !undecided {
                lower = r + 1;
                lower_prov = Provenance::theorem("kernel-has-no-split-member");
            }
            continue;
        }
        if let Some(cert) = real_split_member(f, r, opts) {
            let rep = sylvester::representation_from_certificate(f, &cert)?;
            let prov = Provenance::witness(format!("real-split-kernel-member of degree {r}"));
            let res = if undecided {
                LengthResult::interval(field, lower, r, lower_prov, prov)
            } else {
                LengthResult::exact(field, r, lower_prov, prov)
            };
            return Ok(res.with_representation(rep).with_certificate(Some(cert)));
        }
        undecided = true;
    }
    let (_, rep) = crate::special::universal_sylvester_construction(f, FieldDescriptor::Q)?;
    let prov = Provenance::witness("degree-d-construction");
    let res = if lower >= d {
        LengthResult::exact(field, d, lower_prov, prov)
    } else {
        LengthResult::interval(field, lower, d, lower_prov, prov)
    };
    Ok(res.with_representation(Some(rep)))
}

/// `L_R` of a quartic with an optional exact witness.
///
/// Length 1 for fourth powers, 4 when all four linear factors are real,
/// 2 when the degree-2 kernel has a member with two distinct real factors,
/// and 3 otherwise.
pub fn quartic_real_length(f: &BinaryForm) -> Result<(usize, Option<Representation>)> {
    if f.degree() != 4 {
        return Err(Error::DegreeMismatch { expected: 4, got: f.degree() });
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let b1 = kernel_basis_int(&hankel(f, 1)?);
    if !b1.is_empty() {
        let cert = sylvester::certificate_from_coords(f, 1, FieldDescriptor::Q, &[1.into()])
            .ok_or_else(|| Error::InvariantViolation("rank one quartic".into()))?;
        return Ok((1, sylvester::representation_from_certificate(f, &cert)?));
    }
    let (tau, _) = real_root_census(f);
    if tau == 4 {
        let (_, rep) = crate::special::universal_sylvester_construction(f, FieldDescriptor::Q)?;
        return Ok((4, Some(rep)));
    }
    let b2 = kernel_basis_int(&hankel(f, 2)?);
    if b2.len() == 1 {
        let h = combine_form(&b2, &[1]);
        if splits_distinct(&h, FieldDescriptor::R).is_some() {
            return Ok((2, real_quadratic_rep(f, &h)?));
        }
    }
    Ok((3, quartic_witness(f)?))
}

/// Representation from a degree-2 Sylvester form with distinct real roots,
/// over `Q` or the real quadratic field containing them.
fn real_quadratic_rep(f: &BinaryForm, h: &BinaryForm) -> Result<Option<Representation>> {
    let field = quadratic_splitting_field(h).unwrap_or(FieldDescriptor::Q);
    let Some(Split::Linear(factors)) = splits_distinct(h, field) else {
        return Ok(None);
    };
    let summands: Vec<LinearForm> = factors
        .iter()
        .map(|l| LinearForm::new(l.beta.clone(), -&l.alpha).expect("nonzero"))
        .collect();
    recover_coefficients(f, &summands)
}

/// Field generated by the roots of a quadratic form, when it is real.
fn quadratic_splitting_field(h: &BinaryForm) -> Option<FieldDescriptor> {
    let c = h.raw();
    let disc = &c[1] * &c[1] - int(4) * &c[0] * &c[2];
    let class = rational_squarefree_class(&disc)?;
    if class == 1 {
        Some(FieldDescriptor::Q)
    } else if class > 1 {
        FieldDescriptor::quadratic(class).ok()
    } else {
        None
    }
}

/// Length-3 witness for quartics of length 3, where one is found.
///
/// Tries the two canonical families first (symmetric `x^4 + c x^2y^2 + y^4`
/// and `x^3y + c x^2y^2 + xy^3`, solved for their parameter over `Q` or a
/// real quadratic field), then a small rational kernel search.
fn quartic_witness(f: &BinaryForm) -> Result<Option<Representation>> {
    if let Some(rep) = symmetric_family_witness(f)? {
        return Ok(Some(rep));
    }
    if let Some(rep) = skew_family_witness(f)? {
        return Ok(Some(rep));
    }
    let opts = SearchOptions::with_height(6);
    if let Some(cert) = sylvester::kernel_splitting_search(f, 3, FieldDescriptor::Q, &opts) {
        return sylvester::representation_from_certificate(f, &cert);
    }
    Ok(None)
}

/// Root of `a r^2 + b r + c = 0` (with `a != 0`) in `Q` or a real quadratic
/// field; `r != 1` preferred.
fn real_root_of(a: &Rational, b: &Rational, c: &Rational) -> Option<FieldElement> {
    let disc = b * b - int(4) * a * c;
    if disc.is_negative() {
        return None;
    }
    let class = rational_squarefree_class(&disc);
    let two_a = int(2) * a;
    let candidates: Vec<FieldElement> = match class {
        None => vec![FieldElement::rational(-b / &two_a)],
        Some(1) => {
            let s = crate::exactnum::rational_sqrt(&disc)?;
            vec![FieldElement::rational((-b + &s) / &two_a), FieldElement::rational((-b - &s) / &two_a)]
        }
        Some(e) => {
            let field = FieldDescriptor::quadratic(e).ok()?;
            let t = crate::exactnum::rational_sqrt(&(&disc / int(e)))?;
            let base = FieldElement::rational(-b / &two_a).lift(field);
            [int(1), int(-1)]
                .iter()
                .map(|s| &base + &FieldElement::new(Rational::zero(), s * &t / &two_a, field).expect("field"))
                .collect()
        }
    };
    candidates.into_iter().find(|r| !(r - &FieldElement::one()).is_zero())
}

/// `f = k (x^4 + c x^2y^2 + y^4)`: witness from
/// `(rx+y)^4 + (x+ry)^4 - (r^3+r)(x+y)^4`, which is proportional to
/// `x^4 - 6r/(r^2+r+1) x^2y^2 + y^4`.
fn symmetric_family_witness(f: &BinaryForm) -> Result<Option<Representation>> {
    let c = f.raw();
    if !(c[1].is_zero() && c[3].is_zero() && c[0] == c[4] && !c[0].is_zero()) {
        return Ok(None);
    }
    // c/6 = -r/(r^2+r+1)  <=>  lam r^2 + (lam + 1) r + lam = 0
    let lam = &c[2] / (&c[0] * int(6));
    let Some(r) = real_root_of(&lam, &(&lam + Rational::one()), &lam) else {
        return Ok(None);
    };
    let field = r.field();
    let one = FieldElement::one().lift(field);
    let forms = [
        LinearForm::new(r.clone(), one.clone())?,
        LinearForm::new(one.clone(), r.clone())?,
        LinearForm::new(one.clone(), one.clone())?,
    ];
    if !distinct_forms(&forms) {
        return Ok(None);
    }
    recover_coefficients(f, &forms)
}

/// `f = k (x^3y + c x^2y^2 + xy^3)`: witness from
/// `(r^4+1)(x+y)^4 - (rx+y)^4 - (x+ry)^4`, proportional to
/// `x^3y + 3(1+r)^2/(2(r^2+r+1)) x^2y^2 + xy^3`.
fn skew_family_witness(f: &BinaryForm) -> Result<Option<Representation>> {
    let c = f.raw();
    if !(c[0].is_zero() && c[4].is_zero() && c[1] == c[3] && !c[1].is_zero()) {
        return Ok(None);
    }
    let k = &c[2] / &c[1];
    // 2k(r^2+r+1) = 3(r+1)^2
    let a = int(2) * &k - int(3);
    let b = int(2) * &k - int(6);
    if a.is_zero() {
        return Ok(None);
    }
    let Some(r) = real_root_of(&a, &b, &a) else {
        return Ok(None);
    };
    let field = r.field();
    let one = FieldElement::one().lift(field);
    let mut forms = vec![LinearForm::new(one.clone(), one.clone())?];
    for l in [LinearForm::new(r.clone(), one.clone())?, LinearForm::new(one.clone(), r.clone())?] {
        if !forms.iter().any(|g| g.proportional(&l)) {
            forms.push(l);
        }
    }
    recover_coefficients(f, &forms)
}

fn distinct_forms(forms: &[LinearForm]) -> bool {
    forms
        .iter()
        .enumerate()
        .all(|(i, a)| forms[i + 1..].iter().all(|b| !a.proportional(b)))
}

/// Number of definite quadratic factors of `f` over `R`, that is
/// `(d - tau) / 2`.
pub fn definite_quadratic_count(f: &BinaryForm) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let (tau, _) = real_root_census(f);
    Ok((f.degree() - tau) / 2)
}

/// Helper used by tests and examples: the expansion of a representation as a
/// rational form, when it is one.
pub fn expand_rational(rep: &Representation) -> Option<BinaryForm> {
    let raw: Option<Vec<Rational>> = rep.expand_raw().iter().map(|c| c.to_rational()).collect();
    BinaryForm::from_raw(raw?).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn phi() -> BinaryForm {
        BinaryForm::from_ints(&[3, 0, -20, 0, 10, 0])
    }

    fn six_phi_rep() -> Representation {
        let forms: Vec<LinearForm> = [(1, 0), (1, 1), (1, -1), (1, 2), (1, -2)]
            .iter()
            .map(|&(a, b)| LinearForm::from_ints(a, b).unwrap())
            .collect();
        let lambdas = [36, -10, -10, 1, 1];
        let terms = lambdas
            .iter()
            .zip(forms)
            .map(|(&l, f)| (FieldElement::from_int(l), f))
            .collect();
        Representation::new(FieldDescriptor::Q, terms, phi().scale(&int(6))).unwrap()
    }

    #[test]
    fn sigma_for_six_phi() {
        let rep = six_phi_rep();
        let ang = AngularRepresentation::from_representation(&rep).unwrap();
        let lam: Vec<FieldElement> = ang.terms.iter().map(|(l, _)| l.clone()).collect();
        let want: Vec<FieldElement> = [1, -10, 36, -10, 1].iter().map(|&x| FieldElement::from_int(x)).collect();
        assert_eq!(lam, want);
        assert_eq!(sign_change_count(&ang, 5), 5);
        assert_eq!(verify_1864(&rep).unwrap(), (5, 5, true));
    }

    #[test]
    fn sigma_trivial_cases() {
        let pos = [Ordering::Greater; 3];
        assert_eq!(sign_changes_closed(&pos, 4), 0);
        assert_eq!(sign_changes_closed(&pos, 5), 1);
        let f = BinaryForm::from_ints(&[1, 0, 0, 1]);
        let rep = recover_coefficients(&f, &[LinearForm::x(), LinearForm::y()]).unwrap().unwrap();
        assert_eq!(verify_1864(&rep).unwrap(), (1, 1, true));
    }

    #[test]
    fn real_lengths() {
        assert_eq!(real_length_bounds(&phi()).unwrap().value(), Some(5));
        let split = BinaryForm::from_ints(&[0, 1, 0, -1, 0]);
        assert_eq!(real_length_bounds(&split).unwrap().value(), Some(4));
        for k in 1..=4usize {
            let f = BinaryForm::from_ints(&[1, 0, 1]).pow(k);
            assert_eq!(real_length_bounds(&f).unwrap().value(), Some(k + 1), "k = {k}");
        }
    }

    #[test]
    fn quartic_examples() {
        let f = BinaryForm::from_raw(vec![int(1), int(0), int(1), int(0), int(1)]).unwrap();
        let (len, rep) = quartic_real_length(&f).unwrap();
        assert_eq!(len, 3);
        assert!(rep.is_some());
        let g = BinaryForm::from_ints(&[2, 0, 12, 0, 0]);
        let (len, rep) = quartic_real_length(&g).unwrap();
        assert_eq!(len, 3);
        assert_eq!(expand_rational(&rep.unwrap()).unwrap(), g);
        // x y (x^2 + y^2) = ((x+y)^4 - (x-y)^4) / 8
        let h = BinaryForm::from_ints(&[0, 1, 0, 1, 0]);
        let (len, rep) = quartic_real_length(&h).unwrap();
        assert_eq!(len, 2);
        let rep = rep.unwrap();
        assert!(rep.lambdas().iter().all(|l| l.rat_part().abs() == ratio(1, 8)));
    }

    #[test]
    fn checks_are_counted() {
        let before = tau_sigma_checks();
        let _ = six_phi_rep();
        assert!(tau_sigma_checks() > before);
        assert_eq!(tau_sigma_failures(), 0);
    }
}
