//! Hankel kernels, Sylvester forms and length computation.
//!
//! A form `h` of degree `r` with `H_r(f) c(h) = 0` is a Sylvester form for
//! `f`. If `h = prod (-beta_k x + alpha_k y)` with pairwise distinct factors
//! over `K`, then `f` is a `K`-combination of the powers
//! `(alpha_k x + beta_k y)^d`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::binform::{self, form_gcd, is_squarefree, splits_distinct, BinaryForm, LinearForm, Split};
use crate::error::{Error, Result};
use crate::exactnum::{FieldDescriptor, FieldElement, Rational};
use crate::factor;
use crate::linalg;

/// `(d - r + 1) x (r + 1)` matrix with entry `(l, t) = a_(l + t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Rational>>,
}

impl HankelMatrix {
    pub fn entry(&self, l: usize, t: usize) -> &Rational {
        &self.entries[l][t]
    }

    /// `H c`, for checking kernel membership.
    pub fn apply(&self, c: &[Rational]) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(c).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn rank(&self) -> usize {
        let m: Vec<Vec<FieldElement>> = self
            .entries
            .iter()
            .map(|row| row.iter().cloned().map(FieldElement::rational).collect())
            .collect();
        linalg::rank(&m)
    }
}

pub fn hankel(f: &BinaryForm, r: usize) -> Result<HankelMatrix> {
    let d = f.degree();
    if r > d {
        return Err(Error::OutOfRange { index: r, max: d });
    }
    let a = f.normalized();
    let entries = (0..=d - r)
        .map(|l| (0..=r).map(|t| a[l + t].clone()).collect())
        .collect();
    Ok(HankelMatrix { rows: d - r + 1, cols: r + 1, entries })
}

/// Integer basis of the kernel in reversed Hermite normal form.
pub fn kernel_basis_int(m: &HankelMatrix) -> Vec<Vec<BigInt>> {
    linalg::integer_kernel(&linalg::integer_rows(&m.entries), m.cols)
}

/// Basis of the right nullspace, deterministic echelon order.
pub fn kernel_basis(m: &HankelMatrix) -> Vec<Vec<Rational>> {
    kernel_basis_int(m)
        .into_iter()
        .map(|v| v.into_iter().map(Rational::from_integer).collect())
        .collect()
}

fn combine(basis: &[Vec<BigInt>], coords: &[BigInt]) -> Vec<BigInt> {
    let n = basis[0].len();
    (0..n)
        .map(|i| basis.iter().zip(coords).map(|(b, c)| &b[i] * c).sum())
        .collect()
}

fn form_of(v: &[BigInt]) -> BinaryForm {
    BinaryForm::from_raw(v.iter().cloned().map(Rational::from_integer).collect()).expect("nonempty")
}

/// A kernel member together with its split over a named field.
#[derive(Debug, Clone, PartialEq)]
pub struct SylvesterCertificate {
    pub h: BinaryForm,
    pub field: FieldDescriptor,
    pub split: Split,
    pub kernel_coords: Vec<BigInt>,
}

impl SylvesterCertificate {
    pub fn r(&self) -> usize {
        self.h.degree()
    }

    pub fn factors(&self) -> &[LinearForm] {
        self.split.forms().unwrap_or(&[])
    }

    /// Summand forms `q x - p y` for the factors `p x + q y`.
    pub fn summands(&self) -> Vec<LinearForm> {
        self.factors()
            .iter()
            .map(|l| LinearForm::new(l.beta.clone(), -&l.alpha).expect("nonzero"))
            .collect()
    }

    /// Re-check kernel membership and the split.
    pub fn verify(&self, f: &BinaryForm) -> bool {
        let Ok(hm) = hankel(f, self.r()) else {
            return false;
        };
        if hm.apply(self.h.raw()).iter().any(|v| !v.is_zero()) {
            return false;
        }
        match &self.split {
            Split::Abstract { degree } => {
                *degree == self.r() && splits_distinct(&self.h, self.field).is_some()
            }
            Split::Linear(forms) => {
                forms.len() == self.r()
                    && distinct(forms)
                    && binform::raw_proportional(
                        &binform::product_raw(forms),
                        &lift_raw(self.h.raw(), self.field),
                    )
            }
        }
    }
}

fn lift_raw(raw: &[Rational], field: FieldDescriptor) -> Vec<FieldElement> {
    raw.iter()
        .map(|c| {
            let e = FieldElement::rational(c.clone());
            if field.is_exact() {
                e.lift(field)
            } else {
                e
            }
        })
        .collect()
}

fn distinct(forms: &[LinearForm]) -> bool {
    forms
        .iter()
        .enumerate()
        .all(|(i, a)| forms[i + 1..].iter().all(|b| !a.proportional(b)))
}

/// An honest representation `target = sum lambda_k (alpha_k x + beta_k y)^d`.
///
/// Construction normalizes every summand, merges proportional ones, drops
/// zero coefficients and checks the expansion exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    field: FieldDescriptor,
    terms: Vec<(FieldElement, LinearForm)>,
    target: BinaryForm,
}

impl Representation {
    pub fn new(
        field: FieldDescriptor,
        terms: Vec<(FieldElement, LinearForm)>,
        target: BinaryForm,
    ) -> Result<Self> {
        if !field.is_exact() {
            return Err(Error::UnsupportedField(field.to_string()));
        }
        let d = target.degree();
        let mut merged: Vec<(FieldElement, LinearForm)> = Vec::new();
        for (lambda, form) in terms {
            if crate::exactnum::coerce(&lambda, field).is_none() || !field.contains(&form.field()) {
                return Err(Error::FieldMismatch(form.field().to_string(), field.to_string()));
            }
            let (norm, s) = LinearForm::normalize(form.alpha.lift(field), form.beta.lift(field))?;
            let lam = (&lambda.lift(field) * &s.pow(d as u32)).lift(field);
            match merged.iter_mut().find(|(_, l)| *l == norm) {
                Some(entry) => entry.0 = (&entry.0 + &lam).lift(field),
                None => merged.push((lam, norm)),
            }
        }
        merged.retain(|(l, _)| !l.is_zero());
        let rep = Self { field, terms: merged, target };
        if rep.expand_raw() != lift_raw(rep.target.raw(), field) {
            return Err(Error::ExpansionMismatch);
        }
        if field.is_real() && rep.terms.len() >= 2 && !rep.target.is_zero() {
            crate::reallen::assert_tau_le_sigma(&rep)?;
        }
        Ok(rep)
    }

    /// Same as [`Representation::new`] for summands given as raw
    /// `(lambda, alpha, beta)`, with no normalization of `alpha x + beta y`.
    pub fn from_raw_terms(
        field: FieldDescriptor,
        terms: Vec<(FieldElement, FieldElement, FieldElement)>,
        target: BinaryForm,
    ) -> Result<Self> {
        let d = target.degree() as u32;
        let mut out = Vec::with_capacity(terms.len());
        for (lambda, alpha, beta) in terms {
            let (form, s) = LinearForm::normalize(alpha, beta)?;
            out.push((&lambda * &s.pow(d), form));
        }
        Self::new(field, out, target)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn terms(&self) -> &[(FieldElement, LinearForm)] {
        &self.terms
    }

    pub fn target(&self) -> &BinaryForm {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.target.degree()
    }

    pub fn lambdas(&self) -> Vec<FieldElement> {
        self.terms.iter().map(|(l, _)| l.clone()).collect()
    }

    pub fn forms(&self) -> Vec<LinearForm> {
        self.terms.iter().map(|(_, f)| f.clone()).collect()
    }

    /// Raw coefficients of `sum lambda_k l_k^d` over the representation field.
    pub fn expand_raw(&self) -> Vec<FieldElement> {
        expand_terms(&self.terms, self.degree(), self.field)
    }

    /// The Sylvester form `prod (-beta_k x + alpha_k y)` of this representation.
    pub fn sylvester_form_raw(&self) -> Vec<FieldElement> {
        let partners: Vec<LinearForm> = self.forms().iter().map(|l| l.apolar_partner()).collect();
        binform::product_raw(&partners)
    }
}

/// Raw coefficients of `sum lambda_k l_k^d`.
pub fn expand_terms(
    terms: &[(FieldElement, LinearForm)],
    d: usize,
    field: FieldDescriptor,
) -> Vec<FieldElement> {
    let mut acc = vec![FieldElement::zero().lift(field); d + 1];
    for (lambda, form) in terms {
        for (slot, c) in acc.iter_mut().zip(form.power_raw(d)) {
            *slot = (&*slot + &(lambda * &c)).lift(field);
        }
    }
    acc
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        for (i, (lambda, form)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({lambda})({form})^{d}")?;
        }
        Ok(())
    }
}

/// Justification attached to a length bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Backed by an explicit representation or kernel certificate.
    Witness(String),
    /// Backed by a classification rule or a rank argument.
    Theorem(String),
}

impl Provenance {
    pub fn witness(s: impl Into<String>) -> Self {
        Provenance::Witness(s.into())
    }

    pub fn theorem(s: impl Into<String>) -> Self {
        Provenance::Theorem(s.into())
    }

    pub fn tag(&self) -> &str {
        match self {
            Provenance::Witness(s) | Provenance::Theorem(s) => s,
        }
    }

    pub fn is_witness(&self) -> bool {
        matches!(self, Provenance::Witness(_))
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Witness(s) => write!(f, "witness:{s}"),
            Provenance::Theorem(s) => write!(f, "theorem:{s}"),
        }
    }
}

/// Exact length or an interval, with the evidence for each bound.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthResult {
    pub field: FieldDescriptor,
    pub lower: usize,
    pub upper: usize,
    pub lower_provenance: Provenance,
    pub upper_provenance: Provenance,
    pub representation: Option<Representation>,
    pub certificate: Option<SylvesterCertificate>,
    pub tau: Option<usize>,
    pub sigma: Option<usize>,
}

impl LengthResult {
    pub fn exact(
        field: FieldDescriptor,
        value: usize,
        lower: Provenance,
        upper: Provenance,
    ) -> Self {
        Self {
            field,
            lower: value,
            upper: value,
            lower_provenance: lower,
            upper_provenance: upper,
            representation: None,
            certificate: None,
            tau: None,
            sigma: None,
        }
    }

    pub fn interval(
        field: FieldDescriptor,
        lower: usize,
        upper: usize,
        lower_provenance: Provenance,
        upper_provenance: Provenance,
    ) -> Self {
        Self { lower, upper, lower_provenance, upper_provenance, ..Self::exact(field, lower, Provenance::theorem(""), Provenance::theorem("")) }
    }

    pub fn with_representation(mut self, rep: Option<Representation>) -> Self {
        self.representation = rep;
        self
    }

    pub fn with_certificate(mut self, cert: Option<SylvesterCertificate>) -> Self {
        self.certificate = cert;
        self
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn value(&self) -> Option<usize> {
        self.is_exact().then_some(self.lower)
    }

    /// `exact-by-witness`, `exact-by-theorem` or `interval`.
    pub fn status(&self) -> &'static str {
        if !self.is_exact() {
            "interval"
        } else if self.upper_provenance.is_witness() {
            "exact-by-witness"
        } else {
            "exact-by-theorem"
        }
    }
}

/// Search controls for kernel combination scans.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    /// Largest max-norm of kernel coordinates tried.
    pub height: u64,
    /// Hard cap on candidates examined per call.
    pub max_candidates: u64,
    /// Coordinates tried before the scan, matched to kernels by dimension.
    pub hints: Vec<Vec<BigInt>>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { height: 64, max_candidates: 20_000_000, hints: Vec::new() }
    }
}

impl SearchOptions {
    pub fn with_height(height: u64) -> Self {
        Self { height, ..Self::default() }
    }
}

/// Common factor of all kernel members (the gcd of a basis).
fn kernel_gcd(basis: &[Vec<BigInt>]) -> BinaryForm {
    let Some(first) = basis.first() else {
        return BinaryForm::zero(0);
    };
    basis[1..]
        .iter()
        .fold(form_of(first).primitive().1, |acc, v| form_gcd(&acc, &form_of(v)))
}

/// Minimal `r` for which `ker H_r(f)` has a squarefree member, with one such
/// member.
///
/// A linear system of binary forms has a squarefree general member exactly
/// when its fixed part (the gcd of a basis) is squarefree, so the existence
/// question is decided by one gcd. The witness is then found on the integer
/// grid of side `2r - 1`, which a nonzero discriminant cannot vanish on.
pub fn min_length_over_c(f: &BinaryForm) -> Result<(usize, SylvesterCertificate)> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let d = f.degree();
    for r in 1..=d {
        let basis = kernel_basis_int(&hankel(f, r)?);
        if basis.is_empty() {
            continue;
        }
        if !is_squarefree(&kernel_gcd(&basis)) {
            continue;
        }
        let bound = (2 * r).saturating_sub(2).max(1) as u64;
        let opts = SearchOptions { height: bound, max_candidates: u64::MAX, hints: vec![] };
        let hit = scan(&basis, &opts, |h| is_squarefree(h).then(|| Split::Abstract { degree: r }));
        return match hit {
            Some((coords, h, split)) => Ok((
                r,
                SylvesterCertificate { h, field: FieldDescriptor::C, split, kernel_coords: coords },
            )),
            None => Err(Error::InvariantViolation(format!(
                "kernel of H_{r} has squarefree fixed part but no squarefree member on the grid"
            ))),
        };
    }
    Err(Error::InvariantViolation("no Sylvester form up to degree d".into()))
}

/// Deterministic enumeration of primitive integer vectors with positive
/// first nonzero entry, by increasing max-norm and lexicographically within a
/// shell. Returns the first vector accepted by `test`.
fn scan<T: Send>(
    basis: &[Vec<BigInt>],
    opts: &SearchOptions,
    test: impl Fn(&BinaryForm) -> Option<T> + Sync,
) -> Option<(Vec<BigInt>, BinaryForm, T)> {
    let k = basis.len();
    for hint in opts.hints.iter().filter(|h| h.len() == k) {
        let h = form_of(&combine(basis, hint));
        if h.is_zero() {
            continue;
        }
        if let Some(t) = test(&h) {
            return Some((hint.clone(), h, t));
        }
    }
    let mut budget = opts.max_candidates;
    if k == 1 {
        let h = form_of(&basis[0]);
        return test(&h).map(|t| (vec![BigInt::one()], h, t));
    }
    for m in 1..=opts.height as i64 {
        let side = (2 * m + 1) as u64;
        let Some(total) = side.checked_pow(k as u32) else {
            return None;
        };
        if total > budget {
            return None;
        }
        budget -= total;
        let decode = |idx: u64| -> Vec<i64> {
            let mut v = vec![0i64; k];
            let mut rem = idx;
            for slot in v.iter_mut().rev() {
                *slot = (rem % side) as i64 - m;
                rem /= side;
            }
            v
        };
        let found = (0..total).into_par_iter().find_map_first(|idx| {
            let v = decode(idx);
            if v.iter().map(|x| x.abs()).max() != Some(m) {
                return None;
            }
            if v.iter().find(|x| **x != 0).map_or(true, |x| *x < 0) {
                return None;
            }
            if v.iter().fold(0i64, |g, x| g.gcd(x)) != 1 {
                return None;
            }
            let coords: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            let h = form_of(&combine(basis, &coords));
            if h.is_zero() {
                return None;
            }
            test(&h).map(|t| (coords, h, t))
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Cheap necessary condition for splitting over `field`: no repeated `y`
/// factor, and modulo a small prime every irreducible factor of `h(t, 1)`
/// has degree at most 1 (over `Q`) or 2 (over a quadratic field).
fn mod_p_prefilter(h: &BinaryForm, field: FieldDescriptor) -> bool {
    if h.y_multiplicity() > 1 {
        return false;
    }
    let max_deg = match field {
        FieldDescriptor::Q => 1,
        _ => 2,
    };
    let g = h.dehomogenize();
    let (_, ints) = g.primitive_integer();
    if ints.len() <= 1 {
        return true;
    }
    factor::factors_mod_p_bounded(&ints, max_deg).unwrap_or(true)
}

/// Search `ker H_r(f)` for a member splitting into distinct linear factors
/// over `field`. Absence is not a proof of impossibility.
pub fn kernel_splitting_search(
    f: &BinaryForm,
    r: usize,
    field: FieldDescriptor,
    opts: &SearchOptions,
) -> Option<SylvesterCertificate> {
    if !field.is_exact() || r > f.degree() {
        return None;
    }
    let basis = kernel_basis_int(&hankel(f, r).ok()?);
    if basis.is_empty() {
        return None;
    }
    let hit = scan(&basis, opts, |h| {
        if !mod_p_prefilter(h, field) {
            return None;
        }
        splits_distinct(h, field)
    })?;
    Some(SylvesterCertificate { h: hit.1, field, split: hit.2, kernel_coords: hit.0 })
}

/// Certificate from given kernel coordinates, if that member splits.
pub fn certificate_from_coords(
    f: &BinaryForm,
    r: usize,
    field: FieldDescriptor,
    coords: &[BigInt],
) -> Option<SylvesterCertificate> {
    let basis = kernel_basis_int(&hankel(f, r).ok()?);
    if basis.len() != coords.len() {
        return None;
    }
    let h = form_of(&combine(&basis, coords));
    let split = splits_distinct(&h, field)?;
    Some(SylvesterCertificate { h, field, split, kernel_coords: coords.to_vec() })
}

/// Certificate for a given form `h`, if it lies in `ker H_r(f)` and splits.
pub fn certificate_for_form(
    f: &BinaryForm,
    h: &BinaryForm,
    field: FieldDescriptor,
) -> Option<SylvesterCertificate> {
    let hm = hankel(f, h.degree()).ok()?;
    if h.is_zero() || hm.apply(h.raw()).iter().any(|v| !v.is_zero()) {
        return None;
    }
    let split = splits_distinct(h, field)?;
    Some(SylvesterCertificate { h: h.clone(), field, split, kernel_coords: vec![] })
}

/// Solve `a_j = sum alpha_k^(d-j) beta_k^j X_k` for the coefficients `X_k`.
pub fn recover_coefficients(f: &BinaryForm, forms: &[LinearForm]) -> Result<Option<Representation>> {
    if !distinct(forms) {
        return Err(Error::DuplicateForms);
    }
    let d = f.degree();
    if forms.len() > d + 1 {
        return Err(Error::OutOfRange { index: forms.len(), max: d + 1 });
    }
    let field = forms
        .iter()
        .try_fold(FieldDescriptor::Q, |acc, l| acc.join(&l.field()))
        .ok_or_else(|| Error::FieldMismatch("mixed".into(), "linear forms".into()))?;
    let powers: Vec<Vec<FieldElement>> = forms.iter().map(|l| l.power_normalized(d)).collect();
    let a: Vec<Vec<FieldElement>> = (0..=d)
        .map(|j| powers.iter().map(|p| p[j].lift(field)).collect())
        .collect();
    let b = lift_raw(f.normalized(), field);
    let Some(x) = linalg::solve(&a, &b) else {
        return Ok(None);
    };
    let terms = x.into_iter().zip(forms.iter().cloned()).collect();
    Representation::new(field, terms, f.clone()).map(Some)
}

/// Representation backed by a certificate over an exact field.
pub fn representation_from_certificate(
    f: &BinaryForm,
    cert: &SylvesterCertificate,
) -> Result<Option<Representation>> {
    if cert.split.forms().is_none() {
        return Ok(None);
    }
    recover_coefficients(f, &cert.summands())
}

/// `L_K(f)` for `K = Q` or `Q(sqrt d)`.
///
/// Scans `r` upward from `L_C(f)`, or from the real factor count when `K`
/// is real and that is larger. A kernel whose fixed part is not
/// squarefree, or does not split over `K`, is ruled out exactly, as is a
/// one-dimensional kernel whose generator does not split. Larger kernels
/// are searched up to the height bound; if that fails the answer is an
/// interval whose upper end is backed by the first later witness (at worst
/// the degree-`d` construction).
pub fn min_length_over_k(
    f: &BinaryForm,
    field: FieldDescriptor,
    opts: &SearchOptions,
) -> Result<LengthResult> {
    if !field.is_exact() {
        return Err(Error::UnsupportedField(field.to_string()));
    }
    if let Some(res) = crate::special::certify_over_field(f, field, opts)? {
        return Ok(res);
    }
    let d = f.degree();
    let (rc, _) = min_length_over_c(f)?;
    let mut lower = rc;
    let mut lower_prov = Provenance::theorem("complex-sylvester-bound");
    if field.is_real() && rc >= 2 {
        let (tau, _) = binform::real_root_census(f);
        if tau > lower {
            lower = tau;
            lower_prov = Provenance::theorem("real-factor-count");
        }
    }
    let start = lower;
    let mut undecided = false;
    // Degree d is covered by the construction below.
    for r in start..d {
        let basis = kernel_basis_int(&hankel(f, r)?);
        let fixed = kernel_gcd(&basis);
        let ruled_out = basis.is_empty()
            || !is_squarefree(&fixed)
            || (fixed.degree() > 0 && splits_distinct(&fixed, field).is_none())
            || (basis.len() == 1 && splits_distinct(&form_of(&basis[0]), field).is_none());
        if ruled_out {
            if !undecided {
                lower = r + 1;
                lower_prov = Provenance::theorem("kernel-has-no-split-member");
            }
            continue;
        }
        if let Some(cert) = kernel_splitting_search(f, r, field, opts) {
            let rep = representation_from_certificate(f, &cert)?
                .ok_or_else(|| Error::InvariantViolation("certificate without representation".into()))?;
            if rep.len() < r {
                return Err(Error::InvariantViolation(format!(
                    "representation of length {} below Sylvester bound {r}",
                    rep.len()
                )));
            }
            let upper_prov = Provenance::witness(format!("kernel-coordinates {:?}", coords_str(&cert.kernel_coords)));
            let res = if undecided {
                LengthResult::interval(field, lower, r, lower_prov, upper_prov)
            } else {
                LengthResult::exact(field, r, lower_prov, upper_prov)
            };
            return Ok(res.with_representation(Some(rep)).with_certificate(Some(cert)));
        }
        undecided = true;
    }
    // The degree-d construction always succeeds.
    let (cert, rep) = crate::special::construction_certificate(f, field)?;
    let prov = Provenance::witness("degree-d-construction");
    let res = if lower == d {
        LengthResult::exact(field, d, lower_prov, prov)
    } else {
        LengthResult::interval(field, lower, d, lower_prov, prov)
    };
    Ok(res.with_representation(Some(rep)).with_certificate(Some(cert)))
}

fn coords_str(c: &[BigInt]) -> Vec<String> {
    c.iter().map(|x| x.to_string()).collect()
}

/// Whether `v` is a small integer vector (used for witness heights).
pub fn max_norm(v: &[BigInt]) -> Option<u64> {
    v.iter().map(|x| x.abs().to_u64()).try_fold(0u64, |acc, x| x.map(|x| acc.max(x)))
}
