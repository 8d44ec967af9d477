//! Binary forms over `Q` and linear forms over `Q(sqrt d)`.
//!
//! A form of degree `d` is `f = sum_j c_j x^(d-j) y^j`. The normalized
//! coefficients `a_j` satisfy `c_j = C(d, j) a_j`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, rational_sqrt, FieldDescriptor, FieldElement, Rational};
use crate::factor;
use crate::upoly::UPoly;

/// Binomial coefficient `C(n, k)` as a rational.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: usize,
    raw: Vec<Rational>,
    normalized: Vec<Rational>,
}

impl BinaryForm {
    /// Build from raw coefficients `c_0..c_d` (descending powers of `x`).
    pub fn from_raw(raw: Vec<Rational>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        let degree = raw.len() - 1;
        let normalized = raw
            .iter()
            .enumerate()
            .map(|(j, c)| c / binomial(degree, j))
            .collect();
        Ok(Self { degree, raw, normalized })
    }

    pub fn from_normalized(a: Vec<Rational>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        let degree = a.len() - 1;
        let raw = a
            .iter()
            .enumerate()
            .map(|(j, v)| v * binomial(degree, j))
            .collect();
        Ok(Self { degree, raw, normalized: a })
    }

    pub fn from_ints(raw: &[i64]) -> Self {
        Self::from_raw(raw.iter().map(|&c| int(c)).collect()).expect("nonempty")
    }

    pub fn zero(degree: usize) -> Self {
        Self::from_raw(vec![Rational::zero(); degree + 1]).expect("nonempty")
    }

    /// `x^(d-j) y^j` scaled by `c`.
    pub fn monomial(c: Rational, d: usize, j: usize) -> Self {
        let mut raw = vec![Rational::zero(); d + 1];
        raw[j] = c;
        Self::from_raw(raw).expect("nonempty")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn raw(&self) -> &[Rational] {
        &self.raw
    }

    pub fn normalized(&self) -> &[Rational] {
        &self.normalized
    }

    pub fn is_zero(&self) -> bool {
        self.raw.iter().all(Zero::is_zero)
    }

    /// Multiplicity of `y` as a factor.
    pub fn y_multiplicity(&self) -> usize {
        self.raw.iter().take_while(|c| c.is_zero()).count()
    }

    /// Multiplicity of `x` as a factor.
    pub fn x_multiplicity(&self) -> usize {
        self.raw.iter().rev().take_while(|c| c.is_zero()).count()
    }

    /// `f(t, 1)` as a univariate polynomial.
    pub fn dehomogenize(&self) -> UPoly {
        UPoly::new(self.raw.iter().rev().cloned().collect())
    }

    /// Homogenize `p(t)` to degree `d`, i.e. `y^d p(x/y)`.
    pub fn homogenize(p: &UPoly, d: usize) -> Result<Self> {
        let deg = p.degree().unwrap_or(0);
        if deg > d {
            return Err(Error::DegreeMismatch { expected: d, got: deg });
        }
        Self::from_raw((0..=d).map(|j| p.coeff(d - j)).collect())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::from_raw(self.raw.iter().map(|c| c * q).collect()).expect("nonempty")
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut raw = vec![Rational::zero(); self.degree + other.degree + 1];
        for (i, a) in self.raw.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.raw.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Self::from_raw(raw).expect("nonempty")
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::from_ints(&[1]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, got: other.degree });
        }
        Self::from_raw(self.raw.iter().zip(&other.raw).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }

    /// Exact division when `other` divides `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() || other.degree > self.degree {
            return None;
        }
        let ym = other.y_multiplicity();
        if self.y_multiplicity() < ym {
            return None;
        }
        let q = self.dehomogenize().div_exact(&other.dehomogenize())?;
        let g = Self::homogenize(&q, self.degree - other.degree).ok()?;
        (g.mul(other) == *self).then_some(g)
    }

    pub fn partial_x(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        let raw = (0..self.degree)
            .map(|j| &self.raw[j] * int((self.degree - j) as i64))
            .collect();
        Self::from_raw(raw).expect("nonempty")
    }

    pub fn partial_y(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        let raw = (1..=self.degree)
            .map(|j| &self.raw[j] * int(j as i64))
            .collect();
        Self::from_raw(raw).expect("nonempty")
    }

    /// Value at `(x, y)`.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let d = self.degree;
        self.raw
            .iter()
            .enumerate()
            .map(|(j, c)| c * pow_q(x, d - j) * pow_q(y, j))
            .sum()
    }

    /// Integral primitive version with a positive first nonzero coefficient.
    /// Returns `(content, form)` with `self = content * form`.
    pub fn primitive(&self) -> (Rational, Self) {
        let l = self.raw.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .raw
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return (Rational::zero(), self.clone());
        }
        if ints.iter().find(|c| !c.is_zero()).expect("nonzero").is_negative() {
            g = -g;
        }
        let prim = Self::from_raw(
            ints.iter()
                .map(|c| Rational::from_integer(c / &g))
                .collect(),
        )
        .expect("nonempty");
        (Rational::new(g, l), prim)
    }

    /// Whether `self` is a nonzero rational multiple of `other`.
    pub fn proportional(&self, other: &Self) -> bool {
        if self.degree != other.degree || self.is_zero() || other.is_zero() {
            return false;
        }
        self.primitive().1 == other.primitive().1
    }
}

fn pow_q(x: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let d = self.degree;
        let mut first = true;
        for (j, c) in self.raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let xe = d - j;
            let monomial = format!("{}{}", var_pow("x", xe), var_pow("y", j));
            if monomial.is_empty() || !mag.is_one() {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}", format_rational(&mag))?;
                }
            }
            write!(f, "{monomial}")?;
        }
        Ok(())
    }
}

fn var_pow(v: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    }
}

/// Substitute `(x, y) -> (m00 x + m01 y, m10 x + m11 y)`.
pub fn apply_linear_change(f: &BinaryForm, m: [[Rational; 2]; 2]) -> Result<BinaryForm> {
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let l1 = BinaryForm::from_raw(vec![m[0][0].clone(), m[0][1].clone()])?;
    let l2 = BinaryForm::from_raw(vec![m[1][0].clone(), m[1][1].clone()])?;
    let d = f.degree();
    let mut acc = BinaryForm::zero(d);
    for (j, c) in f.raw().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = l1.pow(d - j).mul(&l2.pow(j)).scale(c);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `h(D) f` for the apolar pairing: the form
/// `sum_m d!/((d-r-m)! m!) (sum_i a_(i+m) c_i) x^(d-r-m) y^m`,
/// where `a` are the normalized coefficients of `f` and `c` the raw
/// coefficients of `h`. It vanishes exactly when `h` lies in `ker H_r(f)`.
pub fn apolar_apply(h: &BinaryForm, f: &BinaryForm) -> Result<BinaryForm> {
    let r = h.degree();
    let d = f.degree();
    if r > d {
        return Err(Error::DegreeMismatch { expected: d, got: r });
    }
    let a = f.normalized();
    let c = h.raw();
    let dfact = factorial(d);
    let raw = (0..=d - r)
        .map(|m| {
            let s: Rational = (0..=r).map(|i| &a[i + m] * &c[i]).sum();
            &dfact / (factorial(d - r - m) * factorial(m)) * s
        })
        .collect();
    BinaryForm::from_raw(raw)
}

/// The linear form `alpha x + beta y`, stored normalized.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub alpha: FieldElement,
    pub beta: FieldElement,
}

impl LinearForm {
    /// Normalized linear form; see [`LinearForm::normalize`].
    pub fn new(alpha: FieldElement, beta: FieldElement) -> Result<Self> {
        Ok(Self::normalize(alpha, beta)?.0)
    }

    pub fn from_ints(alpha: i64, beta: i64) -> Result<Self> {
        Self::new(FieldElement::from_int(alpha), FieldElement::from_int(beta))
    }

    pub fn x() -> Self {
        Self::from_ints(1, 0).expect("nonzero")
    }

    pub fn y() -> Self {
        Self::from_ints(0, 1).expect("nonzero")
    }

    /// Returns `(form, s)` with `alpha x + beta y = s * form`.
    ///
    /// Over `Q` the normalized form has coprime integer entries. Over a
    /// quadratic field the first nonzero coordinate becomes a positive
    /// integer and all coordinates have integer parts with gcd 1.
    pub fn normalize(alpha: FieldElement, beta: FieldElement) -> Result<(Self, FieldElement)> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(Error::Degenerate("zero linear form".into()));
        }
        let field = alpha.field().join(&beta.field()).ok_or_else(|| {
            Error::FieldMismatch(alpha.field().to_string(), beta.field().to_string())
        })?;
        let lead = if alpha.is_zero() { beta.clone() } else { alpha.clone() };
        let a1 = &alpha / &lead;
        let b1 = &beta / &lead;
        let parts = [a1.rat_part(), a1.quad_part(), b1.rat_part(), b1.quad_part()];
        let l = parts.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = parts
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(*c * Rational::from_integer(l.clone())).to_integer()));
        let k = Rational::new(l, g);
        let a2 = a1.scale(&k).lift(field);
        let b2 = b1.scale(&k).lift(field);
        let s = lead.scale(&(Rational::one() / &k)).lift(field);
        Ok((Self { alpha: a2, beta: b2 }, s))
    }

    pub fn field(&self) -> FieldDescriptor {
        if self.alpha.is_rational() && self.beta.is_rational() {
            FieldDescriptor::Q
        } else {
            self.alpha.field().join(&self.beta.field()).unwrap_or(FieldDescriptor::Q)
        }
    }

    pub fn is_rational(&self) -> bool {
        self.alpha.is_rational() && self.beta.is_rational()
    }

    /// Rational linear form as `BinaryForm` of degree 1.
    pub fn to_form(&self) -> Option<BinaryForm> {
        Some(BinaryForm::from_raw(vec![self.alpha.to_rational()?, self.beta.to_rational()?]).expect("nonempty"))
    }

    /// Normalized coefficients `alpha^(d-j) beta^j` of `(alpha x + beta y)^d`.
    pub fn power_normalized(&self, d: usize) -> Vec<FieldElement> {
        (0..=d)
            .map(|j| &self.alpha.pow((d - j) as u32) * &self.beta.pow(j as u32))
            .collect()
    }

    /// Raw coefficients of `(alpha x + beta y)^d`.
    pub fn power_raw(&self, d: usize) -> Vec<FieldElement> {
        self.power_normalized(d)
            .into_iter()
            .enumerate()
            .map(|(j, v)| v.scale(&binomial(d, j)))
            .collect()
    }

    /// The apolar partner `-beta x + alpha y`, whose product over summands
    /// gives a Sylvester form.
    pub fn apolar_partner(&self) -> Self {
        Self::new(-&self.beta, self.alpha.clone()).expect("nonzero")
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.alpha.conjugate(), self.beta.conjugate()).expect("nonzero")
    }

    pub fn lift(&self, field: FieldDescriptor) -> Self {
        Self { alpha: self.alpha.lift(field), beta: self.beta.lift(field) }
    }

    /// Whether the two forms are proportional over their common field.
    pub fn proportional(&self, other: &Self) -> bool {
        (&self.alpha * &other.beta - &self.beta * &other.alpha).is_zero()
    }

    /// Deterministic total order: rational parts before quadratic parts.
    pub fn sort_key(&self) -> (Rational, Rational, Rational, Rational) {
        (
            self.alpha.rat_part().clone(),
            self.beta.rat_part().clone(),
            self.alpha.quad_part().clone(),
            self.beta.quad_part().clone(),
        )
    }

    /// Exact real slope comparison for the angular order: forms are ordered
    /// by `beta / alpha` with the `y` form last. `None` for non-real forms.
    pub fn angular_cmp(&self, other: &Self) -> Option<Ordering> {
        let inf_a = self.alpha.is_zero();
        let inf_b = other.alpha.is_zero();
        match (inf_a, inf_b) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => {
                let sa = &self.beta / &self.alpha;
                let sb = &other.beta / &other.alpha;
                sa.real_cmp(&sb)
            }
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coef = |e: &FieldElement| -> String {
            if e.is_rational() {
                format_rational(e.rat_part()).trim_end_matches("/1").to_string()
            } else {
                format!("({e})")
            }
        };
        match (self.alpha.is_zero(), self.beta.is_zero()) {
            (true, _) => write!(f, "{}y", coef(&self.beta)),
            (_, true) => write!(f, "{}x", coef(&self.alpha)),
            _ => write!(f, "{}x + {}y", coef(&self.alpha), coef(&self.beta)),
        }
    }
}

/// Irreducible factorization of a form over `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub field: FieldDescriptor,
    pub linear_factors: Vec<(LinearForm, usize)>,
    pub nonlinear_factors: Vec<(BinaryForm, usize)>,
    pub unit: FieldElement,
}

impl Factorization {
    /// Multiply everything back together.
    pub fn expand(&self) -> BinaryForm {
        let mut acc = BinaryForm::from_raw(vec![self.unit.to_rational().expect("rational unit")])
            .expect("nonempty");
        for (l, m) in &self.linear_factors {
            acc = acc.mul(&l.to_form().expect("rational factor").pow(*m));
        }
        for (g, m) in &self.nonlinear_factors {
            acc = acc.mul(&g.pow(*m));
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.linear_factors.iter().all(|(_, m)| *m == 1)
            && self.nonlinear_factors.iter().all(|(_, m)| *m == 1)
    }

    pub fn degree_profile(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self
            .linear_factors
            .iter()
            .map(|(_, m)| (1, *m))
            .chain(self.nonlinear_factors.iter().map(|(g, m)| (g.degree(), *m)))
            .collect();
        v.sort();
        v
    }
}

/// Complete factorization over `Q`, degree capped at 12 by default.
pub fn factor_over_q(f: &BinaryForm) -> Result<Factorization> {
    factor_over_q_capped(f, factor::DEFAULT_DEGREE_CAP)
}

pub fn factor_over_q_capped(f: &BinaryForm, cap: usize) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if f.degree() > cap {
        return Err(Error::UnsupportedDegree { degree: f.degree(), cap });
    }
    let ym = f.y_multiplicity();
    let g = f.dehomogenize();
    let mut linear = Vec::new();
    let mut nonlinear = Vec::new();
    let unit;
    if g.degree() == Some(0) {
        unit = g.lc();
    } else {
        let uf = factor::factor_over_q_capped(&g, cap)?;
        unit = uf.unit;
        for (p, m) in uf.factors {
            let k = p.degree().expect("nonconstant");
            if k == 1 {
                // a t + b  <->  a x + b y
                let lf = LinearForm::new(
                    FieldElement::rational(p.coeff(1)),
                    FieldElement::rational(p.coeff(0)),
                )?;
                linear.push((lf, m));
            } else {
                nonlinear.push((BinaryForm::homogenize(&p, k)?, m));
            }
        }
    }
    if ym > 0 {
        linear.push((LinearForm::y(), ym));
    }
    nonlinear.sort_by(|a: &(BinaryForm, usize), b| {
        (a.0.degree(), a.0.raw()).cmp(&(b.0.degree(), b.0.raw())).then(a.1.cmp(&b.1))
    });
    linear.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()).then(a.1.cmp(&b.1)));
    let fac = Factorization {
        field: FieldDescriptor::Q,
        linear_factors: linear,
        nonlinear_factors: nonlinear,
        unit: FieldElement::rational(unit),
    };
    // normalized linear factors may differ from the primitive ones by a sign
    let prod = fac.expand();
    let ratio = &f.raw()[ym] / &prod.raw()[ym];
    let fac = Factorization { unit: FieldElement::rational(fac.unit.rat_part() * &ratio), ..fac };
    if fac.expand() != *f {
        return Err(Error::InvariantViolation("factorization does not expand".into()));
    }
    Ok(fac)
}

/// Outcome of a successful split test.
#[derive(Debug, Clone, PartialEq)]
pub enum Split {
    /// Explicit distinct linear factors over an exact field.
    Linear(Vec<LinearForm>),
    /// Splits into `degree` distinct factors over `R` or `C`; the factors
    /// are not representable exactly.
    Abstract { degree: usize },
}

impl Split {
    pub fn forms(&self) -> Option<&[LinearForm]> {
        match self {
            Split::Linear(v) => Some(v),
            Split::Abstract { .. } => None,
        }
    }
}

/// Whether `h` is a product of `deg h` pairwise distinct linear factors over
/// `field`. Exact fields return the factors.
pub fn splits_distinct(h: &BinaryForm, field: FieldDescriptor) -> Option<Split> {
    if h.is_zero() {
        return None;
    }
    let d = h.degree();
    match field {
        FieldDescriptor::C => is_squarefree(h).then_some(Split::Abstract { degree: d }),
        FieldDescriptor::R => {
            if !is_squarefree(h) {
                return None;
            }
            let (tau, _) = real_root_census(h);
            (tau == d).then_some(Split::Abstract { degree: d })
        }
        FieldDescriptor::Q | FieldDescriptor::Quadratic(_) => {
            let fac = factor_over_q(h).ok()?;
            if !fac.is_squarefree() {
                return None;
            }
            let mut out: Vec<LinearForm> = fac.linear_factors.iter().map(|(l, _)| l.lift(field)).collect();
            for (g, _) in &fac.nonlinear_factors {
                let FieldDescriptor::Quadratic(rad) = field else {
                    return None;
                };
                if g.degree() != 2 {
                    return None;
                }
                out.extend(split_quadratic(g, rad)?);
            }
            out.sort_by_key(|a| a.sort_key());
            Some(Split::Linear(out))
        }
    }
}

/// Linear factors of the `Q`-irreducible quadratic `A x^2 + B xy + C y^2`
/// over `Q(sqrt rad)`, if it splits there.
pub fn split_quadratic(g: &BinaryForm, rad: i64) -> Option<Vec<LinearForm>> {
    let (a, b, c) = (&g.raw()[0], &g.raw()[1], &g.raw()[2]);
    let disc = b * b - int(4) * a * c;
    let s = rational_sqrt(&(&disc / int(rad)))?;
    let field = FieldDescriptor::quadratic(rad).ok()?;
    let two_a = FieldElement::rational(int(2) * a).lift(field);
    let mut out = Vec::new();
    for sign in [1, -1] {
        let beta = FieldElement::new(b.clone(), s.clone() * int(-sign), field).ok()?;
        out.push(LinearForm::new(two_a.clone(), beta).ok()?);
    }
    Some(out)
}

/// Homogeneous gcd, normalized with positive leading entry and content 1.
pub fn form_gcd(f: &BinaryForm, g: &BinaryForm) -> BinaryForm {
    if f.is_zero() {
        return g.primitive().1;
    }
    if g.is_zero() {
        return f.primitive().1;
    }
    let ym = f.y_multiplicity().min(g.y_multiplicity());
    let u = f.dehomogenize().gcd(&g.dehomogenize());
    let k = u.degree().unwrap_or(0);
    let base = BinaryForm::homogenize(&u, k).expect("degree fits");
    base.mul(&BinaryForm::from_ints(&[0, 1]).pow(ym)).primitive().1
}

/// Squarefree over `C`: no repeated linear factor, including `y`.
pub fn is_squarefree(f: &BinaryForm) -> bool {
    !f.is_zero() && f.y_multiplicity() <= 1 && f.dehomogenize().is_squarefree()
}

/// `(tau, distinct_real)`: real linear factors with and without multiplicity.
pub fn real_root_census(f: &BinaryForm) -> (usize, usize) {
    let ym = f.y_multiplicity();
    let g = f.dehomogenize();
    let (mut tau, mut distinct) = (ym, usize::from(ym > 0));
    if g.degree().unwrap_or(0) > 0 {
        for (p, m) in g.squarefree_decomposition() {
            let n = p.count_real_roots();
            tau += n * m;
            distinct += n;
        }
    }
    (tau, distinct)
}

/// Hessian and discriminant of a cubic, in normalized coefficients.
pub fn cubic_invariants(f: &BinaryForm) -> Result<(BinaryForm, Rational)> {
    if f.degree() != 3 {
        return Err(Error::DegreeMismatch { expected: 3, got: f.degree() });
    }
    let a = f.normalized();
    let h0 = &a[1] * &a[3] - &a[2] * &a[2];
    let h1 = &a[1] * &a[2] - &a[0] * &a[3];
    let h2 = &a[0] * &a[2] - &a[1] * &a[1];
    let disc = int(-27) * (&h1 * &h1 - int(4) * &h0 * &h2);
    Ok((BinaryForm::from_raw(vec![h0, h1, h2])?, disc))
}

/// Multiply raw coefficient vectors over a field.
pub fn mul_raw(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Raw coefficients of a product of linear forms.
pub fn product_raw(forms: &[LinearForm]) -> Vec<FieldElement> {
    forms.iter().fold(vec![FieldElement::one()], |acc, l| {
        mul_raw(&acc, &[l.alpha.clone(), l.beta.clone()])
    })
}

/// Whether two raw coefficient vectors over a field are proportional.
pub fn raw_proportional(a: &[FieldElement], b: &[FieldElement]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[i].is_zero() {
        return false;
    }
    let k = &b[i] / &a[i];
    a.iter().zip(b).all(|(x, y)| &(x * &k) == y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn phi() -> BinaryForm {
        BinaryForm::from_ints(&[3, 0, -20, 0, 10, 0])
    }

    fn q(n: i64) -> Rational {
        int(n)
    }

    #[test]
    fn raw_and_normalized_agree() {
        let f = phi();
        assert_eq!(f.normalized(), &[q(3), q(0), q(-2), q(0), q(2), q(0)]);
        let g = BinaryForm::from_normalized(f.normalized().to_vec()).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.to_string(), "3x^5 - 20x^3y^2 + 10xy^4");
    }

    #[test]
    fn linear_changes() {
        let id = [[q(1), q(0)], [q(0), q(1)]];
        let x3 = BinaryForm::from_ints(&[1, 0, 0, 0]);
        assert_eq!(apply_linear_change(&x3, id).unwrap(), x3);
        let circ = BinaryForm::from_ints(&[1, 0, 1]);
        let g = apply_linear_change(&circ, [[q(1), q(-1)], [q(1), q(1)]]).unwrap();
        assert_eq!(g, BinaryForm::from_ints(&[2, 0, 2]));
        let xy = BinaryForm::from_ints(&[0, 1, 0]);
        let g = apply_linear_change(&xy, [[q(1), q(1)], [q(1), q(-1)]]).unwrap();
        assert_eq!(g, BinaryForm::from_ints(&[1, 0, -1]));
        assert_eq!(
            apply_linear_change(&xy, [[q(1), q(2)], [q(2), q(4)]]),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn apolar_pairing() {
        // y(x^2 + y^2) kills phi
        let h = BinaryForm::from_ints(&[0, 1, 0, 1]);
        assert!(apolar_apply(&h, &phi()).unwrap().is_zero());
        let x3 = BinaryForm::from_ints(&[1, 0, 0, 0]);
        // x pairs with the derivative in y, which is not what kills x^3
        let hx = BinaryForm::from_ints(&[1, 0]);
        assert_eq!(apolar_apply(&hx, &x3).unwrap(), BinaryForm::from_ints(&[3, 0, 0]));
        let hy = BinaryForm::from_ints(&[0, 1]);
        assert!(apolar_apply(&hy, &x3).unwrap().is_zero());
        let x2y = BinaryForm::from_ints(&[0, 3, 0, 0]);
        assert!(apolar_apply(&BinaryForm::from_ints(&[0, 0, 1]), &x2y).unwrap().is_zero());
        assert!(!apolar_apply(&BinaryForm::from_ints(&[1, 0, 0]), &x2y).unwrap().is_zero());
        assert!(apolar_apply(&BinaryForm::from_ints(&[1, 0, 0, 0, 0, 0, 0]), &x3).is_err());
    }

    #[test]
    fn factor_examples() {
        let f = BinaryForm::from_ints(&[2, 0, 5, 0, 2]);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(
            fac.nonlinear_factors,
            vec![(BinaryForm::from_ints(&[1, 0, 2]), 1), (BinaryForm::from_ints(&[2, 0, 1]), 1)]
        );
        assert_eq!(fac.expand(), f);
        let g = BinaryForm::from_ints(&[1, 0, -2]);
        let fac = factor_over_q(&g).unwrap();
        assert_eq!(fac.nonlinear_factors, vec![(g.clone(), 1)]);
        let m = BinaryForm::from_ints(&[0, 6, 0, 0]).scale(&ratio(1, 6));
        let fac = factor_over_q(&m).unwrap();
        assert_eq!(fac.linear_factors, vec![(LinearForm::y(), 1), (LinearForm::x(), 2)]);
        assert_eq!(fac.expand(), m);
    }

    #[test]
    fn split_tests() {
        let h = BinaryForm::from_ints(&[0, 1, 0, 1]);
        let gi = FieldDescriptor::gaussian();
        let s = splits_distinct(&h, gi).unwrap();
        let forms = s.forms().unwrap();
        assert_eq!(forms.len(), 3);
        assert!(raw_proportional(
            &product_raw(forms),
            &h.raw().iter().map(|c| FieldElement::rational(c.clone()).lift(gi)).collect::<Vec<_>>()
        ));
        assert!(splits_distinct(&h, FieldDescriptor::R).is_none());
        assert!(splits_distinct(&h, FieldDescriptor::Q).is_none());
        assert_eq!(splits_distinct(&h, FieldDescriptor::C), Some(Split::Abstract { degree: 3 }));
        let g = BinaryForm::from_ints(&[2, 0, 5, 0, 2]);
        let k = FieldDescriptor::quadratic(-2).unwrap();
        assert_eq!(splits_distinct(&g, k).unwrap().forms().unwrap().len(), 4);
        assert!(splits_distinct(&g, FieldDescriptor::quadratic(-3).unwrap()).is_none());
    }

    #[test]
    fn census() {
        assert_eq!(real_root_census(&phi()), (5, 5));
        assert_eq!(real_root_census(&BinaryForm::from_ints(&[1, 0, 1])), (0, 0));
        assert_eq!(real_root_census(&BinaryForm::from_ints(&[0, 1, 0, 0])), (3, 2));
    }

    #[test]
    fn cubic_invariant_examples() {
        let (h, d) = cubic_invariants(&BinaryForm::from_ints(&[1, 0, 0, 1])).unwrap();
        assert_eq!(h, BinaryForm::from_ints(&[0, -1, 0]));
        assert_eq!(d, q(-27));
        let (h, d) = cubic_invariants(&BinaryForm::from_ints(&[0, 3, 0, 0])).unwrap();
        assert_eq!(h, BinaryForm::from_ints(&[0, 0, -1]));
        assert_eq!(d, q(0));
        let (h, d) = cubic_invariants(&BinaryForm::from_ints(&[1, 0, 0, 0])).unwrap();
        assert!(h.is_zero());
        assert_eq!(d, q(0));
    }

    #[test]
    fn linear_form_normalization() {
        let l = LinearForm::from_ints(-4, 6).unwrap();
        assert_eq!(l, LinearForm::from_ints(2, -3).unwrap());
        let k = FieldDescriptor::quadratic(-2).unwrap();
        let r2 = FieldElement::sqrt_generator(k).unwrap();
        let (n, s) = LinearForm::normalize(FieldElement::from_int(2).lift(k), r2.clone()).unwrap();
        assert_eq!(n.alpha, FieldElement::from_int(2).lift(k));
        assert_eq!(n.beta, r2);
        assert_eq!(s, FieldElement::from_int(1).lift(k));
    }

    #[test]
    fn gcd_of_forms() {
        // (x+y)^3 (x-y) and its partials share (x+y)^2
        let f = BinaryForm::from_ints(&[1, 1]).pow(3).mul(&BinaryForm::from_ints(&[1, -1]));
        let g = form_gcd(&form_gcd(&f, &f.partial_x()), &f.partial_y());
        assert_eq!(g, BinaryForm::from_ints(&[1, 2, 1]));
    }
}
