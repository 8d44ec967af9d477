//! Exact scalars: rationals and elements of quadratic fields `Q(sqrt d)`.
//!
//! `R` and `C` appear only as [`FieldDescriptor`]s. They have no element type;
//! questions about splitting over them are answered from rational data.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer square root of a non-negative perfect square.
pub fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Non-negative rational square root, if `q` is a rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = bigint_sqrt_exact(q.numer())?;
    let d = bigint_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

pub fn is_rational_square(q: &Rational) -> bool {
    rational_sqrt(q).is_some()
}

/// Squarefree part of a nonzero integer, sign preserved (`-8 -> -2`, `12 -> 3`).
pub fn squarefree_part(n: i64) -> i64 {
    assert!(n != 0, "squarefree part of zero");
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut out: u64 = 1;
    let mut p: u64 = 2;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out *= m;
    sign * out as i64
}

/// Squarefree kernel of a nonzero rational `q`: the squarefree integer `s`
/// with `q / s` a rational square.
pub fn rational_squarefree_class(q: &Rational) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let prod = q.numer() * q.denom();
    let n = prod.to_i64()?;
    Some(squarefree_part(n))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `"p/q"` with `q >= 1`, also for integers.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Q,
    QuadExt,
    R,
    C,
}

/// A field in the tower `Q ⊂ Q(sqrt d) ⊂ R or C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Q,
    /// `Q(sqrt d)` with `d` squarefree and `d != 0, 1`.
    Quadratic(i64),
    R,
    C,
}

impl FieldDescriptor {
    /// `Q(sqrt d)`, with `d` reduced to its squarefree part. Perfect squares give `Q`.
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidField("radicand 0".into()));
        }
        match squarefree_part(d) {
            1 => Ok(FieldDescriptor::Q),
            s => Ok(FieldDescriptor::Quadratic(s)),
        }
    }

    pub fn gaussian() -> Self {
        FieldDescriptor::Quadratic(-1)
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            FieldDescriptor::Q => FieldKind::Q,
            FieldDescriptor::Quadratic(_) => FieldKind::QuadExt,
            FieldDescriptor::R => FieldKind::R,
            FieldDescriptor::C => FieldKind::C,
        }
    }

    pub fn radicand(&self) -> Option<i64> {
        match self {
            FieldDescriptor::Quadratic(d) => Some(*d),
            _ => None,
        }
    }

    /// True for fields with an element representation (`Q` and `Q(sqrt d)`).
    pub fn is_exact(&self) -> bool {
        matches!(self, FieldDescriptor::Q | FieldDescriptor::Quadratic(_))
    }

    pub fn is_real(&self) -> bool {
        match self {
            FieldDescriptor::Q | FieldDescriptor::R => true,
            FieldDescriptor::Quadratic(d) => *d > 0,
            FieldDescriptor::C => false,
        }
    }

    /// Whether `sub` embeds into `self`.
    pub fn contains(&self, sub: &FieldDescriptor) -> bool {
        use FieldDescriptor::*;
        match (sub, self) {
            (Q, _) => true,
            (Quadratic(a), Quadratic(b)) => a == b,
            (Quadratic(d), R) => *d > 0,
            (Quadratic(_), C) => true,
            (R, R) | (R, C) | (C, C) => true,
            _ => false,
        }
    }

    /// Smallest exact field containing both, when it is one of ours.
    pub fn join(&self, other: &FieldDescriptor) -> Option<FieldDescriptor> {
        if self.contains(other) {
            Some(*self)
        } else if other.contains(self) {
            Some(*other)
        } else {
            None
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Q => write!(f, "Q"),
            FieldDescriptor::Quadratic(-1) => write!(f, "Q(i)"),
            FieldDescriptor::Quadratic(d) => write!(f, "Q(sqrt {d})"),
            FieldDescriptor::R => write!(f, "R"),
            FieldDescriptor::C => write!(f, "C"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "Q" => return Ok(FieldDescriptor::Q),
            "R" => return Ok(FieldDescriptor::R),
            "C" => return Ok(FieldDescriptor::C),
            "Q(i)" => return Ok(FieldDescriptor::gaussian()),
            _ => {}
        }
        let inner = compact
            .strip_prefix("Q(sqrt")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        let inner = inner.trim_start_matches('(').trim_end_matches(')');
        let d: i64 = inner
            .parse()
            .map_err(|_| Error::InvalidField(s.to_string()))?;
        FieldDescriptor::quadratic(d)
    }
}

/// `rat + quad * sqrt(d)` in `Q` or `Q(sqrt d)`.
#[derive(Debug, Clone)]
pub struct FieldElement {
    rat: Rational,
    quad: Rational,
    field: FieldDescriptor,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.rat == other.rat
            && self.quad == other.quad
            && (self.quad.is_zero() || self.field == other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rat.hash(state);
        self.quad.hash(state);
    }
}

impl FieldElement {
    pub fn new(rat: Rational, quad: Rational, field: FieldDescriptor) -> Result<Self> {
        match field {
            FieldDescriptor::Q if !quad.is_zero() => {
                Err(Error::InvalidField("quadratic part in Q".into()))
            }
            FieldDescriptor::Q | FieldDescriptor::Quadratic(_) => Ok(Self { rat, quad, field }),
            other => Err(Error::UnsupportedField(other.to_string())),
        }
    }

    pub fn rational(q: Rational) -> Self {
        Self {
            rat: q,
            quad: Rational::zero(),
            field: FieldDescriptor::Q,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(int(n))
    }

    /// `sqrt(d)` as an element of `Q(sqrt d)`.
    pub fn sqrt_generator(field: FieldDescriptor) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), field)
    }

    pub fn rat_part(&self) -> &Rational {
        &self.rat
    }

    pub fn quad_part(&self) -> &Rational {
        &self.quad
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn radicand(&self) -> i64 {
        self.field.radicand().unwrap_or(1)
    }

    pub fn is_rational(&self) -> bool {
        self.quad.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.rat.clone())
    }

    /// Re-tag in another exact field containing the value. Rational values
    /// may move to any exact field.
    pub fn lift(&self, field: FieldDescriptor) -> Self {
        debug_assert!(field.contains(&self.field) || (self.quad.is_zero() && field.is_exact()));
        Self {
            rat: self.rat.clone(),
            quad: self.quad.clone(),
            field,
        }
    }

    pub fn conjugate(&self) -> Self {
        Self {
            rat: self.rat.clone(),
            quad: -&self.quad,
            field: self.field,
        }
    }

    /// `x * conjugate(x)`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - &self.quad * &self.quad * int(self.radicand())
    }

    pub fn trace(&self) -> Rational {
        &self.rat + &self.rat
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self {
            rat: &self.rat / &n,
            quad: -&self.quad / &n,
            field: self.field,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one().lift(self.field);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            rat: &self.rat * q,
            quad: &self.quad * q,
            field: self.field,
        }
    }

    /// Sign in a real field; `None` for non-real elements of imaginary fields.
    pub fn signum(&self) -> Option<Ordering> {
        if self.quad.is_zero() {
            return Some(self.rat.cmp(&Rational::zero()));
        }
        let d = self.radicand();
        if d < 0 {
            return None;
        }
        let sa = self.rat.cmp(&Rational::zero());
        let sb = self.quad.cmp(&Rational::zero());
        if sa == Ordering::Equal || sa == sb {
            return Some(sb);
        }
        // opposite signs: compare rat^2 with d * quad^2
        let lhs = &self.rat * &self.rat;
        let rhs = &self.quad * &self.quad * int(d);
        Some(if lhs > rhs { sa } else { sb })
    }

    /// Exact comparison of real field elements.
    pub fn real_cmp(&self, other: &Self) -> Option<Ordering> {
        (self - other).signum()
    }

    fn join_field(&self, other: &Self) -> FieldDescriptor {
        if self.quad.is_zero() && other.quad.is_zero() {
            return self.field.join(&other.field).unwrap_or(FieldDescriptor::Q);
        }
        // A rational value sits in every field, whatever its tag.
        let tag = |e: &Self| if e.quad.is_zero() { FieldDescriptor::Q } else { e.field };
        match tag(self).join(&tag(other)) {
            Some(f) => f,
            None => panic!(
                "{}",
                Error::FieldMismatch(self.field.to_string(), other.field.to_string())
            ),
        }
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        Self::from_int(0)
    }

    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.quad.is_zero()
    }
}

impl One for FieldElement {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            field: self.join_field(o),
            rat: &self.rat + &o.rat,
            quad: &self.quad + &o.quad,
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            field: self.join_field(o),
            rat: &self.rat - &o.rat,
            quad: &self.quad - &o.quad,
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        let field = self.join_field(o);
        let d = int(field.radicand().unwrap_or(1));
        FieldElement {
            field,
            rat: &self.rat * &o.rat + &self.quad * &o.quad * d,
            quad: &self.rat * &o.quad + &self.quad * &o.rat,
        }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, o: &FieldElement) -> FieldElement {
        let inv = o.inv().expect("division by zero field element");
        self * &inv
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            rat: -&self.rat,
            quad: -&self.quad,
            field: self.field,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl From<Rational> for FieldElement {
    fn from(q: Rational) -> Self {
        Self::rational(q)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.quad.is_zero() {
            return write!(f, "{}", self.rat);
        }
        let g = match self.radicand() {
            -1 => "i".to_string(),
            d => format!("sqrt({d})"),
        };
        let q = if self.quad.is_one() {
            g
        } else if (-&self.quad).is_one() {
            format!("-{g}")
        } else {
            format!("{}*{g}", self.quad)
        };
        if self.rat.is_zero() {
            write!(f, "{q}")
        } else if q.starts_with('-') {
            write!(f, "{} - {}", self.rat, &q[1..])
        } else {
            write!(f, "{} + {q}", self.rat)
        }
    }
}

fn normalize_root(y: FieldElement) -> FieldElement {
    let positive = match y.rat.cmp(&Rational::zero()) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => !y.quad.is_negative(),
    };
    if positive {
        y
    } else {
        -y
    }
}

/// Square root of `x` inside its own field, if one exists.
///
/// Of the two roots, the one with positive rational part is returned (or
/// positive quadratic part when the rational part is zero).
pub fn field_sqrt(x: &FieldElement) -> Option<FieldElement> {
    if x.is_zero() {
        return Some(x.clone());
    }
    let field = x.field;
    if x.quad.is_zero() {
        if let Some(s) = rational_sqrt(&x.rat) {
            return Some(FieldElement::rational(s).lift(field));
        }
        // (t sqrt d)^2 = t^2 d
        let d = field.radicand()?;
        let t = rational_sqrt(&(&x.rat / int(d)))?;
        return Some(normalize_root(
            FieldElement::new(Rational::zero(), t, field).ok()?,
        ));
    }
    // (p + q sqrt d)^2 = x  <=>  4p^4 - 4a p^2 + d b^2 = 0,  q = b / 2p
    let s = rational_sqrt(&x.norm())?;
    let two = int(2);
    for cand in [(&x.rat + &s) / &two, (&x.rat - &s) / &two] {
        if let Some(p) = rational_sqrt(&cand) {
            if p.is_zero() {
                continue;
            }
            let q = &x.quad / (&two * &p);
            let y = FieldElement::new(p, q, field).ok()?;
            debug_assert_eq!(&(&y * &y).rat, &x.rat);
            return Some(normalize_root(y));
        }
    }
    None
}

/// Square root of `x` viewed in `target`. Rejects `R` and `C`, which have no
/// element representation.
pub fn sqrt_in(x: &FieldElement, target: FieldDescriptor) -> Result<Option<FieldElement>> {
    if !target.is_exact() {
        return Err(Error::UnsupportedField(target.to_string()));
    }
    match coerce(x, target) {
        Some(y) => Ok(field_sqrt(&y)),
        None => Err(Error::FieldMismatch(x.field.to_string(), target.to_string())),
    }
}

/// Reinterpret `x` in `target` when its field embeds there.
///
/// For `R` and `C` the returned element keeps its exact field tag.
pub fn coerce(x: &FieldElement, target: FieldDescriptor) -> Option<FieldElement> {
    let source = if x.quad.is_zero() {
        FieldDescriptor::Q
    } else {
        x.field
    };
    if !target.contains(&source) {
        return None;
    }
    if target.is_exact() {
        Some(x.lift(target))
    } else {
        Some(x.clone())
    }
}
