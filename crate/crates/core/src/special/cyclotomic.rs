//! Arithmetic in `Q(zeta_n)` as polynomials reduced modulo `Phi_n`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::upoly::UPoly;

/// `Phi_n` from `x^n - 1 = prod_{d | n} Phi_d`.
pub fn cyclotomic_polynomial(n: usize) -> UPoly {
    static CACHE: OnceLock<Mutex<HashMap<usize, UPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache").get(&n) {
        return p.clone();
    }
    let mut xn = vec![Rational::zero(); n + 1];
    xn[0] = -Rational::one();
    xn[n] = Rational::one();
    let mut p = UPoly::new(xn);
    for d in (1..n).filter(|d| n % d == 0) {
        p = p.div_exact(&cyclotomic_polynomial(d)).expect("cyclotomic divisor");
    }
    cache.lock().expect("cache").insert(n, p.clone());
    p
}

/// Element of `Q(zeta_n)`, stored as the reduced polynomial in `zeta_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicElement {
    order: usize,
    coeffs: UPoly,
}

impl CyclotomicElement {
    fn reduce(order: usize, p: UPoly) -> Self {
        let coeffs = p.divrem(&cyclotomic_polynomial(order)).1;
        Self { order, coeffs }
    }

    pub fn from_rational(order: usize, q: Rational) -> Self {
        Self::reduce(order, UPoly::constant(q))
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta_pow(order: usize, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        Self::reduce(order, UPoly::new(v))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficients of `1, zeta, ..., zeta^(phi(n)-1)`.
    pub fn coeffs(&self) -> Vec<Rational> {
        let deg = cyclotomic_polynomial(self.order).degree().unwrap_or(0);
        (0..deg).map(|i| self.coeffs.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// The rational value, when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        match self.coeffs.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.coeffs.coeff(0)),
            _ => None,
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::FieldMismatch(
                format!("Q(zeta_{})", self.order),
                format!("Q(zeta_{})", other.order),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { order: self.order, coeffs: &self.coeffs + &other.coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::reduce(self.order, &self.coeffs * &other.coeffs))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self { order: self.order, coeffs: self.coeffs.scale(q) }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::from_rational(self.order, Rational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            base = base.mul(&base).expect("same order");
            e >>= 1;
        }
        acc
    }
}

/// `sum_{j=0}^{m-1} zeta_m^(r j)`, evaluated in `Q(zeta_m)`.
pub fn root_of_unity_sum(m: usize, r: i64) -> Rational {
    let mut acc = CyclotomicElement::from_rational(m, Rational::zero());
    for j in 0..m as i64 {
        acc = acc.add(&CyclotomicElement::zeta_pow(m, r * j)).expect("same order");
    }
    acc.to_rational().expect("power sums of roots of unity are rational")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), UPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), UPoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), UPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), UPoly::from_ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(18).degree(), Some(6));
    }

    #[test]
    fn zeta_relations() {
        for n in 1..=18 {
            let z = CyclotomicElement::zeta_pow(n, 1);
            assert_eq!(z.pow(n).to_rational(), Some(int(1)));
            assert_eq!(CyclotomicElement::zeta_pow(n, -1).mul(&z).unwrap().to_rational(), Some(int(1)));
        }
        let i = CyclotomicElement::zeta_pow(4, 1);
        assert_eq!(i.mul(&i).unwrap().to_rational(), Some(int(-1)));
    }

    #[test]
    fn orthogonality() {
        for m in 1..=18usize {
            for r in -20..=20i64 {
                let want = if r % m as i64 == 0 { int(m as i64) } else { int(0) };
                assert_eq!(root_of_unity_sum(m, r), want);
            }
        }
    }
}
