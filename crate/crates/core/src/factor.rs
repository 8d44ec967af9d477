//! Factorization of univariate polynomials over `Q`.
//!
//! Squarefree decomposition, rational roots, then Kronecker interpolation for
//! the remaining factors. Candidate factor degrees are first restricted by
//! distinct-degree factorization modulo a few small primes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::upoly::{divisors, UPoly};

/// Default cap on the degree accepted by the factorizer.
pub const DEFAULT_DEGREE_CAP: usize = 12;

/// Irreducible factorization `p = unit * prod f_i^{m_i}` over `Q`.
///
/// Factors are primitive integer polynomials with positive leading
/// coefficient, sorted by (degree, coefficients).
#[derive(Debug, Clone, PartialEq)]
pub struct UFactorization {
    pub unit: Rational,
    pub factors: Vec<(UPoly, usize)>,
}

pub fn factor_over_q(p: &UPoly) -> Result<UFactorization> {
    factor_over_q_capped(p, DEFAULT_DEGREE_CAP)
}

pub fn factor_over_q_capped(p: &UPoly, cap: usize) -> Result<UFactorization> {
    let deg = p.degree().ok_or(Error::ZeroForm)?;
    if deg > cap {
        return Err(Error::UnsupportedDegree { degree: deg, cap });
    }
    let mut factors: Vec<(UPoly, usize)> = Vec::new();
    for (sqf, mult) in p.squarefree_decomposition() {
        let mut rest = sqf;
        for r in rest.rational_roots() {
            let lin = UPoly::linear_root(&r);
            rest = rest.div_exact(&lin).expect("root divides");
            factors.push((primitive(&lin), mult));
        }
        if rest.degree().unwrap_or(0) > 0 {
            for g in factor_no_linear(&primitive(&rest)) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|a, b| factor_key(&a.0).cmp(&factor_key(&b.0)).then(a.1.cmp(&b.1)));
    let mut prod = UPoly::constant(Rational::one());
    for (f, m) in &factors {
        prod = &prod * &f.pow(*m);
    }
    let unit = p.lc() / prod.lc();
    debug_assert_eq!(&prod.scale(&unit), p);
    Ok(UFactorization { unit, factors })
}

fn factor_key(p: &UPoly) -> (usize, Vec<Rational>) {
    (p.degree().unwrap_or(0), p.coeffs().to_vec())
}

/// Primitive integer version with positive leading coefficient.
pub fn primitive(p: &UPoly) -> UPoly {
    UPoly::from_bigints(&p.primitive_integer().1)
}

fn int_coeffs(p: &UPoly) -> Vec<BigInt> {
    p.coeffs().iter().map(|c| c.to_integer()).collect()
}

/// Factor a squarefree primitive integer polynomial with no rational roots.
fn factor_no_linear(f: &UPoly) -> Vec<UPoly> {
    let n = f.degree().unwrap_or(0);
    if n < 4 {
        return vec![f.clone()];
    }
    let allowed = candidate_degrees(f);
    for k in allowed {
        if let Some(g) = kronecker_find(f, k) {
            let h = primitive(&f.div_exact(&g).expect("factor divides"));
            let mut out = factor_no_linear(&g);
            out.extend(factor_no_linear(&h));
            return out;
        }
    }
    vec![f.clone()]
}

const SMALL_PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Degrees in `2..=n/2` that a proper factor over `Z` could have, judged from
/// distinct-degree factorizations modulo small primes.
pub fn candidate_degrees(f: &UPoly) -> Vec<usize> {
    let n = f.degree().unwrap_or(0);
    let mut allowed: BTreeSet<usize> = (2..=n / 2).collect();
    let ints = int_coeffs(f);
    let mut used = 0;
    for &p in SMALL_PRIMES.iter() {
        if allowed.is_empty() || used >= 6 {
            break;
        }
        let Some(pattern) = degree_pattern_mod(&ints, p) else {
            continue;
        };
        used += 1;
        let mut sums: BTreeSet<usize> = BTreeSet::from([0]);
        for d in pattern {
            let extra: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(extra);
        }
        allowed.retain(|k| sums.contains(k));
    }
    allowed.into_iter().collect()
}

/// Multiset of irreducible factor degrees of `f mod p`, or `None` when `p`
/// divides the leading coefficient or `f mod p` is not squarefree.
pub fn degree_pattern_mod(coeffs: &[BigInt], p: u64) -> Option<Vec<usize>> {
    let f = reduce_mod(coeffs, p);
    if f.len() != coeffs.len() {
        return None;
    }
    let fp = deriv_mod(&f, p);
    if gcd_mod(&f, &fp, p).len() != 1 {
        return None;
    }
    let mut out = Vec::new();
    let mut rest = monic_mod(&f, p);
    let x = vec![0, 1];
    let mut h = x.clone();
    let mut i = 1;
    while rest.len() > 1 {
        let deg = rest.len() - 1;
        if deg < 2 * i {
            out.push(deg);
            break;
        }
        h = powmod_poly(&h, p, &rest, p);
        let diff = sub_mod(&h, &x, p);
        let g = gcd_mod(&rest, &diff, p);
        let gd = g.len() - 1;
        if gd > 0 {
            for _ in 0..gd / i {
                out.push(i);
            }
            rest = divrem_mod(&rest, &g, p).0;
            h = divrem_mod(&h, &rest, p).1;
        }
        i += 1;
    }
    Some(out)
}

fn reduce_mod(coeffs: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = coeffs
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("reduced"))
        .collect();
    trim_mod(&mut v);
    v
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn monic_mod(f: &[u64], p: u64) -> Vec<u64> {
    let inv = inv_mod(*f.last().expect("nonzero"), p);
    f.iter().map(|c| c * inv % p).collect()
}

fn deriv_mod(f: &[u64], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| (i as u64 % p) * c % p)
        .collect();
    trim_mod(&mut v);
    v
}

fn sub_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut v: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim_mod(&mut v);
    v
}

fn mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y) % p;
        }
    }
    trim_mod(&mut v);
    v
}

fn divrem_mod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![0u64; rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = rem[i + db] * inv % p;
        if c != 0 {
            for (j, bc) in b.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - c * bc % p) % p;
            }
        }
        quot[i] = c;
    }
    rem.truncate(db);
    trim_mod(&mut rem);
    trim_mod(&mut quot);
    (quot, rem)
}

fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = divrem_mod(&a, &b, p).1;
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic_mod(&a, p)
    }
}

fn powmod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = divrem_mod(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem_mod(&mul_mod(&acc, &b, p), m, p).1;
        }
        b = divrem_mod(&mul_mod(&b, &b, p), m, p).1;
        e >>= 1;
    }
    acc
}

/// Whether every irreducible factor of `f mod p` has degree at most `max_deg`,
/// for the first usable prime. `None` if no prime was usable.
pub fn factors_mod_p_bounded(coeffs: &[BigInt], max_deg: usize) -> Option<bool> {
    for &p in SMALL_PRIMES.iter().skip(2) {
        if let Some(pat) = degree_pattern_mod(coeffs, p) {
            return Some(pat.iter().all(|d| *d <= max_deg));
        }
    }
    None
}

fn eval_int(coeffs: &[BigInt], x: i64) -> BigInt {
    let xb = BigInt::from(x);
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &xb + c)
}

/// Search for a factor of degree exactly `k` by Kronecker's method.
fn kronecker_find(f: &UPoly, k: usize) -> Option<UPoly> {
    let coeffs = int_coeffs(f);
    let lc = coeffs.last().expect("nonzero").abs();
    let radius: i64 = 6.max(k as i64 + 1);
    let mut pts: Vec<(usize, i64, Vec<BigInt>)> = (-radius..=radius)
        .filter_map(|x| {
            let v = eval_int(&coeffs, x);
            if v.is_zero() {
                return None;
            }
            let divs = divisors(&v);
            Some((divs.len(), x, divs))
        })
        .collect();
    pts.sort_by_key(|(n, x, _)| (*n, x.abs(), *x));
    if pts.len() < k + 1 {
        return None;
    }
    pts.truncate(k + 1);
    let nodes: Vec<i64> = pts.iter().map(|p| p.1).collect();
    let choices: Vec<Vec<BigInt>> = pts
        .iter()
        .enumerate()
        .map(|(i, (_, _, divs))| {
            let mut c: Vec<BigInt> = divs.clone();
            if i > 0 {
                c.extend(divs.iter().map(|d| -d));
            }
            c
        })
        .collect();
    let mut values: Vec<BigInt> = Vec::with_capacity(k + 1);
    let mut table: Vec<Vec<Rational>> = Vec::with_capacity(k + 1);
    dfs(f, k, &nodes, &choices, &lc, &mut values, &mut table)
}

fn dfs(
    f: &UPoly,
    k: usize,
    nodes: &[i64],
    choices: &[Vec<BigInt>],
    lc: &BigInt,
    values: &mut Vec<BigInt>,
    table: &mut Vec<Vec<Rational>>,
) -> Option<UPoly> {
    let j = values.len();
    if j == k + 1 {
        let top = table[k][k].clone();
        if top.is_zero() || !top.is_integer() || !(lc % top.to_integer().abs()).is_zero() {
            return None;
        }
        let g = newton_to_poly(nodes, table);
        if g.degree() != Some(k) {
            return None;
        }
        let g = primitive(&g);
        return f.div_exact(&g).map(|_| g);
    }
    for v in &choices[j] {
        // extend divided-difference table: row j holds [x_{j-i}..x_j]
        let mut row: Vec<Rational> = Vec::with_capacity(j + 1);
        row.push(Rational::from_integer(v.clone()));
        let mut ok = true;
        for i in 1..=j {
            let num = &row[i - 1] - &table[j - 1][i - 1];
            let den = Rational::from_integer(BigInt::from(nodes[j] - nodes[j - i]));
            let dd = num / den;
            if !dd.is_integer() {
                ok = false;
                break;
            }
            row.push(dd);
        }
        if !ok {
            continue;
        }
        if j == k {
            let top = &row[k];
            if top.is_zero() || !(lc % top.to_integer().abs()).is_zero() {
                continue;
            }
        }
        values.push(v.clone());
        table.push(row);
        if let Some(g) = dfs(f, k, nodes, choices, lc, values, table) {
            return Some(g);
        }
        values.pop();
        table.pop();
    }
    None
}

/// Rebuild the interpolating polynomial from the divided-difference table,
/// where `table[j][j]` is `[x_0..x_j]`.
fn newton_to_poly(nodes: &[i64], table: &[Vec<Rational>]) -> UPoly {
    let k = table.len() - 1;
    let mut acc = UPoly::constant(table[k][k].clone());
    for j in (0..k).rev() {
        let lin = UPoly::linear_root(&Rational::from_integer(BigInt::from(nodes[j])));
        acc = &(&acc * &lin) + &UPoly::constant(table[j][j].clone());
    }
    acc
}

/// True if the integer polynomial is irreducible over `Q` (degree >= 1).
pub fn is_irreducible(p: &UPoly) -> Result<bool> {
    let fac = factor_over_q(p)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(cs: &[i64]) -> UPoly {
        UPoly::from_ints(cs)
    }

    fn expand(f: &UFactorization) -> UPoly {
        let mut prod = UPoly::constant(f.unit.clone());
        for (g, m) in &f.factors {
            prod = &prod * &g.pow(*m);
        }
        prod
    }

    #[test]
    fn product_of_quadratics() {
        // (2t^2 + 1)(t^2 + 2)
        let f = &up(&[1, 0, 2]) * &up(&[2, 0, 1]);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.factors, vec![(up(&[1, 0, 2]), 1), (up(&[2, 0, 1]), 1)]);
        assert_eq!(expand(&fac), f);
    }

    #[test]
    fn irreducible_and_repeated() {
        assert!(is_irreducible(&up(&[-2, 0, 1])).unwrap());
        let f = &up(&[1, 0, 1]).pow(2) * &up(&[0, 3]);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.factors, vec![(up(&[0, 1]), 1), (up(&[1, 0, 1]), 2)]);
        assert_eq!(fac.unit, crate::exactnum::int(3));
    }

    #[test]
    fn cubic_times_cubic() {
        // (t^3 - 2)(t^3 + t + 1)
        let f = &up(&[-2, 0, 0, 1]) * &up(&[1, 1, 0, 1]);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(expand(&fac), f);
    }

    #[test]
    fn quartic_times_quartic() {
        let g = up(&[3, -1, 2, 5, 1]);
        let h = up(&[-7, 2, 0, 1, 5]);
        let f = &g * &h;
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.factors.len(), 2, "{fac:?}");
        assert_eq!(expand(&fac), f);
    }

    #[test]
    fn swinnerton_dyer_like_splits_mod_p() {
        // t^4 - 10 t^2 + 1 is irreducible but splits into quadratics mod every prime
        let f = up(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible(&f).unwrap());
    }

    #[test]
    fn degree_cap_enforced() {
        let f = up(&[1; 14]);
        assert!(matches!(
            factor_over_q(&f),
            Err(Error::UnsupportedDegree { degree: 13, cap: 12 })
        ));
    }
}
