//! Exact dense linear algebra over `Q`, `Q(sqrt d)` and `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{FieldElement, Rational};

/// Row echelon data produced by Gauss-Jordan elimination.
struct Rref {
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

fn rref(a: &[Vec<FieldElement>], ncols: usize) -> Rref {
    let mut rows: Vec<Vec<FieldElement>> = a.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..rows[i].len() {
                    let t = &factor * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { rows, pivots }
}

fn width(a: &[Vec<FieldElement>]) -> usize {
    a.first().map_or(0, |r| r.len())
}

pub fn rank(a: &[Vec<FieldElement>]) -> usize {
    rref(a, width(a)).pivots.len()
}

/// Right nullspace basis in reduced echelon form: one vector per free column,
/// with a 1 in that column.
pub fn nullspace(a: &[Vec<FieldElement>], ncols: usize) -> Vec<Vec<FieldElement>> {
    let e = rref(a, ncols);
    let field_zero = FieldElement::zero();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !e.pivots.contains(c)) {
        let mut v = vec![field_zero.clone(); ncols];
        v[free] = FieldElement::one();
        for (i, &pc) in e.pivots.iter().enumerate() {
            v[pc] = -&e.rows[i][free];
        }
        out.push(v);
    }
    out
}

/// Solve `a x = b`. Returns `None` if inconsistent; free variables are set to 0.
pub fn solve(a: &[Vec<FieldElement>], b: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let n = width(a);
    let aug: Vec<Vec<FieldElement>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = rref(&aug, n + 1);
    if e.pivots.contains(&n) {
        return None;
    }
    let mut x = vec![FieldElement::zero(); n];
    for (i, &pc) in e.pivots.iter().enumerate() {
        x[pc] = e.rows[i][n].clone();
    }
    Some(x)
}

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
pub fn det_bareiss(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Clear denominators row by row so the kernel is unchanged.
pub fn integer_rows(a: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter()
                .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Basis of the integer lattice `{v in Z^n : a v = 0}`.
///
/// The basis is in Hermite normal form with respect to reversed column
/// order: each vector's last nonzero entry (its pivot) is positive, pivots are
/// strictly increasing along the list, and every entry sitting in another
/// vector's pivot column is reduced into `[0, pivot)`.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    // Rows of [A^T | I]; unimodular row operations on the A^T block.
    let m = a.len();
    let mut rows: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..n)
        .map(|j| {
            let left: Vec<BigInt> = (0..m).map(|i| a[i][j].clone()).collect();
            let mut right = vec![BigInt::zero(); n];
            right[j] = BigInt::one();
            (left, right)
        })
        .collect();
    let mut start = 0;
    for c in 0..m {
        loop {
            let nz: Vec<usize> = (start..n).filter(|&i| !rows[i].0[c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz
                .iter()
                .min_by_key(|&&i| rows[i].0[c].abs())
                .expect("nonempty");
            rows.swap(start, p);
            let mut done = true;
            for i in start + 1..n {
                if rows[i].0[c].is_zero() {
                    continue;
                }
                let q = rows[i].0[c].div_floor(&rows[start].0[c]);
                let (pl, pr) = rows[start].clone();
                for (x, y) in rows[i].0.iter_mut().zip(&pl) {
                    *x -= &q * y;
                }
                for (x, y) in rows[i].1.iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
                if !rows[i].0[c].is_zero() {
                    done = false;
                }
            }
            if done {
                start += 1;
                break;
            }
        }
    }
    let basis: Vec<Vec<BigInt>> = rows
        .into_iter()
        .filter(|(l, _)| l.iter().all(Zero::is_zero))
        .map(|(_, r)| r)
        .collect();
    reversed_hnf(basis, n)
}

/// Hermite normal form of a lattice basis with pivots at the last nonzero
/// coordinate. Output sorted by ascending pivot column.
pub fn reversed_hnf(mut basis: Vec<Vec<BigInt>>, n: usize) -> Vec<Vec<BigInt>> {
    let mut done: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for c in (0..n).rev() {
        loop {
            let nz: Vec<usize> = (0..basis.len()).filter(|&i| !basis[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz
                .iter()
                .min_by_key(|&&i| basis[i][c].abs())
                .expect("nonempty");
            let pv = basis[p].clone();
            for &i in &nz {
                if i == p {
                    continue;
                }
                let q = basis[i][c].div_floor(&pv[c]);
                for (x, y) in basis[i].iter_mut().zip(&pv) {
                    *x -= &q * y;
                }
            }
        }
        if let Some(i) = (0..basis.len()).find(|&i| !basis[i][c].is_zero()) {
            let mut v = basis.remove(i);
            if v[c].is_negative() {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
            done.push((c, v));
        }
    }
    done.sort_by_key(|(c, _)| *c);
    // reduce entries in pivot columns of other vectors, smallest pivot first
    for k in 0..done.len() {
        let (c, pv) = done[k].clone();
        for (_, v) in done.iter_mut().skip(k + 1) {
            let q = v[c].div_floor(&pv[c]);
            if !q.is_zero() {
                for (x, y) in v.iter_mut().zip(&pv) {
                    *x -= &q * y;
                }
            }
        }
    }
    done.into_iter().map(|(_, v)| v).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::FieldDescriptor;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn solve_and_rank() {
        let a = vec![vec![fe(1), fe(1)], vec![fe(1), fe(-1)]];
        let x = solve(&a, &[fe(3), fe(1)]).unwrap();
        assert_eq!(x, vec![fe(2), fe(1)]);
        assert_eq!(rank(&a), 2);
        let s = vec![vec![fe(1), fe(2)], vec![fe(2), fe(4)]];
        assert_eq!(rank(&s), 1);
        assert!(solve(&s, &[fe(1), fe(3)]).is_none());
    }

    #[test]
    fn nullspace_over_quadratic_field() {
        let i = FieldElement::sqrt_generator(FieldDescriptor::gaussian()).unwrap();
        // [1, i] v = 0  =>  v = (-i, 1)
        let ns = nullspace(&[vec![fe(1), i.clone()]], 2);
        assert_eq!(ns, vec![vec![-&i, fe(1)]]);
    }

    #[test]
    fn bareiss_det() {
        let m = vec![bi(&[2, 0, 1]), bi(&[1, 3, 2]), bi(&[1, 1, 2])];
        assert_eq!(det_bareiss(&m), BigInt::from(6));
        let z = vec![bi(&[0, 1]), bi(&[1, 0])];
        assert_eq!(det_bareiss(&z), BigInt::from(-1));
    }

    #[test]
    fn integer_kernel_hnf_shape() {
        // rows of H_4 for 3x^5 - 20x^3y^2 + 10xy^4: a = (3,0,-2,0,2,0)
        let a = vec![bi(&[3, 0, -2, 0, 2]), bi(&[0, -2, 0, 2, 0])];
        let k = integer_kernel(&a, 5);
        assert_eq!(
            k,
            vec![bi(&[2, 0, 3, 0, 0]), bi(&[0, 1, 0, 1, 0]), bi(&[0, 0, 1, 0, 1])]
        );
        let full = vec![bi(&[1, 0]), bi(&[0, 1])];
        assert!(integer_kernel(&full, 2).is_empty());
    }
}
