//! Exact integer linear algebra: fraction-free determinants and Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
///
/// Every intermediate division is exact; entries stay bounded by minors of the input.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!((&t % &prev).is_zero());
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Row-style Hermite normal form of the lattice spanned by `rows` (each of length `ncols`).
/// Returns the nonzero pivot rows, upper triangular with positive pivots.
pub fn hermite_rows(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigInt>> = rows.to_vec();
    let mut out = Vec::new();
    for col in 0..ncols {
        // gcd-reduce column `col` across all remaining rows into a single pivot row
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::new();
        for row in work.drain(..) {
            if row[col].is_zero() {
                rest.push(row);
                continue;
            }
            pivot = Some(match pivot {
                None => row,
                Some(p) => {
                    let g = p[col].extended_gcd(&row[col]);
                    let (a, b) = (&p[col] / &g.gcd, &row[col] / &g.gcd);
                    let combined: Vec<BigInt> =
                        (0..ncols).map(|j| &g.x * &p[j] + &g.y * &row[j]).collect();
                    let cleared: Vec<BigInt> =
                        (0..ncols).map(|j| &a * &row[j] - &b * &p[j]).collect();
                    rest.push(cleared);
                    combined
                }
            });
        }
        work = rest;
        if let Some(mut p) = pivot {
            if p[col].is_negative() {
                p.iter_mut().for_each(|x| *x = -x.clone());
            }
            out.push(p);
        }
    }
    out
}

/// Index of the sublattice spanned by `rows` in Z^ncols, or `None` if it has lower rank.
pub fn lattice_index(rows: &[Vec<BigInt>], ncols: usize) -> Option<BigInt> {
    let h = hermite_rows(rows, ncols);
    if h.len() < ncols {
        return None;
    }
    let mut idx = BigInt::one();
    for (i, row) in h.iter().enumerate() {
        // pivots land on the diagonal when the rank is full
        if row[..i].iter().any(|x| !x.is_zero()) || row[i].is_zero() {
            return None;
        }
        idx *= &row[i];
    }
    Some(idx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(bareiss_det(m(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(bareiss_det(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            bareiss_det(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])),
            BigInt::from(-3)
        );
        assert_eq!(bareiss_det(m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn index_of_sublattice() {
        // (2,0),(0,3),(4,3) spans 2Z x 3Z
        let rows = m(&[&[2, 0], &[0, 3], &[4, 3]]);
        assert_eq!(lattice_index(&rows, 2), Some(BigInt::from(6)));
        let rows = m(&[&[2, 1], &[4, 2]]);
        assert_eq!(lattice_index(&rows, 2), None);
        let rows = m(&[&[6, 4], &[4, 6]]);
        assert_eq!(lattice_index(&rows, 2), Some(BigInt::from(20)));
    }
}
