//! Exact linear algebra over `Z` and `Q`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
pub fn det_int(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinant of a square rational matrix.
pub fn det(matrix: &[Vec<BigRational>]) -> BigRational {
    let n = matrix.len();
    let mut a: Vec<Vec<BigRational>> = matrix.to_vec();
    let mut acc = BigRational::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if piv != k {
            a.swap(piv, k);
            acc = -acc;
        }
        let pivot = a[k][k].clone();
        acc *= &pivot;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    acc
}

/// Rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut e = Echelon::new(rows.first().map_or(0, Vec::len));
    rows.iter().filter(|r| e.insert(r)).count()
}

/// An incrementally built row-echelon basis over `Q`.
///
/// Each stored row is normalized to have a leading one at its pivot column and
/// zeros in the pivot columns of every other stored row.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Reduces `row` against the basis; returns the residual.
    pub fn reduce(&self, row: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(row.len(), self.ncols, "row width");
        let mut v = row.to_vec();
        for (p, b) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn is_independent(&self, row: &[BigRational]) -> bool {
        self.reduce(row).iter().any(|x| !x.is_zero())
    }

    /// Adds `row` if it is independent of the basis; returns whether it was added.
    pub fn insert(&mut self, row: &[BigRational]) -> bool {
        let mut v = self.reduce(row);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, b) in self.rows.iter_mut() {
            if b[p].is_zero() {
                continue;
            }
            let f = b[p].clone();
            for (x, y) in b.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
pub(crate) fn to_rational_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn zm(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|x| BigInt::from(*x)).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_int(&zm(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(det_int(&zm(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det_int(&zm(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]])), BigInt::from(24));
        assert_eq!(det_int(&zm(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(det_int(&[]), BigInt::one());
    }

    #[test]
    fn ranks() {
        let r = |rows: &[&[i64]]| rank(&to_rational_rows(&zm(rows)));
        assert_eq!(r(&[&[1, 1], &[3, 6]]), 2);
        assert_eq!(r(&[&[1, 2], &[2, 4]]), 1);
        assert_eq!(r(&[&[0, 0], &[0, 0]]), 0);
        assert_eq!(r(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]), 2);
    }

    #[test]
    fn vandermonde() {
        let xs = [2i64, 5, -1, 7];
        let m: Vec<Vec<BigInt>> =
            xs.iter().map(|x| (0..4).map(|k| BigInt::from(*x).pow(k)).collect()).collect();
        let mut expect = BigInt::one();
        for i in 0..4 {
            for j in i + 1..4 {
                expect *= BigInt::from(xs[j] - xs[i]);
            }
        }
        assert_eq!(det_int(&m), expect);
    }

    proptest! {
        #[test]
        fn bareiss_matches_rational(entries in proptest::collection::vec(-9i64..10, 16), n in 1usize..5) {
            let rows: Vec<Vec<BigInt>> =
                (0..n).map(|i| (0..n).map(|j| BigInt::from(entries[i * 4 + j])).collect()).collect();
            let q = det(&to_rational_rows(&rows));
            prop_assert_eq!(BigRational::from_integer(det_int(&rows)), q.clone());
            prop_assert_eq!(rank(&to_rational_rows(&rows)) == n, !q.is_zero());
        }

        #[test]
        fn rank_of_product_is_bounded(a in proptest::collection::vec(-5i64..6, 6), b in proptest::collection::vec(-5i64..6, 6)) {
            // (3x2)(2x3) has rank at most 2.
            let rows: Vec<Vec<BigRational>> = (0..3)
                .map(|i| (0..3).map(|j| {
                    BigRational::from_integer(BigInt::from(a[2 * i] * b[j] + a[2 * i + 1] * b[3 + j]))
                }).collect())
                .collect();
            prop_assert!(rank(&rows) <= 2);
            prop_assert!(det(&rows).is_zero());
        }
    }

    #[test]
    fn echelon_pivots() {
        let mut e = Echelon::new(3);
        let rows = to_rational_rows(&zm(&[&[0, 1, 1], &[0, 2, 2], &[1, 0, 0]]));
        assert!(e.insert(&rows[0]));
        assert!(!e.insert(&rows[1]));
        assert!(e.insert(&rows[2]));
        assert_eq!(e.pivots(), vec![1, 0]);
    }
}
