//! Small dense exact linear algebra over [`Scalar`] and rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// `rhs` is nonzero at every call site.
    fn div(&self, rhs: &Self) -> Self;
    fn sign(&self) -> i8;
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn sign(&self) -> i8 {
        Scalar::sign(self)
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn sign(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Row-echelon form in place; returns pivot columns.
fn echelon<F: Field>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
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
        let pivot = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.div(&pivot);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = factor.mul(&rows[r][j]);
                    rows[i][j] = rows[i][j].sub(&delta);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m = rows.to_vec();
    echelon(&mut m, ncols).len()
}

/// Basis of `{ v : rows · v = 0 }`.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = echelon(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = F::zero().sub(&m[row][f]);
            }
            v
        })
        .collect()
}

/// One solution of `rows · v = rhs`, or `None` if the system is inconsistent.
pub fn solve<F: Field>(rows: &[Vec<F>], rhs: &[F], ncols: usize) -> Option<Vec<F>> {
    let mut aug: Vec<Vec<F>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut aug, ncols + 1);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut v = vec![F::zero(); ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = aug[row][ncols].clone();
    }
    Some(v)
}

/// Whether a symmetric matrix is positive definite, by Gaussian elimination
/// without pivoting: the k-th pivot is the ratio of consecutive leading minors.
pub fn is_positive_definite<F: Field>(m: &[Vec<F>]) -> bool {
    let n = m.len();
    let mut a = m.to_vec();
    for k in 0..n {
        if a[k][k].sign() <= 0 {
            return false;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].div(&a[k][k]);
            for j in k..n {
                let delta = factor.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&delta);
            }
        }
    }
    true
}

/// Leading principal minors `det(m[..k][..k])` for `k = 1..=n`.
pub fn leading_minors<F: Field>(m: &[Vec<F>]) -> Vec<F> {
    (1..=m.len())
        .map(|k| {
            let sub: Vec<Vec<F>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

pub fn determinant<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = F::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return F::zero();
        };
        if p != k {
            a.swap(p, k);
            det = F::zero().sub(&det);
        }
        det = det.mul(&a[k][k]);
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].div(&a[k][k]);
            for j in k..n {
                let delta = factor.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&delta);
            }
        }
    }
    det
}

/// Hermite normal form basis (upper triangular, positive pivots) of the
/// integer row span of `rows`.
pub fn hermite_basis(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut basis = Vec::new();
    let mut r0 = 0;
    for c in 0..ncols {
        // Euclid on column c among rows r0..
        loop {
            let nonzero: Vec<usize> = (r0..m.len()).filter(|&i| m[i][c] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let &min_row = nonzero.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
            for &i in &nonzero {
                if i != min_row {
                    let q = m[i][c] / m[min_row][c];
                    for j in 0..ncols {
                        m[i][j] -= q * m[min_row][j];
                    }
                }
            }
        }
        let Some(p) = (r0..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r0, p);
        if m[r0][c] < 0 {
            for x in m[r0].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r0 {
            let q = m[i][c].div_euclid(m[r0][c]);
            for j in 0..ncols {
                m[i][j] -= q * m[r0][j];
            }
        }
        r0 += 1;
    }
    for row in m.into_iter().take(r0) {
        basis.push(row.into_iter().map(|x| x as i64).collect());
    }
    basis
}

/// Index of the integer row span of `rows` in `Z^ncols`, or `None` if the span
/// is not of full rank.
pub fn lattice_index(rows: &[Vec<i64>], ncols: usize) -> Option<u64> {
    let basis = hermite_basis(rows, ncols);
    if basis.len() < ncols {
        return None;
    }
    let mut index: u64 = 1;
    for (i, row) in basis.iter().enumerate() {
        if row[i] == 0 {
            return None;
        }
        index *= row[i].unsigned_abs();
    }
    Some(index)
}
