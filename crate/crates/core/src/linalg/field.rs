//! Gaussian elimination over `Q` and `F_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::matrix::{Matrix, Scalar};
use super::ring::mod_pow;

pub(crate) trait Field {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn from_scalar(&self, x: &Scalar) -> Self::E;
    fn to_scalar(&self, x: &Self::E) -> Scalar;
}

pub(crate) struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::from_integer(1.into())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_scalar(&self, x: &Scalar) -> BigRational {
        x.clone()
    }
    fn to_scalar(&self, x: &BigRational) -> Scalar {
        x.clone()
    }
}

pub(crate) struct PrimeField(pub u64);

impl Field for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        mod_pow(*a, self.0 - 2, self.0)
    }
    fn from_scalar(&self, x: &Scalar) -> u64 {
        let p = BigInt::from(self.0);
        let num = x.numer().mod_floor(&p);
        let den = x.denom().mod_floor(&p);
        let n = num.to_u64().unwrap_or(0);
        let d = den.to_u64().unwrap_or(1);
        self.mul(&n, &self.inv(&d))
    }
    fn to_scalar(&self, x: &u64) -> Scalar {
        BigRational::from_integer(BigInt::from(*x))
    }
}

pub(crate) fn to_rows<F: Field>(f: &F, m: &Matrix) -> Vec<Vec<F::E>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| f.from_scalar(x)).collect())
        .collect()
}

/// Reduced row echelon form in place, pivoting only in the first
/// `pivot_cols` columns. Returns the pivot columns.
pub(crate) fn rref<F: Field>(f: &F, rows: &mut [Vec<F::E>], pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]);
        for v in rows[r].iter_mut() {
            if !f.is_zero(v) {
                *v = f.mul(v, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !f.is_zero(pv) {
                    *v = f.sub(v, &f.mul(&factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank<F: Field>(f: &F, m: &Matrix) -> usize {
    let mut rows = to_rows(f, m);
    rref(f, &mut rows, m.cols()).len()
}

/// Basis of `{x : m x = 0}` as columns, one per free column.
pub(crate) fn kernel<F: Field>(f: &F, m: &Matrix) -> Vec<Vec<Scalar>> {
    let n = m.cols();
    let mut rows = to_rows(f, m);
    let pivots = rref(f, &mut rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); n];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&rows[r][fc]);
            }
            v.iter().map(|x| f.to_scalar(x)).collect()
        })
        .collect()
}

/// A solution `X` of `a X = b`, if one exists.
pub(crate) fn solve<F: Field>(f: &F, a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let n = a.cols();
    let k = b.cols();
    let mut rows: Vec<Vec<F::E>> = (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .chain(b.row(i))
                .map(|x| f.from_scalar(x))
                .collect()
        })
        .collect();
    let pivots = rref(f, &mut rows, n);
    if rows[pivots.len()..]
        .iter()
        .any(|row| row[n..].iter().any(|x| !f.is_zero(x)))
    {
        return None;
    }
    let mut x = Matrix::zeros(n, k);
    for (r, &pc) in pivots.iter().enumerate() {
        for j in 0..k {
            x.set(pc, j, f.to_scalar(&rows[r][n + j]));
        }
    }
    Some(x)
}
