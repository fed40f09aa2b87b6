//! Exact linear algebra over `Z`, `Q` and `F_p`.

mod field;
pub mod hnf;
mod matrix;
mod ring;
pub mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use matrix::{int, Matrix, Scalar};
pub use ring::{Ring, MAX_PRIME};

use field::{PrimeField, Rationals};

pub fn rank(ring: Ring, m: &Matrix) -> usize {
    match ring {
        Ring::Integers | Ring::Rationals => field::rank(&Rationals, m),
        Ring::Prime(p) => field::rank(&PrimeField(p), m),
    }
}

/// Nonzero invariant factors of an integer matrix.
pub fn invariant_factors(m: &Matrix) -> Vec<BigInt> {
    snf::invariant_factors(&m.to_integer_rows())
}

/// Columns spanning `{x : m x = 0}` over the ring. Over `Z` the columns are
/// a lattice basis; over `Q` each column is scaled to a primitive integer
/// vector.
pub fn kernel(ring: Ring, m: &Matrix) -> Matrix {
    let n = m.cols();
    let cols: Vec<Vec<Scalar>> = match ring {
        Ring::Integers => hnf::integer_kernel(&m.to_integer_rows(), n)
            .into_iter()
            .map(|v| v.into_iter().map(BigRational::from_integer).collect())
            .collect(),
        Ring::Rationals => field::kernel(&Rationals, m)
            .into_iter()
            .map(primitive)
            .collect(),
        Ring::Prime(p) => field::kernel(&PrimeField(p), m),
    };
    Matrix::from_columns(&cols, n)
}

fn primitive(v: Vec<Scalar>) -> Vec<Scalar> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    let sign = ints.iter().find(|x| !x.is_zero()).map_or(BigInt::one(), |x| x.signum());
    ints.into_iter()
        .map(|x| BigRational::from_integer(x / &g * &sign))
        .collect()
}

/// A matrix `X` with `a X = b` over the ring, or `None` if none exists.
pub fn solve(ring: Ring, a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    match ring {
        Ring::Integers => {
            let solver = hnf::IntegerSolver::new(&a.to_integer_rows(), a.cols());
            let b_rows = b.to_integer_rows();
            let mut cols = Vec::with_capacity(b.cols());
            for j in 0..b.cols() {
                let rhs: Vec<BigInt> = b_rows.iter().map(|r| r[j].clone()).collect();
                let x = solver.solve(&rhs)?;
                cols.push(x.into_iter().map(BigRational::from_integer).collect());
            }
            Some(Matrix::from_columns(&cols, a.cols()))
        }
        Ring::Rationals => field::solve(&Rationals, a, b),
        Ring::Prime(p) => field::solve(&PrimeField(p), a, b),
    }
}

/// Whether a square matrix is invertible over the ring.
pub fn is_invertible(ring: Ring, m: &Matrix) -> bool {
    if !m.is_square() {
        return false;
    }
    match ring {
        Ring::Integers => {
            let f = invariant_factors(m);
            f.len() == m.rows() && f.iter().all(|x| x.abs().is_one())
        }
        _ => rank(ring, m) == m.rows(),
    }
}
