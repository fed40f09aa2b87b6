use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{Matrix, Scalar};
use crate::error::{Error, Result};

/// Coefficient ring of a chain complex.
///
/// All entries are stored as rationals. Over `Z` they are integers; over
/// `F_p` they are the representatives `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
    Prime(u64),
}

/// Largest prime accepted for `F_p`, keeping products inside `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

impl Ring {
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not a supported prime")));
        }
        Ok(Ring::Prime(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    /// Maps an integer-or-rational value into the canonical representative.
    /// Over `Z` and `F_p` a non-integral value is an error.
    pub fn element(&self, x: &Scalar) -> Result<Scalar> {
        match self {
            Ring::Rationals => Ok(x.clone()),
            Ring::Integers => {
                if x.is_integer() {
                    Ok(x.clone())
                } else {
                    Err(Error::InvalidRing(format!("{x} is not an integer")))
                }
            }
            Ring::Prime(p) => {
                if !x.is_integer() {
                    return Err(Error::InvalidRing(format!("{x} is not an integer")));
                }
                Ok(BigRational::from_integer(x.to_integer().mod_floor(&BigInt::from(*p))))
            }
        }
    }

    /// Reduces an entry already known to be integral over `Z`/`F_p`.
    pub fn reduce(&self, x: &Scalar) -> Scalar {
        match self {
            Ring::Prime(p) => BigRational::from_integer(x.to_integer().mod_floor(&BigInt::from(*p))),
            _ => x.clone(),
        }
    }

    pub fn reduce_matrix(&self, m: &Matrix) -> Matrix {
        match self {
            Ring::Prime(_) => m.map(|x| self.reduce(x)),
            _ => m.clone(),
        }
    }

    pub fn matrix_element(&self, m: &Matrix) -> Result<Matrix> {
        let mut out = m.clone();
        for x in out.entries_mut() {
            *x = self.element(x)?;
        }
        Ok(out)
    }

    pub fn is_zero(&self, x: &Scalar) -> bool {
        self.reduce(x).is_zero()
    }

    pub fn is_zero_matrix(&self, m: &Matrix) -> bool {
        m.entries().iter().all(|x| self.is_zero(x))
    }

    pub fn matrices_equal(&self, a: &Matrix, b: &Matrix) -> bool {
        a.shape() == b.shape() && self.is_zero_matrix(&(a - b))
    }

    pub fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        self.reduce_matrix(&(a * b))
    }

    pub fn add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        self.reduce_matrix(&(a + b))
    }

    pub fn sub(&self, a: &Matrix, b: &Matrix) -> Matrix {
        self.reduce_matrix(&(a - b))
    }

    pub fn neg(&self, a: &Matrix) -> Matrix {
        self.reduce_matrix(&a.neg())
    }

    /// Multiplicative inverse of a unit, if it is one.
    pub fn unit_inverse(&self, x: &Scalar) -> Option<Scalar> {
        match self {
            Ring::Integers => {
                if x.abs().is_one() {
                    Some(x.clone())
                } else {
                    None
                }
            }
            Ring::Rationals => (!x.is_zero()).then(|| x.recip()),
            Ring::Prime(p) => {
                let v = self.reduce(x).to_integer().to_u64()?;
                (v != 0).then(|| BigRational::from_integer(BigInt::from(mod_pow(v, p - 2, *p))))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(Ring::Integers),
            "Q" => Ok(Ring::Rationals),
            _ => {
                let p = s
                    .strip_prefix("Fp:")
                    .or_else(|| s.strip_prefix('F'))
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidRing(format!("unknown ring '{s}'")))?;
                Ring::prime(p)
            }
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}
