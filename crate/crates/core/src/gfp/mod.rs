//! Arithmetic over prime fields GF(p), dense matrices, canonical subspaces
//! and univariate polynomials.
//!
//! Field elements are stored as bare `u32` residues inside matrices and
//! vectors; the modulus lives on the container. [`Fp`] is the standalone
//! scalar type used at API boundaries.

mod matrix;
mod poly;
mod subspace;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

pub use matrix::FieldMatrix;
pub use poly::FpPoly;
pub use subspace::Subspace;

use crate::error::{Error, Result};

/// Largest modulus accepted. Products of two residues must fit in a `u32`
/// after reduction through `u64`.
pub const MAX_MODULUS: u32 = 1 << 15;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates `p` as a usable field characteristic.
pub fn check_modulus(p: u32) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if p > MAX_MODULUS {
        return Err(Error::ModulusTooLarge(p as u64));
    }
    Ok(p)
}

#[inline]
pub(crate) fn reduce(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

#[inline]
pub(crate) fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue, by Fermat.
#[inline]
pub(crate) fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow(a, p as u64 - 2, p)
}

/// `1/k!` for `k < p`.
pub(crate) fn inv_factorial(k: usize, p: u32) -> u32 {
    let mut f = 1u32;
    for i in 1..=k as u32 {
        f = mul(f, i % p, p);
    }
    inv(f, p)
}

/// `a += c * b` on residue vectors.
#[inline]
pub(crate) fn axpy(a: &mut [u32], c: u32, b: &[u32], p: u32) {
    if c == 0 {
        return;
    }
    for (x, &y) in a.iter_mut().zip(b) {
        *x = add(*x, mul(c, y, p), p);
    }
}

/// An element of GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Self {
            value: reduce(value, modulus),
            modulus,
        })
    }

    pub(crate) fn from_raw(value: u32, modulus: u32) -> Self {
        Self { value, modulus }
    }

    pub fn zero(modulus: u32) -> Self {
        Self { value: 0, modulus }
    }

    pub fn one(modulus: u32) -> Self {
        Self { value: 1, modulus }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| Self::from_raw(inv(self.value, self.modulus), self.modulus))
    }

    pub fn pow(self, e: u64) -> Self {
        Self::from_raw(pow(self.value, e, self.modulus), self.modulus)
    }

    /// Representative in `(-p/2, p/2]`, handy for display.
    pub fn signed(self) -> i64 {
        let v = self.value as i64;
        let p = self.modulus as i64;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! fp_binop {
    ($tr:ident, $method:ident, $f:path) => {
        impl $tr for Fp {
            type Output = Fp;
            fn $method(self, rhs: Fp) -> Fp {
                assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
                Fp::from_raw($f(self.value, rhs.value, self.modulus), self.modulus)
            }
        }
    };
}

fp_binop!(Add, add, add);
fp_binop!(Sub, sub, sub);
fp_binop!(Mul, mul, mul);

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inverse().expect("division by zero in GF(p)")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::from_raw(neg(self.value, self.modulus), self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(Fp::new(1, 9).is_err());
    }

    #[test]
    fn field_ops() {
        let p = 7;
        let a = Fp::new(3, p).unwrap();
        let b = Fp::new(-2, p).unwrap();
        assert_eq!(b.value(), 5);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a * b).value(), 1);
        assert_eq!((a / a).value(), 1);
        assert_eq!(a.inverse().unwrap(), b);
        assert_eq!(Fp::zero(p).inverse(), None);
        assert_eq!(a.pow(6).value(), 1);
        assert_eq!((-a).signed(), -3);
    }

    #[test]
    fn inverse_factorials() {
        let p = 7;
        for k in 0..7 {
            let mut f: u32 = 1;
            for i in 1..=k {
                f = f * i as u32 % 7;
            }
            assert_eq!(mul(inv_factorial(k, p), f, p), 1);
        }
    }
}
