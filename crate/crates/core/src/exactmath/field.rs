//! Scalar field abstraction shared by the polynomial and matrix code.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A (commutative) field with an involutive conjugation.
///
/// The exact instances are [`BigRational`] and `Complex<BigRational>`; the
/// floating-point impls exist so the generic algorithms can be reused for
/// quick numeric sanity checks, where `is_zero` means bitwise zero.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    fn conj(&self) -> Self {
        self.clone()
    }

    /// True when the value is fixed by conjugation.
    fn is_real(&self) -> bool {
        self.conj() == *self
    }

    fn pow_u32(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for Complex<BigRational> {
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_i64(n), BigRational::zero())
    }

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Field for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Field for f32 {
    fn from_i64(n: i64) -> Self {
        n as f32
    }
}

impl Field for Complex<f64> {
    fn from_i64(n: i64) -> Self {
        Complex::new(n as f64, 0.0)
    }

    fn conj(&self) -> Self {
        Complex::new(self.re, -self.im)
    }

    fn is_real(&self) -> bool {
        self.im == 0.0
    }
}

/// Lift a rational into any field that contains it.
pub trait FromRational: Field {
    fn from_rational(q: &BigRational) -> Self;
}

impl FromRational for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl FromRational for Complex<BigRational> {
    fn from_rational(q: &BigRational) -> Self {
        Complex::new(q.clone(), BigRational::zero())
    }
}
