//! Exact scalars, polynomials and matrices.
//!
//! Everything here is generic over [`Field`]; the crate root fixes the exact
//! instantiations ([`crate::Rational`], [`crate::Gaussian`]).

mod field;
mod matrix;
mod poly;
pub mod text;

pub use field::{Field, FromRational};
pub use matrix::Matrix;
pub use poly::{is_perfect_square, resultant, sylvester_matrix, Polynomial, SquareCheck};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact dot product of two coordinate vectors.
pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `a^T G b` for a symmetric Gram matrix `G`.
pub fn gram_form<T: Field>(gram: &Matrix<T>, a: &[T], b: &[T]) -> T {
    let gb = gram.mul_vec(b).expect("gram shape matches vector length");
    dot(a, &gb)
}

pub fn add_vec<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub_vec<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn scale_vec<T: Field>(c: &T, a: &[T]) -> Vec<T> {
    a.iter().map(|x| c.clone() * x.clone()).collect()
}

pub fn is_zero_vec<T: Field>(a: &[T]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn is_integer(q: &BigRational) -> bool {
    q.is_integer()
}

/// `floor(sqrt(q))` for a nonnegative rational, exactly.
pub fn floor_sqrt(q: &BigRational) -> Result<BigInt> {
    if q.is_negative() {
        return Err(Error::Domain("square root of a negative rational".into()));
    }
    Ok(q.floor().to_integer().sqrt())
}

/// Embed a real-rational matrix into the Gaussian rationals.
pub fn complexify(m: &Matrix<BigRational>) -> Matrix<Complex<BigRational>> {
    m.map(|x| Complex::new(x.clone(), BigRational::zero()))
}

/// Real parts of a polynomial whose coefficients are all real; errors otherwise.
pub fn real_polynomial(p: &Polynomial<Complex<BigRational>>) -> Result<Polynomial<BigRational>> {
    if let Some(bad) = p.coeffs().iter().find(|c| !c.im.is_zero()) {
        return Err(Error::InvariantViolation(format!(
            "expected a real polynomial, found coefficient with imaginary part {}",
            bad.im
        )));
    }
    Ok(Polynomial::new(p.coeffs().iter().map(|c| c.re.clone()).collect()))
}
