//! Exact spectra of invariant Laplacians on compact homogeneous spaces,
//! computed from root-system and representation data.

pub mod error;
pub mod exactmath;
pub mod latscan;
pub mod q8;
pub mod reptype;
pub mod rootsystem;
pub mod spectrum;
pub mod spheresym;
pub mod su2lab;

pub use error::{Error, ErrorClass, Result};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Exact Gaussian rational `re + i*im`.
pub type Gaussian = num_complex::Complex<Rational>;
pub type RationalVector = Vec<Rational>;
pub type RationalMatrix = exactmath::Matrix<Rational>;
pub type GaussianMatrix = exactmath::Matrix<Gaussian>;
pub type RationalPolynomial = exactmath::Polynomial<Rational>;
pub type GaussianPolynomial = exactmath::Polynomial<Gaussian>;
