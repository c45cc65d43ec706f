//! Textual forms of exact values: rationals are always written `"p/q"`,
//! Gaussian rationals as `{"re": "p/q", "im": "p/q"}`, polynomials as
//! coefficient arrays lowest degree first.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Matrix, Polynomial};
use crate::error::{Error, Result};

pub fn fmt_q(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `"p/q"`, `"p"` or a decimal-free integer with optional sign.
pub fn parse_q(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Input(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(Error::Input(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

pub fn fmt_vec(v: &[BigRational]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

pub fn parse_vec(v: &[String]) -> Result<Vec<BigRational>> {
    v.iter().map(|s| parse_q(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianText {
    pub re: String,
    pub im: String,
}

impl GaussianText {
    pub fn from_value(z: &Complex<BigRational>) -> Self {
        GaussianText { re: fmt_q(&z.re), im: fmt_q(&z.im) }
    }

    pub fn to_value(&self) -> Result<Complex<BigRational>> {
        Ok(Complex::new(parse_q(&self.re)?, parse_q(&self.im)?))
    }
}

pub fn poly_text(p: &Polynomial<BigRational>) -> Vec<String> {
    fmt_vec(p.coeffs())
}

pub fn parse_poly(coeffs: &[String]) -> Result<Polynomial<BigRational>> {
    Ok(Polynomial::new(parse_vec(coeffs)?))
}

pub fn gaussian_poly_text(p: &Polynomial<Complex<BigRational>>) -> Vec<GaussianText> {
    p.coeffs().iter().map(GaussianText::from_value).collect()
}

pub fn matrix_text(m: &Matrix<BigRational>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| fmt_vec(r)).collect()
}

pub fn gaussian_matrix_text(m: &Matrix<Complex<BigRational>>) -> Vec<Vec<GaussianText>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(GaussianText::from_value).collect())
        .collect()
}

/// Parse `"a,b,c;d,e,f;..."` into a rational matrix.
pub fn parse_matrix(s: &str) -> Result<Matrix<BigRational>> {
    let rows = s
        .split(';')
        .map(|row| row.split(',').map(parse_q).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// `#[serde(with = "rational")]` for a single rational field.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

/// `#[serde(with = "rational_vec")]` for a vector of rationals.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        fmt_vec(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        parse_vec(&v).map_err(serde::de::Error::custom)
    }
}

/// `#[serde(with = "rational_poly")]`: coefficient strings, lowest degree first.
pub mod rational_poly {
    use super::*;

    pub fn serialize<S: Serializer>(p: &Polynomial<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        poly_text(p).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Polynomial<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        parse_poly(&v).map_err(serde::de::Error::custom)
    }
}
