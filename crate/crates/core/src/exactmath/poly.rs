//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Coefficients are stored lowest degree first with no trailing zeros, so
/// the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `t - root`
    pub fn linear_factor(root: T) -> Self {
        Self::new(vec![-root, T::one()])
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Divide by the leading coefficient. The zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => {
                let inv = T::one() / lc.clone();
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Formal derivative applied `order` times.
    pub fn derivative(&self, order: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..order {
            if p.coeffs.len() <= 1 {
                return Self::zero();
            }
            p = Self::new(
                p.coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                    .collect(),
            );
        }
        p
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Domain("polynomial division by zero".into()))?;
        let lc = divisor.leading().cloned().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = rem[k + dd].clone() / lc.clone();
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InvariantViolation(
                "polynomial division left a nonzero remainder".into(),
            ));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free decomposition (Yun): returns `[a_1, a_2, ...]` with
    /// `monic(self) = a_1 * a_2^2 * a_3^3 * ...`, each `a_i` monic, squarefree
    /// and pairwise coprime. Trailing constant factors are dropped.
    pub fn squarefree_decomposition(&self) -> Result<Vec<Self>> {
        if self.is_zero() {
            return Err(Error::Domain(
                "square-free decomposition of the zero polynomial".into(),
            ));
        }
        let f = self.monic();
        let mut out = Vec::new();
        if f.is_constant() {
            return Ok(out);
        }
        let df = f.derivative(1);
        let a = f.gcd(&df);
        let mut b = f.exact_div(&a)?;
        let mut c = df.exact_div(&a)?;
        let mut d = &c - &b.derivative(1);
        loop {
            let ai = b.gcd(&d);
            b = b.exact_div(&ai)?;
            c = d.exact_div(&ai)?;
            out.push(ai);
            if b.is_constant() {
                break;
            }
            d = &c - &b.derivative(1);
        }
        while out.last().is_some_and(|p| p.is_constant()) {
            out.pop();
        }
        Ok(out)
    }

    /// The product of the square-free factors (the radical, made monic).
    pub fn squarefree_part(&self) -> Result<Self> {
        Ok(self
            .squarefree_decomposition()?
            .iter()
            .fold(Self::one(), |acc, f| &acc * f))
    }
}

impl<T: Field> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Field> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Field> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Field> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Field + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Outcome of [`is_perfect_square`].
#[derive(Clone, Debug, PartialEq)]
pub struct SquareCheck<T> {
    pub is_square: bool,
    /// Monic square root of the (normalized) input, when it exists.
    pub root: Option<Polynomial<T>>,
    /// Set when the input was not monic and had to be scaled first.
    pub normalized: bool,
}

/// Decide whether `p` (after making it monic) is the square of a polynomial.
///
/// Uses the square-free decomposition, so only gcds and exact divisions are
/// involved; a positive answer is re-checked by squaring the root.
pub fn is_perfect_square<T: Field>(p: &Polynomial<T>) -> Result<SquareCheck<T>> {
    if p.is_zero() {
        return Err(Error::Domain("perfect-square test on the zero polynomial".into()));
    }
    let normalized = !p.is_monic();
    let f = p.monic();
    let parts = f.squarefree_decomposition()?;
    let odd_part_trivial = parts
        .iter()
        .enumerate()
        .all(|(i, a)| (i + 1) % 2 == 0 || a.is_constant());
    if !odd_part_trivial {
        return Ok(SquareCheck { is_square: false, root: None, normalized });
    }
    let root = parts
        .iter()
        .enumerate()
        .fold(Polynomial::one(), |acc, (i, a)| &acc * &a.pow(i.div_ceil(2) as u32));
    if &root * &root != f {
        return Err(Error::InvariantViolation(
            "square root failed the re-squaring check".into(),
        ));
    }
    Ok(SquareCheck { is_square: true, root: Some(root), normalized })
}

/// Sylvester resultant.
///
/// Conventions for degenerate arguments: if one argument is a nonzero
/// constant `c` and the other has degree `n`, the result is `c^n` (so two
/// nonzero constants give 1). If exactly one argument is the zero polynomial
/// the result is 0. Both zero is an error.
pub fn resultant<T: Field>(p: &Polynomial<T>, q: &Polynomial<T>) -> Result<T> {
    let (n, m) = match (p.degree(), q.degree()) {
        (None, None) => return Err(Error::UndefinedResultant),
        (None, _) | (_, None) => return Ok(T::zero()),
        (Some(n), Some(m)) => (n, m),
    };
    if m == 0 {
        return Ok(q.coeffs[0].pow_u32(n as u32));
    }
    if n == 0 {
        return Ok(p.coeffs[0].pow_u32(m as u32));
    }
    sylvester_matrix(p, q).det()
}

/// The `(n+m) x (n+m)` Sylvester matrix of `p` (degree n) and `q` (degree m),
/// rows holding shifted coefficient vectors, highest degree first.
pub fn sylvester_matrix<T: Field>(p: &Polynomial<T>, q: &Polynomial<T>) -> Matrix<T> {
    let n = p.degree().unwrap_or(0);
    let m = q.degree().unwrap_or(0);
    let size = n + m;
    let mut s = Matrix::zeros(size, size);
    for r in 0..m {
        for (k, c) in p.coeffs.iter().rev().enumerate() {
            s[(r, r + k)] = c.clone();
        }
    }
    for r in 0..n {
        for (k, c) in q.coeffs.iter().rev().enumerate() {
            s[(m + r, r + k)] = c.clone();
        }
    }
    s
}
