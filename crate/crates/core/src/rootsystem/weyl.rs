use std::collections::{HashSet, VecDeque};

use num_traits::Signed;

use super::RootSystem;
use crate::error::{Error, Result};
use crate::exactmath::Matrix;
use crate::{RationalMatrix, RationalVector};

/// Environment variable overriding the Weyl-closure capacity.
pub const MAX_CLOSURE_ENV: &str = "LAPLACE_SPECTRA_MAX_CLOSURE";
const DEFAULT_MAX_CLOSURE: usize = 100_000;

pub fn closure_bound() -> usize {
    std::env::var(MAX_CLOSURE_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_CLOSURE)
}

/// A Weyl group element: its matrix on ambient coordinates and a reduced
/// word `[i1, i2, ...]` meaning `s_{i1} s_{i2} ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: RationalMatrix,
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(dim: usize) -> Self {
        WeylElement { matrix: Matrix::identity(dim), word: Vec::new() }
    }

    pub fn apply(&self, v: &[crate::Rational]) -> RationalVector {
        self.matrix.mul_vec(v).expect("ambient vector")
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }
}

pub fn weyl_group(rs: &RootSystem) -> Result<Vec<WeylElement>> {
    weyl_group_bounded(rs, closure_bound())
}

/// Breadth-first closure of the simple reflections. Elements come out in
/// order of word length, so every stored word is reduced.
pub fn weyl_group_bounded(rs: &RootSystem, max_order: usize) -> Result<Vec<WeylElement>> {
    let gens = rs.simple_reflections();
    let id = WeylElement::identity(rs.ambient_dim());
    let mut seen: HashSet<RationalMatrix> = HashSet::from([id.matrix.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for (i, s) in gens.iter().enumerate() {
            let m = &w.matrix * s;
            if seen.insert(m.clone()) {
                if out.len() >= max_order {
                    return Err(Error::Capacity(format!(
                        "Weyl group of {} exceeds the closure bound {max_order}",
                        rs.name()
                    )));
                }
                let mut word = w.word.clone();
                word.push(i);
                let e = WeylElement { matrix: m, word };
                out.push(e.clone());
                queue.push_back(e);
            }
        }
    }
    Ok(out)
}

/// The longest element `w0`, the unique element sending every positive root
/// to a negative root.
///
/// Found by folding `-ρ` into the dominant chamber with simple reflections;
/// the reflections used spell a reduced word for `w0`.
pub fn longest_element(rs: &RootSystem) -> Result<WeylElement> {
    let gens = rs.simple_reflections();
    let mut v: RationalVector = rs.rho().iter().map(|x| -x.clone()).collect();
    let mut word = Vec::new();
    'fold: loop {
        for (i, a) in rs.simple_roots().iter().enumerate() {
            if rs.inner(&v, a).is_negative() {
                v = gens[i].mul_vec(&v)?;
                word.push(i);
                continue 'fold;
            }
        }
        break;
    }
    let matrix = word
        .iter()
        .fold(Matrix::identity(rs.ambient_dim()), |acc, &i| &acc * &gens[i]);
    let w0 = WeylElement { matrix, word };
    let all_negative = rs.positive_roots().iter().all(|r| {
        let img = w0.apply(&r.vector);
        let neg: RationalVector = img.iter().map(|x| -x.clone()).collect();
        rs.positive_roots().iter().any(|p| p.vector == neg)
    });
    if !all_negative {
        return Err(Error::InvariantViolation("w0 does not negate the positive roots".into()));
    }
    Ok(w0)
}
