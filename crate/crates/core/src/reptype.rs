//! Real / complex / quaternionic type of irreducible representations.
//!
//! The primary classifier is the parity test: a self-dual highest weight μ
//! is quaternionic iff `<μ, Σ_{α>0} α^∨>` is odd. For A1 an independent
//! oracle decomposes the symmetric and alternating squares of the
//! representation from its weights alone.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsystem::{longest_element, RootSystem};
use crate::{Rational, RationalVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepType {
    Real,
    Complex,
    Quaternionic,
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepType::Real => "real",
            RepType::Complex => "complex",
            RepType::Quaternionic => "quaternionic",
        })
    }
}

impl FromStr for RepType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "real" => Ok(RepType::Real),
            "complex" => Ok(RepType::Complex),
            "quaternionic" => Ok(RepType::Quaternionic),
            other => Err(Error::Input(format!("unknown representation type {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeClassification {
    pub value: RepType,
    pub self_dual: bool,
    /// `<μ, Σ α^∨> mod 2`, present only for self-dual weights.
    pub parity: Option<u8>,
}

/// Highest weight of the dual representation, `-w0(μ)`.
pub fn dual_weight(rs: &RootSystem, mu: &[Rational]) -> Result<RationalVector> {
    if !rs.is_dominant(mu) {
        return Err(Error::Domain("dual_weight expects a dominant weight".into()));
    }
    let w0 = longest_element(rs)?;
    Ok(w0.apply(mu).into_iter().map(|x| -x).collect())
}

fn check_weight(rs: &RootSystem, mu: &[Rational]) -> Result<()> {
    if !rs.is_dominant(mu) {
        return Err(Error::Domain("highest weight is not dominant".into()));
    }
    if !rs.in_root_span(mu) || rs.dynkin_labels(mu).iter().any(|d| !d.is_integer()) {
        return Err(Error::Domain("highest weight is not in the weight lattice".into()));
    }
    Ok(())
}

/// Classify the irreducible representation with highest weight `mu`.
pub fn type_of(rs: &RootSystem, mu: &[Rational]) -> Result<TypeClassification> {
    if !rs.is_group_system() {
        return Err(Error::Capability(format!(
            "representation types need the group's own root system; {} carries \
             restricted-root data (multiplicities or non-reduced roots)",
            rs.name()
        )));
    }
    check_weight(rs, mu)?;
    let dual = dual_weight(rs, mu)?;
    if dual != mu {
        return Ok(TypeClassification { value: RepType::Complex, self_dual: false, parity: None });
    }
    let pairing = rs.inner(mu, &rs.coroot_sum());
    if !pairing.is_integer() {
        return Err(Error::InvariantViolation("coroot-sum pairing is not integral".into()));
    }
    let odd = pairing.to_integer() % 2 != 0.into();
    Ok(TypeClassification {
        value: if odd { RepType::Quaternionic } else { RepType::Real },
        self_dual: true,
        parity: Some(u8::from(odd)),
    })
}

pub const A1_ORACLE_MAX: u32 = 64;

/// Number of trivial summands in a representation of A1 given by its weight
/// multiset (weights in the `α^∨` normalization, so `V_m` has weights
/// `m, m-2, ..., -m`): `mult(0) - mult(2)`.
fn trivial_summands(weights: &BTreeMap<i64, i64>) -> i64 {
    weights.get(&0).copied().unwrap_or(0) - weights.get(&2).copied().unwrap_or(0)
}

/// Type of the `(m+1)`-dimensional irreducible representation of A1 from the
/// Clebsch-Gordan split of its tensor square: the unique trivial summand of
/// `V ⊗ V` sits in the symmetric square (real) or the alternating square
/// (quaternionic).
pub fn a1_type_oracle(m: u32) -> Result<RepType> {
    if m > A1_ORACLE_MAX {
        return Err(Error::Capacity(format!("A1 oracle supports m <= {A1_ORACLE_MAX}")));
    }
    let weights: Vec<i64> = (0..=m as i64).map(|k| m as i64 - 2 * k).collect();
    let mut sym = BTreeMap::new();
    let mut alt = BTreeMap::new();
    for (i, a) in weights.iter().enumerate() {
        for (j, b) in weights.iter().enumerate().skip(i) {
            *sym.entry(a + b).or_insert(0i64) += 1;
            if j > i {
                *alt.entry(a + b).or_insert(0i64) += 1;
            }
        }
    }
    match (trivial_summands(&sym), trivial_summands(&alt)) {
        (1, 0) => Ok(RepType::Real),
        (0, 1) => Ok(RepType::Quaternionic),
        (s, a) => Err(Error::InvariantViolation(format!(
            "tensor square of V_{m} has {s} symmetric and {a} alternating invariants"
        ))),
    }
}
