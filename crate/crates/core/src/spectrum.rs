//! Casimir eigenvalues of spherical representations and their coincidences.
//!
//! A dominant lattice weight μ has Casimir eigenvalue
//! `λ_μ = (μ+δ, μ+δ) - (δ, δ)`; all comparisons are made on the squared
//! radius `a² = (μ+δ, μ+δ)`, which stays rational.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::text::fmt_q;
use crate::exactmath::{add_vec, Field};
use crate::latscan::{self, BoxBound, Radius};
use crate::reptype::{self, RepType};
use crate::rootsystem::{longest_element, Lattice, RootSystem, WeylElement};
use crate::{Rational, RationalVector};

/// `(a², λ)` for any vector μ: `a² = (μ+δ, μ+δ)`, `λ = a² - (δ, δ)`.
pub fn casimir(rs: &RootSystem, mu: &[Rational]) -> (Rational, Rational) {
    let a2 = rs.norm2(&add_vec(mu, rs.delta()));
    let lambda = a2.clone() - rs.delta_norm2();
    (a2, lambda)
}

/// Weyl dimension formula `∏_{α>0} (μ+ρ, α) / (ρ, α)` over the indivisible
/// positive roots, with ρ their plain half sum.
pub fn weyl_dim(rs: &RootSystem, mu: &[Rational]) -> Result<BigUint> {
    if !rs.is_dominant(mu) {
        return Err(Error::Domain("Weyl dimension formula needs a dominant weight".into()));
    }
    if !rs.in_root_span(mu) || rs.dynkin_labels(mu).iter().any(|d| !d.is_integer()) {
        return Err(Error::Domain("weight is not in the weight lattice".into()));
    }
    let rho = rs.rho();
    let shifted = add_vec(mu, rho);
    let half = Rational::new(1.into(), 2.into());
    let mut prod = Rational::from_i64(1);
    for r in rs.positive_roots() {
        let half_root: RationalVector = r.vector.iter().map(|x| x.clone() * half.clone()).collect();
        if rs.is_root(&half_root) {
            continue;
        }
        prod = prod * rs.inner(&shifted, &r.vector) / rs.inner(rho, &r.vector);
    }
    if !prod.is_integer() || !prod.is_positive() {
        return Err(Error::InvariantViolation(format!(
            "Weyl dimension formula produced {}",
            fmt_q(&prod)
        )));
    }
    Ok(prod.to_integer().to_biguint().expect("positive"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightRecord {
    #[serde(with = "crate::exactmath::text::rational_vec")]
    pub mu: RationalVector,
    /// Fundamental-weight coordinates of `mu`.
    #[serde(with = "crate::exactmath::text::rational_vec")]
    pub dynkin: RationalVector,
    #[serde(with = "crate::exactmath::text::rational")]
    pub a_squared: Rational,
    #[serde(with = "crate::exactmath::text::rational")]
    pub lambda: Rational,
    #[serde(serialize_with = "ser_biguint")]
    pub dim: BigUint,
    #[serde(with = "crate::exactmath::text::rational_vec")]
    pub dual_mu: RationalVector,
    #[serde(with = "crate::exactmath::text::rational_vec")]
    pub dual_dynkin: RationalVector,
    pub self_dual: bool,
    /// `None` when the system carries restricted-root data.
    #[serde(rename = "type", serialize_with = "ser_type")]
    pub rep_type: Option<RepType>,
    /// `dim V^K`; 1 for spherical pairs unless overridden.
    pub multiplicity: u32,
}

fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_type<S: serde::Serializer>(v: &Option<RepType>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(t) => s.serialize_str(&t.to_string()),
        None => s.serialize_str("unknown"),
    }
}

impl WeightRecord {
    pub fn build(rs: &RootSystem, w0: &WeylElement, mu: RationalVector) -> Result<Self> {
        let (a_squared, lambda) = casimir(rs, &mu);
        let dim = weyl_dim(rs, &mu)?;
        let dual_mu: RationalVector = w0.apply(&mu).into_iter().map(|x| -x).collect();
        let rep_type = if rs.is_group_system() {
            Some(reptype::type_of(rs, &mu)?.value)
        } else {
            None
        };
        Ok(WeightRecord {
            dynkin: rs.dynkin_labels(&mu),
            dual_dynkin: rs.dynkin_labels(&dual_mu),
            self_dual: dual_mu == mu,
            mu,
            a_squared,
            lambda,
            dim,
            dual_mu,
            rep_type,
            multiplicity: 1,
        })
    }

    pub fn label(&self) -> String {
        fmt_dynkin(&self.dynkin)
    }
}

/// Compact Dynkin-label text such as `"4,5"`.
pub fn fmt_dynkin(d: &[Rational]) -> String {
    d.iter()
        .map(|x| if x.is_integer() { x.to_integer().to_string() } else { fmt_q(x) })
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    #[serde(with = "crate::exactmath::text::rational")]
    pub cutoff: Rational,
    pub records: Vec<WeightRecord>,
    pub bound: BoxBound,
    pub warnings: Vec<String>,
}

/// All dominant lattice weights μ with `(μ+δ, μ+δ) <= cutoff`, sorted by
/// `(a², Dynkin labels)`.
pub fn enumerate_spherical(rs: &RootSystem, lattice: &Lattice, cutoff: &Rational) -> Result<Enumeration> {
    let mut warnings = Vec::new();
    if *cutoff < rs.delta_norm2() {
        warnings.push(format!(
            "cutoff {} is below (delta, delta) = {}; no weights qualify",
            fmt_q(cutoff),
            fmt_q(&rs.delta_norm2())
        ));
    }
    let w0 = longest_element(rs)?;
    // Sublattices of the weight lattice are searched in the dominant cone only.
    let inside_weight_lattice = lattice
        .basis
        .iter()
        .all(|b| rs.dynkin_labels(b).iter().all(|x| x.is_integer()));
    let (points, bound) = if inside_weight_lattice {
        latscan::scan_dominant(rs, Radius::AtMost(cutoff))?
    } else {
        latscan::scan(rs, lattice, Radius::AtMost(cutoff))?
    };
    let mut records = points
        .into_iter()
        .filter(|p| rs.is_dominant(&p.mu) && lattice.contains(&p.mu))
        .map(|p| WeightRecord::build(rs, &w0, p.mu))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| a.a_squared.cmp(&b.a_squared).then_with(|| a.dynkin.cmp(&b.dynkin)));
    for r in &records {
        if r.lambda.is_negative() || (r.lambda.is_zero() != r.mu.iter().all(Zero::is_zero)) {
            return Err(Error::InvariantViolation(format!(
                "Casimir eigenvalue {} at weight ({})",
                fmt_q(&r.lambda),
                r.label()
            )));
        }
    }
    Ok(Enumeration { cutoff: cutoff.clone(), records, bound, warnings })
}

/// Apply per-weight `dim V^K` overrides keyed by Dynkin-label text (`"2,0"`).
pub fn apply_multiplicities(records: &mut [WeightRecord], overrides: &BTreeMap<String, u32>) -> Result<()> {
    for (key, &m) in overrides {
        if m == 0 {
            return Err(Error::Input(format!("multiplicity override for ({key}) must be positive")));
        }
        let rec = records
            .iter_mut()
            .find(|r| r.label() == *key)
            .ok_or_else(|| Error::Input(format!("no enumerated weight with Dynkin labels ({key})")))?;
        rec.multiplicity = m;
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct CollisionClass {
    #[serde(with = "crate::exactmath::text::rational")]
    pub a_squared: Rational,
    #[serde(with = "crate::exactmath::text::rational")]
    pub lambda: Rational,
    pub size: usize,
    /// Set for classes with two or more members.
    pub flagged: bool,
    pub nondual_pair_exists: bool,
    /// Dynkin labels of the members, in record order.
    pub members: Vec<String>,
    #[serde(skip)]
    pub records: Vec<WeightRecord>,
}

/// Group records by exact `a²`.
pub fn collisions(records: &[WeightRecord]) -> Vec<CollisionClass> {
    let mut groups: BTreeMap<Rational, Vec<WeightRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(r.a_squared.clone()).or_default().push(r.clone());
    }
    groups
        .into_iter()
        .map(|(a2, mut members)| {
            members.sort_by(|a, b| a.dynkin.cmp(&b.dynkin));
            let nondual = members.iter().enumerate().any(|(i, m)| {
                members[i + 1..]
                    .iter()
                    .any(|n| n.mu != m.mu && n.mu != m.dual_mu)
            });
            let lambda = members[0].lambda.clone();
            CollisionClass {
                a_squared: a2,
                lambda,
                size: members.len(),
                flagged: members.len() >= 2,
                nondual_pair_exists: nondual,
                members: members.iter().map(WeightRecord::label).collect(),
                records: members,
            }
        })
        .collect()
}
