//! Lattice points on the sphere `S(a)` centered at `-δ`, and the finite group
//! of orthogonal maps of the re-centered space that permute them.
//!
//! Points are handled in two frames: `raw` (the weight μ) and `shifted`
//! (`μ + δ`, i.e. μ seen from the center `-δ`). Translation by δ is the
//! linear isometry between the frames, so the shifted Weyl action is
//! `w̃(μ) = w(μ + δ) - δ`. Group elements are stored as matrices acting on
//! the Dynkin coordinates of shifted points.

use std::collections::{BTreeSet, HashMap};

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::text::fmt_q;
use crate::exactmath::{add_vec, sub_vec, Matrix};
use crate::latscan::{self, Radius};
use crate::rootsystem::{weyl_group, Lattice, RootSystem, WeylElement};
use crate::spectrum::fmt_dynkin;
use crate::{Rational, RationalMatrix, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedPoint {
    pub raw: RationalVector,
    pub shifted: RationalVector,
    pub raw_dynkin: RationalVector,
    pub shifted_dynkin: RationalVector,
}

#[derive(Clone, Debug)]
pub struct SphereSet {
    pub a_squared: Rational,
    pub lattice_label: String,
    pub points: Vec<ShiftedPoint>,
    pub spans_ambient: bool,
}

impl SphereSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn raw_labels(&self) -> Vec<String> {
        self.points.iter().map(|p| fmt_dynkin(&p.raw_dynkin)).collect()
    }

    fn index(&self) -> HashMap<RationalVector, usize> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.shifted_dynkin.clone(), i))
            .collect()
    }
}

/// Hard precondition for everything in this module: δ must be a lattice point.
pub fn ensure_delta_in_lattice(rs: &RootSystem, lattice: &Lattice) -> Result<()> {
    if lattice.contains(rs.delta()) {
        Ok(())
    } else {
        Err(Error::DeltaNotInLattice(lattice.label.clone()))
    }
}

/// `S(a)`: every lattice point μ (dominant or not) with `(μ+δ, μ+δ) = a²`.
pub fn sphere_points(rs: &RootSystem, lattice: &Lattice, a_squared: &Rational) -> Result<SphereSet> {
    ensure_delta_in_lattice(rs, lattice)?;
    if !a_squared.is_positive() {
        return Err(Error::Domain(format!(
            "sphere radius must be positive (a > 0), got a^2 = {}",
            fmt_q(a_squared)
        )));
    }
    let (found, _) = latscan::scan(rs, lattice, Radius::Exactly(a_squared))?;
    let mut points: Vec<ShiftedPoint> = found
        .into_iter()
        .map(|p| {
            let shifted = add_vec(&p.mu, rs.delta());
            ShiftedPoint {
                raw_dynkin: rs.dynkin_labels(&p.mu),
                shifted_dynkin: rs.dynkin_labels(&shifted),
                raw: p.mu,
                shifted,
            }
        })
        .collect();
    points.sort_by(|a, b| a.raw_dynkin.cmp(&b.raw_dynkin));
    let rank = if points.is_empty() {
        0
    } else {
        Matrix::from_columns(&points.iter().map(|p| p.shifted_dynkin.clone()).collect::<Vec<_>>())?.rank()
    };
    Ok(SphereSet {
        a_squared: a_squared.clone(),
        lattice_label: lattice.label.clone(),
        points,
        spans_ambient: rank == rs.rank(),
    })
}

/// `w̃(μ) = w(μ + δ) - δ`
pub fn shifted_weyl_action(rs: &RootSystem, w: &WeylElement, mu: &[Rational]) -> RationalVector {
    sub_vec(&w.apply(&add_vec(mu, rs.delta())), rs.delta())
}

#[derive(Clone, Debug)]
pub struct SymmetryElement {
    /// Action on Dynkin coordinates of shifted points.
    pub matrix: RationalMatrix,
    /// `permutation[i]` is the index of the image of point `i`.
    pub permutation: Vec<usize>,
    pub preserves_lattice: bool,
    /// True when the element is the shifted action of some Weyl group element.
    pub from_weyl: bool,
}

#[derive(Clone, Debug)]
pub struct SphereSymmetryGroup {
    pub elements: Vec<SymmetryElement>,
    pub order: usize,
    pub orbits: Vec<Vec<usize>>,
    pub transitive: bool,
    /// Indices of the points used as a basis.
    pub basis: Vec<usize>,
    pub candidates_examined: u64,
}

impl SphereSymmetryGroup {
    pub fn lattice_preserving_count(&self) -> usize {
        self.elements.iter().filter(|e| e.preserves_lattice).count()
    }

    pub fn weyl_count(&self) -> usize {
        self.elements.iter().filter(|e| e.from_weyl).count()
    }
}

pub const DEFAULT_MAX_CANDIDATES: u64 = 5_000_000;

pub fn symmetry_group(rs: &RootSystem, lattice: &Lattice, ss: &SphereSet) -> Result<SphereSymmetryGroup> {
    symmetry_group_bounded(rs, lattice, ss, DEFAULT_MAX_CANDIDATES)
}

/// Matrix of the Gram form in Dynkin coordinates, `(ω_i, ω_j)`.
fn dynkin_gram(rs: &RootSystem) -> RationalMatrix {
    let w = rs.fundamental_weights();
    let rows = w.iter().map(|a| w.iter().map(|b| rs.inner(a, b)).collect()).collect();
    Matrix::from_rows(rows).expect("square")
}

/// A Weyl element written in Dynkin coordinates.
fn weyl_in_dynkin(rs: &RootSystem, w: &WeylElement) -> RationalMatrix {
    let cols: Vec<RationalVector> = rs
        .fundamental_weights()
        .iter()
        .map(|om| rs.dynkin_labels(&w.apply(om)))
        .collect();
    Matrix::from_columns(&cols).expect("rank columns")
}

/// The full group `O(ã)_{S(a)}`.
///
/// A basis β of shifted points is fixed (first spanning subset in sorted
/// order). Any isometry permuting the points sends β to a tuple of points
/// with the same Gram matrix, so a backtracking search over such tuples,
/// followed by the unique linear extension and a permutation check, finds
/// every element.
pub fn symmetry_group_bounded(
    rs: &RootSystem,
    lattice: &Lattice,
    ss: &SphereSet,
    max_candidates: u64,
) -> Result<SphereSymmetryGroup> {
    ensure_delta_in_lattice(rs, lattice)?;
    let r = rs.rank();
    let pts: Vec<&RationalVector> = ss.points.iter().map(|p| &p.shifted_dynkin).collect();
    let n = pts.len();
    if !ss.spans_ambient {
        let rank = if n == 0 { 0 } else { Matrix::from_columns(&pts.iter().map(|p| (*p).clone()).collect::<Vec<_>>())?.rank() };
        return Err(Error::NotSpanning { rank, dim: r });
    }
    let g = dynkin_gram(rs);
    let ip = |a: &[Rational], b: &[Rational]| crate::exactmath::gram_form(&g, a, b);
    let gram: Vec<Vec<Rational>> = pts.iter().map(|a| pts.iter().map(|b| ip(a, b)).collect()).collect();

    let mut basis = Vec::new();
    for i in 0..n {
        let mut cand: Vec<RationalVector> = basis.iter().map(|&j: &usize| pts[j].clone()).collect();
        cand.push(pts[i].clone());
        if Matrix::from_columns(&cand)?.rank() == cand.len() {
            basis.push(i);
            if basis.len() == r {
                break;
            }
        }
    }
    let b_mat = Matrix::from_columns(&basis.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>())?;
    let b_inv = b_mat.inverse()?;
    let index = ss.index();

    let lat_cols: Vec<RationalVector> = lattice.basis.iter().map(|v| rs.dynkin_labels(v)).collect();
    let lat_mat = Matrix::from_columns(&lat_cols)?;
    let lat_inv = lat_mat.inverse()?;

    let weyl: BTreeSet<Vec<Rational>> = weyl_group(rs)?
        .iter()
        .map(|w| weyl_in_dynkin(rs, w).entries().to_vec())
        .collect();

    let mut elements = Vec::new();
    let mut examined: u64 = 0;
    let mut tuple: Vec<usize> = Vec::with_capacity(r);
    // Explicit stack of next-candidate positions per depth.
    let mut next = vec![0usize; r + 1];
    let mut depth = 0;
    loop {
        if depth == r {
            examined += 1;
            if examined > max_candidates {
                return Err(Error::Capacity(format!(
                    "symmetry search examined more than {max_candidates} candidate tuples"
                )));
            }
            let img = Matrix::from_columns(&tuple.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>())?;
            let m = &img * &b_inv;
            if &(&m.transpose() * &g) * &m == g {
                let perm: Option<Vec<usize>> = pts
                    .iter()
                    .map(|p| m.mul_vec(p).ok().and_then(|v| index.get(&v).copied()))
                    .collect();
                if let Some(perm) = perm {
                    let conj = &(&lat_inv * &m) * &lat_mat;
                    let preserves_lattice = conj.entries().iter().all(|x| x.is_integer());
                    let from_weyl = weyl.contains(m.entries());
                    elements.push(SymmetryElement { matrix: m, permutation: perm, preserves_lattice, from_weyl });
                }
            }
            depth -= 1;
            tuple.pop();
            continue;
        }
        let start = next[depth];
        let found = (start..n).find(|&j| {
            gram[j][j] == gram[basis[depth]][basis[depth]]
                && tuple
                    .iter()
                    .enumerate()
                    .all(|(l, &t)| gram[j][t] == gram[basis[depth]][basis[l]])
        });
        match found {
            Some(j) => {
                next[depth] = j + 1;
                tuple.push(j);
                depth += 1;
                next[depth] = 0;
            }
            None => {
                if depth == 0 {
                    break;
                }
                depth -= 1;
                tuple.pop();
            }
        }
    }

    check_group(&elements)?;
    let orbits = orbits(n, &elements);
    Ok(SphereSymmetryGroup {
        order: elements.len(),
        transitive: orbits.len() == 1,
        orbits,
        elements,
        basis,
        candidates_examined: examined,
    })
}

fn check_group(elements: &[SymmetryElement]) -> Result<()> {
    let set: BTreeSet<Vec<Rational>> = elements.iter().map(|e| e.matrix.entries().to_vec()).collect();
    let Some(first) = elements.first() else {
        return Err(Error::InvariantViolation("symmetry group is empty".into()));
    };
    let id = RationalMatrix::identity(first.matrix.rows());
    if !set.contains(id.entries()) {
        return Err(Error::InvariantViolation("symmetry group lacks the identity".into()));
    }
    for a in elements {
        for b in elements {
            if !set.contains((&a.matrix * &b.matrix).entries()) {
                return Err(Error::InvariantViolation("symmetry group is not closed".into()));
            }
        }
        if !set.contains(a.matrix.inverse()?.entries()) {
            return Err(Error::InvariantViolation("symmetry group lacks an inverse".into()));
        }
    }
    Ok(())
}

fn orbits(n: usize, elements: &[SymmetryElement]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let orbit: BTreeSet<usize> = elements.iter().map(|e| e.permutation[start]).collect();
        for &i in &orbit {
            seen[i] = true;
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainmentViolation {
    pub word: Vec<usize>,
    pub point: String,
    pub image: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylContainment {
    pub holds: bool,
    pub weyl_order: usize,
    pub violations: Vec<ContainmentViolation>,
}

/// Check that every shifted Weyl element maps `S(a)` into itself.
pub fn verify_weyl_containment(rs: &RootSystem, ss: &SphereSet) -> Result<WeylContainment> {
    let group = weyl_group(rs)?;
    let members: BTreeSet<&RationalVector> = ss.points.iter().map(|p| &p.raw).collect();
    let mut violations = Vec::new();
    for w in &group {
        for p in &ss.points {
            let img = shifted_weyl_action(rs, w, &p.raw);
            if !members.contains(&img) {
                violations.push(ContainmentViolation {
                    word: w.word.clone(),
                    point: fmt_dynkin(&p.raw_dynkin),
                    image: fmt_dynkin(&rs.dynkin_labels(&img)),
                });
            }
        }
    }
    Ok(WeylContainment { holds: violations.is_empty(), weyl_order: group.len(), violations })
}
