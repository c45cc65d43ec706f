//! Exhaustive scan of lattice points `μ` with `(μ+δ, μ+δ) <= R`.
//!
//! Write `μ + δ = Σ y_i b_i` in the lattice basis `b`. With `Q_ij = (b_i, b_j)`
//! Cauchy-Schwarz in the dual basis gives `y_i^2 <= R (Q^{-1})_ii`, so every
//! solution lies in the integer box
//! `n_i ∈ [-c_i - s_i, -c_i + s_i]` with `δ = Σ c_i b_i` and
//! `s_i = floor(sqrt(R (Q^{-1})_ii)) + 1`. Inside the box, coordinates are
//! fixed one at a time from an exact `Q = Uᵀ D U` factorization, pruning
//! every partial assignment whose contribution already exceeds `R`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::text::fmt_q;
use crate::exactmath::{add_vec, floor_sqrt, Matrix};
use crate::rootsystem::{Lattice, RootSystem};
use crate::{Rational, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxBound {
    /// Inclusive integer ranges for each lattice coordinate.
    pub ranges: Vec<(String, String)>,
    pub points_scanned: u64,
    pub argument: String,
}

#[derive(Clone, Debug)]
pub struct ScannedPoint {
    pub coords: Vec<BigInt>,
    pub mu: RationalVector,
    pub a_squared: Rational,
}

pub enum Radius<'a> {
    AtMost(&'a Rational),
    Exactly(&'a Rational),
}

pub fn scan(rs: &RootSystem, lat: &Lattice, radius: Radius<'_>) -> Result<(Vec<ScannedPoint>, BoxBound)> {
    scan_with(rs, lat, radius, false)
}

/// Dominant weights only: scans the weight lattice with every Dynkin label
/// nonnegative.
pub fn scan_dominant(rs: &RootSystem, radius: Radius<'_>) -> Result<(Vec<ScannedPoint>, BoxBound)> {
    let weight = crate::rootsystem::LatticeSpec::Weight.realize(rs)?;
    scan_with(rs, &weight, radius, true)
}

fn scan_with(
    rs: &RootSystem,
    lat: &Lattice,
    radius: Radius<'_>,
    nonnegative: bool,
) -> Result<(Vec<ScannedPoint>, BoxBound)> {
    let r2 = match radius {
        Radius::AtMost(r) | Radius::Exactly(r) => r.clone(),
    };
    if lat.rank() != rs.rank() {
        return Err(Error::Input(format!(
            "lattice rank {} differs from root-system rank {}",
            lat.rank(),
            rs.rank()
        )));
    }
    let n = lat.rank();
    let gram = Matrix::from_rows(
        lat.basis
            .iter()
            .map(|a| lat.basis.iter().map(|b| rs.inner(a, b)).collect())
            .collect(),
    )?;
    let ginv = gram.inverse()?;
    let c = lat.coordinates(rs.delta()).ok_or_else(|| {
        Error::InvariantViolation("delta is outside the span of the lattice".into())
    })?;

    let mut ranges = Vec::with_capacity(n);
    for i in 0..n {
        let bound = if r2 < Rational::from_integer(0.into()) {
            Rational::from_integer(0.into())
        } else {
            r2.clone() * ginv[(i, i)].clone()
        };
        let s = Rational::from_integer(floor_sqrt(&bound)? + 1);
        let lo = (-c[i].clone() - s.clone()).floor().to_integer();
        let hi = (-c[i].clone() + s).ceil().to_integer();
        let lo = if nonnegative { lo.max(BigInt::from(0)) } else { lo };
        ranges.push((lo, hi));
    }

    let mut out = Vec::new();
    let mut scanned: u64 = 0;
    if r2 >= Rational::from_integer(0.into()) {
        let (d, u) = ldl(&gram)?;
        let mut cur: Vec<BigInt> = vec![BigInt::from(0); n];
        let mut y: RationalVector = vec![Rational::from_integer(0.into()); n];
        let mut ctx = Walk { d: &d, u: &u, c: &c, ranges: &ranges, r2: &r2, radius: &radius, visited: 0 };
        descend(&mut ctx, n, &Rational::from_integer(0.into()), &mut cur, &mut y, &mut |cur, a2| {
            let coords: RationalVector = cur.iter().map(|k| Rational::from_integer(k.clone())).collect();
            out.push(ScannedPoint { coords: cur.to_vec(), mu: lat.point(&coords), a_squared: a2 });
        })?;
        scanned = ctx.visited;
    }

    let argument = format!(
        "with mu+delta = sum y_i b_i and Q the lattice Gram matrix, y_i^2 <= R*(Q^-1)_ii (R = {}), \
         so all solutions lie in the integer box; inside it the search is pruned exactly via Q = U^T D U",
        fmt_q(&r2)
    );
    let bound = BoxBound {
        ranges: ranges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        points_scanned: scanned,
        argument,
    };
    Ok((out, bound))
}

/// `Q = Uᵀ diag(d) U` with `U` unit upper triangular, so
/// `yᵀQy = Σ_k d_k (y_k + Σ_{j>k} U_kj y_j)²`.
fn ldl(q: &Matrix<Rational>) -> Result<(RationalVector, Matrix<Rational>)> {
    let n = q.rows();
    let mut d = vec![Rational::from_integer(0.into()); n];
    let mut u: Matrix<Rational> = Matrix::identity(n);
    for i in 0..n {
        let mut di = q[(i, i)].clone();
        for k in 0..i {
            di -= d[k].clone() * u[(k, i)].clone() * u[(k, i)].clone();
        }
        if di <= Rational::from_integer(0.into()) {
            return Err(Error::InvariantViolation("lattice Gram matrix is not positive definite".into()));
        }
        for j in i + 1..n {
            let mut v = q[(i, j)].clone();
            for k in 0..i {
                v -= d[k].clone() * u[(k, i)].clone() * u[(k, j)].clone();
            }
            u[(i, j)] = v / di.clone();
        }
        d[i] = di;
    }
    Ok((d, u))
}

struct Walk<'a> {
    d: &'a [Rational],
    u: &'a Matrix<Rational>,
    c: &'a [Rational],
    ranges: &'a [(BigInt, BigInt)],
    r2: &'a Rational,
    radius: &'a Radius<'a>,
    visited: u64,
}

/// Fix coordinates from the last index down; `level` coordinates remain.
/// `partial` is the contribution of the already-fixed terms.
fn descend(
    w: &mut Walk<'_>,
    level: usize,
    partial: &Rational,
    cur: &mut Vec<BigInt>,
    y: &mut RationalVector,
    emit: &mut dyn FnMut(&[BigInt], Rational),
) -> Result<()> {
    if level == 0 {
        w.visited += 1;
        let keep = match w.radius {
            Radius::AtMost(r) => partial <= *r,
            Radius::Exactly(r) => partial == *r,
        };
        if keep {
            emit(cur, partial.clone());
        }
        return Ok(());
    }
    let i = level - 1;
    let n = cur.len();
    // y_i + center must satisfy d_i (y_i + center)^2 <= R - partial.
    let mut center = Rational::from_integer(0.into());
    for j in i + 1..n {
        center += w.u[(i, j)].clone() * y[j].clone();
    }
    let rem = w.r2.clone() - partial.clone();
    let s = Rational::from_integer(floor_sqrt(&(rem / w.d[i].clone()))? + 1);
    let lo = (-center.clone() - s.clone() - w.c[i].clone()).floor().to_integer().max(w.ranges[i].0.clone());
    let hi = (-center.clone() + s - w.c[i].clone()).ceil().to_integer().min(w.ranges[i].1.clone());
    let mut k = lo;
    while k <= hi {
        let yi = Rational::from_integer(k.clone()) + w.c[i].clone();
        let t = yi.clone() + center.clone();
        let next = partial.clone() + w.d[i].clone() * t.clone() * t;
        if &next <= w.r2 {
            cur[i] = k.clone();
            y[i] = yi;
            descend(w, i, &next, cur, y, emit)?;
        }
        k += 1;
    }
    Ok(())
}

/// Shift a lattice point to the sphere-centered frame.
pub fn shifted(rs: &RootSystem, mu: &[Rational]) -> RationalVector {
    add_vec(mu, rs.delta())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::LatticeSpec;

    /// Brute-force reference: a much larger box with no bound reasoning.
    fn brute(rs: &RootSystem, lat: &Lattice, r2: &Rational, half_width: i64) -> Vec<RationalVector> {
        let n = lat.rank();
        let mut out = Vec::new();
        let mut cur = vec![-half_width; n];
        loop {
            let coords: RationalVector = cur.iter().map(|&k| Rational::from_integer(k.into())).collect();
            let mu = lat.point(&coords);
            if rs.norm2(&shifted(rs, &mu)) <= *r2 {
                out.push(mu);
            }
            let mut i = 0;
            while i < n {
                if cur[i] < half_width {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -half_width;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        out.sort();
        out
    }

    #[test]
    fn scan_is_complete_against_wide_brute_force() {
        for (s, r2) in [("A2", 20), ("B2", 15), ("G2", 12), ("C2", 9)] {
            let rs = RootSystem::build(s.parse().unwrap()).unwrap();
            let lat = LatticeSpec::Weight.realize(&rs).unwrap();
            let r2 = Rational::from_integer(r2.into());
            let (pts, _) = scan(&rs, &lat, Radius::AtMost(&r2)).unwrap();
            let mut got: Vec<_> = pts.into_iter().map(|p| p.mu).collect();
            got.sort();
            assert_eq!(got, brute(&rs, &lat, &r2, 14), "{s}");
        }
    }

    #[test]
    fn negative_radius_scans_nothing() {
        let rs = RootSystem::build("A1".parse().unwrap()).unwrap();
        let lat = LatticeSpec::Weight.realize(&rs).unwrap();
        let r2 = Rational::from_integer((-1).into());
        assert!(scan(&rs, &lat, Radius::AtMost(&r2)).unwrap().0.is_empty());
    }
}
