use std::fmt;
use std::str::FromStr;

use super::RootSystem;
use crate::error::{Error, Result};
use crate::exactmath::text::{fmt_q, parse_q};
use crate::exactmath::{scale_vec, Field, Matrix};
use crate::{Rational, RationalVector};

/// A full-rank lattice in the span of the roots, given by a basis of
/// ambient vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    pub basis: Vec<RationalVector>,
    pub label: String,
    /// Ambient-by-rank matrix whose columns are the basis vectors.
    columns: Matrix<Rational>,
}

impl Lattice {
    pub fn new(basis: Vec<RationalVector>, label: impl Into<String>) -> Result<Self> {
        let columns = Matrix::from_columns(&basis)?;
        if columns.rank() != basis.len() {
            return Err(Error::Input("lattice basis vectors are linearly dependent".into()));
        }
        Ok(Lattice { basis, label: label.into(), columns })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` in the lattice basis, if `v` lies in its span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<RationalVector> {
        self.columns.solve_vec(v).ok().flatten()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v)
            .is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    pub fn point(&self, coords: &[Rational]) -> RationalVector {
        self.columns.mul_vec(coords).expect("rank-sized coordinates")
    }
}

/// `in_lattice(lat, v)`: integer combination test by exact solve.
pub fn in_lattice(lat: &Lattice, v: &[Rational]) -> bool {
    lat.contains(v)
}

/// How a lattice is specified relative to a root system.
#[derive(Clone, Debug, PartialEq, Eq)]
#[derive(Default)]
pub enum LatticeSpec {
    /// Weight lattice (simply connected group).
    #[default]
    Weight,
    Root,
    /// `k` times the weight lattice; `even` is `k = 2`.
    Scaled(u32),
    /// Basis vectors given by Dynkin labels (fundamental-weight coordinates).
    Dynkin(Vec<Vec<Rational>>),
}


impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeSpec::Weight => f.write_str("weight"),
            LatticeSpec::Root => f.write_str("root"),
            LatticeSpec::Scaled(2) => f.write_str("even"),
            LatticeSpec::Scaled(k) => write!(f, "scaled:{k}"),
            LatticeSpec::Dynkin(rows) => {
                let rows: Vec<String> = rows
                    .iter()
                    .map(|r| r.iter().map(fmt_q).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "basis:{}", rows.join(";"))
            }
        }
    }
}

impl FromStr for LatticeSpec {
    type Err = Error;

    /// `weight`, `root`, `even`, `scaled:k`, or `basis:1,0;0,2` (Dynkin rows).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "weight" => return Ok(LatticeSpec::Weight),
            "root" => return Ok(LatticeSpec::Root),
            "even" => return Ok(LatticeSpec::Scaled(2)),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("scaled:") {
            let k: u32 = k
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("bad lattice scale in {s:?}")))?;
            if k == 0 {
                return Err(Error::Input("lattice scale must be positive".into()));
            }
            return Ok(LatticeSpec::Scaled(k));
        }
        if let Some(rows) = s.strip_prefix("basis:") {
            let rows = rows
                .split(';')
                .map(|r| r.split(',').map(parse_q).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            return Ok(LatticeSpec::Dynkin(rows));
        }
        Err(Error::Input(format!("unknown lattice specification {s:?}")))
    }
}

impl LatticeSpec {
    pub fn realize(&self, rs: &RootSystem) -> Result<Lattice> {
        let label = self.to_string();
        let basis: Vec<RationalVector> = match self {
            LatticeSpec::Weight => rs.fundamental_weights().to_vec(),
            LatticeSpec::Root => rs.simple_roots().to_vec(),
            LatticeSpec::Scaled(k) => {
                let k = Rational::from_i64(*k as i64);
                rs.fundamental_weights().iter().map(|w| scale_vec(&k, w)).collect()
            }
            LatticeSpec::Dynkin(rows) => {
                if rows.len() != rs.rank() || rows.iter().any(|r| r.len() != rs.rank()) {
                    return Err(Error::Input(format!(
                        "lattice basis must be {r} rows of {r} Dynkin labels",
                        r = rs.rank()
                    )));
                }
                rows.iter().map(|r| rs.from_dynkin(r)).collect()
            }
        };
        Lattice::new(basis, label)
    }
}
