//! The quaternion group Q8, its character table, and the bookkeeping that
//! turns an eigenvalue multiplicity inside one isotypic component into the
//! complex (Q8 × G) and real G structure of the eigenspace.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::text::{rational_poly, GaussianText};
use crate::exactmath::{Field, Matrix};
use crate::reptype::RepType;
use crate::{Gaussian, GaussianMatrix, RationalPolynomial};

/// Element order used throughout: `1, -1, i, -i, j, -j, ij, -ij`.
pub const SYMBOLS: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "ij", "-ij"];

/// Quaternion units `1, i, j, k = ij` as indices 0..4; an element is
/// `(unit, negated)` and its index is `2*unit + negated`.
fn unit_product(a: usize, b: usize) -> (usize, bool) {
    const T: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    T[a][b]
}

fn mul_index(x: usize, y: usize) -> usize {
    let (u, neg) = unit_product(x / 2, y / 2);
    let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
    2 * u + usize::from(sign)
}

#[derive(Clone, Debug, Serialize)]
pub struct Character {
    pub name: String,
    pub degree: u32,
    /// Values on the conjugacy classes, in class order.
    pub values: Vec<GaussianText>,
    #[serde(skip)]
    pub exact: Vec<Gaussian>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Q8Group {
    pub elements: Vec<String>,
    /// `table[a][b]` is the index of `a*b`.
    pub table: Vec<Vec<usize>>,
    pub classes: Vec<Vec<String>>,
    pub class_sizes: Vec<usize>,
    pub characters: Vec<Character>,
    pub degrees: Vec<u32>,
    pub checks: Vec<String>,
}

fn gi(re: i64, im: i64) -> Gaussian {
    Gaussian::new(Field::from_i64(re), Field::from_i64(im))
}

/// `i^e` for a residue `e` mod 4.
fn root_of_unity(e: u8) -> Gaussian {
    match e % 4 {
        0 => gi(1, 0),
        1 => gi(0, 1),
        2 => gi(-1, 0),
        _ => gi(0, -1),
    }
}

/// The left action of the quaternions on themselves, as 2×2 complex matrices.
fn two_dim_matrix(x: usize) -> GaussianMatrix {
    let z = gi(0, 0);
    let base = match x / 2 {
        0 => [gi(1, 0), z.clone(), z.clone(), gi(1, 0)],
        1 => [gi(0, 1), z.clone(), z.clone(), gi(0, -1)],
        2 => [z.clone(), gi(1, 0), gi(-1, 0), z.clone()],
        _ => [z.clone(), gi(0, 1), gi(0, 1), z.clone()],
    };
    let m = Matrix::from_rows(vec![base[..2].to_vec(), base[2..].to_vec()]).expect("2x2");
    if x % 2 == 1 {
        -&m
    } else {
        m
    }
}

fn invariant(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvariantViolation(format!("Q8: {what}")))
    }
}

/// Build Q8 and verify it by brute force: group axioms, conjugacy classes,
/// linear characters (all homomorphisms into the 4th roots of unity), the
/// 2-dimensional representation, and both orthogonality relations.
pub fn build_q8() -> Result<Q8Group> {
    let n = 8;
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul_index(a, b)).collect()).collect();
    let mut checks = Vec::new();

    invariant((0..n).all(|a| table[0][a] == a && table[a][0] == a), "identity")?;
    invariant(
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| table[table[a][b]][c] == table[a][table[b][c]]))),
        "associativity",
    )?;
    let inverse: Vec<usize> = (0..n)
        .map(|a| (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvariantViolation("Q8: inverses".into()))?;
    invariant(table[2][4] == 6 && table[4][2] == 7, "quaternion relations")?;
    checks.push("group axioms (identity, associativity, inverses)".to_string());

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let class: BTreeSet<usize> = (0..n).map(|g| table[table[g][x]][inverse[g]]).collect();
        for &y in &class {
            class_of[y] = classes.len();
        }
        classes.push(class.into_iter().collect());
    }
    invariant(classes.len() == 5, "five conjugacy classes")?;
    checks.push("5 conjugacy classes".to_string());

    let mut characters = Vec::new();
    // Homomorphisms into Z/4, written additively.
    let mut assignment = [0u8; 8];
    loop {
        let hom = (0..n).all(|a| (0..n).all(|b| (assignment[a] + assignment[b]) % 4 == assignment[table[a][b]]));
        if hom {
            let exact: Vec<Gaussian> = classes.iter().map(|c| root_of_unity(assignment[c[0]])).collect();
            characters.push((assignment, exact));
        }
        let mut k = 0;
        while k < n {
            assignment[k] += 1;
            if assignment[k] < 4 {
                break;
            }
            assignment[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    invariant(characters.len() == 4, "four linear characters")?;
    let mut chars: Vec<Character> = characters
        .into_iter()
        .map(|(a, exact)| {
            let name = match (a[2] == 0, a[4] == 0) {
                (true, true) => "trivial",
                (true, false) => "chi_i",
                (false, true) => "chi_j",
                (false, false) => "chi_ij",
            };
            Character {
                name: name.to_string(),
                degree: 1,
                values: exact.iter().map(GaussianText::from_value).collect(),
                exact,
            }
        })
        .collect();
    chars.sort_by_key(|c| ["trivial", "chi_i", "chi_j", "chi_ij"].iter().position(|n| *n == c.name));

    let mats: Vec<GaussianMatrix> = (0..n).map(two_dim_matrix).collect();
    invariant(
        (0..n).all(|a| (0..n).all(|b| &mats[a] * &mats[b] == mats[table[a][b]])),
        "2-dimensional representation is a homomorphism",
    )?;
    let exact: Vec<Gaussian> = classes.iter().map(|c| mats[c[0]].trace()).collect();
    chars.push(Character {
        name: "H".to_string(),
        degree: 2,
        values: exact.iter().map(GaussianText::from_value).collect(),
        exact,
    });

    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    let order: Gaussian = Field::from_i64(n as i64);
    for (a, ca) in chars.iter().enumerate() {
        for (b, cb) in chars.iter().enumerate() {
            let mut s = Gaussian::zero();
            for (k, size) in sizes.iter().enumerate() {
                s += ca.exact[k].clone() * Field::conj(&cb.exact[k]) * <Gaussian as Field>::from_i64(*size as i64);
            }
            let want = if a == b { order.clone() } else { Gaussian::zero() };
            invariant(s == want, "row orthogonality")?;
        }
    }
    for k in 0..classes.len() {
        for l in 0..classes.len() {
            let s = chars
                .iter()
                .fold(Gaussian::zero(), |acc, c| acc + c.exact[k].clone() * Field::conj(&c.exact[l]));
            let want = if k == l {
                Gaussian::new(num_rational::BigRational::new((n as i64).into(), (sizes[k] as i64).into()), Zero::zero())
            } else {
                Gaussian::zero()
            };
            invariant(s == want, "column orthogonality")?;
        }
    }
    checks.push("character orthogonality (rows and columns)".to_string());

    let mut degrees: Vec<u32> = chars.iter().map(|c| c.degree).collect();
    degrees.sort_unstable();
    invariant(degrees.iter().map(|d| d * d).sum::<u32>() == n as u32, "degrees squared sum to |Q8|")?;
    invariant(degrees.iter().filter(|&&d| d == 2).count() == 1, "unique 2-dimensional irreducible")?;
    checks.push("degrees (1,1,1,1,2)".to_string());

    Ok(Q8Group {
        elements: SYMBOLS.iter().map(|s| s.to_string()).collect(),
        table,
        classes: classes.iter().map(|c| c.iter().map(|&i| SYMBOLS[i].to_string()).collect()).collect(),
        class_sizes: sizes,
        characters: chars,
        degrees,
        checks,
    })
}

impl Q8Group {
    pub fn multiply(&self, a: &str, b: &str) -> Option<&str> {
        let ia = SYMBOLS.iter().position(|s| *s == a)?;
        let ib = SYMBOLS.iter().position(|s| *s == b)?;
        Some(SYMBOLS[self.table[ia][ib]])
    }

    pub fn character(&self, name: &str) -> Option<&Character> {
        self.characters.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenspaceAssembly {
    pub rep_type: RepType,
    pub multiplicity: u32,
    pub complex_structure: String,
    pub real_structure: String,
    /// Number of irreducible (Q8 × G)-summands.
    pub complex_exponent: u32,
    /// Number of irreducible real G-summands.
    pub real_exponent: u32,
    /// Complex dimension of the complex structure, in units of `dim V`.
    pub complex_dim_per_dim_v: u32,
    /// Real dimension of the real structure, in units of `dim V`.
    pub real_dim_per_dim_v: u32,
}

/// Structure of an eigenspace of multiplicity `m` inside the isotypic
/// component of an irreducible `V` of the given type.
pub fn assemble(rep_type: RepType, m: u32) -> Result<EigenspaceAssembly> {
    if m == 0 {
        return Err(Error::Input("eigenvalue multiplicity must be positive".into()));
    }
    let (complex_summand, complex_exponent, real_exponent) = match rep_type {
        RepType::Real => ("V", m, m),
        RepType::Complex => ("(ℍ⊗V)", m, m),
        RepType::Quaternionic => {
            if !m.is_multiple_of(2) {
                return Err(Error::InvariantViolation(format!(
                    "quaternionic eigenspaces are J-invariant and need even multiplicity, got {m}"
                )));
            }
            ("(ℍ⊗V)", m / 2, m / 2)
        }
    };
    // dim_C(ℍ⊗V) = 2 dim V; dim_R(V_ℝ) = dim V for real type, 2 dim V otherwise.
    let complex_unit = if complex_summand == "V" { 1 } else { 2 };
    let real_unit = if rep_type == RepType::Real { 1 } else { 2 };
    let a = EigenspaceAssembly {
        rep_type,
        multiplicity: m,
        complex_structure: format!("{complex_summand}^{{⊕{complex_exponent}}}"),
        real_structure: format!("V_ℝ^{{⊕{real_exponent}}}"),
        complex_exponent,
        real_exponent,
        complex_dim_per_dim_v: complex_unit * complex_exponent,
        real_dim_per_dim_v: real_unit * real_exponent,
    };
    if a.complex_dim_per_dim_v != a.real_dim_per_dim_v {
        return Err(Error::InvariantViolation(format!(
            "dimension mismatch between complex and real assembly for ({rep_type}, {m})"
        )));
    }
    Ok(a)
}

/// Distinct eigenvalues sharing one multiplicity, given as the roots of a
/// squarefree rational polynomial (a rational eigenvalue `q` is `t - q`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralFactor {
    #[serde(with = "rational_poly")]
    pub factor: RationalPolynomial,
    pub multiplicity: u32,
}

impl SpectralFactor {
    pub fn rational(value: crate::Rational, multiplicity: u32) -> Self {
        SpectralFactor { factor: RationalPolynomial::linear_factor(value), multiplicity }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepSpectrum {
    pub label: String,
    #[serde(rename = "type")]
    pub rep_type: RepType,
    /// Label of the dual representation when it is a different entry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<String>,
    pub eigenvalues: Vec<SpectralFactor>,
}

impl RepSpectrum {
    /// Spectrum of an operator from its characteristic polynomial, via the
    /// squarefree decomposition.
    pub fn from_char_poly(label: impl Into<String>, rep_type: RepType, p: &RationalPolynomial) -> Result<Self> {
        let parts = p.squarefree_decomposition()?;
        let eigenvalues = parts
            .into_iter()
            .enumerate()
            .filter(|(_, f)| !f.is_constant())
            .map(|(i, f)| SpectralFactor { factor: f.monic(), multiplicity: i as u32 + 1 })
            .collect();
        Ok(RepSpectrum { label: label.into(), rep_type, dual: None, eigenvalues })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SharedEigenvalue {
    pub reps: (String, String),
    #[serde(with = "rational_poly")]
    pub common_factor: RationalPolynomial,
    pub dual_pair: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepVerdict {
    pub label: String,
    #[serde(rename = "type")]
    pub rep_type: RepType,
    pub assemblies: Vec<EigenspaceAssembly>,
    pub real_simple: bool,
    pub complex_simple: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityVerdict {
    #[serde(rename = "real_G_simple")]
    pub real_g_simple: bool,
    #[serde(rename = "complex_Q8xG_simple")]
    pub complex_q8xg_simple: bool,
    pub per_rep: Vec<RepVerdict>,
    pub shared: Vec<SharedEigenvalue>,
}

fn validate(spectra: &[RepSpectrum]) -> Result<BTreeMap<&str, &RepSpectrum>> {
    let mut by_label = BTreeMap::new();
    for r in spectra {
        if by_label.insert(r.label.as_str(), r).is_some() {
            return Err(Error::Input(format!("duplicate representation label {:?}", r.label)));
        }
    }
    for r in spectra {
        if let Some(d) = &r.dual {
            if r.rep_type != RepType::Complex {
                return Err(Error::Input(format!("{:?} is self-dual by type but declares dual {d:?}", r.label)));
            }
            if d == &r.label {
                return Err(Error::Input(format!("{:?} is of complex type and cannot be its own dual", r.label)));
            }
            if let Some(other) = by_label.get(d.as_str()) {
                if other.dual.as_deref().is_some_and(|x| x != r.label) || other.rep_type != RepType::Complex {
                    return Err(Error::Input(format!("inconsistent dual declaration between {:?} and {d:?}", r.label)));
                }
            }
        }
        for f in &r.eigenvalues {
            if f.multiplicity == 0 || f.factor.is_constant() {
                return Err(Error::Input(format!("malformed eigenvalue entry in {:?}", r.label)));
            }
            if f.factor.derivative(1).gcd(&f.factor).degree() != Some(0) {
                return Err(Error::Input(format!("eigenvalue factor in {:?} is not squarefree", r.label)));
            }
        }
        for (a, fa) in r.eigenvalues.iter().enumerate() {
            for fb in &r.eigenvalues[a + 1..] {
                if fa.factor.gcd(&fb.factor).degree() != Some(0) {
                    return Err(Error::Input(format!(
                        "eigenvalue listed twice in {:?}; merge multiplicities",
                        r.label
                    )));
                }
            }
        }
    }
    Ok(by_label)
}

fn are_dual(a: &RepSpectrum, b: &RepSpectrum) -> bool {
    a.dual.as_deref() == Some(b.label.as_str()) || b.dual.as_deref() == Some(a.label.as_str())
}

/// Decide real G-simplicity and complex (Q8 × G)-simplicity of an operator
/// from its per-representation spectra. The two verdicts are derived
/// separately, one from the complex assembly and one from the real assembly,
/// and must agree.
pub fn simplicity_dictionary(spectra: &[RepSpectrum]) -> Result<SimplicityVerdict> {
    validate(spectra)?;
    let mut shared = Vec::new();
    for (i, a) in spectra.iter().enumerate() {
        for b in &spectra[i + 1..] {
            for fa in &a.eigenvalues {
                for fb in &b.eigenvalues {
                    let g = fa.factor.gcd(&fb.factor);
                    if g.degree().unwrap_or(0) > 0 {
                        shared.push(SharedEigenvalue {
                            reps: (a.label.clone(), b.label.clone()),
                            common_factor: g,
                            dual_pair: are_dual(a, b),
                        });
                    }
                }
            }
        }
    }
    let foreign_sharing = shared.iter().any(|s| !s.dual_pair);

    let mut per_rep = Vec::new();
    for r in spectra {
        let assemblies = r
            .eigenvalues
            .iter()
            .map(|f| assemble(r.rep_type, f.multiplicity))
            .collect::<Result<Vec<_>>>()?;
        per_rep.push(RepVerdict {
            label: r.label.clone(),
            rep_type: r.rep_type,
            real_simple: assemblies.iter().all(|a| a.real_exponent == 1),
            complex_simple: assemblies.iter().all(|a| a.complex_exponent == 1),
            assemblies,
        });
    }
    let real = !foreign_sharing && per_rep.iter().all(|r| r.real_simple);
    let complex = !foreign_sharing && per_rep.iter().all(|r| r.complex_simple);
    if real != complex {
        return Err(Error::InvariantViolation(
            "real G-simplicity and complex (Q8 × G)-simplicity disagree".into(),
        ));
    }
    Ok(SimplicityVerdict { real_g_simple: real, complex_q8xg_simple: complex, per_rep, shared })
}

impl Character {
    pub fn value_at(&self, class: usize) -> &Gaussian {
        &self.exact[class]
    }
}
