//! Operator laboratory for SU(2).
//!
//! Basis of su(2): `u_k = i σ_k`, orthonormal for `g0(X, Y) = -tr(XY)/2`.
//! The irreducible representation of highest weight `m` acts on homogeneous
//! polynomials of degree `m` in `z1, z2` (basis `z1^(m-k) z2^k`) by
//! `ρ(X) f = Σ_{a,b} X_ba z_b ∂_a f`. A metric is encoded by a symmetric
//! 3×3 matrix κ and acts on `V` as `D(κ) = -Σ κ_ij ρ(u_i) ρ(u_j)`.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::text::{fmt_q, gaussian_matrix_text, matrix_text, poly_text, GaussianText};
use crate::exactmath::{is_perfect_square, real_polynomial, resultant, Field, Matrix};
use crate::q8::{simplicity_dictionary, RepSpectrum, SimplicityVerdict};
use crate::reptype::{self, RepType};
use crate::rootsystem::RootSystem;
use crate::spectrum::casimir;
use crate::{Gaussian, GaussianMatrix, Rational, RationalMatrix, RationalPolynomial};

pub const MAX_IRREP: u32 = 64;
pub const MAX_CERTIFY: u32 = 12;

fn g(re: i64, im: i64) -> Gaussian {
    Gaussian::new(Field::from_i64(re), Field::from_i64(im))
}

fn real(q: Rational) -> Gaussian {
    Gaussian::new(q, Rational::zero())
}

#[derive(Clone, Debug)]
pub struct Su2Basis {
    pub u: [GaussianMatrix; 3],
    /// `structure[a][b][c]`: coefficient of `u_c` in `[u_a, u_b]`.
    pub structure: [[[Rational; 3]; 3]; 3],
}

/// `g0(X, Y) = -tr(XY)/2`
pub fn g0(x: &GaussianMatrix, y: &GaussianMatrix) -> Gaussian {
    (x * y).trace() * real(Rational::new((-1).into(), 2.into()))
}

pub fn su2_basis() -> Result<Su2Basis> {
    let z = || g(0, 0);
    let u1 = Matrix::from_rows(vec![vec![z(), g(0, 1)], vec![g(0, 1), z()]])?;
    let u2 = Matrix::from_rows(vec![vec![z(), g(1, 0)], vec![g(-1, 0), z()]])?;
    let u3 = Matrix::from_rows(vec![vec![g(0, 1), z()], vec![z(), g(0, -1)]])?;
    let u = [u1, u2, u3];
    for a in 0..3 {
        for b in 0..3 {
            let want = if a == b { g(1, 0) } else { g(0, 0) };
            if g0(&u[a], &u[b]) != want {
                return Err(Error::InvariantViolation("su(2) basis is not g0-orthonormal".into()));
            }
        }
    }
    let mut structure: [[[Rational; 3]; 3]; 3] = Default::default();
    for a in 0..3 {
        for b in 0..3 {
            let br = u[a].commutator(&u[b])?;
            let mut rebuilt = GaussianMatrix::zeros(2, 2);
            for c in 0..3 {
                let coeff = g0(&br, &u[c]);
                if !coeff.im.is_zero() {
                    return Err(Error::InvariantViolation("non-real structure constant".into()));
                }
                rebuilt = &rebuilt + &u[c].scale(&coeff);
                structure[a][b][c] = coeff.re;
            }
            if rebuilt != br {
                return Err(Error::InvariantViolation("bracket leaves the span of the basis".into()));
            }
        }
    }
    Ok(Su2Basis { u, structure })
}

/// `ρ(X)` on degree-`m` homogeneous polynomials.
pub fn polynomial_action(x: &GaussianMatrix, m: u32) -> GaussianMatrix {
    let n = m as usize + 1;
    let mut out = GaussianMatrix::zeros(n, n);
    for k in 0..n {
        let mk: Gaussian = Field::from_i64((m as usize - k) as i64);
        let kk: Gaussian = Field::from_i64(k as i64);
        out[(k, k)] = x[(0, 0)].clone() * mk.clone() + x[(1, 1)].clone() * kk.clone();
        if k + 1 < n {
            out[(k + 1, k)] = x[(1, 0)].clone() * mk;
        }
        if k > 0 {
            out[(k - 1, k)] = x[(0, 1)].clone() * kk;
        }
    }
    out
}

/// Matrices of `ρ(u1), ρ(u2), ρ(u3)`, with the bracket relations checked.
pub fn irrep_matrices(m: u32) -> Result<[GaussianMatrix; 3]> {
    if m > MAX_IRREP {
        return Err(Error::Capacity(format!("irrep_matrices supports m <= {MAX_IRREP}")));
    }
    let basis = su2_basis()?;
    let rho = [
        polynomial_action(&basis.u[0], m),
        polynomial_action(&basis.u[1], m),
        polynomial_action(&basis.u[2], m),
    ];
    check_homomorphism(&basis, &rho)?;
    Ok(rho)
}

fn check_homomorphism(basis: &Su2Basis, rho: &[GaussianMatrix; 3]) -> Result<()> {
    let n = rho[0].rows();
    for a in 0..3 {
        for b in 0..3 {
            let lhs = rho[a].commutator(&rho[b])?;
            let mut rhs = GaussianMatrix::zeros(n, n);
            for c in 0..3 {
                rhs = &rhs + &rho[c].scale(&real(basis.structure[a][b][c].clone()));
            }
            if lhs != rhs {
                return Err(Error::InvariantViolation(format!(
                    "representation matrices for m = {} violate the bracket relations",
                    n - 1
                )));
            }
        }
    }
    Ok(())
}

/// Symmetric 3×3 metric parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaMatrix {
    pub entries: RationalMatrix,
    /// All leading principal minors positive.
    pub positive_definite: bool,
}

impl KappaMatrix {
    pub fn new(entries: RationalMatrix) -> Result<Self> {
        if entries.rows() != 3 || entries.cols() != 3 {
            return Err(Error::Dimension("kappa must be 3x3".into()));
        }
        if !entries.is_symmetric() {
            return Err(Error::Input("kappa must be symmetric".into()));
        }
        let positive_definite = (1..=3).all(|k| {
            let minor = Matrix::from_rows((0..k).map(|i| entries.row(i)[..k].to_vec()).collect())
                .and_then(|m| m.det())
                .expect("square minor");
            minor.is_positive()
        });
        Ok(KappaMatrix { entries, positive_definite })
    }

    pub fn identity() -> Self {
        KappaMatrix::new(RationalMatrix::identity(3)).expect("identity")
    }

    pub fn from_i64_rows(rows: [[i64; 3]; 3]) -> Result<Self> {
        let rows: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        KappaMatrix::new(Matrix::from_i64_rows(&rows)?)
    }

    pub fn text(&self) -> Vec<Vec<String>> {
        matrix_text(&self.entries)
    }
}

impl fmt::Display for KappaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .to_rows()
            .iter()
            .map(|r| r.iter().map(fmt_q).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join(";"))
    }
}

/// Type of the `(m+1)`-dimensional irreducible, from the A1 classifier.
pub fn rep_type(m: u32) -> Result<RepType> {
    let a1 = RootSystem::build("A1".parse()?)?;
    Ok(reptype::type_of(&a1, &a1.from_dynkin_i64(&[m as i64]))?.value)
}

#[derive(Clone, Debug)]
pub struct OperatorBundle {
    pub m: u32,
    pub rep_matrices: [GaussianMatrix; 3],
    pub kappa: KappaMatrix,
    pub d_matrix: GaussianMatrix,
    pub char_poly: RationalPolynomial,
    pub rep_type: RepType,
}

/// `-Σ_{i,j} κ_ij A_i A_j` for operators `A` indexed like the rows of κ.
fn quadratic_operator(kappa: &RationalMatrix, ops: &[&GaussianMatrix]) -> GaussianMatrix {
    let n = ops[0].rows();
    let mut d = GaussianMatrix::zeros(n, n);
    for (i, a) in ops.iter().enumerate() {
        for (j, b) in ops.iter().enumerate() {
            let k = &kappa[(i, j)];
            if !k.is_zero() {
                d = &d - &(*a * *b).scale(&real(k.clone()));
            }
        }
    }
    d
}

pub fn d_operator(kappa: &KappaMatrix, m: u32) -> Result<OperatorBundle> {
    let rho = irrep_matrices(m)?;
    let d = quadratic_operator(&kappa.entries, &[&rho[0], &rho[1], &rho[2]]);
    let char_poly = real_polynomial(&d.char_poly()?)?;
    Ok(OperatorBundle {
        m,
        rep_matrices: rho,
        kappa: kappa.clone(),
        d_matrix: d,
        char_poly,
        rep_type: rep_type(m)?,
    })
}

/// Basis of the joint kernel of `ρ(u_k)` for `k` in `generators` (indices 0..3).
pub fn invariant_subspace(generators: &[usize], m: u32) -> Result<Vec<Vec<Gaussian>>> {
    if generators.iter().any(|&k| k > 2) {
        return Err(Error::Input("generator indices are 0, 1, 2".into()));
    }
    let basis = su2_basis()?;
    let span: Vec<GaussianMatrix> = generators.iter().map(|&k| basis.u[k].clone()).collect();
    for a in &span {
        for b in &span {
            if !in_span(&span, &a.commutator(b)?) {
                return Err(Error::Input("generators do not span a subalgebra".into()));
            }
        }
    }
    let rho = irrep_matrices(m)?;
    let n = m as usize + 1;
    if generators.is_empty() {
        return Ok(GaussianMatrix::identity(n).to_rows());
    }
    let mut rows = Vec::new();
    for &k in generators {
        rows.extend(rho[k].to_rows());
    }
    Ok(Matrix::from_rows(rows)?.kernel())
}

fn in_span(span: &[GaussianMatrix], x: &GaussianMatrix) -> bool {
    if x.is_zero() {
        return true;
    }
    let mut cols: Vec<Vec<Gaussian>> = span.iter().map(|s| s.entries().to_vec()).collect();
    let before = if cols.is_empty() { 0 } else { Matrix::from_columns(&cols).map(|m| m.rank()).unwrap_or(0) };
    cols.push(x.entries().to_vec());
    Matrix::from_columns(&cols).map(|m| m.rank()).unwrap_or(0) == before
}

/// `-Σ_{i,j ∈ 𝔪} κ_ij ρ(u_i) ρ(u_j)` compressed to `V^K`, where `m_directions`
/// lists the basis indices spanning 𝔪 and `kappa_mm` is indexed accordingly.
pub fn restricted_operator(
    kappa_mm: &RationalMatrix,
    m_directions: &[usize],
    m: u32,
    vk_basis: &[Vec<Gaussian>],
) -> Result<GaussianMatrix> {
    if vk_basis.is_empty() {
        return Err(Error::Domain("V^K is zero; no spherical content".into()));
    }
    if !kappa_mm.is_symmetric() || kappa_mm.rows() != m_directions.len() {
        return Err(Error::Input("kappa on m must be symmetric and match the m-directions".into()));
    }
    let rho = irrep_matrices(m)?;
    let ops: Vec<&GaussianMatrix> = m_directions.iter().map(|&k| &rho[k]).collect();
    let d = quadratic_operator(kappa_mm, &ops);
    let b = Matrix::from_columns(vk_basis)?;
    let db = &d * &b;
    b.solve(&db)?.ok_or_else(|| {
        Error::Domain("V^K is not invariant under the operator; kappa is not Ad_K-equivariant".into())
    })
}

/// `res(p_{m1}(κ), p_{m2}(κ))`
pub fn crit_a(m1: u32, m2: u32, kappa: &KappaMatrix) -> Result<Rational> {
    if m1 == m2 {
        return Err(Error::Input("crit_a compares two different representations".into()));
    }
    let p = d_operator(kappa, m1)?.char_poly;
    let q = d_operator(kappa, m2)?.char_poly;
    resultant(&p, &q)
}

/// `res(p_m(κ), p_m'(κ))`
pub fn crit_b(m: u32, kappa: &KappaMatrix) -> Result<Rational> {
    let p = d_operator(kappa, m)?.char_poly;
    resultant(&p, &p.derivative(1))
}

/// `res(p_m(κ), p_m''(κ))`
pub fn crit_c(m: u32, kappa: &KappaMatrix) -> Result<Rational> {
    let p = d_operator(kappa, m)?.char_poly;
    resultant(&p, &p.derivative(2))
}

/// Deterministic sample schedule: identity, diagonal perturbations, then
/// off-diagonal ones. All members are positive definite.
pub fn default_schedule() -> Vec<KappaMatrix> {
    [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[1, 0, 0], [0, 2, 0], [0, 0, 3]],
        [[2, 0, 0], [0, 3, 0], [0, 0, 5]],
        [[1, 0, 0], [0, 3, 0], [0, 0, 7]],
        [[2, 1, 0], [1, 3, 1], [0, 1, 4]],
        [[3, 1, 1], [1, 4, 0], [1, 0, 6]],
        [[5, 2, 1], [2, 6, 1], [1, 1, 9]],
    ]
    .into_iter()
    .map(|r| KappaMatrix::from_i64_rows(r).expect("schedule entries are symmetric"))
    .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CritItem {
    /// Distinct representations share no eigenvalue.
    #[serde(rename = "a")]
    A,
    /// Real type: simple spectrum.
    #[serde(rename = "b")]
    B,
    /// Quaternionic type: exactly doubled spectrum.
    #[serde(rename = "c")]
    C,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub sample: usize,
    pub kappa: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertInstance {
    pub item: CritItem,
    pub reps: Vec<u32>,
    pub status: InstanceStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub samples_tried: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceStatus {
    Witnessed,
    Undecided,
}

/// Overall outcome. Exhausting the schedule yields `Undecided`, never a
/// negative answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    Undecided,
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Certified => s.serialize_bool(true),
            Verdict::Undecided => s.serialize_str("undecided"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingEvidence {
    pub m: u32,
    /// `b_V(κ) = 0` at every sample; sample evidence only.
    pub b_zero_at_all_samples: bool,
    pub char_poly_square_at_all_samples: bool,
    pub samples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepSpectrumReport {
    pub m: u32,
    #[serde(rename = "type")]
    pub rep_type: RepType,
    pub char_poly: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericSample {
    pub sample: usize,
    pub kappa: String,
    pub per_rep: Vec<RepSpectrumReport>,
    #[serde(skip)]
    pub spectra: Vec<RepSpectrum>,
    pub dictionary: SimplicityVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertReport {
    pub m_max: u32,
    pub schedule: Vec<String>,
    pub instances: Vec<CertInstance>,
    pub quaternionic_evidence: Vec<VanishingEvidence>,
    pub verdict: Verdict,
    /// First sample at which every instance is nonzero simultaneously, with
    /// the per-representation spectra there and their dictionary verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic_sample: Option<GenericSample>,
}

impl CertReport {
    pub fn item_verdict(&self, item: CritItem) -> Verdict {
        if self.instances.iter().filter(|i| i.item == item).all(|i| i.status == InstanceStatus::Witnessed) {
            Verdict::Certified
        } else {
            Verdict::Undecided
        }
    }
}

/// Certify that criteria (a), (b), (c) are not identically zero as
/// polynomials in κ, by finding one sample where each is nonzero.
pub fn certify_generic_simple(m_max: u32, schedule: &[KappaMatrix]) -> Result<CertReport> {
    if m_max > MAX_CERTIFY {
        return Err(Error::Capacity(format!("certification supports m_max <= {MAX_CERTIFY}")));
    }
    if schedule.is_empty() && m_max > 0 {
        return Err(Error::Input("sample schedule is empty".into()));
    }
    // polys[s][m]
    let polys: Vec<Vec<RationalPolynomial>> = schedule
        .iter()
        .map(|k| (0..=m_max).map(|m| d_operator(k, m).map(|b| b.char_poly)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let types: Vec<RepType> = (0..=m_max).map(rep_type).collect::<Result<_>>()?;

    let mut instances = Vec::new();
    let mut nonzero_at: Vec<Vec<bool>> = Vec::new();
    let mut push = |item: CritItem, reps: Vec<u32>, value_at: &dyn Fn(usize) -> Result<Rational>| -> Result<()> {
        let mut witness = None;
        let mut tried = 0;
        let mut row = Vec::with_capacity(schedule.len());
        for (s, k) in schedule.iter().enumerate() {
            let v = value_at(s)?;
            row.push(!v.is_zero());
            if witness.is_none() {
                tried += 1;
                if !v.is_zero() {
                    witness = Some(Witness { sample: s, kappa: k.to_string(), value: fmt_q(&v) });
                }
            }
        }
        nonzero_at.push(row);
        instances.push(CertInstance {
            item,
            reps,
            status: if witness.is_some() { InstanceStatus::Witnessed } else { InstanceStatus::Undecided },
            witness,
            samples_tried: tried,
        });
        Ok(())
    };
    for m1 in 0..=m_max {
        for m2 in m1 + 1..=m_max {
            let f = |s: usize| resultant(&polys[s][m1 as usize], &polys[s][m2 as usize]);
            push(CritItem::A, vec![m1, m2], &f)?;
        }
    }
    for m in 0..=m_max {
        let p = |s: usize| &polys[s][m as usize];
        match types[m as usize] {
            RepType::Real => push(CritItem::B, vec![m], &|s| resultant(p(s), &p(s).derivative(1)))?,
            RepType::Quaternionic => push(CritItem::C, vec![m], &|s| resultant(p(s), &p(s).derivative(2)))?,
            RepType::Complex => return Err(Error::InvariantViolation("SU(2) has no complex-type irreducibles".into())),
        }
    }

    let mut quaternionic_evidence = Vec::new();
    for m in (0..=m_max).filter(|m| types[*m as usize] == RepType::Quaternionic) {
        let mut b_zero = true;
        let mut square = true;
        for row in &polys {
            let p = &row[m as usize];
            b_zero &= resultant(p, &p.derivative(1))?.is_zero();
            square &= is_perfect_square(p)?.is_square;
        }
        if !b_zero || !square {
            return Err(Error::InvariantViolation(format!(
                "quaternionic m = {m} has a char poly that is not a perfect square at some sample"
            )));
        }
        quaternionic_evidence.push(VanishingEvidence {
            m,
            b_zero_at_all_samples: b_zero,
            char_poly_square_at_all_samples: square,
            samples: schedule.len(),
        });
    }

    let verdict = if instances.iter().all(|i| i.status == InstanceStatus::Witnessed) {
        Verdict::Certified
    } else {
        Verdict::Undecided
    };

    let mut generic_sample = None;
    if let Some(s) = (0..schedule.len()).find(|&s| nonzero_at.iter().all(|row| row[s])) {
        let spectra: Vec<RepSpectrum> = (0..=m_max)
            .map(|m| RepSpectrum::from_char_poly(format!("V_{m}"), types[m as usize], &polys[s][m as usize]))
            .collect::<Result<_>>()?;
        let dictionary = simplicity_dictionary(&spectra)?;
        generic_sample = Some(GenericSample {
            sample: s,
            kappa: schedule[s].to_string(),
            per_rep: (0..=m_max)
                .map(|m| RepSpectrumReport {
                    m,
                    rep_type: types[m as usize],
                    char_poly: poly_text(&polys[s][m as usize]),
                })
                .collect(),
            spectra,
            dictionary,
        });
    }

    Ok(CertReport {
        m_max,
        schedule: schedule.iter().map(|k| k.to_string()).collect(),
        instances,
        quaternionic_evidence,
        verdict,
        generic_sample,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BridgeRow {
    pub m: u32,
    /// Scalar by which `D(Id)` acts.
    pub operator_scalar: String,
    /// Casimir eigenvalue of `m ω1` on A1.
    pub casimir: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CasimirBridge {
    pub rows: Vec<BridgeRow>,
    /// The common ratio, if one constant covers every `m > 0`.
    pub factor: Option<String>,
}

/// Compare `D(Id)` on each irreducible with the Casimir eigenvalue from the
/// A1 root system; the two normalizations should differ by one constant.
pub fn casimir_bridge(m_max: u32) -> Result<CasimirBridge> {
    let a1 = RootSystem::build("A1".parse()?)?;
    let id = KappaMatrix::identity();
    let mut rows = Vec::new();
    let mut ratios = Vec::new();
    for m in 0..=m_max {
        let d = d_operator(&id, m)?.d_matrix;
        let s = d[(0, 0)].clone();
        if d != GaussianMatrix::identity(m as usize + 1).scale(&s) || !s.im.is_zero() {
            return Err(Error::InvariantViolation(format!("D(Id) is not scalar for m = {m}")));
        }
        let (_, lambda) = casimir(&a1, &a1.from_dynkin_i64(&[m as i64]));
        let ratio = if lambda.is_zero() {
            if !s.re.is_zero() {
                return Err(Error::InvariantViolation("trivial representation has nonzero operator".into()));
            }
            None
        } else {
            let r = s.re.clone() / lambda.clone();
            ratios.push(r.clone());
            Some(r)
        };
        rows.push(BridgeRow {
            m,
            operator_scalar: fmt_q(&s.re),
            casimir: fmt_q(&lambda),
            ratio: ratio.as_ref().map(fmt_q),
        });
    }
    let factor = match ratios.first() {
        Some(r) if ratios.iter().all(|x| x == r) => Some(fmt_q(r)),
        _ => None,
    };
    Ok(CasimirBridge { rows, factor })
}

#[derive(Clone, Debug, Serialize)]
pub struct OperatorReport {
    pub m: u32,
    #[serde(rename = "type")]
    pub rep_type: RepType,
    pub kappa: Vec<Vec<String>>,
    pub kappa_positive_definite: bool,
    pub d_matrix: Vec<Vec<GaussianText>>,
    pub char_poly: Vec<String>,
    pub char_poly_is_square: bool,
}

impl OperatorBundle {
    pub fn report(&self) -> Result<OperatorReport> {
        Ok(OperatorReport {
            m: self.m,
            rep_type: self.rep_type,
            kappa: self.kappa.text(),
            kappa_positive_definite: self.kappa.positive_definite,
            d_matrix: gaussian_matrix_text(&self.d_matrix),
            char_poly: poly_text(&self.char_poly),
            char_poly_is_square: is_perfect_square(&self.char_poly)?.is_square,
        })
    }
}
