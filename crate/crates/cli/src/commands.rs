use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use spectra_core::exactmath::text::{fmt_q, fmt_vec, matrix_text, parse_matrix, parse_poly, parse_q};
use spectra_core::exactmath::{is_perfect_square, resultant};
use spectra_core::q8::{assemble, build_q8, simplicity_dictionary, RepSpectrum};
use spectra_core::reptype::{a1_type_oracle, dual_weight, type_of, RepType};
use spectra_core::rootsystem::{
    catalogue, longest_element, weyl_group, DeltaMode, LatticeSpec, RootSystem, RootSystemFixture,
};
use spectra_core::spectrum::{apply_multiplicities, collisions, enumerate_spherical, fmt_dynkin, Enumeration};
use spectra_core::spheresym::{sphere_points, symmetry_group, verify_weyl_containment};
use spectra_core::su2lab::{
    casimir_bridge, certify_generic_simple, crit_b, d_operator, default_schedule, irrep_matrices, KappaMatrix, Verdict,
};
use spectra_core::{Error, Rational};

use crate::args::*;
use crate::CliError;

/// What a subcommand produced, before it is wrapped into a report.
pub struct Outcome {
    pub result: Value,
    pub delta_mode: Option<DeltaMode>,
    pub status: Status,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Undecided,
    InvariantFailure,
}

fn ok(result: impl Serialize, delta_mode: Option<DeltaMode>) -> Result<Outcome, CliError> {
    Ok(Outcome { result: to_value(result)?, delta_mode, status: Status::Ok })
}

fn to_value(v: impl Serialize) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Io(e.to_string()))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn build_system(a: &SystemArgs) -> Result<RootSystem, CliError> {
    let mode = match a.delta_mode.as_str() {
        "weighted" => DeltaMode::Weighted,
        "unweighted" => DeltaMode::Unweighted,
        other => return Err(CliError::Usage(format!("--delta-mode must be weighted or unweighted, got {other:?}"))),
    };
    match (&a.system, &a.fixture) {
        (Some(_), Some(_)) => Err(CliError::Usage("give --system or --fixture, not both".into())),
        (None, None) => Err(CliError::Usage("--system or --fixture is required".into())),
        (Some(name), None) => {
            let mult = match &a.mult {
                Some(m) => m.parse()?,
                None => Default::default(),
            };
            Ok(RootSystem::build_with(name.parse()?, mult, mode)?)
        }
        (None, Some(path)) => {
            let fx: RootSystemFixture = serde_json::from_str(&read(path)?)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            Ok(RootSystem::from_fixture(&fx)?)
        }
    }
}

fn positive_q(s: &str, what: &str) -> Result<Rational, CliError> {
    let q = parse_q(s)?;
    if q.is_zero() || q < Rational::zero() {
        return Err(CliError::Core(Error::Domain(format!("{what} must be positive, got {}", fmt_q(&q)))));
    }
    Ok(q)
}

fn parse_rows(s: &str) -> Result<Vec<Vec<Rational>>, CliError> {
    s.split(';')
        .map(|row| row.split(',').map(|x| parse_q(x).map_err(CliError::from)).collect())
        .collect()
}

fn parse_vk_mult(s: &str) -> Result<BTreeMap<String, u32>, CliError> {
    let mut out = BTreeMap::new();
    for part in s.split(';').filter(|p| !p.trim().is_empty()) {
        let (key, val) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--vk-mult entries look like 2,0=2; got {part:?}")))?;
        let labels: Vec<Rational> = key.split(',').map(parse_q).collect::<Result<_, _>>()?;
        let m: u32 = val.trim().parse().map_err(|_| CliError::Usage(format!("bad multiplicity in {part:?}")))?;
        out.insert(fmt_dynkin(&labels), m);
    }
    Ok(out)
}

fn enumerate(
    system: &SystemArgs,
    lattice: &str,
    cutoff: &str,
    vk_mult: &Option<String>,
) -> Result<(RootSystem, Enumeration), CliError> {
    let rs = build_system(system)?;
    let lat = lattice.parse::<LatticeSpec>()?.realize(&rs)?;
    let cutoff = parse_q(cutoff)?;
    let mut e = enumerate_spherical(&rs, &lat, &cutoff)?;
    if let Some(v) = vk_mult {
        apply_multiplicities(&mut e.records, &parse_vk_mult(v)?)?;
    }
    Ok((rs, e))
}

fn system_summary(rs: &RootSystem) -> Value {
    json!({
        "name": rs.name().to_string(),
        "rank": rs.rank(),
        "delta": fmt_vec(rs.delta()),
        "delta_dynkin": fmt_dynkin(&rs.dynkin_labels(rs.delta())),
        "delta_norm2": fmt_q(&rs.delta_norm2()),
    })
}

pub fn roots(a: &RootsArgs) -> Result<Outcome, CliError> {
    let rs = build_system(&a.system)?;
    let w0 = longest_element(&rs)?;
    let order = weyl_group(&rs)?.len();
    let positive: Vec<Value> = rs
        .positive_roots()
        .iter()
        .map(|r| {
            json!({
                "vector": fmt_vec(&r.vector),
                "simple_coords": r.simple_coords,
                "length_class": format!("{:?}", r.length_class).to_lowercase(),
                "norm2": fmt_q(&rs.norm2(&r.vector)),
                "multiplicity": r.multiplicity,
            })
        })
        .collect();
    let result = json!({
        "system": system_summary(&rs),
        "ambient_dim": rs.ambient_dim(),
        "gram": matrix_text(rs.gram()),
        "simple_roots": rs.simple_roots().iter().map(|v| fmt_vec(v)).collect::<Vec<_>>(),
        "positive_roots": positive,
        "rho": fmt_vec(rs.rho()),
        "fundamental_weights": rs.fundamental_weights().iter().map(|v| fmt_vec(v)).collect::<Vec<_>>(),
        "coroot_sum": fmt_vec(&rs.coroot_sum()),
        "reduced": rs.is_reduced(),
        "weyl_group_order": order,
        "longest_element_word": w0.word,
        "fixture": rs.to_fixture(),
    });
    ok(result, Some(rs.delta_mode()))
}

#[derive(Serialize)]
struct CsvRow {
    dynkin: String,
    a_squared: String,
    lambda: String,
    dim: String,
    #[serde(rename = "type")]
    rep_type: String,
    self_dual: bool,
    dual: String,
    multiplicity: u32,
}

pub fn spectrum(a: &SpectrumArgs) -> Result<Outcome, CliError> {
    let (rs, e) = enumerate(&a.system, &a.lattice, &a.cutoff, &a.vk_mult)?;
    let classes = collisions(&e.records);
    let max_class_size = classes.iter().map(|c| c.size).max().unwrap_or(0);
    if let Some(path) = &a.csv {
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Io(e.to_string()))?;
        for r in &e.records {
            w.serialize(CsvRow {
                dynkin: r.label(),
                a_squared: fmt_q(&r.a_squared),
                lambda: fmt_q(&r.lambda),
                dim: r.dim.to_string(),
                rep_type: r.rep_type.map_or("unknown".into(), |t| t.to_string()),
                self_dual: r.self_dual,
                dual: fmt_dynkin(&r.dual_dynkin),
                multiplicity: r.multiplicity,
            })
            .map_err(|e| CliError::Io(e.to_string()))?;
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    }
    let result = json!({
        "system": system_summary(&rs),
        "lattice": a.lattice,
        "cutoff": fmt_q(&e.cutoff),
        "bound": e.bound,
        "warnings": e.warnings,
        "record_count": e.records.len(),
        "records": e.records,
        "collision_classes": classes,
        "max_class_size": max_class_size,
        "flagged_classes": classes.iter().filter(|c| c.flagged).count(),
    });
    ok(result, Some(rs.delta_mode()))
}

pub fn collisions_cmd(a: &CollisionsArgs) -> Result<Outcome, CliError> {
    let (rs, e) = enumerate(&a.system, &a.lattice, &a.cutoff, &a.vk_mult)?;
    let flagged: Vec<_> = collisions(&e.records).into_iter().filter(|c| c.flagged).collect();
    let nondual = flagged.iter().filter(|c| c.nondual_pair_exists).count();
    let result = json!({
        "system": system_summary(&rs),
        "lattice": a.lattice,
        "cutoff": fmt_q(&e.cutoff),
        "weights_scanned": e.records.len(),
        "classes": flagged,
        "nondual_class_count": nondual,
    });
    ok(result, Some(rs.delta_mode()))
}

pub fn sphere_sym(a: &SphereArgs) -> Result<Outcome, CliError> {
    let rs = build_system(&a.system)?;
    let lat = a.lattice.parse::<LatticeSpec>()?.realize(&rs)?;
    let a2 = positive_q(&a.a2, "a^2")?;
    let ss = sphere_points(&rs, &lat, &a2)?;
    let containment = verify_weyl_containment(&rs, &ss)?;
    let labels = ss.raw_labels();
    let points: Vec<Value> = ss
        .points
        .iter()
        .map(|p| {
            json!({
                "dynkin": fmt_dynkin(&p.raw_dynkin),
                "mu": fmt_vec(&p.raw),
                "shifted": fmt_vec(&p.shifted),
                "shifted_dynkin": fmt_dynkin(&p.shifted_dynkin),
            })
        })
        .collect();
    let mut result = json!({
        "system": system_summary(&rs),
        "lattice": a.lattice,
        "a2": fmt_q(&a2),
        "point_count": ss.len(),
        "points": points,
        "spans": ss.spans_ambient,
        "weyl_containment": containment,
    });
    let g = symmetry_group(&rs, &lat, &ss)?;
    let obj = result.as_object_mut().expect("object");
    obj.insert("group_order".into(), json!(g.order));
    obj.insert("transitive".into(), json!(g.transitive));
    obj.insert(
        "orbits".into(),
        json!(g.orbits.iter().map(|o| o.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>()).collect::<Vec<_>>()),
    );
    obj.insert("basis".into(), json!(g.basis.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>()));
    obj.insert("weyl_elements".into(), json!(g.weyl_count()));
    obj.insert("lattice_preserving_elements".into(), json!(g.lattice_preserving_count()));
    obj.insert("candidates_examined".into(), json!(g.candidates_examined));
    let status = if containment.holds { Status::Ok } else { Status::InvariantFailure };
    Ok(Outcome { result, delta_mode: Some(rs.delta_mode()), status })
}

pub fn types(a: &TypesArgs) -> Result<Outcome, CliError> {
    let rs = build_system(&a.system)?;
    let mut weights: Vec<Vec<Rational>> = Vec::new();
    if let Some(w) = &a.weights {
        for row in parse_rows(w)? {
            if row.len() != rs.rank() {
                return Err(CliError::Usage(format!("each weight needs {} Dynkin labels", rs.rank())));
            }
            weights.push(rs.from_dynkin(&row));
        }
    }
    if let Some(c) = &a.cutoff {
        let lat = LatticeSpec::Weight.realize(&rs)?;
        let e = enumerate_spherical(&rs, &lat, &parse_q(c)?)?;
        weights.extend(e.records.into_iter().map(|r| r.mu));
    }
    if weights.is_empty() && a.oracle_max.is_none() {
        return Err(CliError::Usage("give --weights, --cutoff or --oracle-max".into()));
    }
    let mut rows = Vec::new();
    for mu in &weights {
        let t = type_of(&rs, mu)?;
        let dual = dual_weight(&rs, mu)?;
        if type_of(&rs, &dual)?.value != t.value {
            return Err(CliError::Core(Error::InvariantViolation("type is not duality-invariant".into())));
        }
        rows.push(json!({
            "dynkin": fmt_dynkin(&rs.dynkin_labels(mu)),
            "type": t.value,
            "self_dual": t.self_dual,
            "parity": t.parity,
            "dual": fmt_dynkin(&rs.dynkin_labels(&dual)),
        }));
    }
    let mut oracle = Vec::new();
    if let Some(max) = a.oracle_max {
        if rs.name().to_string() != "A1" {
            return Err(CliError::Usage("--oracle-max applies to A1 only".into()));
        }
        for m in 0..=max {
            let by_parity = type_of(&rs, &rs.from_dynkin_i64(&[m as i64]))?.value;
            let by_oracle = a1_type_oracle(m)?;
            if by_parity != by_oracle {
                return Err(CliError::Core(Error::InvariantViolation(format!(
                    "type classifier and tensor-square oracle disagree at m = {m}"
                ))));
            }
            oracle.push(json!({ "m": m, "type": by_parity, "oracle": by_oracle }));
        }
    }
    ok(json!({ "system": system_summary(&rs), "classifications": rows, "oracle": oracle }), Some(rs.delta_mode()))
}

/// Descend into the `result` of a report envelope, if present.
fn payload(v: &Value) -> &Value {
    v.get("result").unwrap_or(v)
}

pub fn assemble_cmd(a: &AssembleArgs) -> Result<Outcome, CliError> {
    match (&a.input, &a.rep_type, a.m) {
        (Some(path), None, None) => {
            let doc = read_json(path)?;
            let records = payload(&doc)
                .get("records")
                .and_then(Value::as_array)
                .ok_or_else(|| CliError::Usage("input has no spectrum records".into()))?;
            let mut out = Vec::new();
            let mut skipped = Vec::new();
            for r in records {
                let label = r.get("dynkin").map(|d| d.to_string()).unwrap_or_default();
                let t = r.get("type").and_then(Value::as_str).unwrap_or("unknown");
                let m = r.get("multiplicity").and_then(Value::as_u64).unwrap_or(1) as u32;
                match t.parse::<RepType>() {
                    Ok(t) => out.push(json!({ "dynkin": r.get("dynkin"), "assembly": assemble(t, m)? })),
                    Err(_) => skipped.push(label),
                }
            }
            ok(json!({ "assemblies": out, "skipped_unknown_type": skipped }), None)
        }
        (None, Some(t), Some(m)) => ok(json!({ "assemblies": [assemble(t.parse()?, m)?] }), None),
        _ => Err(CliError::Usage("give --type and --m, or --input".into())),
    }
}

fn spectra_from_input(doc: &Value) -> Result<Vec<RepSpectrum>, CliError> {
    let p = payload(doc);
    if let Some(list) = p.get("spectra").or_else(|| p.is_array().then_some(p)) {
        return serde_json::from_value(list.clone()).map_err(|e| CliError::Usage(format!("spectra: {e}")));
    }
    let sample = p
        .get("generic_sample")
        .ok_or_else(|| CliError::Usage("input has neither spectra nor a certified generic sample".into()))?;
    let per_rep = sample
        .get("per_rep")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Usage("generic sample lacks per_rep".into()))?;
    per_rep
        .iter()
        .map(|r| {
            let m = r.get("m").and_then(Value::as_u64).ok_or_else(|| CliError::Usage("per_rep entry lacks m".into()))?;
            let t: RepType = r.get("type").and_then(Value::as_str).unwrap_or("").parse()?;
            let coeffs: Vec<String> = serde_json::from_value(r.get("char_poly").cloned().unwrap_or(Value::Null))
                .map_err(|e| CliError::Usage(format!("char_poly: {e}")))?;
            Ok(RepSpectrum::from_char_poly(format!("V_{m}"), t, &parse_poly(&coeffs)?)?)
        })
        .collect()
}

pub fn verdict(a: &VerdictArgs) -> Result<Outcome, CliError> {
    let spectra = spectra_from_input(&read_json(&a.input)?)?;
    ok(simplicity_dictionary(&spectra)?, None)
}

fn parse_schedule(s: &str) -> Result<Vec<KappaMatrix>, CliError> {
    if s == "default" {
        return Ok(default_schedule());
    }
    let doc = read_json(Path::new(s))?;
    let list = doc.as_array().ok_or_else(|| CliError::Usage("schedule file must hold a JSON list".into()))?;
    list.iter()
        .map(|m| {
            let text = match m {
                Value::String(s) => s.clone(),
                Value::Array(rows) => rows
                    .iter()
                    .map(|r| {
                        r.as_array()
                            .map(|xs| {
                                xs.iter()
                                    .map(|x| x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string()))
                                    .collect::<Vec<_>>()
                                    .join(",")
                            })
                            .ok_or_else(|| CliError::Usage("schedule rows must be lists".into()))
                    })
                    .collect::<Result<Vec<_>, _>>()?
                    .join(";"),
                _ => return Err(CliError::Usage("schedule entries are matrices".into())),
            };
            Ok(KappaMatrix::new(parse_matrix(&text)?)?)
        })
        .collect()
}

pub fn certify(a: &CertifyArgs) -> Result<Outcome, CliError> {
    let schedule = parse_schedule(&a.schedule)?;
    let report = certify_generic_simple(a.mmax, &schedule)?;
    let status = if report.verdict == Verdict::Certified { Status::Ok } else { Status::Undecided };
    Ok(Outcome { result: to_value(&report)?, delta_mode: None, status })
}

pub fn operator(a: &OperatorArgs) -> Result<Outcome, CliError> {
    let k = KappaMatrix::new(parse_matrix(&a.kappa)?)?;
    ok(d_operator(&k, a.m)?.report()?, None)
}

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct Observation {
    name: String,
    detail: String,
}

fn check(checks: &mut Vec<Check>, name: &str, r: Result<String, Error>) {
    let (passed, detail) = match r {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    checks.push(Check { name: name.into(), passed, detail });
}

fn fail(msg: String) -> Error {
    Error::InvariantViolation(msg)
}

pub fn selfcheck(_a: &SelfcheckArgs) -> Result<Outcome, CliError> {
    let mut checks = Vec::new();
    let mut observations = Vec::new();

    check(&mut checks, "catalogue and Weyl group orders", (|| {
        let expected: BTreeMap<&str, usize> = [
            ("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("B3", 48), ("C3", 48), ("D4", 192), ("G2", 12), ("BC2", 8),
        ]
        .into_iter()
        .collect();
        for name in catalogue() {
            let rs = RootSystem::build(name)?;
            let order = weyl_group(&rs)?.len();
            if let Some(&want) = expected.get(name.to_string().as_str()) {
                if order != want {
                    return Err(fail(format!("{name}: Weyl group order {order}, expected {want}")));
                }
            }
        }
        Ok(format!("{} systems built", catalogue().len()))
    })());

    check(&mut checks, "resultant and perfect-square conventions", (|| {
        let p = spectra_core::RationalPolynomial::from_i64s(&[-3, 1]).pow(2);
        let c = spectra_core::RationalPolynomial::from_i64s(&[2]);
        if resultant(&p, &c)? != Rational::from_integer(4.into()) || !is_perfect_square(&p)?.is_square {
            return Err(fail("res((t-3)^2, 2) != 4 or square test failed".into()));
        }
        Ok("res((t-3)^2, 2) = 4".into())
    })());

    check(&mut checks, "Q8 group and character table", build_q8().map(|g| format!("degrees {:?}", g.degrees)));

    check(&mut checks, "type classifier vs A1 oracle (m <= 32)", (|| {
        let a1 = RootSystem::build("A1".parse()?)?;
        for m in 0..=32u32 {
            if type_of(&a1, &a1.from_dynkin_i64(&[m as i64]))?.value != a1_type_oracle(m)? {
                return Err(fail(format!("disagreement at m = {m}")));
            }
        }
        Ok("33 weights agree".into())
    })());

    check(&mut checks, "su(2) bracket homomorphism (m <= 12)", (|| {
        for m in 0..=12 {
            irrep_matrices(m)?;
        }
        Ok("13 representations".into())
    })());

    check(&mut checks, "Casimir normalization bridge (m <= 8)", (|| {
        let b = casimir_bridge(8)?;
        b.factor.ok_or_else(|| fail("ratio is not constant".into())).map(|f| format!("D(Id) / casimir = {f}"))
    })());

    check(&mut checks, "quaternionic doubling (odd m <= 7, five samples)", (|| {
        for k in default_schedule().iter().take(5) {
            for m in [1, 3, 5, 7] {
                if !is_perfect_square(&d_operator(k, m)?.char_poly)?.is_square || !crit_b(m, k)?.is_zero() {
                    return Err(fail(format!("m = {m}, kappa = {k}")));
                }
            }
        }
        Ok("char polys are squares and b vanishes at every sample".into())
    })());

    check(&mut checks, "generic simplicity certificate (m_max = 4)", (|| {
        let r = certify_generic_simple(4, &default_schedule())?;
        let dict = r.generic_sample.as_ref().map(|s| s.dictionary.real_g_simple);
        match (r.verdict, dict) {
            (Verdict::Certified, Some(true)) => Ok(format!("{} instances witnessed", r.instances.len())),
            _ => Err(fail("certificate incomplete".into())),
        }
    })());

    let mut nontransitive = Vec::new();
    check(&mut checks, "shifted Weyl group preserves S(a) (a^2 <= 20)", (|| {
        let mut spheres = 0;
        for name in ["A1", "A2", "B2", "G2"] {
            let rs = RootSystem::build(name.parse()?)?;
            let lat = LatticeSpec::Weight.realize(&rs)?;
            let e = enumerate_spherical(&rs, &lat, &Rational::from_integer(20.into()))?;
            let radii: BTreeSet<Rational> = e.records.iter().map(|r| r.a_squared.clone()).collect();
            for a2 in radii.into_iter().filter(|a| !a.is_zero()) {
                let ss = sphere_points(&rs, &lat, &a2)?;
                if !verify_weyl_containment(&rs, &ss)?.holds {
                    return Err(fail(format!("{name} a^2 = {}", fmt_q(&a2))));
                }
                if ss.spans_ambient {
                    let g = symmetry_group(&rs, &lat, &ss)?;
                    if !g.transitive {
                        nontransitive.push(format!(
                            "{name} a^2 = {}: {} points in {} orbits, group order {}",
                            fmt_q(&a2),
                            ss.len(),
                            g.orbits.len(),
                            g.order
                        ));
                    }
                }
                spheres += 1;
            }
        }
        Ok(format!("{spheres} spheres"))
    })());
    observations.push(Observation {
        name: "transitivity of the sphere symmetry group (a^2 <= 20)".into(),
        detail: if nontransitive.is_empty() {
            "transitive on every spanning sphere".into()
        } else {
            format!("not transitive: {}", nontransitive.join("; "))
        },
    });

    let passed = checks.iter().all(|c| c.passed);
    let status = if passed { Status::Ok } else { Status::InvariantFailure };
    let result = json!({ "passed": passed, "checks": checks, "observations": observations });
    Ok(Outcome { result, delta_mode: None, status })
}
