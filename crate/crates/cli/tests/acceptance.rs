//! One test per acceptance criterion. Each prints a `PASS`/`FAIL` line and
//! then asserts, so `cargo test --test acceptance -- --nocapture` doubles as
//! a readable checklist.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;
use serde_json::Value;

use spectra_core::exactmath::is_perfect_square;
use spectra_core::exactmath::text::{fmt_q, parse_q};
use spectra_core::q8::{assemble, build_q8, simplicity_dictionary};
use spectra_core::reptype::{a1_type_oracle, type_of, RepType};
use spectra_core::rootsystem::{LatticeSpec, RootSystem};
use spectra_core::spectrum::{casimir, collisions, enumerate_spherical};
use spectra_core::spheresym::{sphere_points, symmetry_group, verify_weyl_containment, SphereSet};
use spectra_core::su2lab::{
    certify_generic_simple, crit_a, crit_b, crit_c, d_operator, default_schedule, CritItem, InstanceStatus,
    KappaMatrix, Verdict,
};
use spectra_core::{Gaussian, GaussianMatrix, Rational};

const BIN: &str = env!("CARGO_BIN_EXE_laplace-spectra");

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn sys(s: &str) -> RootSystem {
    RootSystem::build(s.parse().unwrap()).unwrap()
}

/// Runs the binary, returning its exit code and stdout.
fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, stdout) = run(args);
    let v = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    (code, v)
}

struct Report {
    criterion: u32,
    title: &'static str,
    start: Instant,
    limit: Duration,
    failures: Vec<String>,
}

impl Report {
    fn new(criterion: u32, title: &'static str, limit_secs: u64) -> Self {
        Report { criterion, title, start: Instant::now(), limit: Duration::from_secs(limit_secs), failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn finish(mut self) {
        let elapsed = self.start.elapsed();
        if elapsed > self.limit {
            self.failures.push(format!("took {:.1?}, limit {:?}", elapsed, self.limit));
        }
        if self.failures.is_empty() {
            println!("PASS criterion {}: {} ({:.1?})", self.criterion, self.title, elapsed);
        } else {
            println!("FAIL criterion {}: {} ({:.1?})", self.criterion, self.title, elapsed);
            for f in &self.failures {
                println!("    {f}");
            }
            panic!("criterion {} failed: {}", self.criterion, self.failures.join("; "));
        }
    }
}

#[test]
fn criterion_01_rank_one_uniqueness() {
    let mut r = Report::new(1, "rank-1 Casimir eigenvalues are multiplicity free", 5);
    for lattice in ["weight", "even"] {
        let (code, v) = run_json(&["spectrum", "--system", "A1", "--cutoff", "200", "--lattice", lattice]);
        r.check(code == 0, format!("{lattice}: exit {code}"));
        let res = &v["result"];
        let records = res["records"].as_array().map_or(0, |a| a.len());
        // (m+1)^2 / 2 <= 200 gives m = 0..=19; the even lattice keeps even m.
        let want = if lattice == "weight" { 20 } else { 10 };
        r.check(records == want, format!("{lattice}: {records} records, expected {want}"));
        let classes = res["collision_classes"].as_array().cloned().unwrap_or_default();
        r.check(classes.len() == records, format!("{lattice}: {} classes for {records} records", classes.len()));
        r.check(
            classes.iter().all(|c| c["size"] == 1),
            format!("{lattice}: some collision class has size >= 2"),
        );
    }
    r.finish();
}

/// All dominant A2 weights (p, q) with p^2+pq+q^2 <= 100 grouped by
/// a^2 = (2/3)((p+1)^2 + (p+1)(q+1) + (q+1)^2).
fn a2_oracle() -> BTreeMap<Rational, Vec<(i64, i64)>> {
    let mut by_a2: BTreeMap<Rational, Vec<(i64, i64)>> = BTreeMap::new();
    for p in 0..=10 {
        for s in 0..=10 {
            if p * p + p * s + s * s <= 100 {
                let (x, y) = (p + 1, s + 1);
                by_a2.entry(q(2 * (x * x + x * y + y * y), 3)).or_default().push((p, s));
            }
        }
    }
    by_a2
}

#[test]
fn criterion_02_rank_two_collisions() {
    let mut r = Report::new(2, "non-dual Casimir collisions in A2, B2, G2", 30);

    let oracle = a2_oracle();
    let target = q(182, 3);
    let members = oracle.get(&target).cloned().unwrap_or_default();
    r.check(
        members.contains(&(0, 8)) && members.contains(&(4, 5)),
        format!("oracle: a^2 = 182/3 holds {members:?}"),
    );

    let (code, v) = run_json(&["collisions", "--system", "A2", "--cutoff", "182/3"]);
    r.check(code == 0, format!("A2 collisions exit {code}"));
    let classes = v["result"]["classes"].as_array().cloned().unwrap_or_default();
    let top = classes.iter().find(|c| c["a_squared"] == "182/3");
    let labels: BTreeSet<String> = top
        .and_then(|c| c["members"].as_array())
        .map(|m| m.iter().filter_map(|x| x.as_str().map(str::to_string)).collect())
        .unwrap_or_default();
    r.check(
        labels.contains("0,8") && labels.contains("4,5"),
        format!("8w2 and 4w1+5w2 share a^2 = 182/3; got {labels:?}"),
    );
    r.check(top.is_some_and(|c| c["nondual_pair_exists"] == true), "a^2 = 182/3 class is not flagged non-dual");

    // Every oracle class below the cutoff appears with the same members.
    for (a2, ws) in oracle.iter().filter(|(a2, ws)| **a2 <= target && ws.len() > 1) {
        let c = classes.iter().find(|c| c["a_squared"] == fmt_q(a2).as_str());
        let got: BTreeSet<String> = c
            .and_then(|c| c["members"].as_array())
            .map(|m| m.iter().filter_map(|x| x.as_str().map(str::to_string)).collect())
            .unwrap_or_default();
        let want: BTreeSet<String> = ws.iter().map(|(p, s)| format!("{p},{s}")).collect();
        r.check(got == want, format!("a^2 = {}: {got:?} vs oracle {want:?}", fmt_q(a2)));
    }

    for name in ["B2", "G2"] {
        let rs = sys(name);
        let cutoff = rs.delta_norm2() * q(100, 1);
        let (code, v) = run_json(&["collisions", "--system", name, "--cutoff", &fmt_q(&cutoff)]);
        r.check(code == 0, format!("{name} collisions exit {code}"));
        let nondual = v["result"]["nondual_class_count"].as_u64().unwrap_or(0);
        r.check(nondual >= 1, format!("{name}: no non-dual collision within 100 (delta, delta)"));
        // Re-check one reported class against (mu+delta, mu+delta) computed directly.
        let lat = LatticeSpec::Weight.realize(&rs).unwrap();
        let e = enumerate_spherical(&rs, &lat, &cutoff).unwrap();
        for c in collisions(&e.records).iter().filter(|c| c.nondual_pair_exists) {
            for rec in &c.records {
                let shifted: Vec<Rational> = rec.mu.iter().zip(rs.delta()).map(|(a, b)| a + b).collect();
                r.check(rs.norm2(&shifted) == c.a_squared, format!("{name}: a^2 mismatch in {}", rec.label()));
            }
        }
    }
    r.finish();
}

/// Nonzero radii a^2 <= 20 realised by the weight lattice.
fn sphere_family(name: &str) -> (RootSystem, Vec<SphereSet>) {
    let rs = sys(name);
    let lat = LatticeSpec::Weight.realize(&rs).unwrap();
    let e = enumerate_spherical(&rs, &lat, &q(20, 1)).unwrap();
    let radii: BTreeSet<Rational> = e.records.iter().map(|r| r.a_squared.clone()).collect();
    let sets = radii.into_iter().filter(|a| !a.is_zero()).map(|a2| sphere_points(&rs, &lat, &a2).unwrap()).collect();
    (rs, sets)
}

#[test]
fn criterion_03_shifted_weyl_containment() {
    let mut r = Report::new(3, "shifted Weyl group maps every S(a) to itself", 60);
    let mut spheres = 0;
    for name in ["A1", "A2", "B2", "G2"] {
        let (rs, sets) = sphere_family(name);
        for ss in &sets {
            let c = verify_weyl_containment(&rs, ss).unwrap();
            r.check(c.holds, format!("{name} a^2 = {}: {} violations", fmt_q(&ss.a_squared), c.violations.len()));
            spheres += 1;
        }
    }
    r.check(spheres > 0, "no spheres examined");
    println!("    {spheres} spheres checked");
    r.finish();
}

/// Sorted inner products of point `i` with every point: invariant under any
/// orthogonal map preserving the set, so unequal profiles rule out a single orbit.
fn profile(rs: &RootSystem, ss: &SphereSet, i: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = ss.points.iter().map(|p| rs.inner(&ss.points[i].shifted, &p.shifted)).collect();
    v.sort();
    v
}

#[test]
fn criterion_04_sphere_symmetry_group() {
    let mut r = Report::new(4, "symmetry group of S(a) is finite and transitive", 300);
    for (name, a2, order) in [("A1", q(1, 2), 2usize), ("A2", q(2, 1), 12)] {
        let rs = sys(name);
        let lat = LatticeSpec::Weight.realize(&rs).unwrap();
        let g = symmetry_group(&rs, &lat, &sphere_points(&rs, &lat, &a2).unwrap()).unwrap();
        r.check(g.order == order, format!("{name} a^2 = {}: order {}, expected {order}", fmt_q(&a2), g.order));
    }
    for name in ["A1", "A2", "B2", "G2"] {
        let (rs, sets) = sphere_family(name);
        let lat = LatticeSpec::Weight.realize(&rs).unwrap();
        for ss in sets.iter().filter(|s| s.spans_ambient) {
            let g = symmetry_group(&rs, &lat, ss).unwrap();
            let at = format!("{name} a^2 = {}", fmt_q(&ss.a_squared));
            r.check(g.order > 0 && g.order.is_multiple_of(g.weyl_count()), format!("{at}: order {}", g.order));
            let profiles: BTreeSet<Vec<Rational>> = (0..ss.len()).map(|i| profile(&rs, ss, i)).collect();
            for orbit in &g.orbits {
                let inside: BTreeSet<_> = orbit.iter().map(|&i| profile(&rs, ss, i)).collect();
                r.check(inside.len() == 1, format!("{at}: an orbit mixes inner-product profiles"));
            }
            if !g.transitive {
                r.check(
                    false,
                    format!(
                        "{at}: {} points in {} orbits (sizes {:?}), group order {}; {} distinct inner-product profiles confirm no orthogonal map joins them",
                        ss.len(),
                        g.orbits.len(),
                        g.orbits.iter().map(|o| o.len()).collect::<Vec<_>>(),
                        g.order,
                        profiles.len()
                    ),
                );
            }
        }
    }
    r.finish();
}

#[test]
fn criterion_05_type_classification() {
    let mut r = Report::new(5, "type classifier agrees with the A1 oracle and A2 examples", 5);
    let a1 = sys("A1");
    for m in 0..=32u32 {
        let t = type_of(&a1, &a1.from_dynkin_i64(&[m as i64])).unwrap().value;
        let want = if m % 2 == 1 { RepType::Quaternionic } else { RepType::Real };
        r.check(t == a1_type_oracle(m).unwrap() && t == want, format!("A1 m = {m}: {t}"));
    }
    let a2 = sys("A2");
    let t = type_of(&a2, &a2.from_dynkin_i64(&[1, 0])).unwrap().value;
    r.check(t == RepType::Complex, format!("A2 w1: {t}"));
    let (code, v) = run_json(&["types", "--system", "A1", "--oracle-max", "32"]);
    r.check(code == 0 && v["result"]["oracle"].as_array().map_or(0, |a| a.len()) == 33, "CLI oracle cross-check");
    r.finish();
}

#[test]
fn criterion_06_casimir_cross_check() {
    let mut r = Report::new(6, "su(2) operator at kappa = Id matches the A1 Casimir up to one constant", 5);
    let a1 = sys("A1");
    let mut ratios = BTreeSet::new();
    for m in 0..=8u32 {
        let d = d_operator(&KappaMatrix::identity(), m).unwrap().d_matrix;
        let s = Rational::from_integer((m * (m + 2)).into());
        let want = GaussianMatrix::identity(m as usize + 1).scale(&Gaussian::new(s.clone(), Rational::zero()));
        r.check(d == want, format!("m = {m}: D(Id) is not {} Id", fmt_q(&s)));
        let (_, lambda) = casimir(&a1, &a1.from_dynkin_i64(&[m as i64]));
        if m > 0 {
            ratios.insert(s / lambda);
        }
    }
    r.check(ratios.len() == 1, format!("ratios {:?}", ratios.iter().map(fmt_q).collect::<Vec<_>>()));
    // (m+1)^2/2 - 1/2 = m(m+2)/2 with long roots of squared length 2.
    r.check(ratios.iter().next() == Some(&q(2, 1)), "ratio differs from 2");
    r.finish();
}

#[test]
fn criterion_07_quaternionic_doubling() {
    let mut r = Report::new(7, "quaternionic spectra double, real ones do not", 60);
    let schedule: Vec<_> = default_schedule().into_iter().take(5).collect();
    for k in &schedule {
        for m in [1u32, 3, 5, 7] {
            let p = d_operator(k, m).unwrap().char_poly;
            r.check(is_perfect_square(&p).unwrap().is_square, format!("m = {m}, kappa = {k}: not a square"));
            r.check(crit_b(m, k).unwrap().is_zero(), format!("m = {m}, kappa = {k}: b != 0"));
        }
    }
    for m in [0u32, 2, 4, 6, 8] {
        let hit = schedule.iter().any(|k| !crit_b(m, k).unwrap().is_zero());
        r.check(hit, format!("m = {m}: b vanishes at every sample"));
    }
    r.finish();
}

#[test]
fn criterion_08_generic_simplicity_certificate() {
    let mut r = Report::new(8, "generic simplicity certified up to m = 6 and read through the Q8 dictionary", 300);
    let schedule = default_schedule();
    let rep = certify_generic_simple(6, &schedule).unwrap();
    r.check(rep.verdict == Verdict::Certified, "verdict is not certified");
    for item in [CritItem::A, CritItem::B, CritItem::C] {
        r.check(rep.item_verdict(item) == Verdict::Certified, format!("item {item:?} undecided"));
    }
    let mut seen = BTreeSet::new();
    for inst in &rep.instances {
        r.check(inst.status == InstanceStatus::Witnessed, format!("{:?} {:?} not witnessed", inst.item, inst.reps));
        let Some(w) = &inst.witness else { continue };
        let k = &schedule[w.sample];
        let value = match (inst.item, inst.reps.as_slice()) {
            (CritItem::A, [a, b]) => crit_a(*a, *b, k).unwrap(),
            (CritItem::B, [m]) => {
                r.check(m % 2 == 0, format!("item b on odd m = {m}"));
                crit_b(*m, k).unwrap()
            }
            (CritItem::C, [m]) => {
                r.check(m % 2 == 1, format!("item c on even m = {m}"));
                crit_c(*m, k).unwrap()
            }
            other => panic!("unexpected instance {other:?}"),
        };
        r.check(!value.is_zero() && parse_q(&w.value).unwrap() == value, format!("{:?} {:?}: witness", inst.item, inst.reps));
        seen.insert((inst.item, inst.reps.clone()));
    }
    for a in 0..=6u32 {
        for b in a + 1..=6 {
            r.check(seen.contains(&(CritItem::A, vec![a, b])), format!("pair ({a}, {b}) missing"));
        }
        let item = if a % 2 == 0 { CritItem::B } else { CritItem::C };
        r.check(seen.contains(&(item, vec![a])), format!("m = {a} missing"));
    }

    let sample = rep.generic_sample.as_ref();
    r.check(sample.is_some(), "no common generic sample");
    if let Some(s) = sample {
        let d = simplicity_dictionary(&s.spectra).unwrap();
        r.check(d.real_g_simple && d.complex_q8xg_simple, "dictionary verdicts are not both true");
    }

    // Same equivalence through the command line: certify, then verdict on its report.
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let (code, _) = run(&["certify", "--mmax", "6", "--out", cert.to_str().unwrap()]);
    r.check(code == 0, format!("certify exit {code}"));
    let (code, v) = run_json(&["verdict", "--input", cert.to_str().unwrap()]);
    r.check(code == 0, format!("verdict exit {code}"));
    r.check(
        v["result"]["real_G_simple"] == true && v["result"]["complex_Q8xG_simple"] == true,
        "CLI verdict is not simple on both sides",
    );
    r.finish();
}

#[test]
fn criterion_09_q8_structure_and_assembly() {
    let mut r = Report::new(9, "Q8 structure, character table and eigenspace assembly", 1);
    let g = build_q8().unwrap();
    let n = g.elements.len();
    r.check(n == 8, format!("{n} elements"));
    let t = &g.table;
    let e = (0..n).find(|&a| (0..n).all(|b| t[a][b] == b && t[b][a] == b));
    r.check(e.is_some(), "no identity");
    for a in 0..n {
        r.check((0..n).any(|b| Some(t[a][b]) == e), format!("{} has no inverse", g.elements[a]));
        for b in 0..n {
            for c in 0..n {
                r.check(t[t[a][b]][c] == t[a][t[b][c]], "associativity");
            }
        }
    }
    r.check(g.classes.len() == 5, format!("{} classes", g.classes.len()));
    r.check(g.degrees == vec![1, 1, 1, 1, 2], format!("degrees {:?}", g.degrees));
    // Orthogonality recomputed from the table: sum over classes of |C| chi conj(psi) = 8 delta.
    let order = Gaussian::new(q(8, 1), Rational::zero());
    for x in &g.characters {
        for y in &g.characters {
            let s = g.class_sizes.iter().enumerate().fold(Gaussian::new(Rational::zero(), Rational::zero()), |acc, (c, &size)| {
                acc + x.value_at(c).clone() * y.value_at(c).conj() * Gaussian::new(q(size as i64, 1), Rational::zero())
            });
            let want = if x.name == y.name { order.clone() } else { Gaussian::new(Rational::zero(), Rational::zero()) };
            r.check(s == want, format!("<{}, {}>", x.name, y.name));
        }
    }
    let sum_sq: u32 = g.degrees.iter().map(|d| d * d).sum();
    r.check(sum_sq == 8, "sum of squared degrees");
    r.check(g.characters.iter().all(|c| *c.value_at(0) == Gaussian::new(q(c.degree as i64, 1), Rational::zero())), "chi(1) = degree");

    // complex dimension (units of dim V) of the complex side equals the real dimension of the real side
    let table = [
        (RepType::Real, 1, "V^{⊕1}", "V_ℝ^{⊕1}", 1),
        (RepType::Real, 2, "V^{⊕2}", "V_ℝ^{⊕2}", 2),
        (RepType::Complex, 1, "(ℍ⊗V)^{⊕1}", "V_ℝ^{⊕1}", 2),
        (RepType::Complex, 2, "(ℍ⊗V)^{⊕2}", "V_ℝ^{⊕2}", 4),
        (RepType::Quaternionic, 2, "(ℍ⊗V)^{⊕1}", "V_ℝ^{⊕1}", 2),
        (RepType::Quaternionic, 4, "(ℍ⊗V)^{⊕2}", "V_ℝ^{⊕2}", 4),
    ];
    for (ty, m, cx, re, dim) in table {
        match assemble(ty, m) {
            Ok(a) => {
                r.check(a.complex_structure == cx && a.real_structure == re, format!("({ty}, {m}): {a:?}"));
                r.check(a.complex_dim_per_dim_v == dim && a.real_dim_per_dim_v == dim, format!("({ty}, {m}) dims"));
            }
            Err(err) => r.check(false, format!("({ty}, {m}): {err}")),
        }
    }
    for m in [1, 3] {
        r.check(assemble(RepType::Quaternionic, m).is_err(), format!("(quaternionic, {m}) accepted"));
        let (code, _) = run(&["assemble", "--type", "quaternionic", "--m", &m.to_string()]);
        r.check(code == 2, format!("CLI (quaternionic, {m}) exit {code}"));
    }
    r.finish();
}

fn identical_runs(r: &mut Report, dir: &Path, idx: usize, args: &[&str]) {
    let mut outputs = Vec::new();
    for pass in 0..2 {
        let path = dir.join(format!("{idx}-{pass}.json"));
        let mut full: Vec<&str> = args.to_vec();
        let p = path.to_str().unwrap().to_string();
        full.extend(["--out", &p]);
        let (code, _) = run(&full);
        r.check(code == 0 || code == 2, format!("{args:?}: exit {code}"));
        outputs.push(std::fs::read(&path).unwrap_or_default());
    }
    r.check(!outputs[0].is_empty() && outputs[0] == outputs[1], format!("{args:?}: reports differ"));
}

#[test]
fn criterion_10_determinism() {
    let mut r = Report::new(10, "byte-identical reports across runs", 600);
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    run(&["certify", "--mmax", "6", "--out", cert.to_str().unwrap()]);
    let spec = dir.path().join("spectrum.json");
    run(&["spectrum", "--system", "A2", "--cutoff", "182/3", "--out", spec.to_str().unwrap()]);
    let b2 = fmt_q(&(sys("B2").delta_norm2() * q(100, 1)));
    let g2 = fmt_q(&(sys("G2").delta_norm2() * q(100, 1)));
    let cases: Vec<Vec<&str>> = vec![
        vec!["roots", "--system", "B2"],
        vec!["spectrum", "--system", "A1", "--cutoff", "200"],
        vec!["spectrum", "--system", "A1", "--cutoff", "200", "--lattice", "even"],
        vec!["collisions", "--system", "A2", "--cutoff", "182/3"],
        vec!["collisions", "--system", "B2", "--cutoff", &b2],
        vec!["collisions", "--system", "G2", "--cutoff", &g2],
        vec!["sphere-sym", "--system", "A1", "--a2", "1/2"],
        vec!["sphere-sym", "--system", "A2", "--a2", "2"],
        vec!["sphere-sym", "--system", "B2", "--a2", "25/2"],
        vec!["types", "--system", "A1", "--oracle-max", "32"],
        vec!["types", "--system", "A2", "--weights", "1,0;0,1;1,1"],
        vec!["operator", "--m", "3"],
        vec!["certify", "--mmax", "6"],
        vec!["verdict", "--input", cert.to_str().unwrap()],
        vec!["assemble", "--type", "complex", "--m", "2"],
        vec!["assemble", "--input", spec.to_str().unwrap()],
        vec!["selfcheck"],
    ];
    for (i, args) in cases.iter().enumerate() {
        identical_runs(&mut r, dir.path(), i, args);
    }
    println!("    {} subcommand invocations compared", cases.len());
    r.finish();
}
