use std::collections::BTreeSet;

use num_traits::Zero;

use spectra_core::reptype::{a1_type_oracle, dual_weight, type_of, RepType};
use spectra_core::rootsystem::{LatticeSpec, RootSystem};
use spectra_core::spectrum::{collisions, enumerate_spherical, weyl_dim};
use spectra_core::spheresym::{sphere_points, symmetry_group, verify_weyl_containment};
use spectra_core::su2lab::{d_operator, default_schedule, rep_type};
use spectra_core::Rational;

fn sys(s: &str) -> RootSystem {
    RootSystem::build(s.parse().unwrap()).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn types_match_the_a1_oracle() {
    let a1 = sys("A1");
    for m in 0..=32u32 {
        let t = type_of(&a1, &a1.from_dynkin_i64(&[m as i64])).unwrap().value;
        assert_eq!(t, a1_type_oracle(m).unwrap(), "m = {m}");
    }
}

#[test]
fn records_are_consistent_with_their_duals() {
    for s in ["A2", "A3", "B2", "C3", "D4", "G2"] {
        let rs = sys(s);
        let lat = LatticeSpec::Weight.realize(&rs).unwrap();
        let cutoff = rs.delta_norm2() * q(6, 1);
        let e = enumerate_spherical(&rs, &lat, &cutoff).unwrap();
        for r in &e.records {
            assert_eq!(r.lambda, r.a_squared.clone() - rs.delta_norm2(), "{s}");
            assert!(rs.is_dominant(&r.dual_mu));
            let dual = e.records.iter().find(|x| x.mu == r.dual_mu);
            if let Some(d) = dual {
                assert_eq!((d.a_squared.clone(), d.dim.clone()), (r.a_squared.clone(), r.dim.clone()), "{s}");
                assert_eq!(d.rep_type, r.rep_type, "{s}");
            }
            assert_eq!(dual_weight(&rs, &r.dual_mu).unwrap(), r.mu);
            assert_eq!(weyl_dim(&rs, &r.dual_mu).unwrap(), r.dim);
        }
    }
}

#[test]
fn rank_one_even_lattice_is_all_real_type() {
    let rs = sys("A1");
    let even = LatticeSpec::Scaled(2).realize(&rs).unwrap();
    let e = enumerate_spherical(&rs, &even, &q(200, 1)).unwrap();
    assert!(!e.records.is_empty());
    assert!(e.records.iter().all(|r| r.rep_type == Some(RepType::Real)));
}

#[test]
fn sphere_groups_contain_the_shifted_weyl_group() {
    for s in ["A1", "A2", "G2"] {
        let rs = sys(s);
        let lat = LatticeSpec::Weight.realize(&rs).unwrap();
        let e = enumerate_spherical(&rs, &lat, &q(12, 1)).unwrap();
        let radii: BTreeSet<Rational> = e.records.iter().map(|r| r.a_squared.clone()).collect();
        for a2 in radii.into_iter().filter(|a| !a.is_zero()) {
            let ss = sphere_points(&rs, &lat, &a2).unwrap();
            assert!(verify_weyl_containment(&rs, &ss).unwrap().holds);
            if ss.spans_ambient {
                let g = symmetry_group(&rs, &lat, &ss).unwrap();
                assert!(g.weyl_count() >= 1);
                assert_eq!(g.order % g.weyl_count(), 0, "{s} {a2}");
            }
        }
    }
}

#[test]
fn collision_members_share_the_casimir_eigenvalue() {
    let rs = sys("B2");
    let lat = LatticeSpec::Weight.realize(&rs).unwrap();
    let e = enumerate_spherical(&rs, &lat, &(rs.delta_norm2() * q(100, 1))).unwrap();
    let classes = collisions(&e.records);
    assert!(classes.iter().any(|c| c.nondual_pair_exists));
    for c in classes {
        assert!(c.records.iter().all(|r| r.lambda == c.lambda));
    }
}

#[test]
fn quaternionic_operators_have_doubled_spectra() {
    for k in default_schedule().into_iter().take(5) {
        for m in [1u32, 3, 5, 7] {
            let b = d_operator(&k, m).unwrap();
            assert_eq!(b.rep_type, RepType::Quaternionic);
            assert_eq!(rep_type(m).unwrap(), RepType::Quaternionic);
            let sq = spectra_core::exactmath::is_perfect_square(&b.char_poly).unwrap();
            assert!(sq.is_square, "m = {m}, kappa = {k}");
        }
    }
}
