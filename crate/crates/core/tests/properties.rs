use num_traits::Zero;
use proptest::prelude::*;

use spectra_core::exactmath::{is_perfect_square, resultant, Matrix, Polynomial};
use spectra_core::rootsystem::{weyl_group, RootSystem};
use spectra_core::spectrum::casimir;
use spectra_core::spheresym::shifted_weyl_action;
use spectra_core::{Gaussian, GaussianMatrix, Rational, RationalPolynomial};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn poly_strategy(max_degree: usize) -> impl Strategy<Value = RationalPolynomial> {
    prop::collection::vec(-6i64..=6, 1..=max_degree + 1).prop_filter_map("nonconstant", |c| {
        let p = RationalPolynomial::from_i64s(&c);
        (p.degree().unwrap_or(0) >= 1).then_some(p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn resultant_vanishes_iff_common_factor(p in poly_strategy(4), r in poly_strategy(3)) {
        let res = resultant(&p, &r).unwrap();
        let common = p.gcd(&r).degree().unwrap_or(0) > 0;
        prop_assert_eq!(res.is_zero(), common);
    }

    #[test]
    fn resultant_of_products_with_shared_factor_is_zero(
        p in poly_strategy(2), a in poly_strategy(2), b in poly_strategy(2)
    ) {
        prop_assert!(resultant(&(&p * &a), &(&p * &b)).unwrap().is_zero());
    }

    #[test]
    fn squares_are_recognized(p in poly_strategy(4)) {
        let sq = &p * &p;
        let check = is_perfect_square(&sq).unwrap();
        prop_assert!(check.is_square);
        prop_assert_eq!(check.root.unwrap(), p.monic());
    }

    #[test]
    fn squarefree_decomposition_rebuilds_the_monic_input(p in poly_strategy(3), r in poly_strategy(2)) {
        let f = &(&p * &r) * &r;
        let parts = f.squarefree_decomposition().unwrap();
        let rebuilt = parts
            .iter()
            .enumerate()
            .fold(RationalPolynomial::one(), |acc, (i, a)| &acc * &a.pow(i as u32 + 1));
        prop_assert_eq!(rebuilt, f.monic());
        for a in &parts {
            prop_assert_eq!(a.gcd(&a.derivative(1)).degree(), Some(0));
        }
    }

    #[test]
    fn triangular_char_poly_is_the_product_of_diagonal_factors(
        diag in prop::collection::vec(-5i64..=5, 1..=4),
        upper in prop::collection::vec(-5i64..=5, 6),
    ) {
        let n = diag.len();
        let mut m = Matrix::<Rational>::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            m[(i, i)] = q(diag[i]);
            for j in i + 1..n {
                m[(i, j)] = q(upper[k % upper.len()]);
                k += 1;
            }
        }
        let want = diag
            .iter()
            .fold(RationalPolynomial::one(), |acc, d| &acc * &Polynomial::linear_factor(q(*d)));
        prop_assert_eq!(m.char_poly().unwrap(), want);
    }

    #[test]
    fn hermitian_char_poly_is_real(entries in prop::collection::vec(-4i64..=4, 9)) {
        let mut h = GaussianMatrix::zeros(3, 3);
        let mut k = 0;
        for i in 0..3 {
            h[(i, i)] = Gaussian::new(q(entries[k]), q(0));
            k += 1;
            for j in i + 1..3 {
                let z = Gaussian::new(q(entries[k]), q(entries[(k + 1) % 9]));
                h[(i, j)] = z.clone();
                h[(j, i)] = Gaussian::new(z.re, -z.im);
                k += 1;
            }
        }
        prop_assert!(h.is_hermitian());
        prop_assert!(h.char_poly().unwrap().coeffs().iter().all(|c| c.im.is_zero()));
    }

    #[test]
    fn shifted_weyl_action_preserves_the_sphere(
        sys in prop::sample::select(vec!["A2", "B2", "G2", "A3", "C3"]),
        labels in prop::collection::vec(-4i64..=6, 3),
        pick in 0usize..1000,
    ) {
        let rs = RootSystem::build(sys.parse().unwrap()).unwrap();
        let mu = rs.from_dynkin_i64(&labels[..rs.rank()]);
        let group = weyl_group(&rs).unwrap();
        let w = &group[pick % group.len()];
        let image = shifted_weyl_action(&rs, w, &mu);
        prop_assert_eq!(casimir(&rs, &image).0, casimir(&rs, &mu).0);
    }
}

#[test]
fn generic_scalar_core_runs_in_floating_point() {
    let m = Matrix::<f64>::from_rows(vec![vec![2.0, 1.0], vec![1.0, 3.0]]).unwrap();
    let p = m.char_poly().unwrap();
    let exact = Matrix::<Rational>::from_i64_rows(&[&[2, 1], &[1, 3]]).unwrap().char_poly().unwrap();
    for (a, b) in p.coeffs().iter().zip(exact.coeffs()) {
        let b = b.numer().to_string().parse::<f64>().unwrap() / b.denom().to_string().parse::<f64>().unwrap();
        assert!((a - b).abs() < 1e-12);
    }
    let single = Matrix::<f32>::identity(3);
    assert_eq!(single.det().unwrap(), 1.0f32);
}

#[test]
fn weyl_elements_preserve_the_gram_form_and_permute_roots() {
    for sys in ["A3", "B3", "C3", "D4", "G2", "BC2"] {
        let rs = RootSystem::build(sys.parse().unwrap()).unwrap();
        let roots: Vec<_> = rs.positive_roots().iter().map(|r| r.vector.clone()).collect();
        for w in weyl_group(&rs).unwrap() {
            for a in &roots {
                let wa = w.apply(a);
                assert_eq!(rs.norm2(&wa), rs.norm2(a), "{sys}");
                assert!(rs.is_root(&wa), "{sys}");
            }
        }
    }
}
