use proptest::prelude::*;

use leibniz_lab::derivations::{derivation_space, is_derivation};
use leibniz_lab::exactlinalg::elim::{rref_fraction_free, rref_gauss_jordan};
use leibniz_lab::exactlinalg::{engel_all_nilpotent, Matrix, Scalar};
use leibniz_lab::families::{
    build_f1, build_f2, build_f3, F1Params, F2Params, F3Params, FamilyParams,
};
use leibniz_lab::isomorphism::{transform_f3, BasisChangeF3};
use leibniz_lab::json::{load_algebra, params_from_json, params_to_json, store_algebra};
use num_bigint::BigInt;
use num_rational::BigRational;

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Scalar::ratio(p, q))
}

fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            Matrix::new(r, c, v.into_iter().map(Scalar::from_int).collect()).unwrap()
        })
    })
}

fn f1_params(n_lo: usize, n_hi: usize) -> impl Strategy<Value = F1Params> {
    (n_lo..=n_hi).prop_flat_map(|n| {
        (
            prop::collection::vec(small_rational(), n - 2),
            small_rational(),
        )
            .prop_map(move |(a, t)| F1Params::new(n, a, t).unwrap())
    })
}

fn f2_params(n_lo: usize, n_hi: usize) -> impl Strategy<Value = F2Params> {
    (n_lo..=n_hi).prop_flat_map(|n| {
        (
            prop::collection::vec(small_rational(), n - 2),
            small_rational(),
        )
            .prop_map(move |(b, g)| F2Params::new(n, b, g).unwrap())
    })
}

fn f3_params(n_lo: usize, n_hi: usize) -> impl Strategy<Value = F3Params> {
    (
        n_lo..=n_hi,
        small_rational(),
        small_rational(),
        small_rational(),
    )
        .prop_map(|(n, a, b, c)| F3Params::new(n, a, b, c, 0).unwrap())
}

fn quadratic() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, -5i64..=5, 1i64..=3).prop_map(|(a, b, q)| {
        Scalar::quadratic(
            BigRational::new(BigInt::from(a), BigInt::from(q)),
            BigRational::from_integer(BigInt::from(b)),
            5,
        )
        .unwrap()
    })
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(small_rational(), dim)
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

proptest! {
    #[test]
    fn rank_plus_nullity_is_column_count(m in int_matrix(6, 7)) {
        let rank = m.rank().unwrap();
        let null = m.nullspace_basis().unwrap();
        prop_assert_eq!(rank + null.len(), m.cols());
        for v in &null {
            for r in 0..m.rows() {
                prop_assert!(dot(m.row(r), v).is_zero());
            }
        }
    }

    #[test]
    fn fraction_free_matches_gauss_jordan(m in int_matrix(6, 6)) {
        prop_assert_eq!(rref_fraction_free(&m), rref_gauss_jordan(&m));
    }

    #[test]
    fn quadratic_norm_is_multiplicative(x in quadratic(), y in quadratic()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!(&x * &x.conjugate(), Scalar::from_rational(x.norm()));
        if let Some(inv) = x.inverse() {
            prop_assert!((&x * &inv).is_one());
        } else {
            prop_assert!(x.is_zero());
        }
    }

    #[test]
    fn bracket_is_bilinear(
        (p, vs) in f1_params(3, 7).prop_flat_map(|p| {
            let dim = p.n() + 1;
            (Just(p), prop::collection::vec(vector(dim), 3))
        }),
        a in small_rational(),
        b in small_rational(),
    ) {
        let l = build_f1(&p).unwrap();
        let (x, y, z) = (&vs[0], &vs[1], &vs[2]);
        let comb: Vec<Scalar> = x.iter().zip(y).map(|(u, v)| &(&a * u) + &(&b * v)).collect();
        let left = l.bracket(&comb, z).unwrap();
        let bx = l.bracket(x, z).unwrap();
        let by = l.bracket(y, z).unwrap();
        let right: Vec<Scalar> = bx.iter().zip(&by).map(|(u, v)| &(&a * u) + &(&b * v)).collect();
        prop_assert_eq!(left, right);
        let left = l.bracket(z, &comb).unwrap();
        let bx = l.bracket(z, x).unwrap();
        let by = l.bracket(z, y).unwrap();
        let right: Vec<Scalar> = bx.iter().zip(&by).map(|(u, v)| &(&a * u) + &(&b * v)).collect();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn f3_changes_invert(p in f3_params(3, 9), a0 in 1i64..=3, a1 in -3i64..=3, b1 in -3i64..=3) {
        prop_assume!(b1 != 0);
        let c = BasisChangeF3::from_ints(a0, a1, b1);
        let there = transform_f3(&p, &c).unwrap();
        prop_assert_eq!(transform_f3(&there, &c.inverse().unwrap()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn first_family_tables_are_leibniz_and_filiform(p in f1_params(3, 10)) {
        let l = build_f1(&p).unwrap();
        prop_assert!(l.check_leibniz().is_ok());
        prop_assert!(l.is_filiform().unwrap());
        let dims = l.lower_central_dims().unwrap();
        prop_assert!(dims.windows(2).all(|w| w[1] < w[0]));
        prop_assert_eq!(*dims.last().unwrap(), 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn other_families_are_leibniz_and_filiform(p in f2_params(3, 9), q in f3_params(3, 9)) {
        for l in [build_f2(&p).unwrap(), build_f3(&q).unwrap()] {
            prop_assert!(l.is_leibniz());
            prop_assert!(l.is_filiform().unwrap());
        }
    }

    #[test]
    fn json_round_trips(p in f1_params(3, 8), q in f2_params(3, 8)) {
        for fp in [FamilyParams::F1(p), FamilyParams::F2(q)] {
            prop_assert_eq!(&params_from_json(&params_to_json(&fp)).unwrap(), &fp);
            let l = fp.build().unwrap();
            let text = store_algebra(&l);
            prop_assert_eq!(load_algebra(&text).unwrap(), l);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn derivation_basis_rechecks(p in f1_params(3, 7), q in f2_params(3, 7), r in f3_params(3, 7)) {
        for l in [build_f1(&p).unwrap(), build_f2(&q).unwrap(), build_f3(&r).unwrap()] {
            let der = derivation_space(&l);
            prop_assert!(der.dim() >= 1);
            for d in &der.basis {
                prop_assert!(is_derivation(&l, d).unwrap());
            }
        }
    }

    #[test]
    fn engel_flag_implies_nilpotent_combinations(
        p in f1_params(4, 7),
        coeffs in prop::collection::vec(-3i64..=3, 16),
    ) {
        let der = derivation_space(&build_f1(&p).unwrap());
        if engel_all_nilpotent(&der.basis).unwrap() {
            let n = der.basis[0].rows();
            let mut acc = Matrix::zeros(n, n);
            for (b, c) in der.basis.iter().zip(coeffs.iter().cycle()) {
                acc = acc.add(&b.scale(&Scalar::from_int(*c))).unwrap();
            }
            prop_assert!(acc.is_nilpotent().unwrap());
            for b in &der.basis {
                prop_assert!(b.is_nilpotent().unwrap());
            }
        }
    }
}
