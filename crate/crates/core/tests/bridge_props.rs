use proptest::prelude::*;
use spectral_core::algebra::{RingMode, Scalar};
use spectral_core::bridge::{bhat_from_b, bhat_genfun, curve_from_class, dual_times, wp_volume};
use spectral_core::curve::LocalCurveData;
use spectral_core::harness::crosscheck;
use std::collections::BTreeMap;

fn frac() -> impl Strategy<Value = Scalar> {
    (-9i64..10, 1i64..7).prop_map(|(n, d)| Scalar::frac(n, d))
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    frac().prop_filter("nonzero", |x| !x.is_zero())
}

const D: usize = 4;

fn bhat() -> impl Strategy<Value = BTreeMap<(usize, usize), Scalar>> {
    prop::collection::btree_map((0usize..3, 0usize..3).prop_map(|(k, l)| (k.min(l), k.max(l))), frac(), 0..5)
        .prop_map(|m| m.into_iter().filter(|((k, l), v)| k + l < D && !v.is_zero()).collect())
}

fn odd_times(len: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(frac(), len).prop_map(|v| {
        v.into_iter().enumerate().map(|(i, x)| if i % 2 == 0 { x } else { Scalar::zero() }).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn class_to_curve_and_back(p in nonzero(), t in prop::collection::vec(frac(), D), b in bhat()) {
        let c = curve_from_class(&p, &t, &b, D).unwrap();
        let (p2, t2) = dual_times(&c, D).unwrap();
        prop_assert_eq!(p2, p);
        prop_assert_eq!(t2, t);
        prop_assert_eq!(bhat_from_b(&c, D - 1).unwrap(), b);
    }

    #[test]
    fn generating_function_is_symmetric_and_polynomial(t in odd_times(7)) {
        let b = bhat_genfun(&t, 6).unwrap();
        prop_assert!(b.keys().all(|&(k, l)| k <= l && k + l <= 6));
        // B^_{0,0} = t~_1
        prop_assert_eq!(b.get(&(0, 0)).cloned().unwrap_or_else(Scalar::zero), t[0].clone());
    }

    #[test]
    fn generating_function_rejects_even_times(t in odd_times(5), j in 0usize..2, e in nonzero()) {
        let mut t = t;
        t[2 * j + 1] = e;
        prop_assert!(bhat_genfun(&t, 5).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn deformed_airy_without_bergman_deformation(t3 in nonzero(), ts in prop::collection::vec(frac(), 3)) {
        let mut t = vec![(3, t3)];
        t.extend(ts.into_iter().enumerate().map(|(i, v)| (2 * i + 5, v)));
        let c = LocalCurveData::new(RingMode::Rational, t, Vec::new(), None, None, None).unwrap();
        prop_assert!(bhat_from_b(&c, 4).unwrap().is_empty());
        let report = crosscheck(&c, 2).unwrap();
        prop_assert!(report.passed(), "{}", report.render(false));
    }
}

#[test]
fn volumes_are_symmetric_of_the_right_degree() {
    for (g, n) in [(0usize, 3usize), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1)] {
        let v = wp_volume(g, n).unwrap();
        assert!(v.is_symmetric(), "V_{g},{n}");
        for (d0, d) in v.coefficients().keys() {
            assert_eq!(d0 + d.iter().sum::<usize>(), 3 * g + n - 3, "V_{g},{n} term ({d0}, {d:?})");
        }
    }
}
