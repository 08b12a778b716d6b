use proptest::prelude::*;
use spectral_core::algebra::{RingMode, Scalar};
use spectral_core::curve::{lambert_local_data, parse_curve_spec, vertex_local_data, LocalCurveData};

fn frac() -> impl Strategy<Value = Scalar> {
    (-20i64..20, 1i64..9).prop_map(|(n, d)| Scalar::frac(n, d))
}

fn curve() -> impl Strategy<Value = LocalCurveData> {
    (1i64..9, prop::collection::vec(frac(), 0..4), prop::collection::vec((0usize..4, 0usize..4, frac()), 0..4)).prop_map(
        |(t3, ts, bs)| {
            let mut t = vec![(3, Scalar::int(t3))];
            t.extend(ts.into_iter().enumerate().map(|(i, v)| (i + 4, v)));
            let mut b = std::collections::BTreeMap::new();
            for (k, l, v) in bs {
                b.insert((k.min(l), k.max(l)), v);
            }
            let b = b.into_iter().map(|((k, l), v)| (k, l, v));
            LocalCurveData::new(RingMode::Rational, t, b, None, None, None).unwrap()
        },
    )
}

proptest! {
    #[test]
    fn spec_round_trip(c in curve()) {
        let text = c.to_spec().to_json();
        let back = parse_curve_spec(&text).unwrap();
        prop_assert_eq!(back.to_spec().to_json(), text);
        prop_assert_eq!(back.fingerprint(), c.fingerprint());
    }
}

#[test]
fn lambert_data_is_independent_of_truncation() {
    let small = lambert_local_data(9, 8).unwrap();
    let large = lambert_local_data(15, 14).unwrap();
    for k in 2..=9 {
        assert_eq!(small.t(k), large.t(k), "t_{k}");
    }
    for k in 0..=8 {
        for l in 0..=8 {
            assert_eq!(small.b(k, l), large.b(k, l), "B_{k},{l}");
        }
    }
}

#[test]
fn vertex_data_is_independent_of_truncation() {
    let f = num_rational::BigRational::new(2.into(), 3.into());
    let small = vertex_local_data(&f, 7, 6).unwrap();
    let large = vertex_local_data(&f, 11, 10).unwrap();
    for k in 2..=7 {
        assert_eq!(small.t(k), large.t(k), "t_{k}");
    }
    for k in 0..=6 {
        for l in 0..=6 {
            assert_eq!(small.b(k, l), large.b(k, l), "B_{k},{l}");
        }
    }
}

#[test]
fn unknown_fields_rejected() {
    assert!(parse_curve_spec(r#"{"ring": {"mode": "rational"}, "t": [[3, "1"]], "colour": "red"}"#).is_err());
    assert!(parse_curve_spec(r#"{"ring": {"mode": "quadratic", "r": "4"}, "t": [[3, "1"]]}"#).is_err());
}
