use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use spectral_core::algebra::{Poly, RingMode, Scalar, Series};

fn rat() -> impl Strategy<Value = BigRational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn rational() -> impl Strategy<Value = Scalar> {
    rat().prop_map(Scalar::rat)
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(rat(), 1..4).prop_map(Poly::from_coeffs)
}

fn ratfun() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_filter_map("nonzero denominator", |(n, d)| (!d.is_zero()).then(|| Scalar::ratfun(n, d)))
}

/// Q(sqrt 2)
fn quadratic() -> impl Strategy<Value = Scalar> {
    (rat(), rat()).prop_map(|(a, b)| Scalar::quad(a, b, BigRational::from_integer(BigInt::from(2))))
}

fn ring_axioms(a: &Scalar, b: &Scalar, c: &Scalar) {
    assert_eq!((a + b) + c, a + (b + c));
    assert_eq!((a * b) * c, a * (b * c));
    assert_eq!(a * (b + c), a * b + a * c);
    assert_eq!(a * b, b * a);
    assert_eq!((a - b) + b, a.clone());
    if let Some(inv) = a.inv() {
        assert!((a * &inv).is_one());
    } else {
        assert!(a.is_zero());
    }
}

fn laurent() -> impl Strategy<Value = Series> {
    (-4i64..1, prop::collection::vec(rational(), 1..8)).prop_map(|(min, c)| Series::new('z', min, c, 10))
}

fn taylor() -> impl Strategy<Value = Series> {
    prop::collection::vec(rational(), 1..8).prop_map(|c| Series::from_coeffs('z', c, 8))
}

fn same_up_to(a: &Series, b: &Series, order: i64) -> bool {
    let low = a.min_exponent().min(b.min_exponent());
    (low..order).all(|e| a.coeff(e).unwrap() == b.coeff(e).unwrap())
}

proptest! {
    #[test]
    fn rational_ring(a in rational(), b in rational(), c in rational()) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn ratfun_ring(a in ratfun(), b in ratfun(), c in ratfun()) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn quadratic_ring(a in quadratic(), b in quadratic(), c in quadratic()) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn canonical_strings_round_trip(a in ratfun(), b in quadratic()) {
        prop_assert_eq!(Scalar::parse(&a.to_canonical(), &RingMode::RatFun).unwrap(), a);
        prop_assert_eq!(Scalar::parse(&b.to_canonical(), &b.mode()).unwrap(), b);
    }

    #[test]
    fn series_product_is_associative(a in laurent(), b in laurent(), c in laurent()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        let order = left.order().min(right.order());
        prop_assert!(same_up_to(&left, &right, order));
    }

    #[test]
    fn exact_differentials_have_no_residue(f in laurent()) {
        prop_assert!(f.derivative().residue().unwrap().is_zero());
    }

    #[test]
    fn exp_inverts_log(f in taylor()) {
        let g = f.sub(&Series::monomial('z', f.coeff(0).unwrap(), 0, 8)).unwrap();
        let back = g.exp().unwrap().sub(&Series::one('z', 8)).unwrap().log1p().unwrap();
        prop_assert!(same_up_to(&back, &g, 8));
    }
}
