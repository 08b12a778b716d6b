//! Closed-form class data of the vertex, Lambert and Weil–Petersson curves.
//!
//! The large-`u` Stirling expansion turns the Laplace transforms into
//! Bernoulli series, `c_k = B_{2k} / (2k (2k-1))`.

use super::{bhat_genfun, leg_weight_from_bhat, BridgeError, Provenance, SpecialClassData};
use crate::algebra::{stirling_coefficient, Scalar};
use crate::intersect::{ClassData, Prefactor};

/// Sign of the Lambert times `t~_{2k-1} = LAMBERT_SIGN * c_k`, as produced
/// by the dual-time transform of the Lambert jet (`t~_1 = -3 t_5 / (2 t_3) = 1/12`).
pub const LAMBERT_SIGN: i8 = 1;

fn odd_times(max: usize, mut coeff: impl FnMut(usize) -> Scalar) -> Vec<Scalar> {
    let mut t = vec![Scalar::zero(); max];
    for k in 1..=max.div_ceil(2) {
        t[2 * k - 2] = coeff(k);
    }
    t
}

fn from_times(prefactor: Prefactor, t: Vec<Scalar>, degree: usize, provenance: Provenance) -> Result<SpecialClassData, BridgeError> {
    let edge = bhat_genfun(&t, degree.saturating_sub(1))?;
    let class = ClassData::new(prefactor, t, edge.into_iter().map(|((k, l), v)| (k, l, v)))?;
    let leg_weight = leg_weight_from_bhat(&class, degree);
    Ok(SpecialClassData { class, provenance, leg_weight })
}

fn check_framing(f: &Scalar) -> Result<Scalar, BridgeError> {
    let f1 = f + &Scalar::one();
    if f.is_zero() || f1.is_zero() {
        return Err(BridgeError::DegenerateFraming(f.to_string()));
    }
    Ok(f1)
}

/// `t~_1 .. t~_max` of the framed vertex:
/// `t~_{2k-1} = c_k ((f+1)^(1-2k) - f^(1-2k) - 1)`, `t~_{2k} = 0`.
pub fn vertex_times(f: &Scalar, max: usize) -> Result<Vec<Scalar>, BridgeError> {
    let f1 = check_framing(f)?;
    Ok(odd_times(max, |k| {
        let e = 1 - 2 * k as i64;
        Scalar::rat(stirling_coefficient(k)) * (f1.pow(e) - f.pow(e) - Scalar::one())
    }))
}

/// Vertex class data with framing `f` (rational or a rational function of
/// `q`), good up to dimension `degree`. Only `p^2 = 8 / (f (f+1))` is
/// stored.
pub fn vertex_class(f: &Scalar, degree: usize) -> Result<SpecialClassData, BridgeError> {
    let f1 = check_framing(f)?;
    let t = vertex_times(f, degree)?;
    let p2 = Scalar::int(8) / (f * &f1);
    let framing = match f {
        Scalar::Fun(r) if *r.den() == crate::algebra::Poly::one() => r.num().to_string(),
        _ => f.to_string(),
    };
    from_times(Prefactor::PSquared(p2), t, degree, Provenance::BernoulliVertex { framing })
}

/// Lambert class data: `t~_{2k-1} = c_k`, `p^2 = -8`.
pub fn lambert_class(degree: usize) -> Result<SpecialClassData, BridgeError> {
    let sign = Scalar::int(LAMBERT_SIGN as i64);
    let t = odd_times(degree, |k| &sign * Scalar::rat(stirling_coefficient(k)));
    from_times(Prefactor::PSquared(Scalar::int(-8)), t, degree, Provenance::BernoulliLambert { sign: LAMBERT_SIGN })
}

/// Weil–Petersson class data: `t~_1 = q` (`q = pi^2`), no boundary part,
/// `p = 2`.
pub fn wp_class() -> SpecialClassData {
    let class = ClassData::new(Prefactor::P(Scalar::int(2)), vec![Scalar::q()], []).expect("no B-hat");
    SpecialClassData { class, provenance: Provenance::WeilPetersson, leg_weight: vec![Scalar::one()] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridge::{bhat_from_b, dual_times};
    use crate::curve::{lambert_local_data, vertex_local_data, weil_petersson_local_data};
    use crate::intersect::{hodge_times, mainformula_tensor};
    use crate::toprec::correlator;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn subst(x: &Scalar, f: &Scalar) -> Scalar {
        // evaluate a rational function of q at another scalar
        match x {
            Scalar::Fun(r) => {
                let ev = |p: &crate::algebra::Poly| {
                    p.coeffs().iter().rev().fold(Scalar::zero(), |acc, c| acc * f + Scalar::rat(c.clone()))
                };
                ev(r.num()) / ev(r.den())
            }
            other => other.clone(),
        }
    }

    #[test]
    fn framing_symmetries() {
        let q = Scalar::q();
        let t = vertex_times(&q, 9).unwrap();
        let t_m = vertex_times(&(-&q - Scalar::one()), 9).unwrap();
        let t_inv = vertex_times(&q.inv().unwrap(), 9).unwrap();
        assert_eq!(t, t_m);
        for (i, (a, b)) in t.iter().zip(&t_inv).enumerate() {
            assert_eq!(*b, q.pow(i as i64 + 1) * a, "k={}", i + 1);
        }
        let c = vertex_class(&q, 5).unwrap().class;
        let c_inv = vertex_class(&q.inv().unwrap(), 5).unwrap().class;
        for k in 0..=4 {
            for l in 0..=4 - k {
                assert_eq!(c_inv.bhat(k, l), q.pow((k + l + 1) as i64) * c.bhat(k, l));
            }
        }
        assert!(matches!(vertex_class(&Scalar::int(-1), 3), Err(BridgeError::DegenerateFraming(_))));
    }

    #[test]
    fn vertex_is_a_triple_hodge_product() {
        let q = Scalar::q();
        let alphas = [Scalar::one(), q.clone(), -&q - Scalar::one()];
        assert_eq!(vertex_times(&q, 7).unwrap(), hodge_times(&alphas, 7).unwrap());
        // and the symbolic times specialize to the rational ones
        let t = vertex_times(&q, 5).unwrap();
        let t2 = vertex_times(&Scalar::int(2), 5).unwrap();
        for (a, b) in t.iter().zip(&t2) {
            assert_eq!(subst(a, &Scalar::int(2)), *b);
        }
    }

    #[test]
    fn vertex_matches_taylor_data() {
        for f in [1i64, 2, 3] {
            let fr = BigRational::from_integer(BigInt::from(f));
            let curve = vertex_local_data(&fr, 9, 8).unwrap();
            let (p, t) = dual_times(&curve, 3).unwrap();
            let class = vertex_class(&Scalar::int(f), 4).unwrap();
            assert_eq!(t, vertex_times(&Scalar::int(f), 3).unwrap(), "f={f}");
            assert_eq!(Prefactor::PSquared(&p * &p), class.class.prefactor);
            let from_curve = bhat_from_b(&curve, 3).unwrap();
            for ((k, l), v) in &from_curve {
                assert_eq!(*v, class.class.bhat(*k, *l), "f={f} ({k},{l})");
            }
            for (k, l, v) in class.class.bhat_entries() {
                if k + l <= 3 {
                    assert_eq!(from_curve.get(&(k, l)), Some(v));
                }
            }
        }
    }

    #[test]
    fn lambert_matches_taylor_data() {
        let curve = lambert_local_data(11, 10).unwrap();
        let class = lambert_class(4).unwrap();
        let (p, t) = dual_times(&curve, 4).unwrap();
        assert_eq!(t, class.class.times().iter().cloned().chain(std::iter::repeat(Scalar::zero())).take(4).collect::<Vec<_>>());
        assert_eq!(Prefactor::PSquared(&p * &p), class.class.prefactor);
        let from_curve = bhat_from_b(&curve, 3).unwrap();
        for k in 0..=3 {
            for l in 0..=3 - k {
                assert_eq!(from_curve.get(&(k.min(l), k.max(l))).cloned().unwrap_or_else(Scalar::zero), class.class.bhat(k, l));
            }
        }
        assert_eq!(class.class.t(1), Scalar::frac(1, 12));
        assert_eq!(class.class.t(3), Scalar::frac(-1, 360));
        // even Euler characteristic: the squared prefactor suffices
        let direct = correlator(&curve, 1, 2).unwrap();
        let formula = mainformula_tensor(1, 2, &class.class).unwrap();
        for key in direct.all_keys().iter().chain(formula.all_keys().iter()) {
            assert_eq!(direct.get(key), formula.get(key), "{key:?}");
        }
    }

    #[test]
    fn large_framing_limit() {
        // t~_{2k-1} -> -c_k as f -> infinity: the leading q^0 term of the
        // expansion in 1/q is the Lambert value with the opposite sign
        let q = Scalar::q();
        let t = vertex_times(&q, 5).unwrap();
        let lam = lambert_class(5).unwrap();
        for k in [1usize, 3, 5] {
            let at_infinity = subst(&t[k - 1], &q.inv().unwrap()).eval_q(&BigRational::from_integer(0.into())).unwrap();
            assert_eq!(at_infinity, -lam.class.t(k));
        }
    }

    #[test]
    fn wp_class_is_the_curve_transform() {
        let (_, t) = dual_times(&weil_petersson_local_data(9), 3).unwrap();
        assert_eq!(t[0], wp_class().class.t(1));
    }
}
