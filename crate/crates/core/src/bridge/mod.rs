//! From curve data to class data, and the enumerative outputs assembled on
//! top of the class side.
//!
//! The Laplace transform of `y dx` at the branchpoint is encoded by
//! `S(u) = 2 sum_k (2k+1)!! 2^-k t_{2k+3} u^-k`; its constant term is the
//! prefactor `p = 2 t_3` and `-log(S / p)` gives the dual times `t~_k`.
//! The even Taylor coefficients of the Bergman kernel give `B^`.

mod outputs;
mod special;

pub use outputs::{
    elsv_hurwitz, mv_coefficient, mv_residue_oracle, wp_volume, Partition, WpVolume,
};
pub use special::{lambert_class, vertex_class, vertex_times, wp_class, LAMBERT_SIGN};

use crate::algebra::{odd_double_factorial, Scalar, Series, SeriesError};
use crate::curve::{CurveError, LocalCurveData};
use crate::intersect::{exponential_edge, ClassData, IntersectError, Prefactor};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BridgeError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Intersect(#[from] IntersectError),
    #[error("series arithmetic failed: {0}")]
    Series(String),
    #[error("t_3 = 0: the dual times are undefined")]
    ZeroT3,
    #[error("framing {0} is degenerate (f must not be 0 or -1)")]
    DegenerateFraming(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("framing must be a positive integer here, got {0}")]
    NonIntegerFraming(String),
    #[error("(g, n) = ({g}, {n}) is not stable")]
    Unstable { g: usize, n: usize },
}

impl From<SeriesError> for BridgeError {
    fn from(e: SeriesError) -> Self {
        BridgeError::Series(e.to_string())
    }
}

/// Where a piece of class data came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    SchurFromCurve,
    /// `sign` is the sign in `t~_{2k-1} = sign * B_{2k} / (2k (2k-1))`.
    BernoulliLambert { sign: i8 },
    BernoulliVertex { framing: String },
    /// Weil–Petersson, `pi^2` carried as `q`.
    WeilPetersson,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::SchurFromCurve => write!(f, "schur-from-curve"),
            Provenance::BernoulliLambert { sign } => write!(f, "bernoulli-lambert(sign={sign:+})"),
            Provenance::BernoulliVertex { framing } => write!(f, "bernoulli-vertex({framing})"),
            Provenance::WeilPetersson => write!(f, "wp(pi^2)"),
        }
    }
}

/// Class data with its origin. `class` has unit leg weight, which is what
/// the correlator tensors of the curve see; `leg_weight` is
/// `1 - sum_k B^_{k,0} psi^(k+1)`, used by the enumerative formulas.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialClassData {
    pub class: ClassData,
    pub provenance: Provenance,
    pub leg_weight: Vec<Scalar>,
}

impl SpecialClassData {
    /// The class with `leg_weight` applied at every marked point.
    pub fn weighted(&self) -> ClassData {
        self.class.clone().with_leg_weight(self.leg_weight.clone())
    }
}

/// `(p, [t~_1 .. t~_K])` of a curve.
pub fn dual_times(curve: &LocalCurveData, k: usize) -> Result<(Scalar, Vec<Scalar>), BridgeError> {
    let t3 = curve.t(3);
    if t3.is_zero() {
        return Err(BridgeError::ZeroT3);
    }
    let mut coeffs = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let c = Scalar::big(odd_double_factorial(j + 1)) / Scalar::big(BigInt::from(1) << j);
        coeffs.push(Scalar::int(2) * c * curve.t_checked(2 * j + 3)?);
    }
    let p = coeffs[0].clone();
    // S / p - 1 in the variable v = 1/u
    let mut rel: Vec<Scalar> = coeffs.iter().map(|c| c / &p).collect();
    rel[0] = Scalar::zero();
    let log = Series::from_coeffs('v', rel, k as i64).log1p()?;
    let t = (1..=k).map(|j| log.coeff(j as i64).map(|c| -c)).collect::<Result<Vec<_>, _>>()?;
    Ok((p, t))
}

/// `B^_{k,l} = (2k-1)!! (2l-1)!! 2^(-k-l-1) B_{2k,2l}` for `k + l <= max`,
/// keyed with `k <= l`. Odd-index entries of `B` do not enter.
pub fn bhat_from_b(curve: &LocalCurveData, max: usize) -> Result<BTreeMap<(usize, usize), Scalar>, BridgeError> {
    let mut out = BTreeMap::new();
    for k in 0..=max / 2 {
        for l in k..=max - k {
            let b = curve.b_checked(2 * k, 2 * l)?;
            if b.is_zero() {
                continue;
            }
            let c = Scalar::big(odd_double_factorial(k) * odd_double_factorial(l))
                / Scalar::big(BigInt::from(1) << (k + l + 1));
            out.insert((k, l), c * b);
        }
    }
    Ok(out)
}

/// `B^_{k,l}` for `k + l <= max` from the generating function
/// `(1 - exp(-g(u) - g(v))) / (u + v)`, `g(u) = sum t~_k u^k`. The division
/// is exact only for odd `g`.
pub fn bhat_genfun(t: &[Scalar], max: usize) -> Result<BTreeMap<(usize, usize), Scalar>, BridgeError> {
    exponential_edge(t, max).ok_or(BridgeError::Intersect(IntersectError::EvenTimes))
}

/// Class data of a one-branchpoint curve, good for every `(g, n)` with
/// `3g - 3 + n <= degree`.
pub fn class_from_curve(curve: &LocalCurveData, degree: usize) -> Result<SpecialClassData, BridgeError> {
    let (p, t) = dual_times(curve, degree)?;
    let bhat = bhat_from_b(curve, degree.saturating_sub(1))?;
    let class = ClassData::new(Prefactor::P(p), t, bhat.into_iter().map(|((k, l), v)| (k, l, v)))?;
    let leg_weight = leg_weight_from_bhat(&class, degree);
    Ok(SpecialClassData { class, provenance: Provenance::SchurFromCurve, leg_weight })
}

/// A deformed Airy curve whose transforms are the given `p`, `t~_1..t~_D`
/// and `B^` (entries with `k + l <= D`), with the order bounds needed for
/// every correlator of dimension at most `D`. Inverse of [`dual_times`] and
/// [`bhat_from_b`].
pub fn curve_from_class(
    p: &Scalar,
    t: &[Scalar],
    bhat: &BTreeMap<(usize, usize), Scalar>,
    d: usize,
) -> Result<LocalCurveData, BridgeError> {
    let mut g = vec![Scalar::zero()];
    g.extend((1..=d).map(|k| t.get(k - 1).map(|x| -x).unwrap_or_else(Scalar::zero)));
    let s = Series::from_coeffs('v', g, d as i64).exp()?;
    let mut times = Vec::new();
    for k in 0..=d {
        let c = Scalar::big(BigInt::from(1) << k) / (Scalar::int(2) * Scalar::big(odd_double_factorial(k + 1)));
        times.push((2 * k + 3, p * &s.coeff(k as i64)? * c));
    }
    let mut b = Vec::new();
    for ((k, l), v) in bhat {
        if k + l > d {
            continue;
        }
        let c = Scalar::big(BigInt::from(1) << (k + l + 1)) / Scalar::big(odd_double_factorial(*k) * odd_double_factorial(*l));
        b.push((2 * k, 2 * l, c * v));
    }
    let mut ring = crate::algebra::RingMode::Rational;
    for v in times.iter().map(|(_, v)| v).chain(b.iter().map(|(_, _, v)| v)) {
        if v.mode() != crate::algebra::RingMode::Rational {
            ring = v.mode();
        }
    }
    Ok(LocalCurveData::new(ring, times, b, None, Some(2 * d + 3), Some(2 * d + 2))?.with_name("from-class"))
}

pub(crate) fn leg_weight_from_bhat(class: &ClassData, degree: usize) -> Vec<Scalar> {
    let mut w = vec![Scalar::one()];
    for k in 0..degree {
        w.push(-class.bhat(k, 0));
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RingMode;
    use crate::curve::{lambert_local_data, weil_petersson_local_data};

    fn curve(t: &[(usize, Scalar)], b: &[(usize, usize, Scalar)]) -> LocalCurveData {
        LocalCurveData::new(RingMode::Rational, t.to_vec(), b.to_vec(), None, None, None).unwrap()
    }

    #[test]
    fn airy_has_no_dual_times() {
        let (p, t) = dual_times(&curve(&[(3, Scalar::one())], &[]), 4).unwrap();
        assert_eq!(p, Scalar::int(2));
        assert!(t.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn first_dual_time() {
        let c = curve(&[(3, Scalar::frac(2, 3)), (5, Scalar::frac(-1, 7))], &[]);
        let (p, t) = dual_times(&c, 2).unwrap();
        assert_eq!(p, Scalar::frac(4, 3));
        assert_eq!(t[0], Scalar::frac(3, 7) / Scalar::frac(4, 3));
    }

    #[test]
    fn bhat_normalization() {
        let c = curve(&[(3, Scalar::one())], &[(0, 0, Scalar::int(6)), (2, 0, Scalar::int(8)), (1, 0, Scalar::int(5))]);
        let b = bhat_from_b(&c, 3).unwrap();
        assert_eq!(b[&(0, 0)], Scalar::int(3));
        assert_eq!(b[&(0, 1)], Scalar::int(2));
        assert_eq!(b.len(), 2);
        assert!(bhat_from_b(&curve(&[(3, Scalar::one())], &[]), 3).unwrap().is_empty());
    }

    #[test]
    fn class_to_curve_round_trip() {
        let t = vec![Scalar::frac(1, 3), Scalar::frac(-2, 5), Scalar::int(3)];
        let bhat: BTreeMap<_, _> = [((0, 0), Scalar::frac(1, 7)), ((0, 2), Scalar::int(2)), ((1, 1), Scalar::q())].into();
        let c = curve_from_class(&Scalar::frac(3, 2), &t, &bhat, 3).unwrap();
        let (p, t2) = dual_times(&c, 3).unwrap();
        assert_eq!(p, Scalar::frac(3, 2));
        assert_eq!(t2, t);
        assert_eq!(bhat_from_b(&c, 3).unwrap(), bhat);
    }

    #[test]
    fn genfun_rejects_even_times() {
        assert!(bhat_genfun(&[], 4).unwrap().is_empty());
        assert!(bhat_genfun(&[Scalar::one(), Scalar::one()], 3).is_err());
    }

    #[test]
    fn lambert_sign_from_taylor_data() {
        let c = lambert_local_data(9, 4).unwrap();
        let (p, t) = dual_times(&c, 3).unwrap();
        assert_eq!(&p * &p, Scalar::int(-8));
        assert_eq!(t[0], Scalar::frac(1, 12));
        assert!(t[1].is_zero());
        assert_eq!(t[2], Scalar::frac(-1, 360));
    }

    #[test]
    fn weil_petersson_dual_times() {
        let (p, t) = dual_times(&weil_petersson_local_data(11), 4).unwrap();
        assert_eq!(p, Scalar::int(2));
        assert_eq!(t[0], Scalar::q());
        assert!(t[1..].iter().all(|x| x.is_zero()));
    }
}
