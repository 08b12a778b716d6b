//! Hodge classes through Mumford's formula.
//!
//! `Lambda(alpha) = sum_i lambda_i (-1/alpha)^i` has
//! `log Lambda(alpha) = -sum_k c_k alpha^(1-2k) (kappa_{2k-1} - sum_i psi_i^{2k-1} + 1/2 l_*(...))`
//! with `c_k = B_{2k} / (2k (2k-1))`. So a product of such classes is the
//! class data with `t~_{2k-1} = -sum_alpha c_k alpha^(1-2k)`, leg weight
//! `exp(-t~(psi))`, and edge `(1 - exp(-t~(psi) - t~(psi'))) / (psi + psi')`
//! once the boundary self-intersections are resummed.

use super::{ClassData, IntersectError, Prefactor};
use crate::algebra::{stirling_coefficient, BiSeries, Scalar, Series};
use std::collections::BTreeMap;

/// `t~_1 .. t~_max` for the product of `Lambda(alpha)` over `alphas`.
pub fn hodge_times(alphas: &[Scalar], max: usize) -> Result<Vec<Scalar>, IntersectError> {
    let mut inv = Vec::new();
    for a in alphas {
        inv.push(a.inv().ok_or(IntersectError::ZeroAlpha)?);
    }
    let mut t = vec![Scalar::zero(); max];
    for k in 1..=max.div_ceil(2) {
        let c = Scalar::rat(stirling_coefficient(k));
        let s: Scalar = inv.iter().map(|x| x.pow(2 * k as i64 - 1)).sum();
        t[2 * k - 2] = -c * s;
    }
    Ok(t)
}

/// Coefficients `[psi^k psi'^l]` of `(1 - exp(-t(psi) - t(psi'))) / (psi + psi')`
/// for `k + l <= degree`; `None` when the quotient is not polynomial.
pub fn exponential_edge(t: &[Scalar], degree: usize) -> Option<BTreeMap<(usize, usize), Scalar>> {
    let mut coeffs = vec![Scalar::zero()];
    coeffs.extend(t.iter().take(degree + 1).cloned());
    let s = BiSeries::separable_sum(&coeffs, &coeffs, degree + 1);
    let num = BiSeries::one(degree + 1).add(&s.scale(&-Scalar::one()).exp().scale(&-Scalar::one()));
    let q = num.div_by_sum()?;
    let mut out = BTreeMap::new();
    for k in 0..=degree {
        for l in k..=degree - k {
            let v = q.get(k, l);
            if !v.is_zero() {
                out.insert((k, l), v);
            }
        }
    }
    Some(out)
}

/// `exp(-t(psi))` up to `psi^degree`.
pub fn leg_exponential(t: &[Scalar], degree: usize) -> Vec<Scalar> {
    let mut coeffs = vec![Scalar::zero()];
    coeffs.extend(t.iter().take(degree).map(|x| -x));
    let s = Series::from_coeffs('p', coeffs, degree as i64);
    let e = if s.valuation() > degree as i64 { Series::one('p', degree as i64) } else { s.exp().expect("no constant term") };
    (0..=degree as i64).map(|j| e.coeff(j).expect("within order")).collect()
}

/// Class data of `prod_alpha Lambda(alpha)`, good for every `(g, n)` with
/// `3g - 3 + n <= degree`.
pub fn hodge_class_data(alphas: &[Scalar], degree: usize) -> Result<ClassData, IntersectError> {
    let t = hodge_times(alphas, degree)?;
    let edge = exponential_edge(&t, degree).ok_or(IntersectError::EvenTimes)?;
    let w = leg_exponential(&t, degree);
    Ok(ClassData::new(Prefactor::P(Scalar::one()), t, edge.into_iter().map(|((k, l), v)| (k, l, v)))?.with_leg_weight(w))
}

/// `<prod psi_i^{d_i} prod_alpha Lambda(alpha)>_{g,n}`.
pub fn hodge_class_correlator(g: usize, degrees: &[usize], alphas: &[Scalar]) -> Result<Scalar, IntersectError> {
    let n = degrees.len();
    if 2 * g + n <= 2 {
        return Err(IntersectError::Unstable { g, n });
    }
    let class = hodge_class_data(alphas, 3 * g + n - 3)?;
    Ok(super::boundary_class_correlator(g, degrees, &class))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_one_on_the_torus() {
        // <Lambda(q)>_{1,1} = <lambda_1> (-1/q) and <lambda_1>_{1,1} = 1/24
        let q = Scalar::q();
        let v = hodge_class_correlator(1, &[0], std::slice::from_ref(&q)).unwrap();
        assert_eq!(v, Scalar::frac(-1, 24) / q);
        assert_eq!(hodge_class_correlator(1, &[1], &[Scalar::int(7)]).unwrap(), Scalar::frac(1, 24));
    }

    #[test]
    fn lambda_g_squared_vanishes() {
        // Mumford's relation Lambda(alpha) Lambda(-alpha) = 1 (up to sign conventions) in degree >= 1
        let a = Scalar::frac(3, 2);
        for (g, d) in [(1usize, vec![0usize]), (1, vec![0, 0]), (2, vec![]), (2, vec![1])] {
            let v = hodge_class_correlator(g, &d, &[a.clone(), -a.clone()]).unwrap();
            let plain = super::super::psi_correlator(g, &d);
            assert_eq!(v, plain, "g={g} d={d:?}");
        }
    }

    #[test]
    fn edge_requires_odd_times() {
        let t = vec![Scalar::one(), Scalar::int(2)];
        assert!(exponential_edge(&t, 3).is_none());
        let t = vec![Scalar::one(), Scalar::zero(), Scalar::int(2)];
        let e = exponential_edge(&t, 3).unwrap();
        // (1 - e^{-(u+v)}) / (u + v) = 1 - (u+v)/2 + ...
        assert_eq!(e[&(0, 0)], Scalar::one());
        assert_eq!(e[&(0, 1)], Scalar::frac(-1, 2));
    }

    #[test]
    fn zero_alpha_rejected() {
        assert_eq!(hodge_times(&[Scalar::zero()], 3), Err(IntersectError::ZeroAlpha));
    }
}
