//! Mixed kappa/psi intersection numbers.

use super::psi::psi_rational;
use super::IntersectError;
use crate::algebra::combinat::for_each_partition;
use crate::algebra::{factorial, Scalar};
use num_rational::BigRational;
use num_traits::Zero;
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use std::collections::HashMap;

type KappaKey = (usize, Vec<usize>, Vec<usize>);

pub(crate) static KAPPA_CACHE: Lazy<RwLock<HashMap<KappaKey, BigRational>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// `<prod tau_{d_i} prod kappa_{b_j}>_{g,n}`.
///
/// With `kappa_b = pi_*(psi_{n+1}^{b+1})` and `pi^* kappa_c = kappa_c - psi_{n+1}^c`,
/// one kappa is traded for a new point, the remaining kappas being
/// pulled back:
/// `<kappa_b prod_j kappa_{c_j} ...>_{g,n} = sum_{S} (-1)^|S| <tau_{b+1+c_S} prod_{j not in S} kappa_{c_j} ...>_{g,n+1}`.
pub fn kappa_psi_correlator(g: usize, degrees: &[usize], kappas: &[usize]) -> Result<Scalar, IntersectError> {
    if kappas.contains(&0) {
        return Err(IntersectError::KappaZero);
    }
    Ok(Scalar::rat(kappa_rational(g, degrees, kappas)))
}

pub(crate) fn kappa_rational(g: usize, degrees: &[usize], kappas: &[usize]) -> BigRational {
    let n = degrees.len();
    if kappas.is_empty() {
        return psi_rational(g, degrees);
    }
    let total: usize = degrees.iter().sum::<usize>() + kappas.iter().sum::<usize>();
    if 2 * g + n <= 2 || total != 3 * g + n - 3 {
        return BigRational::zero();
    }
    let mut d = degrees.to_vec();
    d.sort_unstable();
    let mut k = kappas.to_vec();
    k.sort_unstable();
    let key = (g, d, k);
    if let Some(v) = KAPPA_CACHE.read().get(&key) {
        return v.clone();
    }
    let (b, rest) = (key.2[0], &key.2[1..]);
    let mut acc = BigRational::zero();
    for mask in 0u32..(1 << rest.len()) {
        let mut extra = b + 1;
        let mut kept = Vec::new();
        for (j, &c) in rest.iter().enumerate() {
            if mask & (1 << j) != 0 {
                extra += c;
            } else {
                kept.push(c);
            }
        }
        let mut dd = key.1.clone();
        dd.push(extra);
        let v = kappa_rational(g, &dd, &kept);
        if mask.count_ones() % 2 == 0 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    KAPPA_CACHE.write().insert(key, acc.clone());
    acc
}

/// `<prod psi_i^{d_i} exp(sum_k t_k kappa_k)>_{g,n}` with `t[k-1] = t_k`
/// (missing entries are zero).
pub fn kappa_class_correlator(g: usize, degrees: &[usize], t: &[Scalar]) -> Scalar {
    kappa_class_correlator_with(g, degrees, &[], t)
}

/// As [`kappa_class_correlator`] with the extra insertion `prod_j kappa_{c_j}`;
/// `kappa_0` acts as the number `2g - 2 + n`.
pub fn kappa_class_correlator_with(g: usize, degrees: &[usize], extra: &[usize], t: &[Scalar]) -> Scalar {
    let n = degrees.len();
    if 2 * g + n <= 2 {
        return Scalar::zero();
    }
    let zeros = extra.iter().filter(|&&c| c == 0).count();
    let extra: Vec<usize> = extra.iter().copied().filter(|&c| c > 0).collect();
    let dim = 3 * g + n - 3;
    let used: usize = degrees.iter().sum::<usize>() + extra.iter().sum::<usize>();
    if used > dim {
        return Scalar::zero();
    }
    let r = dim - used;
    let max_part = r.min(t.len());
    let mut acc = Scalar::zero();
    let mut kappas = Vec::new();
    for_each_partition(r, max_part, &mut |mult| {
        let mut weight = Scalar::one();
        kappas.clear();
        kappas.extend_from_slice(&extra);
        for (k, &m) in mult.iter().enumerate().skip(1) {
            if m == 0 {
                continue;
            }
            let tk = &t[k - 1];
            if tk.is_zero() {
                return;
            }
            weight = weight * tk.pow(m as i64) / Scalar::big(factorial(m));
            kappas.extend(std::iter::repeat_n(k, m));
        }
        let v = kappa_rational(g, degrees, &kappas);
        if !v.is_zero() {
            acc += weight * Scalar::rat(v);
        }
    });
    acc * Scalar::int(2 * g as i64 - 2 + n as i64).pow(zeros as i64)
}
