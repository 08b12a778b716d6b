//! Correlators with kappa exponentials and boundary insertions.
//!
//! `T = <prod psi^{e_i} exp(sum t~_k kappa_k) exp(1/2 sum_delta l_delta* B^(psi, psi'))>`
//! is graded by the number `m` of boundary insertions. The degree-`m` part
//! satisfies the Euler relation
//!
//! `m T_m(g; e) = 1/2 sum_{(k,l)} B^_{k,l} [T_{m-1}(g-1; e, k, l)
//!                + sum_{h, I, m1 + m2 = m - 1} T_{m1}(h; k, e_I) T_{m2}(g-h; l, e_rest)]`
//!
//! with both factors of a separating node stable, and `T_0` the pure
//! kappa-exponential correlator.

use super::kappa::kappa_class_correlator;
use super::{ClassData, IntersectError};
use crate::algebra::Scalar;
use crate::toprec::{sorted_tuples, CorrelatorTensor};
use num_bigint::BigInt;
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use std::collections::HashMap;

type Key = (String, usize, usize, Vec<usize>);

static T_CACHE: Lazy<RwLock<HashMap<Key, Scalar>>> = Lazy::new(|| RwLock::new(HashMap::new()));

pub(crate) fn clear_boundary_cache() {
    T_CACHE.write().clear();
}

struct Eval<'a> {
    class: &'a ClassData,
    fp: String,
    pairs: Vec<(usize, usize, Scalar)>,
}

fn stable(g: usize, n: usize) -> bool {
    2 * g + n > 2
}

fn dim(g: usize, n: usize) -> usize {
    3 * g + n - 3
}

impl<'a> Eval<'a> {
    fn new(class: &'a ClassData) -> Self {
        let mut pairs = Vec::new();
        for (k, l, v) in class.bhat_entries() {
            pairs.push((k, l, v.clone()));
            if k != l {
                pairs.push((l, k, v.clone()));
            }
        }
        Eval { class, fp: class.fingerprint(), pairs }
    }

    fn graded(&self, g: usize, m: usize, e: &[usize]) -> Scalar {
        let n = e.len();
        if !stable(g, n) || e.iter().sum::<usize>() + m > dim(g, n) {
            return Scalar::zero();
        }
        if m == 0 {
            return kappa_class_correlator(g, e, self.class.times());
        }
        let mut key = e.to_vec();
        key.sort_unstable();
        let ck = (self.fp.clone(), g, m, key);
        if let Some(v) = T_CACHE.read().get(&ck) {
            return v.clone();
        }
        let e = &ck.3;
        let mut acc = Scalar::zero();
        for (k, l, b) in &self.pairs {
            let mut inner = Scalar::zero();
            if g >= 1 {
                let mut ee = e.clone();
                ee.push(*k);
                ee.push(*l);
                inner += self.graded(g - 1, m - 1, &ee);
            }
            for h in 0..=g {
                for mask in 0u32..(1 << n) {
                    let mut left = vec![*k];
                    let mut right = vec![*l];
                    for (i, &d) in e.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            left.push(d);
                        } else {
                            right.push(d);
                        }
                    }
                    if !stable(h, left.len()) || !stable(g - h, right.len()) {
                        continue;
                    }
                    for m1 in 0..m {
                        let a = self.graded(h, m1, &left);
                        if a.is_zero() {
                            continue;
                        }
                        let c = self.graded(g - h, m - 1 - m1, &right);
                        if !c.is_zero() {
                            inner += a * c;
                        }
                    }
                }
            }
            if !inner.is_zero() {
                acc += b * inner;
            }
        }
        let v = acc / Scalar::int(2 * m as i64);
        T_CACHE.write().insert(ck, v.clone());
        v
    }

    fn unit(&self, g: usize, e: &[usize]) -> Scalar {
        let n = e.len();
        if !stable(g, n) {
            return Scalar::zero();
        }
        let used: usize = e.iter().sum();
        if used > dim(g, n) {
            return Scalar::zero();
        }
        (0..=dim(g, n) - used).map(|m| self.graded(g, m, e)).sum()
    }

    fn weighted(&self, g: usize, legs: &[Vec<Scalar>]) -> Scalar {
        let n = legs.len();
        if !stable(g, n) {
            return Scalar::zero();
        }
        let top = dim(g, n);
        let mut acc = Scalar::zero();
        let mut e = Vec::with_capacity(n);
        self.expand(g, legs, top, &mut e, Scalar::one(), &mut acc);
        acc
    }

    fn expand(&self, g: usize, legs: &[Vec<Scalar>], budget: usize, e: &mut Vec<usize>, w: Scalar, acc: &mut Scalar) {
        if e.len() == legs.len() {
            let v = self.unit(g, e);
            if !v.is_zero() {
                *acc += w * v;
            }
            return;
        }
        let leg = &legs[e.len()];
        for (j, c) in leg.iter().enumerate().take(budget + 1) {
            if c.is_zero() {
                continue;
            }
            e.push(j);
            self.expand(g, legs, budget - j, e, &w * c, acc);
            e.pop();
        }
    }
}

/// Degree-`m` part of the unit-weight correlator `T(g; e)`.
pub fn graded_correlator(g: usize, e: &[usize], m: usize, class: &ClassData) -> Scalar {
    Eval::new(class).graded(g, m, e)
}

/// `T(g; e)` with every leg weight equal to one.
pub fn unit_correlator(g: usize, e: &[usize], class: &ClassData) -> Scalar {
    Eval::new(class).unit(g, e)
}

/// `T` with an arbitrary polynomial `f_i(psi_i)` at leg `i` (constant term first).
pub fn weighted_class_correlator(g: usize, legs: &[Vec<Scalar>], class: &ClassData) -> Scalar {
    Eval::new(class).weighted(g, legs)
}

fn leg_polys(degrees: &[usize], w: &[Scalar]) -> Vec<Vec<Scalar>> {
    degrees
        .iter()
        .map(|&d| {
            let mut p = vec![Scalar::zero(); d];
            p.extend(w.iter().cloned());
            p
        })
        .collect()
}

/// `<prod psi_i^{d_i} f(psi_i) exp(sum t~ kappa) exp(1/2 sum l_* B^)>_{g,n}`
/// with the class's own leg weight `f`.
pub fn boundary_class_correlator(g: usize, degrees: &[usize], class: &ClassData) -> Scalar {
    Eval::new(class).weighted(g, &leg_polys(degrees, class.leg_weight()))
}

/// `2^(3g-3+n) T(g; d)` for every degree tuple, without the prefactor.
pub fn normalized_tensor(g: usize, n: usize, class: &ClassData) -> Result<CorrelatorTensor, IntersectError> {
    if !stable(g, n) {
        return Err(IntersectError::Unstable { g, n });
    }
    let ev = Eval::new(class);
    let top = dim(g, n);
    let scale = Scalar::big(BigInt::from(1) << top);
    let mut out = CorrelatorTensor::new(g, n);
    for key in sorted_tuples(n, top) {
        let v = ev.weighted(g, &leg_polys(&key, class.leg_weight()));
        out.set(&key, v * &scale);
    }
    Ok(out)
}

/// The correlator tensor predicted by the intersection-number formula:
/// `C(d) = 2^(3g-3+n) p^(-(2g-2+n)) T(g; d)`.
pub fn mainformula_tensor(g: usize, n: usize, class: &ClassData) -> Result<CorrelatorTensor, IntersectError> {
    if !stable(g, n) {
        return Err(IntersectError::Unstable { g, n });
    }
    let scale = class.prefactor.inverse_power(2 * g as i64 - 2 + n as i64, g, n)?;
    let t = normalized_tensor(g, n, class)?;
    let mut out = CorrelatorTensor::new(g, n);
    for (k, v) in t.entries() {
        out.set(k, v * &scale);
    }
    Ok(out)
}
