//! Intersection numbers of psi, kappa, boundary and Hodge classes on the
//! moduli spaces of stable curves.

mod boundary;
pub mod cache;
mod hodge;
mod kappa;
mod psi;

pub use boundary::{
    boundary_class_correlator, graded_correlator, mainformula_tensor, normalized_tensor, unit_correlator,
    weighted_class_correlator,
};
pub use hodge::{exponential_edge, hodge_class_correlator, hodge_class_data, hodge_times, leg_exponential};
pub use kappa::{kappa_class_correlator, kappa_class_correlator_with, kappa_psi_correlator};
pub use psi::{psi_correlator, psi_oracle_airy};

use crate::algebra::Scalar;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntersectError {
    #[error("kappa_0 is not inserted as a class; it is carried by the prefactor")]
    KappaZero,
    #[error("(g, n) = ({g}, {n}) is not stable")]
    Unstable { g: usize, n: usize },
    #[error("only p^2 is known, but (g, n) = ({g}, {n}) needs an odd power of p")]
    OddPrefactorPower { g: usize, n: usize },
    #[error("Hodge parameter alpha must be invertible")]
    ZeroAlpha,
    #[error("B-hat is not symmetric at ({k}, {l})")]
    AsymmetricBhat { k: usize, l: usize },
    #[error("1 - exp(-t(u) - t(v)) is not divisible by u + v: the dual times are not odd")]
    EvenTimes,
}

/// The prefactor `p = exp(-t~_0)`; curves give `p = 2 t_3`, the vertex only
/// knows `p^2` inside the field.
#[derive(Clone, Debug, PartialEq)]
pub enum Prefactor {
    P(Scalar),
    PSquared(Scalar),
}

impl Prefactor {
    /// `p^(-chi)`, when it lies in the field.
    pub fn inverse_power(&self, chi: i64, g: usize, n: usize) -> Result<Scalar, IntersectError> {
        match self {
            Prefactor::P(p) => Ok(p.pow(-chi)),
            Prefactor::PSquared(p2) if chi % 2 == 0 => Ok(p2.pow(-chi / 2)),
            Prefactor::PSquared(_) => Err(IntersectError::OddPrefactorPower { g, n }),
        }
    }
}

/// Class side of the correspondence: prefactor, dual times `t~_k`
/// (`k >= 1`), the symmetric matrix `B^_{k,l}` and a leg weight `f(psi)`
/// applied at every marked point.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassData {
    pub prefactor: Prefactor,
    t: Vec<Scalar>,
    bhat: BTreeMap<(usize, usize), Scalar>,
    leg_weight: Vec<Scalar>,
}

impl ClassData {
    /// `t[k-1] = t~_k`; `bhat` may list `(k,l)`, `(l,k)` or both.
    pub fn new(
        prefactor: Prefactor,
        t: Vec<Scalar>,
        bhat: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<ClassData, IntersectError> {
        let mut map: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (k, l, v) in bhat {
            let key = (k.min(l), k.max(l));
            match map.get(&key) {
                Some(prev) if *prev != v => return Err(IntersectError::AsymmetricBhat { k, l }),
                _ => {
                    map.insert(key, v);
                }
            }
        }
        map.retain(|_, v| !v.is_zero());
        let mut t = t;
        while t.last().is_some_and(|x| x.is_zero()) {
            t.pop();
        }
        Ok(ClassData { prefactor, t, bhat: map, leg_weight: vec![Scalar::one()] })
    }

    /// Only `t~`, no boundary part, unit prefactor.
    pub fn kappa_only(t: Vec<Scalar>) -> ClassData {
        ClassData::new(Prefactor::P(Scalar::one()), t, []).expect("no B-hat")
    }

    pub fn with_leg_weight(mut self, w: Vec<Scalar>) -> ClassData {
        let mut w = w;
        while w.len() > 1 && w.last().is_some_and(|x| x.is_zero()) {
            w.pop();
        }
        self.leg_weight = w;
        self
    }

    pub fn t(&self, k: usize) -> Scalar {
        if k == 0 {
            return Scalar::zero();
        }
        self.t.get(k - 1).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `t~_1, t~_2, ...` (trailing zeros trimmed).
    pub fn times(&self) -> &[Scalar] {
        &self.t
    }

    pub fn bhat(&self, k: usize, l: usize) -> Scalar {
        self.bhat.get(&(k.min(l), k.max(l))).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Nonzero `B^_{k,l}` with `k <= l`.
    pub fn bhat_entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.bhat.iter().map(|((k, l), v)| (*k, *l, v))
    }

    /// Coefficients of the leg weight in `psi`, constant term first.
    pub fn leg_weight(&self) -> &[Scalar] {
        &self.leg_weight
    }

    /// Hash of the data the unit-weight correlators depend on (`t~`, `B^`).
    pub fn fingerprint(&self) -> String {
        let mut s = String::from("t:");
        for v in &self.t {
            s.push_str(&v.to_canonical());
            s.push(',');
        }
        s.push_str(";b:");
        for ((k, l), v) in &self.bhat {
            s.push_str(&format!("{k},{l}={};", v.to_canonical()));
        }
        Sha256::digest(s.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_data_normalizes() {
        let a = ClassData::new(Prefactor::P(Scalar::int(2)), vec![Scalar::one(), Scalar::zero()], [(1, 0, Scalar::int(3))]).unwrap();
        let b = ClassData::new(Prefactor::P(Scalar::int(5)), vec![Scalar::one()], [(0, 1, Scalar::int(3)), (1, 0, Scalar::int(3))]).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.bhat(0, 1), Scalar::int(3));
        assert!(ClassData::new(Prefactor::P(Scalar::one()), vec![], [(0, 1, Scalar::one()), (1, 0, Scalar::int(2))]).is_err());
    }

    #[test]
    fn prefactor_powers() {
        let p = Prefactor::PSquared(Scalar::int(4));
        assert_eq!(p.inverse_power(2, 2, 0).unwrap(), Scalar::frac(1, 4));
        assert!(p.inverse_power(1, 0, 3).is_err());
        assert_eq!(Prefactor::P(Scalar::int(2)).inverse_power(1, 0, 3).unwrap(), Scalar::frac(1, 2));
    }
}
