//! Topological recursion at a single branchpoint.
//!
//! Every stable correlator is stored in the `dxi_d` basis as a
//! [`CorrelatorTensor`]. The coefficients are exactly what the residues
//! produce, so they include the `2^(3g-3+n)` factor of the usual
//! normalization.

mod basis;
mod recursion;

pub use basis::{kernel_numerator, xi_expansion, BasisExpansion, KernelTerm, Parity};
pub use recursion::{cache_len, clear_cache, compute_fg, correlator, correlators_up_to, recursion_step};

use crate::algebra::{RingMode, Scalar, SeriesError};
use crate::curve::CurveError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("(g, n) = ({g}, {n}) is not a stable correlator")]
    Unstable { g: usize, n: usize },
    #[error("F_g needs g >= 2, got g = {0}")]
    GenusTooSmall(usize),
    #[error("W_{n}^({g}) has a nonzero even-family coefficient {value} at {legs}")]
    EvenFamily { g: usize, n: usize, legs: String, value: String },
    #[error("W_{n}^({g}) is not symmetric at {degrees:?}")]
    Asymmetric { g: usize, n: usize, degrees: Vec<usize> },
    #[error("W_{n}^({g}) has a nonzero coefficient beyond the degree bound at {degrees:?}")]
    DegreeBound { g: usize, n: usize, degrees: Vec<usize> },
    #[error("series arithmetic: {0}")]
    Series(String),
    #[error("tensor file: {0}")]
    Format(String),
}

impl From<SeriesError> for TrError {
    fn from(e: SeriesError) -> Self {
        TrError::Series(e.to_string())
    }
}

/// Symmetric tensor `C(d_1..d_n)` with `W_n^(g) = sum C(d) prod dxi_{d_i}(z_i)`.
///
/// Keys are sorted degree tuples; only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelatorTensor {
    g: usize,
    n: usize,
    entries: BTreeMap<Vec<usize>, Scalar>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorEntryFile {
    degrees: Vec<usize>,
    value: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorFile {
    g: usize,
    n: usize,
    normalization: String,
    entries: Vec<TensorEntryFile>,
}

pub const TENSOR_NORMALIZATION: &str = "includes-2^dgn";

impl CorrelatorTensor {
    pub fn new(g: usize, n: usize) -> Self {
        CorrelatorTensor { g, n, entries: BTreeMap::new() }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `3g - 3 + n`, the bound on the total degree.
    pub fn max_degree(&self) -> usize {
        3 * self.g + self.n - 3
    }

    pub fn get(&self, degrees: &[usize]) -> Scalar {
        let mut key = degrees.to_vec();
        key.sort_unstable();
        self.entries.get(&key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Sets the entry for the sorted form of `degrees` (zero removes it).
    pub fn set(&mut self, degrees: &[usize], v: Scalar) {
        let mut key = degrees.to_vec();
        key.sort_unstable();
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }

    /// Nonzero entries, keys sorted ascending.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &Scalar)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every sorted tuple of `n` degrees with sum at most `3g - 3 + n`.
    pub fn all_keys(&self) -> Vec<Vec<usize>> {
        sorted_tuples(self.n, self.max_degree())
    }

    pub fn to_json(&self) -> String {
        let file = TensorFile {
            g: self.g,
            n: self.n,
            normalization: TENSOR_NORMALIZATION.into(),
            entries: self
                .entries
                .iter()
                .map(|(k, v)| TensorEntryFile { degrees: k.clone(), value: v.to_canonical() })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("tensor serializes")
    }

    pub fn from_json(text: &str, ring: &RingMode) -> Result<CorrelatorTensor, TrError> {
        let file: TensorFile = serde_json::from_str(text).map_err(|e| TrError::Format(e.to_string()))?;
        if file.normalization != TENSOR_NORMALIZATION {
            return Err(TrError::Format(format!("unknown normalization {:?}", file.normalization)));
        }
        let mut t = CorrelatorTensor::new(file.g, file.n);
        for e in file.entries {
            if e.degrees.len() != file.n {
                return Err(TrError::Format(format!("entry {:?} has the wrong arity", e.degrees)));
            }
            let v = Scalar::parse(&e.value, ring).map_err(TrError::Format)?;
            t.set(&e.degrees, v);
        }
        Ok(t)
    }
}

/// Sorted `n`-tuples of nonnegative integers with sum at most `max_sum`.
pub fn sorted_tuples(n: usize, max_sum: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, min: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let left = n - cur.len();
        let mut d = min;
        while d * left <= budget {
            cur.push(d);
            go(n, d, budget - d, cur, out);
            cur.pop();
            d += 1;
        }
    }
    let mut out = Vec::new();
    go(n, 0, max_sum, &mut Vec::new(), &mut out);
    out
}

/// All distinct orderings of `items`.
pub fn distinct_permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut v = items.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // lexicographic successor
    loop {
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { break };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_distinct() {
        assert_eq!(distinct_permutations(&[1, 0, 1]), vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(distinct_permutations(&[2, 1, 0]).len(), 6);
        assert_eq!(distinct_permutations(&[]), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn tuple_enumeration() {
        assert_eq!(sorted_tuples(2, 2), vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1]]);
        assert_eq!(sorted_tuples(0, 3), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn json_round_trip() {
        let mut t = CorrelatorTensor::new(1, 2);
        t.set(&[1, 0], Scalar::frac(-3, 7));
        t.set(&[2, 0], Scalar::frac(1, 24));
        let text = t.to_json();
        assert!(text.contains("includes-2^dgn"));
        assert_eq!(CorrelatorTensor::from_json(&text, &RingMode::Rational).unwrap(), t);
        assert_eq!(t.get(&[0, 1]), Scalar::frac(-3, 7));
    }
}
