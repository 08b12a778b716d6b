//! Exact recovery of a weighted-homogeneous polynomial from its values.
//!
//! The unknown coefficients (scalars, possibly rational functions of `q`)
//! are found by Gaussian elimination on as many sample points as monomials;
//! the remaining points must then agree, which guards the assumed support.

use crate::algebra::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

/// Variables with positive integer weights.
#[derive(Clone, Debug)]
pub struct Monomials {
    pub names: Vec<String>,
    pub weights: Vec<usize>,
    pub exponents: Vec<Vec<usize>>,
}

impl Monomials {
    /// Every monomial of total weight `w`.
    pub fn of_weight(names: &[&str], weights: &[usize], w: usize) -> Monomials {
        fn rec(i: usize, rest: usize, weights: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == weights.len() {
                if rest == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for e in 0..=rest / weights[i] {
                cur.push(e);
                rec(i + 1, rest - e * weights[i], weights, cur, out);
                cur.pop();
            }
        }
        let mut exponents = Vec::new();
        rec(0, w, weights, &mut Vec::new(), &mut exponents);
        Monomials { names: names.iter().map(|s| s.to_string()).collect(), weights: weights.to_vec(), exponents }
    }

    pub fn eval(&self, e: &[usize], point: &[Scalar]) -> Scalar {
        e.iter().zip(point).map(|(&k, x)| x.pow(k as i64)).product()
    }

    pub fn render(&self, e: &[usize]) -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(&self.names)
            .filter(|(k, _)| **k > 0)
            .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A polynomial over the scalars, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct FittedPoly {
    pub names: Vec<String>,
    pub coeffs: BTreeMap<Vec<usize>, Scalar>,
}

impl FittedPoly {
    pub fn from_terms(names: &[&str], terms: impl IntoIterator<Item = (Vec<usize>, Scalar)>) -> FittedPoly {
        let mut coeffs: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for (e, c) in terms {
            let slot = coeffs.entry(e).or_insert_with(Scalar::zero);
            *slot += c;
        }
        coeffs.retain(|_, v| !v.is_zero());
        FittedPoly { names: names.iter().map(|s| s.to_string()).collect(), coeffs }
    }

    /// Monomials whose coefficients differ, with both coefficients.
    pub fn diff(&self, other: &FittedPoly) -> Vec<(Vec<usize>, Scalar, Scalar)> {
        let mut keys: Vec<&Vec<usize>> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|k| {
                let a = self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero);
                let b = other.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero);
                (a != b).then(|| (k.clone(), a, b))
            })
            .collect()
    }

    pub fn monomial_name(&self, e: &[usize]) -> String {
        Monomials { names: self.names.clone(), weights: vec![1; e.len()], exponents: vec![] }.render(e)
    }
}

impl fmt::Display for FittedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let body: Vec<String> = self.coeffs.iter().map(|(e, c)| format!("({c})*{}", self.monomial_name(e))).collect();
        write!(f, "{}", body.join(" + "))
    }
}

/// Deterministic sample points with small nonzero rational coordinates.
pub fn sample_points(vars: usize, count: usize, seed: u64) -> Vec<Vec<Scalar>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..vars)
                .map(|_| {
                    let mut n: i64 = 0;
                    while n == 0 {
                        n = rng.random_range(-12..=12);
                    }
                    Scalar::frac(n, rng.random_range(1..=7))
                })
                .collect()
        })
        .collect()
}

/// Solves for the coefficients of `f` on the given monomials. `extra` more
/// points than unknowns are used as a consistency check.
pub fn fit<E>(monos: &Monomials, extra: usize, seed: u64, mut f: impl FnMut(&[Scalar]) -> Result<Scalar, E>) -> Result<FittedPoly, String>
where
    E: fmt::Display,
{
    let m = monos.exponents.len();
    let names: Vec<&str> = monos.names.iter().map(|s| s.as_str()).collect();
    let points = sample_points(monos.names.len(), m + extra, seed);
    let mut values = Vec::with_capacity(points.len());
    for p in &points {
        values.push(f(p).map_err(|e| e.to_string())?);
    }
    // augmented system [A | b]
    let mut rows: Vec<Vec<Scalar>> = points[..m]
        .iter()
        .zip(&values)
        .map(|(p, v)| {
            let mut row: Vec<Scalar> = monos.exponents.iter().map(|e| monos.eval(e, p)).collect();
            row.push(v.clone());
            row
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !rows[r][col].is_zero()).ok_or("sample points are degenerate")?;
        rows.swap(col, pivot);
        let inv = rows[col][col].inv().expect("nonzero pivot");
        for c in col..=m {
            rows[col][c] = &rows[col][c] * &inv;
        }
        for r in 0..m {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=m {
                    let sub = &factor * &rows[col][c];
                    rows[r][c] -= sub;
                }
            }
        }
    }
    let poly = FittedPoly::from_terms(&names, monos.exponents.iter().cloned().zip(rows.into_iter().map(|r| r[m].clone())));
    for (p, v) in points.iter().zip(&values).skip(m) {
        let at: Scalar = poly.coeffs.iter().map(|(e, c)| c * &monos.eval(e, p)).sum();
        if at != *v {
            return Err("values are not a polynomial on the assumed monomials".into());
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_a_polynomial() {
        let monos = Monomials::of_weight(&["a", "b"], &[1, 2], 2);
        assert_eq!(monos.exponents.len(), 2);
        let q = Scalar::q();
        let p = fit(&monos, 2, 1, |x| Ok::<_, String>(Scalar::frac(3, 4) * &x[0] * &x[0] + &q * &x[1])).unwrap();
        assert_eq!(p.coeffs[&vec![2, 0]], Scalar::frac(3, 4));
        assert_eq!(p.coeffs[&vec![0, 1]], q);
        assert!(fit(&monos, 2, 1, |x| Ok::<_, String>(x[0].clone())).is_err());
    }
}
