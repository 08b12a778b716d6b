//! Hurwitz numbers, framed one-leg vertex coefficients and Weil–Petersson
//! volumes assembled from intersection numbers.

use super::BridgeError;
use crate::algebra::{binomial, factorial, Scalar, Series};
use crate::intersect::{hodge_class_data, kappa_psi_correlator, leg_exponential, weighted_class_correlator};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A partition, parts sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition, BridgeError> {
        if parts.is_empty() {
            return Err(BridgeError::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(BridgeError::InvalidPartition("parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Order of the automorphism group, `prod_j m_j!` over multiplicities.
    pub fn automorphisms(&self) -> BigInt {
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in &self.0 {
            *mult.entry(p).or_default() += 1;
        }
        mult.values().map(|&m| factorial(m)).product()
    }

    /// All partitions of `d`, in decreasing lexicographic order.
    pub fn all_of(d: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if d > 0 {
            rec(d, d, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl FromStr for Partition {
    type Err = BridgeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| BridgeError::InvalidPartition(format!("bad part {p:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    }
}

fn int(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

fn rational(s: Scalar) -> BigRational {
    s.as_rational().cloned().expect("rational input gives a rational result")
}

/// Simple Hurwitz number through the ELSV formula,
/// `H = b! / |Aut mu| prod mu_i^mu_i / mu_i! <Lambda(1) prod 1/(1 - mu_i psi_i)>_{g,n}`
/// with `b = 2g - 2 + n + |mu|`. The unstable integrals are
/// `1/mu^2` for `(0,1)` and `1/(mu_1 + mu_2)` for `(0,2)`.
pub fn elsv_hurwitz(g: usize, mu: &Partition) -> Result<BigRational, BridgeError> {
    let n = mu.len();
    let b = 2 * g + n + mu.size() - 2;
    let mut pref = int(&factorial(b)) / int(&mu.automorphisms());
    for &m in mu.parts() {
        pref *= int(&BigInt::from(m).pow(m as u32)) / int(&factorial(m));
    }
    let integral = match (g, n) {
        (0, 1) => BigRational::new(BigInt::one(), BigInt::from(mu.size() * mu.size())),
        (0, 2) => BigRational::new(BigInt::one(), BigInt::from(mu.size())),
        _ => {
            let top = 3 * g + n - 3;
            let class = hodge_class_data(&[Scalar::one()], top)?;
            let t = class.times().to_vec();
            let w = leg_exponential(&t, top);
            let legs: Vec<Vec<Scalar>> = mu
                .parts()
                .iter()
                .map(|&m| {
                    (0..=top)
                        .map(|j| (0..=j).map(|i| &w[i] * Scalar::big(BigInt::from(m).pow((j - i) as u32))).sum())
                        .collect()
                })
                .collect();
            rational(weighted_class_correlator(g, &legs, &class))
        }
    };
    Ok(pref * integral)
}

/// `(mu (f+1))! / (mu! (f mu)!)`, the framing weight of the one-leg vertex
/// at integer framing `f >= 1`.
pub fn mv_coefficient(f: i64, mu: usize) -> Result<BigRational, BridgeError> {
    if f < 1 {
        return Err(BridgeError::NonIntegerFraming(f.to_string()));
    }
    if mu == 0 {
        return Err(BridgeError::InvalidPartition("mu must be positive".into()));
    }
    Ok(int(&binomial(mu * (f as usize + 1), mu)))
}

/// The same weight read off the curve `e^-x = z^f (1 - z)`: the coefficient
/// of `e^(-mu x)` in `1/(a - z)`, `a = f/(f+1)` the branchpoint, times
/// `f/(f+1)`. Computed by inverting the curve as a power series in
/// `w = e^(-x/f)`.
pub fn mv_residue_oracle(f: i64, mu: usize) -> Result<BigRational, BridgeError> {
    if f < 1 {
        return Err(BridgeError::NonIntegerFraming(f.to_string()));
    }
    let order = f * mu as i64;
    let inv_f = Scalar::frac(-1, f);
    let w = Series::monomial('w', Scalar::one(), 1, order);
    // z = w (1 - z)^(-1/f), one more correct order per step
    let mut z = Series::zero('w', order);
    for _ in 0..=order {
        let factor = z.neg().log1p()?.scale(&inv_f).exp()?;
        z = w.mul(&factor)?;
    }
    let a = Scalar::frac(f, f + 1);
    let inv = Series::monomial('w', a.clone(), 0, order).sub(&z)?.inv()?;
    Ok(rational(inv.coeff(order)? * a))
}

/// A Weil–Petersson volume as a polynomial in `L_i^2` and `pi^2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WpVolume {
    pub g: usize,
    pub n: usize,
    /// `(d0, [d_1..d_n], c)`: `c * pi^(2 d0) * prod L_i^(2 d_i)`.
    pub terms: Vec<(usize, Vec<usize>, String)>,
    #[serde(skip)]
    coeffs: BTreeMap<(usize, Vec<usize>), BigRational>,
}

impl WpVolume {
    pub fn coefficient(&self, d0: usize, d: &[usize]) -> BigRational {
        self.coeffs.get(&(d0, d.to_vec())).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero coefficients keyed by `(d0, d)`.
    pub fn coefficients(&self) -> &BTreeMap<(usize, Vec<usize>), BigRational> {
        &self.coeffs
    }

    /// Invariant under permuting the `L_i`.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|((d0, d), c)| {
            crate::toprec::distinct_permutations(d).iter().all(|p| self.coefficient(*d0, p) == *c)
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

impl fmt::Display for WpVolume {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut rows: Vec<_> = self.coeffs.iter().collect();
        // highest L-degree first
        rows.sort_by(|a, b| a.0 .0.cmp(&b.0 .0).then(b.0 .1.cmp(&a.0 .1)));
        for ((d0, d), c) in rows {
            let mut mono = Vec::new();
            for (i, &di) in d.iter().enumerate() {
                if di > 0 {
                    mono.push(format!("L{}^{}", i + 1, 2 * di));
                }
            }
            if *d0 > 0 {
                mono.push(format!("pi^{}", 2 * d0));
            }
            let neg = c < &BigRational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", abs, mono.join("*"))
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        Ok(())
    }
}

fn compositions(total: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() + 1 == parts {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for first in 0..=total {
        cur.push(first);
        compositions(total - first, parts, cur, out);
        cur.pop();
    }
}

/// `V_{g,n} = <exp(2 pi^2 kappa_1 + 1/2 sum L_i^2 psi_i)>_{g,n}`: the
/// coefficient of `pi^(2 d0) prod L_i^(2 d_i)` is
/// `2^d0 <kappa_1^d0 prod tau_{d_i}> / (d0! prod 2^{d_i} d_i!)`.
pub fn wp_volume(g: usize, n: usize) -> Result<WpVolume, BridgeError> {
    if 2 * g + n <= 2 {
        return Err(BridgeError::Unstable { g, n });
    }
    let top = 3 * g + n - 3;
    let mut coeffs = BTreeMap::new();
    for d0 in 0..=top {
        let mut tuples = Vec::new();
        if n == 0 {
            if d0 == top {
                tuples.push(Vec::new());
            }
        } else {
            compositions(top - d0, n, &mut Vec::new(), &mut tuples);
        }
        for d in tuples {
            let v = rational(kappa_psi_correlator(g, &d, &vec![1; d0])?);
            if v.is_zero() {
                continue;
            }
            let mut den = factorial(d0);
            for &di in &d {
                den *= (BigInt::one() << di) * factorial(di);
            }
            coeffs.insert((d0, d), v * int(&(BigInt::one() << d0)) / int(&den));
        }
    }
    let terms = coeffs.iter().map(|((d0, d), c)| (*d0, d.clone(), c.to_string())).collect();
    Ok(WpVolume { g, n, terms, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn partitions() {
        let p: Partition = "1,2,1".parse().unwrap();
        assert_eq!(p.parts(), &[2, 1, 1]);
        assert_eq!(p.automorphisms(), BigInt::from(2));
        assert!("".parse::<Partition>().is_err());
        assert!("0,1".parse::<Partition>().is_err());
        assert_eq!(Partition::all_of(4).len(), 5);
    }

    #[test]
    fn small_hurwitz_numbers() {
        assert_eq!(elsv_hurwitz(0, &"1".parse().unwrap()).unwrap(), r(1, 1));
        assert_eq!(elsv_hurwitz(0, &"2".parse().unwrap()).unwrap(), r(1, 2));
        assert_eq!(elsv_hurwitz(0, &"1,1".parse().unwrap()).unwrap(), r(1, 2));
        // d^(d-3) in genus zero with one part
        assert_eq!(elsv_hurwitz(0, &"3".parse().unwrap()).unwrap(), r(1, 1));
        assert_eq!(elsv_hurwitz(0, &"4".parse().unwrap()).unwrap(), r(4, 1));
    }

    #[test]
    fn framing_weights() {
        assert_eq!(mv_coefficient(1, 1).unwrap(), r(2, 1));
        assert_eq!(mv_coefficient(2, 2).unwrap(), r(15, 1));
        assert!(mv_coefficient(0, 1).is_err());
        for f in 1..=3 {
            for mu in 1..=3 {
                assert_eq!(mv_residue_oracle(f, mu).unwrap(), mv_coefficient(f, mu).unwrap(), "f={f} mu={mu}");
            }
        }
    }

    #[test]
    fn small_volumes() {
        assert_eq!(wp_volume(0, 3).unwrap().to_string(), "1");
        let v = wp_volume(1, 1).unwrap();
        assert_eq!(v.coefficient(0, &[1]), r(1, 48));
        assert_eq!(v.coefficient(1, &[0]), r(1, 12));
        assert_eq!(v.to_string(), "1/48*L1^2 + 1/12*pi^2");
        let v = wp_volume(0, 4).unwrap();
        assert_eq!(v.coefficient(1, &[0, 0, 0, 0]), r(2, 1));
        assert_eq!(v.coefficient(0, &[0, 0, 1, 0]), r(1, 2));
        assert!(v.is_symmetric());
        assert!(wp_volume(0, 2).is_err());
    }
}
