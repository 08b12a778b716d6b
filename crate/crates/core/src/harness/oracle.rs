//! Brute-force simple Hurwitz numbers.
//!
//! `H_{g,mu}` counts tuples of `b = 2g - 2 + l(mu) + |mu|` transpositions in
//! `S_d` whose product has cycle type `mu` and which generate a transitive
//! subgroup, divided by `d!`. The count runs as a dynamic program over
//! (partial product, partition of the letters into orbits).

use super::HarnessError;
use crate::bridge::Partition;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Largest degree the oracle accepts.
pub const ORACLE_MAX_DEGREE: usize = 7;

fn cycle_type(perm: &[u8]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Relabels orbit labels in order of first appearance.
fn canonical(labels: &mut [u8]) {
    let mut map = [u8::MAX; 16];
    let mut next = 0;
    for l in labels.iter_mut() {
        if map[*l as usize] == u8::MAX {
            map[*l as usize] = next;
            next += 1;
        }
        *l = map[*l as usize];
    }
}

pub fn cut_join_oracle(g: usize, mu: &Partition) -> Result<BigRational, HarnessError> {
    let d = mu.size();
    if d > ORACLE_MAX_DEGREE {
        return Err(HarnessError::OracleTooLarge { d, max: ORACLE_MAX_DEGREE });
    }
    let b = 2 * g + mu.len() + d - 2;
    let id: Vec<u8> = (0..d as u8).collect();
    let mut states: HashMap<(Vec<u8>, Vec<u8>), BigUint> = HashMap::new();
    states.insert((id.clone(), id), BigUint::one());
    let transpositions: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    for _ in 0..b {
        let mut next: HashMap<(Vec<u8>, Vec<u8>), BigUint> = HashMap::new();
        for ((perm, orbits), count) in &states {
            for &(i, j) in &transpositions {
                let mut p = perm.clone();
                p.swap(i, j);
                let mut o = orbits.clone();
                let (from, to) = (o[j], o[i]);
                if from != to {
                    for l in o.iter_mut() {
                        if *l == from {
                            *l = to;
                        }
                    }
                    canonical(&mut o);
                }
                *next.entry((p, o)).or_insert_with(BigUint::zero) += count;
            }
        }
        states = next;
    }
    let target = mu.parts().to_vec();
    let mut total = BigUint::zero();
    for ((perm, orbits), count) in &states {
        if orbits.iter().all(|&l| l == 0) && cycle_type(perm) == target {
            total += count;
        }
    }
    let fact: BigUint = (1..=d).map(BigUint::from).product();
    Ok(BigRational::new(total.into(), fact.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn tiny_cases() {
        assert_eq!(cut_join_oracle(0, &"1".parse().unwrap()).unwrap(), r(1, 1));
        assert_eq!(cut_join_oracle(0, &"2".parse().unwrap()).unwrap(), r(1, 2));
        assert_eq!(cut_join_oracle(0, &"1,1".parse().unwrap()).unwrap(), r(1, 2));
        // d^(d-3)
        assert_eq!(cut_join_oracle(0, &"3".parse().unwrap()).unwrap(), r(1, 1));
        assert_eq!(cut_join_oracle(0, &"4".parse().unwrap()).unwrap(), r(4, 1));
        assert!(cut_join_oracle(0, &"8".parse().unwrap()).is_err());
    }
}
