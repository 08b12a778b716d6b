//! Pure psi-class intersection numbers.

use crate::algebra::{double_factorial, Scalar};
use crate::curve::{preset_local_data, CurvePreset};
use crate::toprec::{self, TrError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use std::collections::HashMap;

type PsiKey = (usize, Vec<usize>);

pub(crate) static PSI_CACHE: Lazy<RwLock<HashMap<PsiKey, BigRational>>> = Lazy::new(|| RwLock::new(HashMap::new()));

fn dfact(k: i64) -> BigRational {
    BigRational::from_integer(double_factorial(k).expect("k >= -1"))
}

/// `<tau_{d_1} ... tau_{d_n}>_g` by the DVV recursion on the largest
/// insertion. Zero off the dimension `3g - 3 + n` and on unstable moduli.
pub fn psi_correlator(g: usize, degrees: &[usize]) -> Scalar {
    Scalar::rat(psi_rational(g, degrees))
}

pub(crate) fn psi_rational(g: usize, degrees: &[usize]) -> BigRational {
    let n = degrees.len();
    if 2 * g + n <= 2 || degrees.iter().sum::<usize>() != 3 * g + n - 3 {
        return BigRational::zero();
    }
    let mut key = degrees.to_vec();
    key.sort_unstable_by(|a, b| b.cmp(a));
    if let Some(v) = PSI_CACHE.read().get(&(g, key.clone())) {
        return v.clone();
    }
    let v = dvv(g, &key);
    PSI_CACHE.write().insert((g, key), v.clone());
    v
}

fn dvv(g: usize, key: &[usize]) -> BigRational {
    if g == 0 && key == [0, 0, 0] {
        return BigRational::one();
    }
    if g == 1 && key == [1] {
        return BigRational::new(BigInt::from(1), BigInt::from(24));
    }
    let d0 = key[0] as i64;
    let rest = &key[1..];
    let mut acc = BigRational::zero();
    for j in 0..rest.len() {
        let dj = rest[j] as i64;
        if d0 + dj == 0 {
            continue;
        }
        let mut k: Vec<usize> = rest.to_vec();
        k[j] = (d0 + dj - 1) as usize;
        acc += dfact(2 * d0 + 2 * dj - 1) / dfact(2 * dj - 1) * psi_rational(g, &k);
    }
    if d0 >= 2 {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        for a in 0..=(d0 - 2) as usize {
            let b = d0 as usize - 2 - a;
            let w = &half * dfact(2 * a as i64 + 1) * dfact(2 * b as i64 + 1);
            let mut inner = BigRational::zero();
            if g >= 1 {
                let mut k = rest.to_vec();
                k.push(a);
                k.push(b);
                inner += psi_rational(g - 1, &k);
            }
            let m = rest.len();
            for mask in 0u32..(1 << m) {
                let mut left = vec![a];
                let mut right = vec![b];
                for (i, &d) in rest.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        left.push(d);
                    } else {
                        right.push(d);
                    }
                }
                for h in 0..=g {
                    let l = psi_rational(h, &left);
                    if !l.is_zero() {
                        inner += l * psi_rational(g - h, &right);
                    }
                }
            }
            acc += w * inner;
        }
    }
    acc / dfact(2 * d0 + 1)
}

/// The same numbers read off the Airy curve's correlators:
/// `W_n^(g) = 2^(g-1) sum <prod tau_{d_i}> prod dxi_{d_i}`.
pub fn psi_oracle_airy(g: usize, degrees: &[usize]) -> Result<Scalar, TrError> {
    let airy = preset_local_data(&CurvePreset::Airy, 0, 0)?;
    let w = toprec::correlator(&airy, g, degrees.len())?;
    let scale = if g == 0 { Scalar::int(2) } else { Scalar::big(BigInt::from(1)) / Scalar::big(BigInt::from(1) << (g - 1)) };
    Ok(w.get(degrees) * scale)
}
