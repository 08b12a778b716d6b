//! Integer and rational combinatorial constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("double factorial of {0} is undefined (argument must be at least -1)")]
pub struct DoubleFactorialError(pub i64);

/// `k!!` with the convention `(-1)!! = 0!! = 1`.
pub fn double_factorial(k: i64) -> Result<BigInt, DoubleFactorialError> {
    if k < -1 {
        return Err(DoubleFactorialError(k));
    }
    let mut acc = BigInt::one();
    let mut j = k;
    while j > 1 {
        acc *= j;
        j -= 2;
    }
    Ok(acc)
}

/// `(2d-1)!!` for `d >= 0`, the normalization that appears everywhere.
pub fn odd_double_factorial(d: usize) -> BigInt {
    double_factorial(2 * d as i64 - 1).expect("d >= 0")
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

static BERNOULLI: Lazy<Mutex<Vec<BigRational>>> =
    Lazy::new(|| Mutex::new(vec![BigRational::one()]));

/// Bernoulli numbers with `B_1 = -1/2`.
pub fn bernoulli(k: usize) -> BigRational {
    let mut table = BERNOULLI.lock();
    while table.len() <= k {
        let m = table.len();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = BigRational::zero();
        for (j, b) in table.iter().enumerate() {
            acc += BigRational::from_integer(binomial(m + 1, j)) * b;
        }
        let b_m = -acc / BigRational::from_integer(BigInt::from(m + 1));
        table.push(b_m);
    }
    table[k].clone()
}

/// Coefficient `B_{2k} / (2k (2k-1))` of the Stirling series, `k >= 1`.
pub fn stirling_coefficient(k: usize) -> BigRational {
    assert!(k >= 1);
    bernoulli(2 * k) / BigRational::from_integer(BigInt::from(2 * k * (2 * k - 1)))
}

/// Calls `f` on every partition of `total` into parts drawn from
/// `1..=max_part`, as multiplicity vectors indexed by part size.
pub fn for_each_partition(total: usize, max_part: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(rest: usize, part: usize, mult: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if rest == 0 {
            f(mult);
            return;
        }
        if part == 0 {
            return;
        }
        let mut k = 0;
        while k * part <= rest {
            mult[part] = k;
            rec(rest - k * part, part - 1, mult, f);
            k += 1;
        }
        mult[part] = 0;
    }
    let mut mult = vec![0usize; max_part.max(total) + 1];
    rec(total, max_part.min(total), &mut mult, f);
}
