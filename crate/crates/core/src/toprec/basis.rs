//! Local expansions of the basis forms and of the recursion kernel.

use super::TrError;
use crate::algebra::{odd_double_factorial, Scalar, Series};
use crate::curve::LocalCurveData;
use num_bigint::BigInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    /// `dxi_d`, pole of order `2d + 2`.
    Odd,
    /// `dxi~_d`, pole of order `2d + 1`; never survives in a correlator.
    Even,
}

/// Coefficient function (in front of `dzeta`) of a basis form at the
/// branchpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisExpansion {
    pub d: usize,
    pub parity: Parity,
    pub series: Series,
}

fn pow2(d: usize) -> Scalar {
    Scalar::big(BigInt::from(1) << d)
}

/// Expansion of `dxi_d` or `dxi~_d` in `zeta` to order `order`:
///
/// `dxi_d  = -(2d+1)!!/2^d zeta^(-2d-2) - (2d-1)!!/2^d sum_k B_{2d,k} zeta^k`
/// `dxi~_d = -2d zeta^(-2d-1) - sum_k B_{2d-1,k} zeta^k`
pub fn xi_expansion(curve: &LocalCurveData, d: usize, parity: Parity, order: i64) -> Result<BasisExpansion, TrError> {
    let series = match parity {
        Parity::Odd => {
            let scale = Scalar::big(odd_double_factorial(d)) / pow2(d);
            let lead = -Scalar::int(2 * d as i64 + 1) * &scale;
            let min = -2 * d as i64 - 2;
            let mut c = vec![Scalar::zero(); (order.max(min) - min + 1) as usize];
            c[0] = lead;
            for k in 0..=order {
                c[(k - min) as usize] = -curve.b_checked(2 * d, k as usize)? * &scale;
            }
            Series::new('z', min, c, order)
        }
        Parity::Even if d == 0 => Series::zero('z', order),
        Parity::Even => {
            let min = -2 * d as i64 - 1;
            let mut c = vec![Scalar::zero(); (order.max(min) - min + 1) as usize];
            c[0] = Scalar::int(-2 * d as i64);
            for k in 0..=order {
                c[(k - min) as usize] = -curve.b_checked(2 * d - 1, k as usize)?;
            }
            Series::new('z', min, c, order)
        }
    };
    Ok(BasisExpansion { d, parity, series })
}

/// `int_{-z}^{z} B(z0, .) = sum_d coefficient * z^power * dxi_d(z0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelTerm {
    pub power: usize,
    pub d: usize,
    pub coefficient: Scalar,
}

/// Kernel numerator up to `z^order`. The coefficient of `z^(2d+1) dxi_d(z0)`
/// is `-2^(d+1)/(2d+1)!!`; the even family integrates to zero. The curve only
/// enters through the basis forms, so only the stored truncation is checked.
pub fn kernel_numerator(curve: &LocalCurveData, order: usize) -> Result<Vec<KernelTerm>, TrError> {
    let dmax = order.saturating_sub(1) / 2;
    if order >= 1 {
        curve.b_checked(2 * dmax, 0)?;
    }
    Ok((0..=dmax)
        .filter(|d| 2 * d < order)
        .map(|d| KernelTerm { power: 2 * d + 1, d, coefficient: kernel_coefficient(d) })
        .collect())
}

pub(crate) fn kernel_coefficient(d: usize) -> Scalar {
    -pow2(d + 1) / Scalar::big(odd_double_factorial(d + 1))
}
