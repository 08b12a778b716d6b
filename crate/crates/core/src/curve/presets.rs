//! Preset curves and the reduction of global parametrizations to jets.

use super::{CurveError, LocalCurveData};
use crate::algebra::{factorial, BiSeries, RingMode, Scalar, Series, SeriesError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum CurvePreset {
    /// `y = zeta`, `B` standard: `t_k = delta_{k,3}`.
    Airy,
    /// Arbitrary local data given directly.
    DeformedAiry { times: Vec<(usize, Scalar)>, bergman: Vec<(usize, usize, Scalar)> },
    /// `x = z^2`, `y = sin(2 pi z) / (2 pi)` with `pi^2` carried as `q`.
    WeilPetersson,
    /// `x = -z + ln z`, `y = z`.
    Lambert,
    /// `x = -f ln z - ln(1 - z)`, `y = -ln z`; Taylor data exists only for
    /// rational framing.
    Vertex { framing: Scalar },
    /// Two-branchpoint curve: data only, no local jet.
    Quadrangulation { t: Scalar, t4: Scalar },
}

impl CurvePreset {
    pub fn name(&self) -> &'static str {
        match self {
            CurvePreset::Airy => "airy",
            CurvePreset::DeformedAiry { .. } => "deformed-airy",
            CurvePreset::WeilPetersson => "weil-petersson",
            CurvePreset::Lambert => "lambert",
            CurvePreset::Vertex { .. } => "vertex",
            CurvePreset::Quadrangulation { .. } => "quadrangulation",
        }
    }
}

/// Documentation-only data of the quadrangulation curve
/// `x = gamma (z + 1/z)`, `y = t/(gamma z) - t4 gamma^3 z^-3`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadrangulationData {
    pub t: Scalar,
    pub t4: Scalar,
    /// Branchpoints in the global coordinate `z`.
    pub branchpoints: [i64; 2],
    /// `gamma^2` solves `3 t4 gamma^4 - gamma^2 + t = 0` (root with `gamma^2 = t + O(t^2)`).
    pub gamma_squared_equation: [Scalar; 3],
}

impl QuadrangulationData {
    pub fn new(t: Scalar, t4: Scalar) -> Self {
        let eq = [t.clone(), Scalar::int(-1), Scalar::int(3) * &t4];
        QuadrangulationData { t, t4, branchpoints: [1, -1], gamma_squared_equation: eq }
    }
}

fn series_err(e: SeriesError) -> CurveError {
    CurveError::Unsupported("series".into(), e.to_string())
}

/// Jet of a curve given globally by `x(a + w) - x(a) = X(w)`, `y(a + w) = Y(w)`
/// and `B = dz dz' / (z - z')^2`. `sigma` is a square root of `X''(0)/2` in
/// the target ring; it fixes the orientation of `zeta`.
pub(crate) fn jet_from_global(
    x_of_w: &Series,
    y_of_w: &Series,
    sigma: &Scalar,
    ring: RingMode,
    x_a: Option<Scalar>,
    k_max: usize,
    m_max: usize,
) -> Result<LocalCurveData, CurveError> {
    let nw = (k_max as i64 - 2).max(2 * m_max as i64 + 3);
    let c2 = x_of_w.coeff(2).map_err(series_err)?;
    assert_eq!(sigma * sigma, c2, "sigma must square to x''(a)/2");
    // zeta(w) = sigma w sqrt(X / (c2 w^2))
    let h = x_of_w.truncate(nw + 1).shift(-2).scale(&c2.inv().expect("regular branchpoint"));
    let h_minus_1 = h.sub(&Series::one('w', h.order())).map_err(series_err)?;
    let sqrt_h = h_minus_1.log1p().map_err(series_err)?.scale(&Scalar::frac(1, 2)).exp().map_err(series_err)?;
    let zeta_of_w = sqrt_h.shift(1).scale(sigma);
    let w_of_zeta = zeta_of_w.revert('z').map_err(series_err)?;
    let y_of_zeta = y_of_w.compose(&w_of_zeta).map_err(series_err)?;

    let mut t = Vec::new();
    for k in 2..=k_max {
        t.push((k, y_of_zeta.coeff(k as i64 - 2).map_err(series_err)?));
    }

    // B_{k,l} = [a^k b^l] d_a d_b log Q(a, b), Q = (w(a) - w(b)) / (a - b)
    let degree = 2 * m_max + 2;
    let mut q = BiSeries::zero(degree);
    for n in 1..=degree + 1 {
        let phi = w_of_zeta.coeff(n as i64).map_err(series_err)?;
        if phi.is_zero() {
            continue;
        }
        for i in 0..n {
            q.set(i, n - 1 - i, phi.clone());
        }
    }
    let q_inv = q.inv().expect("w'(0) is invertible");
    let bmat = q.da().mul(&q_inv).db();
    let mut b = Vec::new();
    for k in 0..=m_max {
        for l in k..=m_max {
            b.push((k, l, bmat.get(k, l)));
        }
    }
    LocalCurveData::new(ring, t, b, x_a, Some(k_max), Some(m_max))
}

/// A square root of `c` in `Q` or in `Q[s]/(s^2 - r)`: returns the ring and
/// the root `lambda s` (or `lambda`).
fn root_in_ring(c: &BigRational, r: &BigRational) -> (RingMode, Scalar) {
    if let Some(root) = rational_root(c) {
        return (RingMode::Rational, Scalar::rat(root));
    }
    let lambda = rational_root(&(c / r)).expect("c / r must be a rational square");
    (RingMode::Quadratic(r.clone()), Scalar::rat(lambda) * Scalar::sqrt_of(r.clone()))
}

fn rational_root(c: &BigRational) -> Option<BigRational> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    (&(&n * &n) == c.numer() && &(&d * &d) == c.denom()).then(|| BigRational::new(n, d))
}

fn int_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Lambert curve jet in `Q[s]/(s^2 + 2)`, oriented so that `t_3 = s`.
pub fn lambert_local_data(k_max: usize, m_max: usize) -> Result<LocalCurveData, CurveError> {
    let n = (k_max.max(2 * m_max + 5) + 4) as i64;
    // X(w) = -w + ln(1 + w)
    let x: Vec<Scalar> = (0..=n)
        .map(|k| if k < 2 { Scalar::zero() } else { Scalar::frac(if k % 2 == 1 { 1 } else { -1 }, k) })
        .collect();
    let x = Series::from_coeffs('w', x, n);
    let y = Series::from_coeffs('w', vec![Scalar::one(), Scalar::one()], n);
    let r = int_frac(-2, 1);
    // sigma = -s/2 makes w = s zeta + ...
    let sigma = Scalar::frac(-1, 2) * Scalar::sqrt_of(r.clone());
    jet_from_global(&x, &y, &sigma, RingMode::Quadratic(r), Some(Scalar::int(-1)), k_max, m_max)
        .map(|c| c.with_name("lambert"))
}

/// Vertex curve jet for a rational framing `f` (not 0 or -1).
pub fn vertex_local_data(f: &BigRational, k_max: usize, m_max: usize) -> Result<LocalCurveData, CurveError> {
    if f.is_zero() || *f == -BigRational::one() {
        return Err(CurveError::InvalidField { path: "framing".into(), reason: "f must not be 0 or -1".into() });
    }
    let one = BigRational::one();
    let a = f / (f + &one);
    let b = &one / (f + &one);
    let n = (k_max.max(2 * m_max + 5) + 4) as i64;
    let mut x = vec![Scalar::zero(); n as usize + 1];
    let mut y = vec![Scalar::zero(); n as usize + 1];
    let mut a_pow = one.clone();
    let mut b_pow = one.clone();
    for k in 1..=n as usize {
        a_pow = &a_pow * &a;
        b_pow = &b_pow * &b;
        let kk = BigRational::from_integer(BigInt::from(k));
        let sign = if k % 2 == 1 { one.clone() } else { -one.clone() };
        // -f ln(1 + w/a) - ln(1 - w/b)
        x[k] = Scalar::rat(-(f * &sign) / (&kk * &a_pow) + &one / (&kk * &b_pow));
        // -ln(1 + w/a)
        y[k] = Scalar::rat(-sign / (&kk * &a_pow));
    }
    let x = Series::from_coeffs('w', x, n);
    let y = Series::from_coeffs('w', y, n);
    let c2 = x.coeff(2).unwrap().as_rational().unwrap().clone();
    let r = BigRational::from_integer(BigInt::from(2)) * f * (f + &one);
    let (ring, sigma) = root_in_ring(&c2, &r);
    jet_from_global(&x, &y, &sigma, ring, None, k_max, m_max).map(|c| c.with_name(format!("vertex(f={f})")))
}

/// Weil–Petersson jet over `Q(q)`, `q = pi^2`: `t_{2k+3} = (-4q)^k / (2k+1)!`.
pub fn weil_petersson_local_data(k_max: usize) -> LocalCurveData {
    let q = Scalar::q();
    let mut t = Vec::new();
    let mut k = 0;
    while 2 * k + 3 <= k_max {
        let c = Scalar::int(-4).pow(k as i64) * q.pow(k as i64) / Scalar::big(factorial(2 * k + 1));
        t.push((2 * k + 3, c));
        k += 1;
    }
    LocalCurveData::new(RingMode::RatFun, t, Vec::new(), Some(Scalar::zero()), Some(k_max), None)
        .expect("t_3 = 1")
        .with_name("weil-petersson")
}

/// Local data of a preset, truncated at `k_max`, `m_max` where the preset is
/// not exact.
pub fn preset_local_data(preset: &CurvePreset, k_max: usize, m_max: usize) -> Result<LocalCurveData, CurveError> {
    match preset {
        CurvePreset::Airy => {
            Ok(LocalCurveData::new(RingMode::Rational, [(3, Scalar::one())], [], Some(Scalar::zero()), None, None)?
                .with_name("airy"))
        }
        CurvePreset::DeformedAiry { times, bergman } => {
            let mut ring = RingMode::Rational;
            for v in times.iter().map(|(_, v)| v).chain(bergman.iter().map(|(_, _, v)| v)) {
                let m = v.mode();
                if m != RingMode::Rational {
                    ring = m;
                }
            }
            Ok(LocalCurveData::new(ring, times.clone(), bergman.clone(), None, None, None)?.with_name("deformed-airy"))
        }
        CurvePreset::WeilPetersson => Ok(weil_petersson_local_data(k_max)),
        CurvePreset::Lambert => lambert_local_data(k_max, m_max),
        CurvePreset::Vertex { framing } => match framing.as_rational() {
            Some(f) => vertex_local_data(f, k_max, m_max),
            None => Err(CurveError::Unsupported(
                "vertex".into(),
                "a symbolic framing has transcendental Taylor data; use the vertex class data instead".into(),
            )),
        },
        CurvePreset::Quadrangulation { .. } => Err(CurveError::MultiBranchpoint("quadrangulation".into())),
    }
}
