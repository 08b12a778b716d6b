//! The recursion itself, with a process-wide memo of computed tensors.
//!
//! External legs stay in basis form throughout: every factor of the bracket
//! is expanded only in the active variable `z`, and the residue against the
//! kernel is a trilinear pairing of coefficient lists with `1 / (8 z^2 T(z))`
//! where `T(z) = sum_j t_{2j+3} z^{2j}`.

use super::basis::{kernel_coefficient, xi_expansion, Parity};
use super::{distinct_permutations, CorrelatorTensor, TrError};
use crate::algebra::{odd_double_factorial, Scalar, Series};
use crate::curve::LocalCurveData;
use num_bigint::BigInt;
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::Arc;

type Key = (String, usize, usize);

static CACHE: Lazy<RwLock<HashMap<Key, Arc<CorrelatorTensor>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Drops every memoized tensor.
pub fn clear_cache() {
    CACHE.write().clear();
}

pub fn cache_len() -> usize {
    CACHE.read().len()
}

fn check_stable(g: usize, n: usize) -> Result<(), TrError> {
    if 2 * g + n <= 2 {
        return Err(TrError::Unstable { g, n });
    }
    Ok(())
}

/// `W_n^(g)` of `curve`, memoized by curve fingerprint.
pub fn correlator(curve: &LocalCurveData, g: usize, n: usize) -> Result<Arc<CorrelatorTensor>, TrError> {
    check_stable(g, n)?;
    if n == 0 {
        return Err(TrError::Unstable { g, n });
    }
    let key = (curve.fingerprint(), g, n);
    if let Some(t) = CACHE.read().get(&key) {
        return Ok(t.clone());
    }
    let t = Arc::new(recursion_step(curve, g, n)?);
    Ok(CACHE.write().entry(key).or_insert(t).clone())
}

/// All stable `W_n^(g)` (with `n >= 1`) of Euler characteristic
/// `2g - 2 + n <= max_chi`, level by level; one level runs in parallel.
pub fn correlators_up_to(curve: &LocalCurveData, max_chi: usize) -> Result<Vec<Arc<CorrelatorTensor>>, TrError> {
    let mut out = Vec::new();
    for chi in 1..=max_chi {
        let level: Vec<(usize, usize)> =
            (0..=chi.div_ceil(2)).filter_map(|g| (chi + 2).checked_sub(2 * g).map(|n| (g, n))).filter(|&(_, n)| n >= 1).collect();
        let tensors: Result<Vec<_>, _> = level.par_iter().map(|&(g, n)| correlator(curve, g, n)).collect();
        out.extend(tensors?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Active {
    /// `dxi_a` in the active slot.
    Xi(usize),
    /// `z^m`, from the Taylor expansion of `B(z, z_i)`.
    Mono(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Leg {
    Odd(usize),
    Even(usize),
}

/// One term of a factor's expansion in its active slot.
struct Piece {
    active: Active,
    legs: Vec<(usize, Leg)>,
    coeff: Scalar,
}

struct Jet<'a> {
    curve: &'a LocalCurveData,
    u: Series,
    pairings: HashMap<(usize, Active, Active), Scalar>,
}

impl<'a> Jet<'a> {
    fn new(curve: &'a LocalCurveData, dmax: usize) -> Result<Self, TrError> {
        let order = 2 * dmax as i64;
        let mut t = vec![Scalar::zero(); order as usize + 1];
        for j in (0..=order as usize).step_by(2) {
            t[j] = Scalar::int(8) * curve.t_checked(j + 3)?;
        }
        let u = Series::from_coeffs('z', t, order).inv()?;
        Ok(Jet { curve, u, pairings: HashMap::new() })
    }

    fn min_exponent(a: Active) -> i64 {
        match a {
            Active::Xi(d) => -2 * d as i64 - 2,
            Active::Mono(m) => m as i64,
        }
    }

    /// Coefficients of the active factor up to `z^upto`; `conj` pulls the
    /// factor back along `z -> -z` (including `dz -> -dz`).
    fn side(&self, a: Active, conj: bool, upto: i64) -> Result<Vec<(i64, Scalar)>, TrError> {
        let flip = |e: i64, c: Scalar| if conj && e.rem_euclid(2) == 0 { -c } else { c };
        match a {
            Active::Mono(m) => {
                let e = m as i64;
                Ok(if e <= upto { vec![(e, flip(e, Scalar::one()))] } else { Vec::new() })
            }
            Active::Xi(d) => {
                if upto < Self::min_exponent(a) {
                    return Ok(Vec::new());
                }
                let x = xi_expansion(self.curve, d, Parity::Odd, upto)?;
                Ok(x.series.terms().map(|(e, c)| (e, flip(e, c.clone()))).collect())
            }
        }
    }

    /// `[z^(-2 d0)] X(z) Y(-z) (-1) / (8 T(z))`.
    fn pairing(&mut self, d0: usize, x: Active, y: Active) -> Result<Scalar, TrError> {
        if let Some(v) = self.pairings.get(&(d0, x, y)) {
            return Ok(v.clone());
        }
        let target = -2 * d0 as i64;
        let xs = self.side(x, false, target - Self::min_exponent(y))?;
        let ys = self.side(y, true, target - Self::min_exponent(x))?;
        let mut acc = Scalar::zero();
        for (i, xi) in &xs {
            for (k, yk) in &ys {
                let j = target - i - k;
                if j >= 0 && j % 2 == 0 {
                    let u = self.u.coeff(j)?;
                    if !u.is_zero() {
                        acc += xi * yk * u;
                    }
                }
            }
        }
        self.pairings.insert((d0, x, y), acc.clone());
        Ok(acc)
    }

    /// `[z^(-2 d0)] W_2^(0)(z, -z) / (8 T(z) dz)` with `W_2^(0)(z, -z) / dz^2 = -B(z, -z)`.
    fn self_pairing(&self, d0: usize) -> Result<Scalar, TrError> {
        let target = -2 * d0 as i64;
        // -1/(4 z^2) - sum_{k,l} B_{k,l} (-1)^l z^(k+l)
        let mut acc = Scalar::frac(-1, 4) * self.u_at(target + 2)?;
        for e in 0..=target.max(-1) {
            let mut c = Scalar::zero();
            for k in 0..=e as usize {
                let l = e as usize - k;
                let b = self.curve.b_checked(k, l)?;
                c += if l.is_multiple_of(2) { -b } else { b };
            }
            acc += c * self.u_at(target - e)?;
        }
        Ok(acc)
    }

    fn u_at(&self, j: i64) -> Result<Scalar, TrError> {
        if j < 0 {
            Ok(Scalar::zero())
        } else {
            Ok(self.u.coeff(j)?)
        }
    }
}

/// `B(z, z_i) = sum_m z^m beta_m e_m(z_i) dz`, `e_{2d} = dxi_d`, `e_{2d-1} = dxi~_d`.
fn bergman_pieces(leg: usize, max_power: usize) -> Vec<Piece> {
    (0..=max_power)
        .map(|m| {
            let (l, coeff) = if m % 2 == 0 {
                let d = m / 2;
                (Leg::Odd(d), -Scalar::big(BigInt::from(1) << d) / Scalar::big(odd_double_factorial(d)))
            } else {
                (Leg::Even(m.div_ceil(2)), -Scalar::one())
            };
            Piece { active: Active::Mono(m), legs: vec![(leg, l)], coeff }
        })
        .collect()
}

/// Active-slot expansion of a stable correlator whose other legs sit at
/// the external positions `legs`.
fn tensor_pieces(t: &CorrelatorTensor, legs: &[usize]) -> Vec<Piece> {
    let mut out = Vec::new();
    for (key, v) in t.entries() {
        for perm in distinct_permutations(key) {
            out.push(Piece {
                active: Active::Xi(perm[0]),
                legs: legs.iter().zip(&perm[1..]).map(|(&p, &d)| (p, Leg::Odd(d))).collect(),
                coeff: v.clone(),
            });
        }
    }
    out
}

fn factor_pieces(curve: &LocalCurveData, h: usize, legs: &[usize], max_power: usize) -> Result<Vec<Piece>, TrError> {
    if h == 0 && legs.len() == 1 {
        Ok(bergman_pieces(legs[0], max_power))
    } else {
        let t = correlator(curve, h, legs.len() + 1)?;
        Ok(tensor_pieces(&t, legs))
    }
}

fn fmt_legs(d0: usize, legs: &[Leg]) -> String {
    let mut s = format!("dxi_{d0}(z0)");
    for (i, l) in legs.iter().enumerate() {
        match l {
            Leg::Odd(d) => s.push_str(&format!(" dxi_{d}(z{})", i + 1)),
            Leg::Even(d) => s.push_str(&format!(" dxi~_{d}(z{})", i + 1)),
        }
    }
    s
}

/// One step of the recursion: `W_n^(g)` from strictly smaller correlators
/// (computed on demand through the memo).
pub fn recursion_step(curve: &LocalCurveData, g: usize, n: usize) -> Result<CorrelatorTensor, TrError> {
    check_stable(g, n)?;
    if n == 0 {
        return Err(TrError::Unstable { g, n });
    }
    curve.check_orders(g, n)?;
    let dmax = 3 * g + n - 3;
    let ext = n - 1;
    let mut jet = Jet::new(curve, dmax)?;
    let mut acc: HashMap<(usize, Vec<Leg>), Scalar> = HashMap::new();
    let mut add = |d0: usize, legs: &[(usize, Leg)], v: Scalar| {
        if v.is_zero() {
            return;
        }
        let mut by_pos = vec![Leg::Odd(0); ext];
        for &(p, l) in legs {
            by_pos[p] = l;
        }
        *acc.entry((d0, by_pos)).or_insert_with(Scalar::zero) += v;
    };

    // W_{n+1}^(g-1)(z, -z, J)
    if g >= 1 {
        if g == 1 && n == 1 {
            for d0 in 0..=dmax {
                add(d0, &[], jet.self_pairing(d0)?);
            }
        } else {
            let t = correlator(curve, g - 1, n + 1)?;
            for (key, v) in t.entries() {
                for perm in distinct_permutations(key) {
                    let legs: Vec<(usize, Leg)> = perm[2..].iter().enumerate().map(|(p, &d)| (p, Leg::Odd(d))).collect();
                    for d0 in 0..=dmax {
                        let r = jet.pairing(d0, Active::Xi(perm[0]), Active::Xi(perm[1]))?;
                        add(d0, &legs, v * &r);
                    }
                }
            }
        }
    }

    // sum over h and I of W^(h)(z, I) W^(g-h)(-z, J \ I), both factors stable or B
    for h in 0..=g {
        for mask in 0u32..(1 << ext) {
            let inside: Vec<usize> = (0..ext).filter(|p| mask & (1 << p) != 0).collect();
            let outside: Vec<usize> = (0..ext).filter(|p| mask & (1 << p) == 0).collect();
            if (h == 0 && inside.is_empty()) || (h == g && outside.is_empty()) {
                continue;
            }
            let left = factor_pieces(curve, h, &inside, 2 * dmax)?;
            let right = factor_pieces(curve, g - h, &outside, 2 * dmax)?;
            for x in &left {
                for y in &right {
                    let c = &x.coeff * &y.coeff;
                    let legs: Vec<(usize, Leg)> = x.legs.iter().chain(&y.legs).copied().collect();
                    for d0 in 0..=dmax {
                        let r = jet.pairing(d0, x.active, y.active)?;
                        if !r.is_zero() {
                            add(d0, &legs, &c * &r);
                        }
                    }
                }
            }
        }
    }

    let mut out = CorrelatorTensor::new(g, n);
    for ((d0, legs), v) in &acc {
        if v.is_zero() {
            continue;
        }
        if legs.iter().any(|l| matches!(l, Leg::Even(_))) {
            return Err(TrError::EvenFamily { g, n, legs: fmt_legs(*d0, legs), value: v.to_string() });
        }
        let mut degrees = vec![*d0];
        degrees.extend(legs.iter().map(|l| match l {
            Leg::Odd(d) | Leg::Even(d) => *d,
        }));
        if degrees.iter().sum::<usize>() > dmax {
            return Err(TrError::DegreeBound { g, n, degrees });
        }
        let value = v * kernel_coefficient(*d0);
        let existing = out.get(&degrees);
        if existing.is_zero() {
            out.set(&degrees, value);
        } else if existing != value {
            return Err(TrError::Asymmetric { g, n, degrees });
        }
    }
    // every ordering of every nonzero entry must have been produced
    for (key, v) in out.entries() {
        for perm in distinct_permutations(key) {
            let legs: Vec<Leg> = perm[1..].iter().map(|&d| Leg::Odd(d)).collect();
            let got = acc.get(&(perm[0], legs)).map(|x| x * kernel_coefficient(perm[0])).unwrap_or_else(Scalar::zero);
            if &got != v {
                return Err(TrError::Asymmetric { g, n, degrees: perm });
            }
        }
    }
    Ok(out)
}

/// `F_g = (1 / (2 - 2g)) Res W_1^(g) Phi`, `d Phi = y dx`, for `g >= 2`.
pub fn compute_fg(curve: &LocalCurveData, g: usize) -> Result<Scalar, TrError> {
    if g < 2 {
        return Err(TrError::GenusTooSmall(g));
    }
    let w = correlator(curve, g, 1)?;
    // Res Phi dxi_d = -2 t_{2d+1} (2d-1)!! / 2^d, zero for d = 0
    let mut acc = Scalar::zero();
    for (key, c) in w.entries() {
        let d = key[0];
        if d == 0 {
            continue;
        }
        let t = curve.t_checked(2 * d + 1)?;
        if t.is_zero() {
            continue;
        }
        let r = Scalar::int(-2) * t * Scalar::big(odd_double_factorial(d)) / Scalar::big(BigInt::from(1) << d);
        acc += c * r;
    }
    Ok(acc / Scalar::int(2 - 2 * g as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RingMode;
    use crate::curve::{preset_local_data, CurvePreset};

    fn deformed(t5: Scalar, b00: Scalar) -> LocalCurveData {
        LocalCurveData::new(
            RingMode::Rational,
            [(3, Scalar::frac(3, 2)), (5, t5), (7, Scalar::frac(-1, 5))],
            [(0, 0, b00), (2, 0, Scalar::int(3)), (2, 2, Scalar::frac(-1, 2)), (1, 0, Scalar::int(2))],
            None,
            None,
            None,
        )
        .unwrap()
    }

    #[test]
    fn w30_and_w11() {
        let c = deformed(Scalar::frac(2, 3), Scalar::frac(1, 7));
        let t3 = Scalar::frac(3, 2);
        let t5 = Scalar::frac(2, 3);
        let w30 = correlator(&c, 0, 3).unwrap();
        assert_eq!(w30.get(&[0, 0, 0]), (Scalar::int(2) * &t3).inv().unwrap());
        assert_eq!(w30.len(), 1);
        let w11 = correlator(&c, 1, 1).unwrap();
        assert_eq!(w11.get(&[1]), (Scalar::int(24) * &t3).inv().unwrap());
        let expect = Scalar::int(-3) * &t5 / (Scalar::int(48) * &t3 * &t3) + Scalar::frac(1, 7) / (Scalar::int(4) * &t3);
        assert_eq!(w11.get(&[0]), expect);
    }

    #[test]
    fn w40_pure_xi0() {
        let c = deformed(Scalar::frac(2, 3), Scalar::frac(1, 7));
        let (t3, t5, b00) = (Scalar::frac(3, 2), Scalar::frac(2, 3), Scalar::frac(1, 7));
        let w = correlator(&c, 0, 4).unwrap();
        let expect = Scalar::int(-3) * &t5 / (Scalar::int(4) * t3.pow(3)) + Scalar::int(3) * b00 / (Scalar::int(4) * t3.pow(2));
        assert_eq!(w.get(&[0, 0, 0, 0]), expect);
        assert_eq!(w.get(&[0, 0, 0, 1]), (Scalar::int(2) * t3.pow(2)).inv().unwrap());
    }

    #[test]
    fn airy_fg_vanishes() {
        let airy = preset_local_data(&CurvePreset::Airy, 0, 0).unwrap();
        assert_eq!(compute_fg(&airy, 2).unwrap(), Scalar::zero());
        assert!(matches!(compute_fg(&airy, 1), Err(TrError::GenusTooSmall(1))));
    }

    #[test]
    fn even_times_do_not_matter() {
        let c = deformed(Scalar::frac(2, 3), Scalar::frac(1, 7));
        let c2 = c.with_time(2, Scalar::int(11)).unwrap().with_time(4, Scalar::frac(5, 3)).unwrap();
        assert_ne!(c.fingerprint(), c2.fingerprint());
        for (g, n) in [(0, 3), (1, 1), (0, 4), (1, 2), (2, 1)] {
            assert_eq!(correlator(&c, g, n).unwrap(), correlator(&c2, g, n).unwrap());
        }
    }

    #[test]
    fn unstable_rejected() {
        let airy = preset_local_data(&CurvePreset::Airy, 0, 0).unwrap();
        assert!(matches!(correlator(&airy, 0, 2), Err(TrError::Unstable { .. })));
    }

    #[test]
    fn under_truncation_is_an_error() {
        let c = deformed(Scalar::frac(2, 3), Scalar::frac(1, 7)).truncated(9, 20);
        assert!(matches!(correlator(&c, 2, 1), Err(TrError::Curve(_))));
    }
}
