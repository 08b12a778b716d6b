//! Identity checks shared by the acceptance suite and the command line.
//!
//! Each returns a [`CheckReport`]: the number of exact comparisons made and
//! a description of every one that failed.

use super::crosscheck::stable_pairs;
use super::fit::sample_points;
use super::{oracle::cut_join_oracle, HarnessError};
use crate::algebra::{odd_double_factorial, RingMode, Scalar, Series};
use crate::bridge::{elsv_hurwitz, vertex_class, Partition};
use crate::curve::LocalCurveData;
use crate::intersect::{
    boundary_class_correlator, hodge_class_correlator, kappa_class_correlator, kappa_class_correlator_with,
    leg_exponential,
};
use crate::toprec::{compute_fg, correlator, sorted_tuples, CorrelatorTensor};
use num_bigint::BigInt;
use std::fmt;

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} exact comparisons hold", self.checked - self.failures.len(), self.checked)?;
        for x in self.failures.iter().take(5) {
            write!(f, "\n    {x}")?;
        }
        Ok(())
    }
}

fn dim(g: usize, n: usize) -> usize {
    3 * g + n - 3
}

/// A fixed exact curve with generic rational data: `t_3 .. t_{2K+3}` and the
/// given Bergman entries.
fn sample_curve(seed: u64, k: usize, b: Vec<(usize, usize, Scalar)>) -> LocalCurveData {
    let pts = sample_points(k + 1, 1, seed).remove(0);
    let t: Vec<(usize, Scalar)> = pts.into_iter().enumerate().map(|(i, v)| (2 * i + 3, v)).collect();
    let ring = if b.iter().any(|(_, _, v)| v.mode() == RingMode::RatFun) { RingMode::RatFun } else { RingMode::Rational };
    LocalCurveData::new(ring, t, b, None, None, None).expect("t_3 is nonzero")
}

fn tensor(curve: &LocalCurveData, g: usize, n: usize) -> Result<CorrelatorTensor, HarnessError> {
    if n == 0 {
        let mut t = CorrelatorTensor::new(g, 0);
        t.set(&[], compute_fg(curve, g)?);
        Ok(t)
    } else {
        Ok((*correlator(curve, g, n)?).clone())
    }
}

/// `d C_{g,n}(J) / d B_{2k,2l}` against
/// `(2k-1)!! (2l-1)!! 2^(-k-l-1) [C_{g-1,n+2}(k,l,J) + sum C_{h}(k,I) C_{g-h}(l,J\I)]`
/// (twice that when `k != l`, the entry being shared with `B_{2l,2k}`), and
/// independence of the odd entries, for `1 <= 2g-2+n <= max_chi`,
/// `k + l <= max_kl`. `B_{2k,2l}` is the formal `q`; every other datum is a
/// fixed rational.
pub fn derivative_lemma(max_chi: usize, max_kl: usize, include_fg: bool) -> Result<CheckReport, HarnessError> {
    let mut report = CheckReport::default();
    let base = vec![(0usize, 0usize, Scalar::frac(2, 7)), (0, 2, Scalar::frac(-1, 3)), (2, 2, Scalar::frac(5, 4))];
    let pairs: Vec<(usize, usize)> = stable_pairs(max_chi).into_iter().filter(|&(_, n)| n > 0 || include_fg).collect();
    let kmax = pairs.iter().map(|&(g, n)| 2 * g + n).max().unwrap_or(1) + 3;
    for k in 0..=max_kl {
        for l in k..=max_kl - k {
            let mut b: Vec<_> = base.iter().filter(|(a, c, _)| (*a, *c) != (2 * k, 2 * l)).cloned().collect();
            b.push((2 * k, 2 * l, Scalar::q()));
            let curve = sample_curve(11, kmax, b);
            let c = Scalar::big(odd_double_factorial(k) * odd_double_factorial(l)) / Scalar::big(BigInt::from(1) << (k + l + 1))
                * Scalar::int(if k == l { 1 } else { 2 });
            for &(g, n) in &pairs {
                let lhs_t = tensor(&curve, g, n)?;
                let upper = if g >= 1 { Some(tensor(&curve, g - 1, n + 2)?) } else { None };
                for key in sorted_tuples(n, dim(g, n)) {
                    let lhs = lhs_t.get(&key).dq();
                    let mut rhs = Scalar::zero();
                    if let Some(u) = &upper {
                        let mut kk = vec![k, l];
                        kk.extend(&key);
                        rhs += u.get(&kk);
                    }
                    for h in 0..=g {
                        for mask in 0u32..(1 << n) {
                            let mut left = vec![k];
                            let mut right = vec![l];
                            for (i, &d) in key.iter().enumerate() {
                                if mask & (1 << i) != 0 {
                                    left.push(d)
                                } else {
                                    right.push(d)
                                }
                            }
                            if 2 * h + left.len() <= 2 || 2 * (g - h) + right.len() <= 2 {
                                continue;
                            }
                            let a = tensor(&curve, h, left.len())?.get(&left);
                            let b = tensor(&curve, g - h, right.len())?.get(&right);
                            rhs += a * b;
                        }
                    }
                    let rhs = &c * &rhs;
                    report.record(lhs == rhs, || format!("(g,n)=({g},{n}) d={key:?} (k,l)=({k},{l}): d/dq {lhs} vs {rhs}"));
                }
            }
            // odd entries never enter
            let mut b: Vec<_> = base.clone();
            b.push((2 * k + 1, 2 * l, Scalar::q()));
            let curve = sample_curve(11, kmax, b);
            for &(g, n) in &pairs {
                let t = tensor(&curve, g, n)?;
                for key in sorted_tuples(n, dim(g, n)) {
                    let d = t.get(&key).dq();
                    report.record(d.is_zero(), || format!("(g,n)=({g},{n}) d={key:?} depends on B_{{{},{}}}", 2 * k + 1, 2 * l));
                }
            }
        }
    }
    Ok(report)
}

/// The kappa/psi exchange identities for random rational `t~`:
///
/// `<kappa_d e^{t~.kappa} prod psi^d_i>_{g,n} = <psi_{n+1}^{d+1} e^{-t~(psi_{n+1})} e^{t~.kappa} prod psi^d_i>_{g,n+1}`
///
/// `<psi_{n+1}^{d+1} e^{t~.kappa} prod psi^d_i>_{g,n+1} = sum_j [u^j] e^{t~(u)} <kappa_{d+j} e^{t~.kappa} prod psi^d_i>_{g,n}`
pub fn kappa_exchange_identities(max_chi: usize, samples: usize) -> CheckReport {
    let mut report = CheckReport::default();
    let top = 3 * max_chi + 3;
    for (s, t) in sample_points(top, samples, 23).into_iter().enumerate() {
        let down = leg_exponential(&t, top);
        let mut g_up = vec![Scalar::zero()];
        g_up.extend(t.iter().cloned());
        let up = Series::from_coeffs('u', g_up, top as i64).exp().expect("no constant term");
        for (g, n) in stable_pairs(max_chi) {
            let top_gn = dim(g, n);
            for d in 0..=top_gn {
                for key in sorted_tuples(n, top_gn - d) {
                    let lhs = kappa_class_correlator_with(g, &key, &[d], &t);
                    let mut rhs = Scalar::zero();
                    for (j, w) in down.iter().enumerate() {
                        let mut kk = key.clone();
                        kk.push(d + 1 + j);
                        rhs += w * kappa_class_correlator(g, &kk, &t);
                    }
                    report.record(lhs == rhs, || format!("first identity, sample {s}, (g,n)=({g},{n}) d={d} J={key:?}: {lhs} vs {rhs}"));

                    let mut kk = key.clone();
                    kk.push(d + 1);
                    let lhs = kappa_class_correlator(g, &kk, &t);
                    let mut rhs = Scalar::zero();
                    for j in 0..=top_gn - d {
                        let w = up.coeff(j as i64).expect("within order");
                        rhs += w * kappa_class_correlator_with(g, &key, &[d + j], &t);
                    }
                    report.record(lhs == rhs, || format!("second identity, sample {s}, (g,n)=({g},{n}) d={d} J={key:?}: {lhs} vs {rhs}"));
                }
            }
        }
    }
    report
}

/// `<Lambda(1) Lambda(f) Lambda(-1-f) prod psi^d_i>` through Mumford's
/// formula against the vertex class data with its leg weights, for all
/// `1 <= 2g-2+n <= max_chi`, `n >= 1`.
pub fn vertex_hodge_identity(f: &Scalar, max_chi: usize) -> Result<CheckReport, HarnessError> {
    let mut report = CheckReport::default();
    let alphas = [Scalar::one(), f.clone(), -f - &Scalar::one()];
    let pairs: Vec<_> = stable_pairs(max_chi).into_iter().filter(|&(_, n)| n > 0).collect();
    let top = pairs.iter().map(|&(g, n)| dim(g, n)).max().unwrap_or(0);
    let class = vertex_class(f, top)?.weighted();
    for (g, n) in pairs {
        for key in sorted_tuples(n, dim(g, n)) {
            let a = hodge_class_correlator(g, &key, &alphas)?;
            let b = boundary_class_correlator(g, &key, &class);
            report.record(a == b, || format!("(g,n)=({g},{n}) d={key:?}: Hodge {a} vs vertex {b}"));
        }
    }
    Ok(report)
}

/// `(g, mu, H_{g,mu})`.
pub type HurwitzRow = (usize, Partition, String);

/// ELSV against the cut-and-join count for `g <= max_g`, `|mu| <= max_d`.
pub fn elsv_against_oracle(max_g: usize, max_d: usize) -> Result<(CheckReport, Vec<HurwitzRow>), HarnessError> {
    let mut report = CheckReport::default();
    let mut rows = Vec::new();
    for g in 0..=max_g {
        for d in 1..=max_d {
            for mu in Partition::all_of(d) {
                let a = elsv_hurwitz(g, &mu)?;
                let b = cut_join_oracle(g, &mu)?;
                report.record(a == b, || format!("g={g} mu={mu}: ELSV {a} vs oracle {b}"));
                rows.push((g, mu, a.to_string()));
            }
        }
    }
    Ok((report, rows))
}
