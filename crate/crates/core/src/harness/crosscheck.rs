//! Entrywise comparison of the recursion against the intersection formula.

use super::HarnessError;
use crate::algebra::Scalar;
use crate::bridge::class_from_curve;
use crate::curve::LocalCurveData;
use crate::intersect::mainformula_tensor;
use crate::toprec::{compute_fg, correlator};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

#[derive(Clone, Debug, PartialEq)]
pub struct CrosscheckEntry {
    pub g: usize,
    pub n: usize,
    pub degrees: Vec<usize>,
    pub toprec: Scalar,
    pub formula: Scalar,
    pub equal: bool,
}

#[derive(Clone, Debug)]
pub struct CrosscheckReport {
    pub fingerprint: String,
    pub entries: Vec<CrosscheckEntry>,
    pub timings: Vec<(usize, usize, Duration)>,
}

impl CrosscheckReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CrosscheckEntry> {
        self.entries.iter().filter(|e| !e.equal)
    }

    /// PASS needs at least one compared entry and no inequality.
    pub fn passed(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(|e| e.equal)
    }

    /// Entries that agree, out of all compared.
    pub fn counts(&self) -> (usize, usize) {
        (self.entries.iter().filter(|e| e.equal).count(), self.entries.len())
    }

    pub fn render(&self, verbose: bool) -> String {
        let mut out = String::new();
        writeln!(out, "curve {}", self.fingerprint).unwrap();
        for (g, n, t) in &self.timings {
            let (ok, all) = self
                .entries
                .iter()
                .filter(|e| e.g == *g && e.n == *n)
                .fold((0, 0), |(a, b), e| (a + e.equal as usize, b + 1));
            writeln!(out, "  (g,n)=({g},{n}): {ok}/{all} equal  [{:.3}s]", t.as_secs_f64()).unwrap();
        }
        for e in &self.entries {
            if verbose || !e.equal {
                writeln!(
                    out,
                    "  {} ({},{}) {:?}: recursion {} formula {}",
                    if e.equal { "ok  " } else { "FAIL" },
                    e.g,
                    e.n,
                    e.degrees,
                    e.toprec,
                    e.formula
                )
                .unwrap();
            }
        }
        let (ok, all) = self.counts();
        writeln!(out, "{}: {ok}/{all} entries equal", if self.passed() { "PASS" } else { "FAIL" }).unwrap();
        out
    }
}

/// Stable `(g, n)` with `1 <= 2g - 2 + n <= max_chi`, by increasing `chi`
/// then genus.
pub fn stable_pairs(max_chi: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for chi in 1..=max_chi {
        for g in 0..=(chi + 2) / 2 {
            if chi + 2 >= 2 * g {
                out.push((g, chi + 2 - 2 * g));
            }
        }
    }
    out
}

/// Compares the recursion with the intersection formula for every stable
/// `(g, n)` with `2g - 2 + n <= max_chi` (`n = 0` through `F_g`).
pub fn crosscheck(curve: &LocalCurveData, max_chi: usize) -> Result<CrosscheckReport, HarnessError> {
    crosscheck_pairs(curve, &stable_pairs(max_chi))
}

pub fn crosscheck_pairs(curve: &LocalCurveData, pairs: &[(usize, usize)]) -> Result<CrosscheckReport, HarnessError> {
    let degree = pairs.iter().map(|&(g, n)| 3 * g + n - 3).max().unwrap_or(0);
    let class = class_from_curve(curve, degree.max(1))?.class;
    let mut entries = Vec::new();
    let mut timings = Vec::new();
    for &(g, n) in pairs {
        let start = Instant::now();
        let formula = mainformula_tensor(g, n, &class)?;
        if n == 0 {
            let f = compute_fg(curve, g)?;
            let v = formula.get(&[]);
            entries.push(CrosscheckEntry { g, n, degrees: vec![], equal: f == v, toprec: f, formula: v });
        } else {
            let direct = correlator(curve, g, n)?;
            let mut keys = direct.all_keys();
            keys.extend(formula.all_keys());
            keys.sort();
            keys.dedup();
            for k in keys {
                let (a, b) = (direct.get(&k), formula.get(&k));
                entries.push(CrosscheckEntry { g, n, degrees: k, equal: a == b, toprec: a, formula: b });
            }
        }
        timings.push((g, n, start.elapsed()));
    }
    Ok(CrosscheckReport { fingerprint: curve.fingerprint(), entries, timings })
}
