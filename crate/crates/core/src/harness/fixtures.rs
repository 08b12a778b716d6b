//! The fixture corpus: tabulated intersection numbers, a few closed-form
//! families, and the low-order correlators worked out by hand.

use super::fit::{fit, FittedPoly, Monomials};
use crate::algebra::{factorial, RingMode, Scalar};
use crate::bridge::curve_from_class;
use crate::curve::LocalCurveData;
use crate::intersect::{kappa_psi_correlator, mainformula_tensor, psi_correlator, ClassData, Prefactor};
use crate::toprec::{compute_fg, correlator};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::Write as _;

type Evaluator = Box<dyn Fn() -> Result<(String, bool), String> + Send + Sync>;

pub struct FixtureEntry {
    pub id: String,
    pub expected: String,
    eval: Evaluator,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureResult {
    pub id: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl FixtureEntry {
    pub fn evaluate(&self) -> FixtureResult {
        let (actual, pass) = match (self.eval)() {
            Ok(r) => r,
            Err(e) => (format!("error: {e}"), false),
        };
        FixtureResult { id: self.id.clone(), expected: self.expected.clone(), actual, pass }
    }
}

#[derive(Clone, Debug, Default)]
pub struct FixtureReport {
    pub results: Vec<FixtureResult>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FixtureResult> {
        self.results.iter().filter(|r| !r.pass)
    }

    /// Results whose id starts with `prefix`.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a FixtureResult> {
        self.results.iter().filter(move |r| r.id.starts_with(prefix))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            writeln!(out, "{} {:<34} expected {}  got {}", if r.pass { "ok  " } else { "FAIL" }, r.id, r.expected, r.actual).unwrap();
        }
        let ok = self.results.iter().filter(|r| r.pass).count();
        writeln!(out, "{}: {ok}/{} fixtures", if self.passed() { "PASS" } else { "FAIL" }, self.results.len()).unwrap();
        out
    }
}

fn value(id: impl Into<String>, expected: &str, f: impl Fn() -> Result<Scalar, String> + Send + Sync + 'static) -> FixtureEntry {
    let want = Scalar::parse(expected, &RingMode::Rational).expect("fixture values are rationals");
    FixtureEntry {
        id: id.into(),
        expected: expected.to_string(),
        eval: Box::new(move || {
            let got = f()?;
            Ok((got.to_string(), got == want))
        }),
    }
}

fn check(id: &str, expected: &str, f: impl Fn() -> Result<(String, bool), String> + Send + Sync + 'static) -> FixtureEntry {
    FixtureEntry { id: id.into(), expected: expected.into(), eval: Box::new(f) }
}

/// `(name, g, psi degrees including zeros, kappas, value)`.
type Cell = (&'static str, usize, &'static [usize], &'static [usize], &'static str);

const TABLE: &[Cell] = &[
    ("one", 0, &[0, 0, 0], &[], "1"),
    ("tau1", 1, &[1], &[], "1/24"),
    ("kappa1", 1, &[0], &[1], "1/24"),
    ("tau1", 0, &[1, 0, 0, 0], &[], "1"),
    ("kappa1", 0, &[0, 0, 0, 0], &[1], "1"),
    ("tau2", 1, &[2, 0], &[], "1/24"),
    ("tau1sq", 1, &[1, 1], &[], "1/24"),
    ("tau1kappa1", 1, &[1, 0], &[1], "1/12"),
    ("kappa2", 1, &[0, 0], &[2], "1/24"),
    ("kappa1sq", 1, &[0, 0], &[1, 1], "1/8"),
    ("kappa3", 2, &[], &[3], "1/576"),
    ("kappa2kappa1", 2, &[], &[2, 1], "1/120"),
    ("kappa1cube", 2, &[], &[1, 1, 1], "43/1440"),
    ("tau2", 0, &[2, 0, 0, 0, 0], &[], "1"),
    ("tau1sq", 0, &[1, 1, 0, 0, 0], &[], "2"),
    ("tau1kappa1", 0, &[1, 0, 0, 0, 0], &[1], "3"),
    ("kappa2", 0, &[0, 0, 0, 0, 0], &[2], "1"),
    ("kappa1sq", 0, &[0, 0, 0, 0, 0], &[1, 1], "5"),
    ("tau3", 1, &[3, 0, 0], &[], "1/24"),
    ("tau2tau1", 1, &[2, 1, 0], &[], "1/12"),
    ("tau1cube", 1, &[1, 1, 1], &[], "1/12"),
    ("tau2kappa1", 1, &[2, 0, 0], &[1], "1/6"),
    ("tau1sqkappa1", 1, &[1, 1, 0], &[1], "1/4"),
    ("tau1kappa2", 1, &[1, 0, 0], &[2], "1/8"),
    ("tau1kappa1sq", 1, &[1, 0, 0], &[1, 1], "13/24"),
    ("kappa3", 1, &[0, 0, 0], &[3], "1/24"),
    ("kappa2kappa1", 1, &[0, 0, 0], &[2, 1], "1/4"),
    ("kappa1cube", 1, &[0, 0, 0], &[1, 1, 1], "7/36"),
    ("tau4", 2, &[4], &[], "1/1152"),
    ("tau3kappa1", 2, &[3], &[1], "29/5760"),
    ("tau2kappa2", 2, &[2], &[2], "29/5760"),
    ("tau2kappa1sq", 2, &[2], &[1, 1], "139/5760"),
    ("tau1kappa3", 2, &[1], &[3], "1/384"),
    ("tau1kappa2kappa1", 2, &[1], &[2, 1], "101/5760"),
    ("tau1kappa1cube", 2, &[1], &[1, 1, 1], "169/1920"),
    ("kappa4", 2, &[0], &[4], "1/1152"),
    ("kappa3kappa1", 2, &[0], &[3, 1], "39/5760"),
    ("kappa2sq", 2, &[0], &[2, 2], "53/5760"),
    ("kappa2kappa1sq", 2, &[0], &[2, 1, 1], "777/17280"),
    ("kappa1pow4", 2, &[0], &[1, 1, 1, 1], "29/128"),
];

fn table_fixtures() -> Vec<FixtureEntry> {
    TABLE
        .iter()
        .map(|&(name, g, d, k, v)| {
            value(format!("table/{name}_g{g}n{}", d.len()), v, move || kappa_psi_correlator(g, d, k).map_err(|e| e.to_string()))
        })
        .collect()
}

fn tau_list(parts: &[(usize, usize)], n: usize) -> Vec<usize> {
    let mut d: Vec<usize> = parts.iter().flat_map(|&(deg, m)| std::iter::repeat_n(deg, m)).collect();
    d.resize(n, 0);
    d
}

fn fact_ratio(num: usize, den: usize) -> String {
    let v = Scalar::big(factorial(num)) / Scalar::big(factorial(den));
    v.to_string()
}

fn general_fixtures() -> Vec<FixtureEntry> {
    let mut out = Vec::new();
    for n in 3..=8 {
        let d = tau_list(&[(1, n - 3)], n);
        out.push(value(format!("table/general/tau1pow_n{n}"), &fact_ratio(n - 3, 0), move || Ok(psi_correlator(0, &d))));
    }
    // dilaton: <tau_1^k Psi>_{0,n} = (n-3)!/(n-3-k)! <Psi>_{0,n-k}, Psi = tau_2 tau_0^{n-k-1}
    for (n, k) in [(6usize, 1usize), (7, 2), (8, 3)] {
        let d = tau_list(&[(2, 1), (1, k)], n);
        let inner = psi_correlator(0, &tau_list(&[(2, 1)], n - k));
        let want = Scalar::big(factorial(n - 3)) / Scalar::big(factorial(n - 3 - k)) * inner;
        out.push(value(format!("table/general/dilaton_n{n}k{k}"), &want.to_string(), move || Ok(psi_correlator(0, &d))));
    }
    for n in 5..=8 {
        let d = tau_list(&[(1, n - 5), (2, 1)], n);
        let want = (Scalar::big(factorial(n - 3)) / Scalar::int(2)).to_string();
        out.push(value(format!("table/general/tau1pow_tau2_n{n}"), &want, move || Ok(psi_correlator(0, &d))));
    }
    for n in 6..=9 {
        let d = tau_list(&[(1, n - 6), (3, 1)], n);
        out.push(value(format!("table/general/tau1pow_tau3_n{n}"), &fact_ratio(n - 3, 3), move || Ok(psi_correlator(0, &d))));
    }
    for n in 7..=9 {
        let d = tau_list(&[(1, n - 7), (2, 2)], n);
        let want = (Scalar::big(factorial(n - 3)) * Scalar::int(6) / Scalar::int(24)).to_string();
        out.push(value(format!("table/general/tau1pow_tau2sq_n{n}"), &want, move || Ok(psi_correlator(0, &d))));
    }
    for g in 1..=4usize {
        let want = (Scalar::one() / (Scalar::int(24).pow(g as i64) * Scalar::big(factorial(g)))).to_string();
        out.push(value(format!("table/general/top_tau_g{g}"), &want, move || Ok(psi_correlator(g, &[3 * g - 2]))));
        if g >= 2 {
            out.push(value(format!("table/general/top_kappa_g{g}"), &want, move || {
                kappa_psi_correlator(g, &[], &[3 * g - 3]).map_err(|e| e.to_string())
            }));
        }
    }
    out
}

// Worked examples in the original curve variables.

/// `t_3, t_5, B_00` with one of them replaced by the formal `q`; `t_7`,
/// `t_9` and `B_02` are fixed spectators.
fn w_curve(slot: usize) -> (LocalCurveData, [Scalar; 3]) {
    let mut v = [Scalar::frac(3, 4), Scalar::frac(-2, 5), Scalar::frac(5, 3)];
    v[slot] = Scalar::q();
    let t = vec![(3, v[0].clone()), (5, v[1].clone()), (7, Scalar::frac(2, 9)), (9, Scalar::frac(-1, 4))];
    let b = vec![(0, 0, v[2].clone()), (0, 2, Scalar::frac(3, 5))];
    (LocalCurveData::new(RingMode::RatFun, t, b, None, None, None).expect("t_3 != 0"), v)
}

type Expected = fn(&[Scalar; 3]) -> Vec<(Vec<usize>, Scalar)>;

fn w_check(id: &str, expected: &str, g: usize, n: usize, want: Expected) -> FixtureEntry {
    check(id, expected, move || {
        let mut notes = Vec::new();
        for slot in 0..3 {
            let (curve, v) = w_curve(slot);
            let got = correlator(&curve, g, n).map_err(|e| e.to_string())?;
            let want: BTreeMap<Vec<usize>, Scalar> = want(&v).into_iter().collect();
            let mut keys = got.all_keys();
            keys.extend(want.keys().cloned());
            keys.sort();
            keys.dedup();
            for k in keys {
                let w = want.get(&k).cloned().unwrap_or_else(Scalar::zero);
                let a = got.get(&k);
                if a != w {
                    notes.push(format!("{k:?} with {} formal: {a} vs {w}", ["t3", "t5", "B00"][slot]));
                }
            }
        }
        Ok(if notes.is_empty() { ("matches, symbolic in t3, t5, B00".into(), true) } else { (notes.join("; "), false) })
    })
}

fn w30(v: &[Scalar; 3]) -> Vec<(Vec<usize>, Scalar)> {
    vec![(vec![0, 0, 0], Scalar::one() / (Scalar::int(2) * &v[0]))]
}

fn w11(v: &[Scalar; 3]) -> Vec<(Vec<usize>, Scalar)> {
    let (t3, t5, b) = (&v[0], &v[1], &v[2]);
    vec![
        (vec![1], Scalar::one() / (Scalar::int(24) * t3)),
        (vec![0], Scalar::int(-3) * t5 / (Scalar::int(48) * t3 * t3) + b / (Scalar::int(4) * t3)),
    ]
}

fn w40(v: &[Scalar; 3]) -> Vec<(Vec<usize>, Scalar)> {
    let (t3, t5, b) = (&v[0], &v[1], &v[2]);
    vec![
        (vec![0, 0, 0, 1], Scalar::one() / (Scalar::int(2) * t3 * t3)),
        (vec![0, 0, 0, 0], Scalar::int(-3) * t5 / (Scalar::int(4) * t3.pow(3)) + Scalar::int(3) * b / (Scalar::int(4) * t3 * t3)),
    ]
}

// Worked examples in the class variables, with p formal.

const W21_VARS: [&str; 4] = ["t1", "t2", "B00", "B01"];
const W21_WEIGHTS: [usize; 4] = [1, 2, 1, 2];
const F2_VARS: [&str; 7] = ["t1", "t2", "t3", "B00", "B01", "B11", "B02"];
const F2_WEIGHTS: [usize; 7] = [1, 2, 3, 1, 2, 3, 3];

fn class_point(x: &[Scalar], nt: usize, bkeys: &[(usize, usize)]) -> (Vec<Scalar>, BTreeMap<(usize, usize), Scalar>) {
    let t = x[..nt].to_vec();
    let bhat = bkeys.iter().cloned().zip(x[nt..].iter().cloned()).collect();
    (t, bhat)
}

/// The hand expansion of `W_2^(1)` per entry, without the `4 p^-2` prefactor.
fn w21_display(key: &[usize]) -> FittedPoly {
    let m = |e: [usize; 4], n: i64, d: i64| (e.to_vec(), Scalar::frac(n, d));
    let terms = match key {
        [0, 2] | [1, 1] => vec![m([0, 0, 0, 0], 1, 24)],
        [0, 1] => vec![m([1, 0, 0, 0], 1, 12), m([0, 0, 1, 0], 1, 2), m([0, 0, 1, 0], 1, 24)],
        [0, 0] => vec![
            m([0, 1, 0, 0], 1, 24),
            m([2, 0, 0, 0], 1, 16),
            m([1, 0, 1, 0], 1, 2),
            m([0, 0, 0, 1], 1, 1),
            m([0, 0, 0, 1], 1, 24),
            m([1, 0, 1, 0], 1, 24),
            m([0, 0, 2, 0], 1, 1),
        ],
        _ => vec![],
    };
    FittedPoly::from_terms(&W21_VARS, terms)
}

/// The hand expansion of `F_2`, without the `8 p^-2` prefactor.
pub(crate) fn f2_display() -> FittedPoly {
    let m = |e: [usize; 7], n: i64, d: i64| (e.to_vec(), Scalar::frac(n, d));
    FittedPoly::from_terms(
        &F2_VARS,
        vec![
            m([0, 0, 1, 0, 0, 0, 0], 1, 1152),
            m([1, 1, 0, 0, 0, 0, 0], 1, 240),
            m([3, 0, 0, 0, 0, 0, 0], 43, 17280),
            m([0, 1, 0, 1, 0, 0, 0], 1, 48),
            m([2, 0, 0, 1, 0, 0, 0], 1, 32),
            m([1, 0, 0, 0, 1, 0, 0], 1, 12),
            m([0, 0, 0, 0, 0, 1, 0], 1, 48),
            m([0, 0, 0, 0, 0, 0, 1], 1, 48),
            m([2, 0, 0, 1, 0, 0, 0], 1, 1152),
            m([1, 0, 0, 0, 1, 0, 0], 1, 576),
            m([0, 0, 0, 0, 0, 1, 0], 1, 1152),
            m([1, 0, 0, 2, 0, 0, 0], 7, 48),
            m([0, 0, 0, 1, 1, 0, 0], 25, 48),
            m([0, 0, 0, 3, 0, 0, 0], 10, 48),
        ],
    )
}

fn scaled(p: &FittedPoly, c: &Scalar) -> FittedPoly {
    let names: Vec<&str> = p.names.iter().map(|s| s.as_str()).collect();
    FittedPoly::from_terms(&names, p.coeffs.iter().map(|(e, v)| (e.clone(), v * c)))
}

fn render_diff(derived: &FittedPoly, printed: &FittedPoly, scale: &Scalar) -> String {
    let inv = scale.inv().expect("nonzero");
    derived
        .diff(printed)
        .into_iter()
        .map(|(e, a, b)| format!("{}: derived {} printed {}", derived.monomial_name(&e), &a * &inv, &b * &inv))
        .collect::<Vec<_>>()
        .join("; ")
}

const W21_BKEYS: [(usize, usize); 2] = [(0, 0), (0, 1)];
const F2_BKEYS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 1), (0, 2)];

fn w21_fixture() -> FixtureEntry {
    check("worked/W21", "4 p^-2 (hand expansion), as polynomials in t~, B^", || {
        let q = Scalar::q();
        let scale = Scalar::int(4) / (&q * &q);
        let mut notes = Vec::new();
        for key in [[0usize, 2], [1, 1], [0, 1], [0, 0]] {
            let w = 2 - key.iter().sum::<usize>();
            let monos = Monomials::of_weight(&W21_VARS, &W21_WEIGHTS, w);
            let derived = fit(&monos, 3, 5, |x| {
                let (t, b) = class_point(x, 2, &W21_BKEYS);
                let curve = curve_from_class(&q, &t, &b, 2).map_err(|e| e.to_string())?;
                correlator(&curve, 1, 2).map(|c| c.get(&key)).map_err(|e| e.to_string())
            })?;
            let printed = scaled(&w21_display(&key), &scale);
            if derived != printed {
                notes.push(format!("{key:?}: {}", render_diff(&derived, &printed, &scale)));
            }
        }
        Ok(if notes.is_empty() { ("matches the residue computation term by term".into(), true) } else { (notes.join(" | "), false) })
    })
}

/// `F_2` as a polynomial in `t~`, `B^` (with `p` formal) from the residue
/// computation, from the intersection formula, and as printed.
pub fn f2_polynomials() -> Result<(FittedPoly, FittedPoly, FittedPoly), String> {
    let q = Scalar::q();
    let monos = Monomials::of_weight(&F2_VARS, &F2_WEIGHTS, 3);
    let residue = fit(&monos, 4, 9, |x| {
        let (t, b) = class_point(x, 3, &F2_BKEYS);
        let curve = curve_from_class(&q, &t, &b, 4).map_err(|e| e.to_string())?;
        compute_fg(&curve, 2).map_err(|e| e.to_string())
    })?;
    let formula = fit(&monos, 4, 9, |x| {
        let (t, b) = class_point(x, 3, &F2_BKEYS);
        let class = ClassData::new(Prefactor::P(q.clone()), t, b.into_iter().map(|((k, l), v)| (k, l, v))).map_err(|e| e.to_string())?;
        mainformula_tensor(2, 0, &class).map(|c| c.get(&[])).map_err(|e| e.to_string())
    })?;
    let printed = scaled(&f2_display(), &(Scalar::int(8) / (&q * &q)));
    Ok((residue, formula, printed))
}

fn f2_fixture() -> FixtureEntry {
    check("worked/F2", "residue computation = intersection formula (printed display compared)", || {
        let q = Scalar::q();
        let (residue, formula, printed) = f2_polynomials()?;
        let scale = Scalar::int(8) / (&q * &q);
        let agree = residue == formula;
        let mut actual = if agree {
            "residue = formula".to_string()
        } else {
            format!("residue vs formula: {}", render_diff(&residue, &formula, &scale))
        };
        if residue == printed {
            actual.push_str("; printed display agrees");
        } else {
            write!(actual, "; printed display differs at {}", render_diff(&residue, &printed, &scale)).unwrap();
        }
        Ok((actual, agree))
    })
}

/// The worked low-order examples.
pub fn worked_examples() -> Vec<FixtureEntry> {
    vec![
        w_check("worked/W30", "1/(2 t3)", 0, 3, w30),
        w_check("worked/W11", "1/(24 t3) dxi1 + (-3 t5/(48 t3^2) + B00/(4 t3)) dxi0", 1, 1, w11),
        w_check("worked/W40", "1/(2 t3^2) dxi1 dxi0^3 + sym, (-3 t5/(4 t3^3) + 3 B00/(4 t3^2)) dxi0^4", 0, 4, w40),
        w21_fixture(),
        f2_fixture(),
    ]
}

/// Every fixture: table cells, general relations, worked examples.
pub fn fixtures() -> Vec<FixtureEntry> {
    let mut out = table_fixtures();
    out.extend(general_fixtures());
    out.extend(worked_examples());
    out
}

/// Evaluates every fixture (in parallel; the result order is the corpus order).
pub fn run_fixtures() -> FixtureReport {
    let results = fixtures().par_iter().map(|f| f.evaluate()).collect();
    FixtureReport { results }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<String> = fixtures().into_iter().map(|f| f.id).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
        assert_eq!(TABLE.len(), 40);
    }
}
