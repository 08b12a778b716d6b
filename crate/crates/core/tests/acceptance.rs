//! One PASS/FAIL line per acceptance criterion. Every comparison is exact.
//!
//! The process exits 0 even when a criterion fails, so that the rest of the
//! workspace tests still run; set `ACCEPTANCE_STRICT=1` to turn any FAIL
//! into a nonzero exit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use spectral_core::algebra::Scalar;
use spectral_core::bridge::{class_from_curve, vertex_class, vertex_times, wp_volume};
use spectral_core::curve::{preset_local_data, CurvePreset, LocalCurveData};
use spectral_core::harness::{self, checks, crosscheck, run_fixtures, stable_pairs};
use spectral_core::intersect::{mainformula_tensor, psi_correlator, psi_oracle_airy};
use spectral_core::toprec::{compute_fg, sorted_tuples};
use std::time::{Duration, Instant};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn fail(detail: impl std::fmt::Display) -> Outcome {
    outcome(false, format!("error: {detail}"))
}

fn run(id: usize, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let t = start.elapsed();
    let in_time = t <= budget;
    let pass = o.pass && in_time;
    let timing = if in_time { format!("{:.2}s", t.as_secs_f64()) } else { format!("{:.2}s, over the {}s budget", t.as_secs_f64(), budget.as_secs()) };
    println!("{} criterion {id:>2} {name} [{timing}]: {}", if pass { "PASS" } else { "FAIL" }, o.detail);
    pass
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn dim(g: usize, n: usize) -> usize {
    3 * g + n - 3
}

fn intersection_table() -> Outcome {
    let report = run_fixtures();
    let cells: Vec<_> = report.with_prefix("table/").collect();
    let bad: Vec<String> = cells.iter().filter(|r| !r.pass).map(|r| format!("{} expected {} got {}", r.id, r.expected, r.actual)).collect();
    let ok = cells.len() - bad.len();
    if bad.is_empty() {
        outcome(true, format!("{ok}/{} table cells and relations", cells.len()))
    } else {
        outcome(false, format!("{ok}/{} table cells and relations; {}", cells.len(), bad.join("; ")))
    }
}

fn engine_vs_oracle() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (g, n) in stable_pairs(4) {
        if n == 0 {
            continue;
        }
        for key in sorted_tuples(n, dim(g, n)) {
            let a = psi_correlator(g, &key);
            match psi_oracle_airy(g, &key) {
                Ok(b) if a == b => {}
                Ok(b) => bad.push(format!("({g},{n}) {key:?}: {a} vs {b}")),
                Err(e) => return fail(e),
            }
            checked += 1;
        }
    }
    outcome(bad.is_empty() && checked > 0, format!("{}/{checked} keys agree {}", checked - bad.len(), bad.join("; ")))
}

fn random_curve(b00: Scalar) -> LocalCurveData {
    let ring = b00.mode();
    let t = vec![(3, Scalar::one()), (5, Scalar::frac(2, 3)), (7, Scalar::frac(-1, 5))];
    let b = vec![(0, 0, b00), (2, 0, Scalar::int(3)), (2, 2, Scalar::frac(-1, 2))];
    LocalCurveData::new(ring, t, b, None, None, None).expect("valid curve")
}

fn main_crosscheck() -> Outcome {
    let airy = preset_local_data(&CurvePreset::Airy, 0, 0).expect("airy");
    let curves = [("airy", airy), ("random", random_curve(Scalar::frac(1, 7))), ("formal-B00", random_curve(Scalar::q()))];
    let mut parts = Vec::new();
    let mut all = true;
    for (name, c) in curves {
        match crosscheck(&c, 3) {
            Ok(r) => {
                let (ok, n) = r.counts();
                all &= r.passed();
                let first = r.mismatches().next().map(|e| format!(" first mismatch ({},{}) {:?}", e.g, e.n, e.degrees)).unwrap_or_default();
                parts.push(format!("{name} {ok}/{n}{first}"));
            }
            Err(e) => return fail(e),
        }
    }
    outcome(all, parts.join(", "))
}

fn worked_examples() -> Outcome {
    let results: Vec<_> = harness::worked_examples().iter().map(|f| f.evaluate()).collect();
    let pass = results.iter().all(|r| r.pass);
    let detail = results.iter().map(|r| format!("{} {}: {}", r.id, if r.pass { "ok" } else { "FAIL" }, r.actual)).collect::<Vec<_>>().join(" | ");
    outcome(pass, detail)
}

fn report(r: Result<checks::CheckReport, harness::HarnessError>) -> Outcome {
    match r {
        Ok(r) => outcome(r.passed(), r.to_string()),
        Err(e) => fail(e),
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `d V_{g,n+1} / d L_{n+1}` at `L_{n+1} = 2 pi i` equals
/// `2 pi i (2g - 2 + n) V_{g,n}`, compared coefficientwise in `pi` and the
/// remaining `L`.
fn dilaton_holds(g: usize, n: usize) -> Result<bool, String> {
    let big = wp_volume(g, n + 1).map_err(|e| e.to_string())?;
    let mut lhs = std::collections::BTreeMap::<(usize, Vec<usize>), BigRational>::new();
    for ((d0, d), c) in big.coefficients() {
        let last = d[n];
        if last == 0 {
            continue;
        }
        let w = c * BigRational::from_integer(BigInt::from(2 * last)) * num_traits::pow(rat(-4, 1), last - 1);
        *lhs.entry((d0 + last - 1, d[..n].to_vec())).or_insert_with(BigRational::zero) += w;
    }
    lhs.retain(|_, v| !v.is_zero());
    let chi = BigRational::from_integer(BigInt::from(2 * g + n) - 2);
    let small = wp_volume(g, n).map_err(|e| e.to_string())?;
    let mut rhs: std::collections::BTreeMap<_, _> = small.coefficients().iter().map(|(k, v)| (k.clone(), v * &chi)).collect();
    rhs.retain(|_, v| !v.is_zero());
    Ok(lhs == rhs)
}

fn weil_petersson() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut expect = |what: &str, cond: bool| {
        ok &= cond;
        if !cond {
            notes.push(format!("{what} wrong"));
        }
    };
    let v03 = wp_volume(0, 3).unwrap();
    expect("V03", v03.to_string() == "1");
    let v11 = wp_volume(1, 1).unwrap();
    expect("V11", v11.coefficients().len() == 2 && v11.coefficient(0, &[1]) == rat(1, 48) && v11.coefficient(1, &[0]) == rat(1, 12));
    let v04 = wp_volume(0, 4).unwrap();
    let mut v04_ok = v04.coefficients().len() == 5 && v04.coefficient(1, &[0, 0, 0, 0]) == rat(2, 1);
    for i in 0..4 {
        let mut d = [0; 4];
        d[i] = 1;
        v04_ok &= v04.coefficient(0, &d) == rat(1, 2);
    }
    expect("V04", v04_ok);
    let v12 = wp_volume(1, 2).unwrap();
    let v20 = wp_volume(2, 0).unwrap();
    expect("V12 symmetry", v12.is_symmetric());
    expect("V20 symmetry", v20.is_symmetric());
    // top psi-coefficients: <prod tau_d> / prod (2^d d!)
    for (g, n, v) in [(1usize, 2usize, &v12), (0, 4, &v04), (1, 1, &v11)] {
        for key in sorted_tuples(n, dim(g, n)) {
            if key.iter().sum::<usize>() != dim(g, n) {
                continue;
            }
            let norm: i64 = key.iter().map(|&d| (1i64 << d) * (1..=d as i64).product::<i64>()).product();
            let want = psi_correlator(g, &key).as_rational().expect("rational") / BigInt::from(norm);
            expect(&format!("top coefficient ({g},{n}) {key:?}"), v.coefficient(0, &key) == want);
        }
    }
    // V_{1,2} = (4 pi^2 + L1^2 + L2^2)(12 pi^2 + L1^2 + L2^2) / 192
    let v12_closed = [((2, vec![0, 0]), rat(1, 4)), ((1, vec![1, 0]), rat(1, 12)), ((1, vec![0, 1]), rat(1, 12)), ((0, vec![2, 0]), rat(1, 192)), ((0, vec![0, 2]), rat(1, 192)), ((0, vec![1, 1]), rat(1, 96))];
    expect("V12 closed form", v12.coefficients().len() == 6 && v12_closed.iter().all(|((d0, d), c)| v12.coefficient(*d0, d) == *c));
    // V_{2,0} is pinned by the dilaton relation against V_{2,1}
    for (g, n) in [(2usize, 0usize), (1, 1), (0, 3), (1, 2)] {
        match dilaton_holds(g, n) {
            Ok(b) => expect(&format!("dilaton V{g}{}->V{g}{n}", n + 1), b),
            Err(e) => expect(&format!("dilaton V{g}{n}: {e}"), false),
        }
    }
    outcome(ok, if ok { format!("V03 = {v03}; V11 = {v11}; V04 = {v04}; V12 = {v12}; V20 = {v20}") } else { notes.join("; ") })
}

fn hurwitz() -> Outcome {
    match checks::elsv_against_oracle(1, 4) {
        Ok((r, rows)) => {
            let distinct = rows.len();
            outcome(r.passed() && distinct >= 10, format!("{r} over {distinct} (g, mu) pairs"))
        }
        Err(e) => fail(e),
    }
}

fn vertex() -> Outcome {
    let q = Scalar::q();
    let one = Scalar::one();
    let run = || -> Result<(bool, String), String> {
        let t = vertex_times(&q, 9).map_err(|e| e.to_string())?;
        let t_m = vertex_times(&(-&q - &one), 9).map_err(|e| e.to_string())?;
        let t_inv = vertex_times(&q.inv().ok_or("1/q")?, 9).map_err(|e| e.to_string())?;
        let mut ok = true;
        for k in 1..=5 {
            let i = 2 * k - 2;
            ok &= t[i] == t_m[i];
            ok &= t_inv[i] == q.pow(2 * k as i64 - 1) * &t[i];
        }
        let c = vertex_class(&q, 5).map_err(|e| e.to_string())?.class;
        let c_m = vertex_class(&(-&q - &one), 5).map_err(|e| e.to_string())?.class;
        let c_inv = vertex_class(&q.inv().ok_or("1/q")?, 5).map_err(|e| e.to_string())?.class;
        ok &= (0..=4).all(|k| (0..=4 - k).all(|l| c.bhat(k, l) == c_m.bhat(k, l)));
        ok &= (0..=4).all(|k| (0..=4 - k).all(|l| c_inv.bhat(k, l) == q.pow((k + l + 1) as i64) * c.bhat(k, l)));
        let hodge = checks::vertex_hodge_identity(&q, 3).map_err(|e| e.to_string())?;
        ok &= hodge.passed();
        Ok((ok, format!("symmetries for k <= 5 {}; Hodge identity {hodge}", if ok { "hold" } else { "checked" })))
    };
    match run() {
        Ok((ok, d)) => outcome(ok, d),
        Err(e) => fail(e),
    }
}

fn airy_fg() -> Outcome {
    let airy = preset_local_data(&CurvePreset::Airy, 0, 0).expect("airy");
    let class = match class_from_curve(&airy, 6) {
        Ok(c) => c.class,
        Err(e) => return fail(e),
    };
    let mut parts = Vec::new();
    let mut ok = true;
    for g in [2, 3] {
        let a = match compute_fg(&airy, g) {
            Ok(v) => v,
            Err(e) => return fail(e),
        };
        let b = match mainformula_tensor(g, 0, &class) {
            Ok(t) => t.get(&[]),
            Err(e) => return fail(e),
        };
        ok &= a.is_zero() && b.is_zero();
        parts.push(format!("F{g}: recursion {a}, formula {b}"));
    }
    outcome(ok, parts.join("; "))
}

fn main() {
    let results = [
        run(1, "intersection table", secs(10), intersection_table),
        run(2, "engine vs Airy recursion", secs(60), engine_vs_oracle),
        run(3, "recursion vs intersection formula", secs(300), main_crosscheck),
        run(4, "worked examples", secs(300), worked_examples),
        run(5, "derivative lemma", secs(300), || report(checks::derivative_lemma(3, 2, true))),
        run(6, "kappa/psi exchange identities", secs(300), || report(Ok(checks::kappa_exchange_identities(3, 3)))),
        run(7, "Weil-Petersson volumes", secs(30), weil_petersson),
        run(8, "ELSV vs cut-and-join", secs(120), hurwitz),
        run(9, "framed vertex", secs(180), vertex),
        run(10, "Airy F_g", secs(30), airy_fg),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed < results.len() && std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
