use spectral_core::algebra::{RingMode, Scalar};
use spectral_core::bridge::Partition;
use spectral_core::curve::LocalCurveData;
use spectral_core::harness::{crosscheck, cut_join_oracle, fixtures, CrosscheckReport};
use spectral_core::intersect::cache::{clear_memory, load_cache, save_cache, LoadOutcome};

fn curve() -> LocalCurveData {
    let t = vec![(3, Scalar::one()), (5, Scalar::frac(2, 3)), (7, Scalar::frac(-1, 5))];
    let b = vec![(0, 0, Scalar::frac(1, 7)), (2, 0, Scalar::int(3)), (2, 2, Scalar::frac(-1, 2))];
    LocalCurveData::new(RingMode::Rational, t, b, None, None, None).unwrap()
}

fn summary(r: &CrosscheckReport) -> Vec<(usize, usize, Vec<usize>, String, String, bool)> {
    r.entries.iter().map(|e| (e.g, e.n, e.degrees.clone(), e.toprec.to_string(), e.formula.to_string(), e.equal)).collect()
}

// Everything touching the global memo tables lives in one test so that the
// clears cannot race with other tests in this binary.
#[test]
fn crosscheck_ignores_cache_state() {
    let c = curve();
    let warm = crosscheck(&c, 3).unwrap();
    assert!(warm.passed());
    let again = crosscheck(&c, 3).unwrap();
    assert_eq!(summary(&warm), summary(&again));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.txt");
    let stats = save_cache(&path).unwrap();
    assert!(stats.psi > 0);

    clear_memory();
    let cold = crosscheck(&c, 3).unwrap();
    assert_eq!(summary(&warm), summary(&cold));

    clear_memory();
    assert_eq!(load_cache(&path), LoadOutcome::Loaded(stats));
    let loaded = crosscheck(&c, 3).unwrap();
    assert_eq!(summary(&warm), summary(&loaded));

    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, &text[..text.len() / 2]).unwrap();
    assert!(matches!(load_cache(&path), LoadOutcome::Discarded(_)));
}

#[test]
fn every_table_cell_appears_once() {
    let ids: Vec<String> = fixtures().into_iter().map(|f| f.id).collect();
    let table: Vec<&String> = ids.iter().filter(|i| i.starts_with("table/") && !i.starts_with("table/general/")).collect();
    assert_eq!(table.len(), 40);
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len());
    assert!(ids.contains(&"table/tau4_g2n1".to_string()));
    assert!(ids.contains(&"table/kappa2kappa1_g2n0".to_string()));
}

#[test]
fn oracle_examples() {
    let r = |s: &str| cut_join_oracle(0, &s.parse::<Partition>().unwrap()).unwrap().to_string();
    assert_eq!(r("1"), "1");
    assert_eq!(r("2"), "1/2");
    assert_eq!(r("1,1"), "1/2");
    // three copies of (12) in S_2
    assert_eq!(cut_join_oracle(1, &"2".parse().unwrap()).unwrap().to_string(), "1/2");
}
