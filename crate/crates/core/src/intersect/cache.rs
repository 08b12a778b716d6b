//! Persistent storage of the curve-independent memo tables.
//!
//! One record per line, `kind<TAB>key<TAB>value`, after a version header and
//! followed by an `end<TAB>count` trailer. Keys are `g;d1,d2,..` for psi
//! and `g;d1,..|k1,..` for kappa. A file that fails any check is ignored as
//! a whole.

use super::kappa::KAPPA_CACHE;
use super::psi::PSI_CACHE;
use crate::algebra::poly::parse_rational;
use num_rational::BigRational;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

pub const CACHE_HEADER: &str = "spectral-intersection-cache v1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub psi: usize,
    pub kappa: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadOutcome {
    Missing,
    Loaded(CacheStats),
    Discarded(String),
}

pub fn memory_stats() -> CacheStats {
    CacheStats { psi: PSI_CACHE.read().len(), kappa: KAPPA_CACHE.read().len() }
}

/// Empties every in-memory memo (psi, kappa, boundary, correlators).
pub fn clear_memory() {
    PSI_CACHE.write().clear();
    KAPPA_CACHE.write().clear();
    super::boundary::clear_boundary_cache();
    crate::toprec::clear_cache();
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn split(s: &str) -> Option<Vec<usize>> {
    if s.is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(|x| x.parse().ok()).collect()
}

/// Writes the psi and kappa memos to `path` (atomically, via a sibling
/// temporary file).
pub fn save_cache(path: &Path) -> io::Result<CacheStats> {
    let mut out = String::new();
    out.push_str(CACHE_HEADER);
    out.push('\n');
    let mut count = 0;
    let psi = PSI_CACHE.read();
    let mut psi_rows: Vec<_> = psi.iter().collect();
    psi_rows.sort();
    for ((g, d), v) in psi_rows {
        writeln!(out, "psi\t{g};{}\t{v}", join(d)).unwrap();
        count += 1;
    }
    let kappa = KAPPA_CACHE.read();
    let mut kappa_rows: Vec<_> = kappa.iter().collect();
    kappa_rows.sort();
    for ((g, d, k), v) in kappa_rows {
        writeln!(out, "kappa\t{g};{}|{}\t{v}", join(d), join(k)).unwrap();
        count += 1;
    }
    writeln!(out, "end\t{count}").unwrap();
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, out)?;
    std::fs::rename(&tmp, path)?;
    Ok(CacheStats { psi: psi.len(), kappa: kappa.len() })
}

enum Record {
    Psi(usize, Vec<usize>, BigRational),
    Kappa(usize, Vec<usize>, Vec<usize>, BigRational),
}

fn parse(text: &str) -> Result<Vec<Record>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CACHE_HEADER => {}
        Some(h) => return Err(format!("version mismatch: {h:?}")),
        None => return Err("empty file".into()),
    }
    let mut records = Vec::new();
    let mut ended = false;
    for (i, line) in lines.enumerate() {
        let bad = || format!("malformed line {}", i + 2);
        if ended {
            return Err(format!("data after trailer at line {}", i + 2));
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match fields.as_slice() {
            ["end", n] => {
                let n: usize = n.parse().map_err(|_| bad())?;
                if n != records.len() {
                    return Err(format!("trailer says {n} records, found {}", records.len()));
                }
                ended = true;
            }
            ["psi", key, value] => {
                let (g, d) = key.split_once(';').ok_or_else(bad)?;
                records.push(Record::Psi(
                    g.parse().map_err(|_| bad())?,
                    split(d).ok_or_else(bad)?,
                    parse_rational(value).ok_or_else(bad)?,
                ));
            }
            ["kappa", key, value] => {
                let (g, rest) = key.split_once(';').ok_or_else(bad)?;
                let (d, k) = rest.split_once('|').ok_or_else(bad)?;
                records.push(Record::Kappa(
                    g.parse().map_err(|_| bad())?,
                    split(d).ok_or_else(bad)?,
                    split(k).ok_or_else(bad)?,
                    parse_rational(value).ok_or_else(bad)?,
                ));
            }
            _ => return Err(bad()),
        }
    }
    if !ended {
        return Err("missing trailer (truncated file)".into());
    }
    Ok(records)
}

/// Loads `path` into the in-memory memos, all or nothing.
pub fn load_cache(path: &Path) -> LoadOutcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return LoadOutcome::Missing,
        Err(e) => return LoadOutcome::Discarded(e.to_string()),
    };
    let records = match parse(&text) {
        Ok(r) => r,
        Err(e) => return LoadOutcome::Discarded(e),
    };
    let mut stats = CacheStats::default();
    let mut psi = PSI_CACHE.write();
    let mut kappa = KAPPA_CACHE.write();
    for r in records {
        match r {
            Record::Psi(g, d, v) => {
                psi.insert((g, d), v);
                stats.psi += 1;
            }
            Record::Kappa(g, d, k, v) => {
                kappa.insert((g, d, k), v);
                stats.kappa += 1;
            }
        }
    }
    LoadOutcome::Loaded(stats)
}

/// Statistics of a cache file without loading it.
pub fn file_stats(path: &Path) -> LoadOutcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return LoadOutcome::Missing,
        Err(e) => return LoadOutcome::Discarded(e.to_string()),
    };
    match parse(&text) {
        Ok(records) => {
            let psi = records.iter().filter(|r| matches!(r, Record::Psi(..))).count();
            LoadOutcome::Loaded(CacheStats { psi, kappa: records.len() - psi })
        }
        Err(e) => LoadOutcome::Discarded(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_files() {
        assert!(parse("other v0\nend\t0\n").is_err());
        assert!(parse(&format!("{CACHE_HEADER}\npsi\t1;1\t1/24\n")).is_err());
        assert!(parse(&format!("{CACHE_HEADER}\npsi\t1;1\t1/24\nend\t2\n")).is_err());
        assert!(parse(&format!("{CACHE_HEADER}\npsi\t1;x\t1/24\nend\t1\n")).is_err());
        assert_eq!(parse(&format!("{CACHE_HEADER}\npsi\t1;1\t1/24\nkappa\t1;0|1\t1/24\nend\t2\n")).unwrap().len(), 2);
    }
}
