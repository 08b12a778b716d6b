//! Spectral curves reduced to their jet at the single branchpoint.
//!
//! A curve is stored as the odd/even times `t_k` (Taylor coefficients of `y`
//! in the local coordinate `zeta = sqrt(x - x(a))`, with `y = sum t_{k+2} zeta^k`)
//! and the Taylor coefficients `B_{k,l}` of the Bergman kernel minus its
//! double pole.

mod presets;
mod specfile;

pub use presets::{
    lambert_local_data, preset_local_data, vertex_local_data, weil_petersson_local_data, CurvePreset, QuadrangulationData,
};
pub use specfile::{load_curve_spec, parse_curve_spec, CurveSpecFile};

use crate::algebra::{RingMode, Scalar};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("curve spec parse error: {0}")]
    Parse(String),
    #[error("invalid field `{path}`: {reason}")]
    InvalidField { path: String, reason: String },
    #[error("t_3 must be nonzero (the branchpoint must be regular)")]
    SingularBranchpoint,
    #[error("{bound} = {have} is too small for (g, n) = ({g}, {n}); need at least {need}")]
    InsufficientOrder { bound: &'static str, have: usize, need: usize, g: usize, n: usize },
    #[error("requested {what} beyond the stored truncation ({bound} = {have})")]
    BeyondTruncation { what: String, bound: &'static str, have: usize },
    #[error("curve `{0}` has more than one branchpoint; only one-branchpoint curves are supported")]
    MultiBranchpoint(String),
    #[error("preset `{0}` has no Taylor data in the supported rings; {1}")]
    Unsupported(String, String),
}

/// Truncated Taylor data of a spectral curve at its branchpoint.
///
/// `k_max`/`m_max` of `None` mean the data is exact: every coefficient not
/// stored is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalCurveData {
    pub name: Option<String>,
    ring: RingMode,
    t: BTreeMap<usize, Scalar>,
    b: BTreeMap<(usize, usize), Scalar>,
    x_a: Option<Scalar>,
    k_max: Option<usize>,
    m_max: Option<usize>,
}

/// Order bounds needed to compute the stable correlator `W_n^(g)`
/// (and, for `n = 0`, the invariant `F_g` through `W_1^(g)`).
pub fn required_orders(g: usize, n: usize) -> (usize, usize) {
    let n = n.max(1);
    let d = 3 * g + n - 3;
    (2 * d + 3, 2 * (3 * g + n - 2))
}

impl LocalCurveData {
    /// Builds validated data. `b` may list either or both of `(k,l)` and
    /// `(l,k)`; listed pairs must agree.
    pub fn new(
        ring: RingMode,
        t: impl IntoIterator<Item = (usize, Scalar)>,
        b: impl IntoIterator<Item = (usize, usize, Scalar)>,
        x_a: Option<Scalar>,
        k_max: Option<usize>,
        m_max: Option<usize>,
    ) -> Result<LocalCurveData, CurveError> {
        if ring.is_degenerate() {
            return Err(CurveError::InvalidField {
                path: "ring.r".into(),
                reason: "r is a rational square, so Q[s]/(s^2-r) is not a field".into(),
            });
        }
        let mut tmap = BTreeMap::new();
        for (k, v) in t {
            let path = format!("t[{k}]");
            if k < 2 {
                return Err(CurveError::InvalidField { path, reason: "times start at t_2".into() });
            }
            if let Some(km) = k_max {
                if k > km {
                    return Err(CurveError::InvalidField { path, reason: format!("index beyond k_max = {km}") });
                }
            }
            if !v.fits(&ring) {
                return Err(CurveError::InvalidField { path, reason: format!("value {v} is not in the {} ring", ring.name()) });
            }
            if tmap.insert(k, v).is_some() {
                return Err(CurveError::InvalidField { path, reason: "listed twice".into() });
            }
        }
        let mut bmap: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (k, l, v) in b {
            let path = format!("B[{k}][{l}]");
            if let Some(mm) = m_max {
                if k > mm || l > mm {
                    return Err(CurveError::InvalidField { path, reason: format!("index beyond m_max = {mm}") });
                }
            }
            if !v.fits(&ring) {
                return Err(CurveError::InvalidField { path, reason: format!("value {v} is not in the {} ring", ring.name()) });
            }
            let key = (k.min(l), k.max(l));
            match bmap.get(&key) {
                Some(prev) if *prev != v => {
                    return Err(CurveError::InvalidField {
                        path,
                        reason: format!("asymmetric: B[{}][{}] = {prev} but B[{k}][{l}] = {v}", l, k),
                    })
                }
                Some(_) if k == l => {
                    return Err(CurveError::InvalidField { path, reason: "listed twice".into() });
                }
                _ => {
                    bmap.insert(key, v);
                }
            }
        }
        tmap.retain(|_, v| !v.is_zero());
        bmap.retain(|_, v| !v.is_zero());
        if let Some(x) = &x_a {
            if !x.fits(&ring) {
                return Err(CurveError::InvalidField { path: "x_a".into(), reason: "not in the declared ring".into() });
            }
        }
        let data = LocalCurveData { name: None, ring, t: tmap, b: bmap, x_a, k_max, m_max };
        if data.t(3).is_zero() {
            return Err(CurveError::SingularBranchpoint);
        }
        Ok(data)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn ring(&self) -> &RingMode {
        &self.ring
    }

    pub fn k_max(&self) -> Option<usize> {
        self.k_max
    }

    pub fn m_max(&self) -> Option<usize> {
        self.m_max
    }

    pub fn x_a(&self) -> Option<&Scalar> {
        self.x_a.as_ref()
    }

    /// `t_k`; zero when not stored. Use [`Self::t_checked`] where the index
    /// may exceed the truncation.
    pub fn t(&self, k: usize) -> Scalar {
        self.t.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn t_checked(&self, k: usize) -> Result<Scalar, CurveError> {
        if let Some(km) = self.k_max {
            if k > km {
                return Err(CurveError::BeyondTruncation { what: format!("t_{k}"), bound: "K_max", have: km });
            }
        }
        Ok(self.t(k))
    }

    pub fn b(&self, k: usize, l: usize) -> Scalar {
        self.b.get(&(k.min(l), k.max(l))).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn b_checked(&self, k: usize, l: usize) -> Result<Scalar, CurveError> {
        if let Some(mm) = self.m_max {
            if k > mm || l > mm {
                return Err(CurveError::BeyondTruncation { what: format!("B_{{{k},{l}}}"), bound: "M_max", have: mm });
            }
        }
        Ok(self.b(k, l))
    }

    /// Stored nonzero times.
    pub fn times(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.t.iter().map(|(k, v)| (*k, v))
    }

    /// Stored nonzero `B_{k,l}` with `k <= l`.
    pub fn bergman(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.b.iter().map(|((k, l), v)| (*k, *l, v))
    }

    /// Checks the truncation bounds needed for `(g, n)`.
    pub fn check_orders(&self, g: usize, n: usize) -> Result<(), CurveError> {
        let (kn, mn) = required_orders(g, n);
        if let Some(km) = self.k_max {
            if km < kn {
                return Err(CurveError::InsufficientOrder { bound: "K_max", have: km, need: kn, g, n });
            }
        }
        if let Some(mm) = self.m_max {
            if mm < mn {
                return Err(CurveError::InsufficientOrder { bound: "M_max", have: mm, need: mn, g, n });
            }
        }
        Ok(())
    }

    /// A copy with different time values (used to probe independence from
    /// the even times).
    pub fn with_time(&self, k: usize, v: Scalar) -> Result<LocalCurveData, CurveError> {
        let mut t: Vec<(usize, Scalar)> = self.t.iter().filter(|(j, _)| **j != k).map(|(j, v)| (*j, v.clone())).collect();
        t.push((k, v));
        let b = self.b.iter().map(|((k, l), v)| (*k, *l, v.clone()));
        let mut out = LocalCurveData::new(self.ring.clone(), t, b, self.x_a.clone(), self.k_max, self.m_max)?;
        out.name = self.name.clone();
        Ok(out)
    }

    /// Truncates to smaller bounds (never enlarges).
    pub fn truncated(&self, k_max: usize, m_max: usize) -> LocalCurveData {
        let k_max = self.k_max.map_or(k_max, |k| k.min(k_max));
        let m_max = self.m_max.map_or(m_max, |m| m.min(m_max));
        LocalCurveData {
            name: self.name.clone(),
            ring: self.ring.clone(),
            t: self.t.iter().filter(|(k, _)| **k <= k_max).map(|(k, v)| (*k, v.clone())).collect(),
            b: self.b.iter().filter(|((_, l), _)| *l <= m_max).map(|(k, v)| (*k, v.clone())).collect(),
            x_a: self.x_a.clone(),
            k_max: Some(k_max),
            m_max: Some(m_max),
        }
    }

    /// Canonical serialized form, the basis of the fingerprint.
    pub fn to_spec(&self) -> CurveSpecFile {
        CurveSpecFile::from_curve(self)
    }

    /// SHA-256 of the canonical serialization.
    pub fn fingerprint(&self) -> String {
        let mut spec = self.to_spec();
        spec.name = None;
        let text = serde_json::to_string(&spec).expect("spec serializes");
        let digest = Sha256::digest(text.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
