//! The JSON curve-spec file format.
//!
//! ```json
//! {
//!   "name": "deformed",
//!   "ring": {"mode": "rational"},
//!   "t": [[3, "1"], [5, "2/3"]],
//!   "B": [[0, 0, "1/7"]],
//!   "orders": {"k_max": 15, "m_max": 12},
//!   "targets": [[2, 0]]
//! }
//! ```
//!
//! Without `orders` the listed data is exact (all other coefficients vanish).
//! `targets` lists `(g, n)` pairs the file is meant for; their order bounds
//! are checked on load.

use super::{CurveError, LocalCurveData};
use crate::algebra::poly::parse_rational;
use crate::algebra::{RingMode, Scalar};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderSpec {
    pub k_max: usize,
    pub m_max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ring: RingSpec,
    #[serde(default)]
    pub t: Vec<(usize, String)>,
    #[serde(default, rename = "B")]
    pub b: Vec<(usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<OrderSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub targets: Vec<(usize, usize)>,
}

impl CurveSpecFile {
    pub fn from_curve(c: &LocalCurveData) -> CurveSpecFile {
        let ring = match c.ring() {
            RingMode::Rational => RingSpec { mode: "rational".into(), r: None },
            RingMode::RatFun => RingSpec { mode: "ratfun".into(), r: None },
            RingMode::Quadratic(r) => RingSpec { mode: "quadratic".into(), r: Some(r.to_string()) },
        };
        let orders = match (c.k_max(), c.m_max()) {
            (Some(k_max), Some(m_max)) => Some(OrderSpec { k_max, m_max }),
            (None, None) => None,
            (k, m) => Some(OrderSpec { k_max: k.unwrap_or(usize::MAX), m_max: m.unwrap_or(usize::MAX) }),
        };
        CurveSpecFile {
            name: c.name.clone(),
            ring,
            t: c.times().map(|(k, v)| (k, v.to_canonical())).collect(),
            b: c.bergman().map(|(k, l, v)| (k, l, v.to_canonical())).collect(),
            x_a: c.x_a().map(|x| x.to_canonical()),
            orders,
            targets: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn into_curve(self) -> Result<LocalCurveData, CurveError> {
        let ring = match (self.ring.mode.as_str(), &self.ring.r) {
            ("rational", None) => RingMode::Rational,
            ("ratfun", None) => RingMode::RatFun,
            ("quadratic", Some(r)) => RingMode::Quadratic(parse_rational(r).ok_or_else(|| CurveError::InvalidField {
                path: "ring.r".into(),
                reason: format!("not a rational: {r:?}"),
            })?),
            ("quadratic", None) => {
                return Err(CurveError::InvalidField { path: "ring.r".into(), reason: "quadratic mode needs r".into() })
            }
            (m @ ("rational" | "ratfun"), Some(_)) => {
                return Err(CurveError::InvalidField { path: "ring.r".into(), reason: format!("r is meaningless in {m} mode") })
            }
            (other, _) => {
                return Err(CurveError::InvalidField { path: "ring.mode".into(), reason: format!("unknown mode {other:?}") })
            }
        };
        let parse = |path: String, s: &str| {
            Scalar::parse(s, &ring).map_err(|reason| CurveError::InvalidField { path, reason })
        };
        let mut t = Vec::new();
        for (i, (k, v)) in self.t.iter().enumerate() {
            t.push((*k, parse(format!("t[{i}]"), v)?));
        }
        let mut b = Vec::new();
        for (i, (k, l, v)) in self.b.iter().enumerate() {
            b.push((*k, *l, parse(format!("B[{i}]"), v)?));
        }
        let x_a = match &self.x_a {
            Some(s) => Some(parse("x_a".into(), s)?),
            None => None,
        };
        let (k_max, m_max) = match &self.orders {
            Some(o) => (Some(o.k_max), Some(o.m_max)),
            None => (None, None),
        };
        let mut curve = LocalCurveData::new(ring, t, b, x_a, k_max, m_max)?;
        curve.name = self.name.clone();
        for (g, n) in &self.targets {
            if 2 * g + n <= 2 {
                return Err(CurveError::InvalidField {
                    path: "targets".into(),
                    reason: format!("({g}, {n}) is not a stable target"),
                });
            }
            curve.check_orders(*g, *n)?;
        }
        Ok(curve)
    }
}

/// Parses a curve spec from JSON text.
pub fn parse_curve_spec(text: &str) -> Result<LocalCurveData, CurveError> {
    let spec: CurveSpecFile = serde_json::from_str(text).map_err(|e| CurveError::Parse(e.to_string()))?;
    spec.into_curve()
}

/// Reads and validates a curve spec file.
pub fn load_curve_spec(path: impl AsRef<Path>) -> Result<LocalCurveData, CurveError> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| CurveError::Parse(format!("{}: {e}", path.as_ref().display())))?;
    parse_curve_spec(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn airy_spec() {
        let c = parse_curve_spec(r#"{"ring": {"mode": "rational"}, "t": [[3, "1"]]}"#).unwrap();
        assert_eq!(c.t(3), Scalar::one());
        assert_eq!(c.t(5), Scalar::zero());
        assert_eq!(c.b(0, 0), Scalar::zero());
        assert!(c.check_orders(5, 5).is_ok());
    }

    #[test]
    fn asymmetric_bergman_rejected() {
        let e = parse_curve_spec(r#"{"ring": {"mode": "rational"}, "t": [[3, "1"]], "B": [[0, 1, "1"], [1, 0, "2"]]}"#)
            .unwrap_err();
        assert!(matches!(e, CurveError::InvalidField { ref path, .. } if path == "B[1][0]"), "{e}");
    }

    #[test]
    fn insufficient_orders_rejected() {
        let e = parse_curve_spec(
            r#"{"ring": {"mode": "rational"}, "t": [[3, "1"]], "orders": {"k_max": 7, "m_max": 20}, "targets": [[2, 0]]}"#,
        )
        .unwrap_err();
        assert!(matches!(e, CurveError::InsufficientOrder { bound: "K_max", g: 2, n: 0, .. }), "{e}");
    }

    #[test]
    fn unknown_field_and_missing_t3() {
        assert!(matches!(
            parse_curve_spec(r#"{"ring": {"mode": "rational"}, "t": [[3, "1"]], "colour": 1}"#),
            Err(CurveError::Parse(_))
        ));
        assert_eq!(parse_curve_spec(r#"{"ring": {"mode": "rational"}, "t": [[5, "1"]]}"#), Err(CurveError::SingularBranchpoint));
    }

    #[test]
    fn canonical_round_trip() {
        let text = r#"{"name": "x", "ring": {"mode": "quadratic", "r": "-2"}, "t": [[5, "1/3*s"], [3, "s"], [4, "-2/3"]],
                       "B": [[1, 0, "2+s"], [0, 1, "2+s"]], "x_a": "-1", "orders": {"k_max": 9, "m_max": 6}}"#;
        let c = parse_curve_spec(text).unwrap();
        let canon = c.to_spec().to_json();
        let again = parse_curve_spec(&canon).unwrap();
        assert_eq!(again, c);
        assert_eq!(again.to_spec().to_json(), canon);
    }
}
