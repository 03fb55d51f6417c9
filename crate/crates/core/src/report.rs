//! Structured results of two-sided identity checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::qseries::C64;

/// Named parameters of a check, kept in sorted order for reproducible output.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(pub BTreeMap<String, Value>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn real(mut self, name: &str, v: f64) -> Self {
        self.0.insert(name.into(), Value::from(v));
        self
    }

    pub fn complex(mut self, name: &str, v: C64) -> Self {
        self.0.insert(name.into(), Value::from(vec![v.re, v.im]));
        self
    }

    pub fn int(mut self, name: &str, v: i64) -> Self {
        self.0.insert(name.into(), Value::from(v));
        self
    }

    pub fn text(mut self, name: &str, v: &str) -> Self {
        self.0.insert(name.into(), Value::from(v));
        self
    }
}

/// Outcome of comparing the two sides of an identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: Params,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub abs_residual: f64,
    /// `abs_residual / max(|lhs|, |rhs|, 1)`.
    pub rel_residual: f64,
    /// Lattice points or series terms used on the summed side.
    pub window_or_terms: usize,
    /// Bound on what truncation left out of the summed side.
    pub tail_bound: f64,
}

impl IdentityReport {
    pub fn new(
        identity_id: &str,
        params: Params,
        lhs: C64,
        rhs: C64,
        window_or_terms: usize,
        tail_bound: f64,
    ) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        IdentityReport {
            identity_id: identity_id.into(),
            params,
            lhs: [lhs.re, lhs.im],
            rhs: [rhs.re, rhs.im],
            abs_residual,
            rel_residual: abs_residual / scale,
            window_or_terms,
            tail_bound,
        }
    }

    pub fn lhs(&self) -> C64 {
        C64::new(self.lhs[0], self.lhs[1])
    }

    pub fn rhs(&self) -> C64 {
        C64::new(self.rhs[0], self.rhs[1])
    }

    /// True when the relative residual is finite and at most `tol`.
    pub fn passes(&self, tol: f64) -> bool {
        self.rel_residual.is_finite() && self.rel_residual <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residuals_and_json() {
        let r = IdentityReport::new(
            "demo",
            Params::new()
                .real("q", 0.5)
                .int("n", -2)
                .complex("z", C64::new(0.1, 0.2)),
            C64::new(2.0, 0.0),
            C64::new(2.0, 1e-9),
            7,
            0.0,
        );
        assert!((r.abs_residual - 1e-9).abs() < 1e-24);
        assert!((r.rel_residual - 0.5e-9).abs() < 1e-24);
        assert!(r.passes(1e-9) && !r.passes(1e-10));
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with(r#"{"identity_id":"demo","params":{"n":-2,"q":0.5,"z":[0.1,0.2]}"#));
        let back: IdentityReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
