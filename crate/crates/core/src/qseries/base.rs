use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Relative tolerance for identifying a lower parameter with a pole `q^{-l}`.
pub const POLE_RTOL: f64 = 1e-10;

/// Relative tolerance for the "non-positive integer power of q" exclusions
/// that decide which closed form of an addition formula may be used.
pub const ADMISSIBILITY_RTOL: f64 = 1e-8;

/// Magnitude below which a factor `a q^j` of an infinite product is dropped.
pub(crate) const PRODUCT_CUTOFF: f64 = 8.673_617_379_884_035e-19; // 2^-60

/// The deformation parameter, validated to lie strictly inside (0, 1).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct QBase(f64);

impl QBase {
    pub fn new(q: f64) -> Result<Self> {
        if q > 0.0 && q < 1.0 {
            Ok(QBase(q))
        } else {
            Err(Error::InvalidBase(q))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `q^k` for any integer `k`.
    #[inline]
    pub fn pow(self, k: i64) -> f64 {
        if let Ok(k32) = i32::try_from(k) {
            self.0.powi(k32)
        } else {
            (k as f64 * self.0.ln()).exp()
        }
    }

    /// `q^x` for real `x`.
    #[inline]
    pub fn powf(self, x: f64) -> f64 {
        self.0.powf(x)
    }

    /// `q^t` for complex `t`.
    pub fn powc(self, t: C64) -> C64 {
        (t * self.0.ln()).exp()
    }

    /// The base `q^2` used by the Hahn-Exton normalisation.
    pub fn squared(self) -> QBase {
        QBase(self.0 * self.0)
    }

    pub fn sqrt(self) -> QBase {
        QBase(self.0.sqrt())
    }

    #[inline]
    pub fn ln(self) -> f64 {
        self.0.ln()
    }
}

impl<'de> Deserialize<'de> for QBase {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let q = f64::deserialize(d)?;
        QBase::new(q).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for QBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<f64> for QBase {
    type Error = Error;
    fn try_from(q: f64) -> Result<Self> {
        QBase::new(q)
    }
}

/// A computed series or product value with a bound on its absolute error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: C64,
    pub abs_error_bound: f64,
    pub terms_used: usize,
}

impl SeriesValue {
    pub fn exact(value: C64) -> Self {
        SeriesValue {
            value,
            abs_error_bound: 0.0,
            terms_used: 0,
        }
    }

    /// Multiply by a factor known to relative accuracy `factor_rel_err`.
    pub fn scale(self, factor: C64, factor_rel_err: f64) -> Self {
        let value = self.value * factor;
        let fabs = factor.norm();
        SeriesValue {
            value,
            abs_error_bound: self.abs_error_bound * fabs
                + value.norm() * (factor_rel_err + f64::EPSILON),
            terms_used: self.terms_used,
        }
    }

    pub fn relative_error_bound(&self) -> f64 {
        let m = self.value.norm();
        if m == 0.0 {
            if self.abs_error_bound == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.abs_error_bound / m
        }
    }
}

/// Stopping policy for series summation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesOptions {
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            tol: 1e-13,
            max_terms: 500,
        }
    }
}

/// If `v` is (within `rtol`) equal to `q^{-l}` for some `l >= 0`, returns `l`.
///
/// Tolerance is `rtol * max(1, q^{-l})`.
pub fn nonpositive_power_index(v: C64, q: QBase, rtol: f64) -> Option<u32> {
    match integer_power_index(v, q, rtol) {
        Some(m) if m <= 0 => u32::try_from(-m).ok(),
        _ => None,
    }
}

/// If `v` is (within `rtol`) equal to `q^m` for some integer `m`, returns `m`.
pub fn integer_power_index(v: C64, q: QBase, rtol: f64) -> Option<i64> {
    let r = v.norm();
    if r == 0.0 || !r.is_finite() {
        return None;
    }
    let est = (r.ln() / q.ln()).round();
    if !est.is_finite() || est.abs() > 1e6 {
        return None;
    }
    let est = est as i64;
    (est - 1..=est + 1).find(|&m| {
        let p = q.pow(m);
        (v - p).norm() < rtol * p.max(1.0)
    })
}

/// `z^alpha` on the principal branch.
pub(crate) fn principal_pow(z: C64, alpha: f64) -> C64 {
    if alpha == 0.0 {
        return C64::new(1.0, 0.0);
    }
    if z == C64::new(0.0, 0.0) {
        return C64::new(0.0, 0.0);
    }
    if z.im == 0.0 && z.re > 0.0 {
        return C64::new(z.re.powf(alpha), 0.0);
    }
    if alpha.fract() == 0.0 && alpha.abs() < i32::MAX as f64 {
        return z.powi(alpha as i32);
    }
    z.powf(alpha)
}

pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}
