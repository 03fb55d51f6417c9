//! q-exponentials and the q-Gamma function.

use super::base::{c, QBase, SeriesValue, C64};
use super::pochhammer::{q_pochhammer_inf, q_pochhammer_inf_ratio};
use crate::error::{Error, Result};

/// `e_q(z) = sum z^k/(q;q)_k = 1/(z;q)_inf` for `|z| < 1`.
pub fn e_q(z: C64, q: QBase) -> Result<SeriesValue> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "e_q needs |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    let p = q_pochhammer_inf(z, q);
    let value = c(1.0) / p.value;
    Ok(SeriesValue {
        value,
        abs_error_bound: value.norm() * p.relative_error_bound() * 1.01,
        terms_used: p.terms_used,
    })
}

/// `E_q(z) = sum q^{k(k-1)/2} z^k/(q;q)_k = (-z;q)_inf`, entire.
#[allow(non_snake_case)]
pub fn E_q(z: C64, q: QBase) -> SeriesValue {
    q_pochhammer_inf(-z, q)
}

/// `Gamma_q(x) = (q;q)_inf (1-q)^{1-x} / (q^x;q)_inf`.
pub fn q_gamma(x: f64, q: QBase) -> Result<f64> {
    if x <= 0.0 && x.fract() == 0.0 {
        return Err(Error::Pole(x));
    }
    let ratio = q_pochhammer_inf_ratio(c(q.value()), c(q.powf(x)), q)?;
    Ok(ratio.re * (1.0 - q.value()).powf(1.0 - x))
}
