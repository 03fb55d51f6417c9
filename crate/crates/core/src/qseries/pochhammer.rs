//! q-shifted factorials `(a;q)_k` and their infinite-product limits.

use super::base::{c, QBase, SeriesValue, C64, PRODUCT_CUTOFF};
use crate::error::{Error, Result};

/// Length of a q-shifted factorial: finite `k` or the infinite product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochhammerLength {
    Finite(usize),
    Infinite,
}

/// `(a;q)_k = prod_{j<k} (1 - a q^j)`; `(a;q)_0 = 1`.
pub fn q_pochhammer(a: C64, q: QBase, k: usize) -> C64 {
    let mut p = c(1.0);
    let mut qj = 1.0;
    for _ in 0..k {
        p *= c(1.0) - a * qj;
        qj *= q.value();
    }
    p
}

/// Number of factors after which `|a| q^j` drops below the product cutoff.
fn cutoff_index(a_abs: f64, q: QBase) -> usize {
    if a_abs <= PRODUCT_CUTOFF {
        return 0;
    }
    ((PRODUCT_CUTOFF / a_abs).ln() / q.ln()).ceil().max(0.0) as usize + 1
}

/// Relative error of truncating `(a;q)_inf` after `jstar` factors:
/// `exp(sum_{j>=jstar} |a|q^j / (1-|a|q^j)) - 1`.
fn truncation_rel_error(a_abs: f64, q: QBase, jstar: usize) -> f64 {
    let t = a_abs * q.pow(jstar as i64);
    if t == 0.0 {
        return 0.0;
    }
    let tail = t / ((1.0 - q.value()) * (1.0 - t));
    tail.exp_m1()
}

/// `(a;q)_inf`, truncated where `|a| q^j < 2^-60`.
pub fn q_pochhammer_inf(a: C64, q: QBase) -> SeriesValue {
    let a_abs = a.norm();
    let jstar = cutoff_index(a_abs, q);
    let mut p = c(1.0);
    let mut qj = 1.0;
    for _ in 0..jstar {
        p *= c(1.0) - a * qj;
        qj *= q.value();
    }
    let rel = if jstar == 0 {
        truncation_rel_error(a_abs, q, 0)
    } else {
        truncation_rel_error(a_abs, q, jstar) + 2.0 * (jstar as f64 + 1.0) * f64::EPSILON
    };
    SeriesValue {
        value: p,
        abs_error_bound: p.norm() * rel,
        terms_used: jstar,
    }
}

/// `(a;q)_inf / (b;q)_inf` as a single product, which stays finite when both
/// numerator and denominator underflow (q close to 1).
pub fn q_pochhammer_inf_ratio(a: C64, b: C64, q: QBase) -> Result<C64> {
    let jstar = cutoff_index(a.norm().max(b.norm()), q);
    let mut p = c(1.0);
    let mut qj = 1.0;
    for j in 0..jstar {
        let den = c(1.0) - b * qj;
        if den == c(0.0) {
            return Err(Error::Domain(format!(
                "(b;q)_inf vanishes: b q^{j} = 1 for b = {b}"
            )));
        }
        p *= (c(1.0) - a * qj) / den;
        qj *= q.value();
    }
    Ok(p)
}

/// `(a_1,...,a_r;q)_k`, the product of the individual symbols.
pub fn q_pochhammer_multi(params: &[C64], q: QBase, len: PochhammerLength) -> C64 {
    params
        .iter()
        .map(|&a| match len {
            PochhammerLength::Finite(k) => q_pochhammer(a, q, k),
            PochhammerLength::Infinite => q_pochhammer_inf(a, q).value,
        })
        .product()
}

/// `(q;q)_inf` as a real number.
pub(crate) fn qq_inf(q: QBase) -> f64 {
    q_pochhammer_inf(c(q.value()), q).value.re
}

/// `(-x;q)_inf` for real `x >= 0`.
pub(crate) fn neg_poch_inf_real(x: f64, q: QBase) -> f64 {
    q_pochhammer_inf(c(-x), q).value.re
}
