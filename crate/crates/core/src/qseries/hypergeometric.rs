//! Basic hypergeometric series `r phi s` with tail-bounded truncation,
//! the regularised `1 phi 1` kernel of the Hahn-Exton functions, and the
//! q-difference continuation of `2 phi 1` outside its disk of convergence.

use super::base::{c, nonpositive_power_index, QBase, SeriesOptions, SeriesValue, C64, POLE_RTOL};
use super::pochhammer::{neg_poch_inf_real, q_pochhammer_inf};
use crate::error::{Error, Result};

/// Parameters of `r phi s [a_1..a_r; b_1..b_s; q, z]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiParams {
    pub upper: Vec<C64>,
    pub lower: Vec<C64>,
    pub q: QBase,
    pub z: C64,
}

impl PhiParams {
    pub fn new(upper: Vec<C64>, lower: Vec<C64>, q: QBase, z: C64) -> Self {
        PhiParams { upper, lower, q, z }
    }

    /// Index `n` such that the series stops after the `q^{-n}` upper parameter
    /// kills term `n + 1`; the smallest such `n` over all upper parameters.
    pub fn terminating_degree(&self) -> Option<u32> {
        self.upper
            .iter()
            .filter_map(|&a| nonpositive_power_index(a, self.q, POLE_RTOL))
            .min()
    }

    fn validate(&self) -> Result<Option<u32>> {
        let degree = self.terminating_degree();
        for (j, &b) in self.lower.iter().enumerate() {
            if let Some(l) = nonpositive_power_index(b, self.q, POLE_RTOL) {
                // (b;q)_k only reaches the vanishing factor for k > l.
                if degree.is_none_or(|n| l < n) {
                    return Err(Error::LowerParamPole {
                        param: format!("b_{} = {}", j + 1, b),
                        index: l,
                    });
                }
            }
        }
        if degree.is_none() {
            let (r, s) = (self.upper.len(), self.lower.len());
            if r > s + 1 {
                return Err(Error::DivergentSeries(format!(
                    "{r}phi{s} with r - s > 1 has radius of convergence 0"
                )));
            }
            if r == s + 1 && self.z.norm() >= 1.0 {
                return Err(Error::DivergentSeries(format!(
                    "{r}phi{s} needs |z| < 1, got |z| = {}",
                    self.z.norm()
                )));
            }
        }
        Ok(degree)
    }
}

/// Sums `t_0 + t_1 + ...` given `t_0`, the ratio `t_{k+1}/t_k` and a bound
/// `rho(k) >= sup_{j>=k} |t_{j+1}/t_j|` that is non-increasing in `k`.
///
/// Stops once two consecutive terms fall below `tol (1 + |S|)` and
/// `rho < 1`; the tail is then bounded geometrically.
pub(crate) fn sum_ratio_series(
    first: C64,
    mut ratio: impl FnMut(usize) -> C64,
    mut ratio_bound: impl FnMut(usize) -> f64,
    last: Option<usize>,
    opts: SeriesOptions,
) -> Result<SeriesValue> {
    let mut t = first;
    let mut s = c(0.0);
    let mut prev_abs = f64::INFINITY;
    let mut rounding = 0.0;
    for k in 0..opts.max_terms.max(1) {
        s += t;
        let tabs = t.norm();
        rounding += tabs * (k as f64 + 2.0);
        if !s.re.is_finite() || !s.im.is_finite() {
            return Err(Error::NoConvergence {
                max_terms: opts.max_terms,
                last_term: tabs,
            });
        }
        let finish = |tail: f64, rounding: f64| SeriesValue {
            value: s,
            abs_error_bound: tail + 4.0 * f64::EPSILON * rounding,
            terms_used: k + 1,
        };
        if last == Some(k) {
            return Ok(finish(0.0, rounding));
        }
        let thresh = opts.tol * (1.0 + s.norm());
        if k >= 1 && tabs < thresh && prev_abs < thresh {
            let rho = ratio_bound(k);
            if rho < 1.0 {
                return Ok(finish(tabs * rho / (1.0 - rho), rounding));
            }
        }
        let next = t * ratio(k);
        if next == c(0.0) {
            return Ok(finish(0.0, rounding));
        }
        prev_abs = tabs;
        t = next;
    }
    Err(Error::NoConvergence {
        max_terms: opts.max_terms,
        last_term: t.norm(),
    })
}

/// The general basic hypergeometric series
/// `sum_k (a;q)_k ((-1)^k q^{k(k-1)/2})^{s-r+1} z^k / ((b;q)_k (q;q)_k)`.
pub fn phi_rs(params: &PhiParams, opts: SeriesOptions) -> Result<SeriesValue> {
    let degree = params.validate()?;
    let q = params.q.value();
    let z = params.z;
    let excess = params.lower.len() as i32 - params.upper.len() as i32 + 1;
    let sign = if excess % 2 == 0 { 1.0 } else { -1.0 };
    let ratio = |k: usize| {
        let qk = q.powi(k as i32);
        let mut r = z * sign * qk.powi(excess) / (1.0 - qk * q);
        for &a in &params.upper {
            r *= c(1.0) - a * qk;
        }
        for &b in &params.lower {
            r /= c(1.0) - b * qk;
        }
        r
    };
    let bound = |k: usize| {
        let qk = q.powi(k as i32);
        let mut r = z.norm() * qk.powi(excess.max(0)) / (1.0 - qk * q);
        for a in &params.upper {
            r *= 1.0 + a.norm() * qk;
        }
        for b in &params.lower {
            let d = 1.0 - b.norm() * qk;
            if d <= 0.0 {
                return f64::INFINITY;
            }
            r /= d;
        }
        r
    };
    if let Some(n) = degree {
        let opts = SeriesOptions {
            max_terms: opts.max_terms.max(n as usize + 1),
            ..opts
        };
        // Terminating: sum every term up to degree n exactly.
        return sum_ratio_series(c(1.0), ratio, bound, Some(n as usize), opts);
    }
    sum_ratio_series(c(1.0), ratio, bound, None, opts)
}

/// `1 phi 1 (0; w; q, z)`.
pub fn phi11(w: C64, z: C64, q: QBase) -> Result<SeriesValue> {
    phi_rs(
        &PhiParams::new(vec![c(0.0)], vec![w], q, z),
        SeriesOptions::default(),
    )
}

/// `2 phi 1 (a, b; c; q, z)` for `|z| < 1` or terminating series.
pub fn phi21(a: C64, b: C64, cc: C64, q: QBase, z: C64) -> Result<SeriesValue> {
    phi_rs(
        &PhiParams::new(vec![a, b], vec![cc], q, z),
        SeriesOptions::default(),
    )
}

/// The bound `(-|z|;q)_inf (-|w|;q)_inf` dominating
/// `(w;q)_inf 1phi1(0;w;q,z)`.
pub fn majorant(z: C64, w: C64, q: QBase) -> f64 {
    neg_poch_inf_real(z.norm(), q) * neg_poch_inf_real(w.norm(), q)
}

/// `(w;q)_inf 1phi1(0;w;q,z)`, entire in both arguments and symmetric in them.
pub fn phi11_regularized(w: C64, z: C64, q: QBase) -> Result<SeriesValue> {
    phi11_regularized_with(w, z, q, SeriesOptions::default())
}

/// As [`phi11_regularized`], with explicit stopping options.
///
/// When either argument sits on the lattice `q^{1-n}`, `n >= 1`, the series
/// is evaluated through the reduction that starts the sum at `k = n`, which
/// avoids the cancellation the plain series suffers for large arguments.
pub fn phi11_regularized_with(
    w: C64,
    z: C64,
    q: QBase,
    opts: SeriesOptions,
) -> Result<SeriesValue> {
    if let Some(l) = nonpositive_power_index(w, q, POLE_RTOL) {
        return phi11_regularized_lattice(-(l as i64), z, q, opts);
    }
    if let Some(l) = nonpositive_power_index(z, q, POLE_RTOL) {
        return phi11_regularized_lattice(-(l as i64), w, q, opts);
    }
    phi11_regularized_direct(w, z, q, opts)
}

/// `(q^m;q)_inf 1phi1(0;q^m;q,z)` for an exact integer exponent `m`.
pub fn phi11_regularized_lattice(
    m: i64,
    z: C64,
    q: QBase,
    opts: SeriesOptions,
) -> Result<SeriesValue> {
    if m >= 1 {
        return phi11_regularized_direct(c(q.pow(m)), z, q, opts);
    }
    let n = 1 - m;
    if z == c(0.0) {
        return Ok(SeriesValue::exact(c(0.0)));
    }
    // (-1)^n q^{n(n-1)/2} z^n, assembled in log form.
    let nf = n as f64;
    let log_mag = 0.5 * nf * (nf - 1.0) * q.ln() + nf * z.norm().ln();
    let phase = nf * z.arg()
        + if n % 2 == 1 {
            std::f64::consts::PI
        } else {
            0.0
        };
    if log_mag < -745.0 {
        return Ok(SeriesValue {
            value: c(0.0),
            abs_error_bound: 0.0,
            terms_used: 0,
        });
    }
    let prefactor = C64::from_polar(log_mag.exp(), phase);
    let inner = phi11_regularized_with(c(q.pow(n + 1)), z * q.pow(n), q, opts)?;
    Ok(inner.scale(prefactor, 4.0 * nf * f64::EPSILON))
}

/// Direct summation of `sum_k (-1)^k q^{k(k-1)/2} (q^k w;q)_inf z^k / (q;q)_k`.
fn phi11_regularized_direct(w: C64, z: C64, q: QBase, opts: SeriesOptions) -> Result<SeriesValue> {
    let qv = q.value();
    let (za, wa) = (z.norm(), w.norm());
    // Majorant terms m_k = q^{k(k-1)/2} |z|^k (-|w|q^k;q)_inf / (q;q)_k decide
    // the truncation point; |T_k| <= m_k.
    let mut m = neg_poch_inf_real(wa, q);
    let mut prev = f64::INFINITY;
    let mut majorants = Vec::with_capacity(64);
    let mut tail = 0.0;
    let mut k = 0usize;
    loop {
        majorants.push(m);
        if za == 0.0 {
            break;
        }
        let qk = qv.powi(k as i32);
        let rho = qk * za / (1.0 - qk * qv);
        if k >= 1 && m < opts.tol && prev < opts.tol && rho < 1.0 {
            tail = m * rho / (1.0 - rho);
            break;
        }
        if k + 1 >= opts.max_terms {
            return Err(Error::NoConvergence {
                max_terms: opts.max_terms,
                last_term: m,
            });
        }
        prev = m;
        m *= qk * za / ((1.0 - qk * qv) * (1.0 + wa * qk));
        k += 1;
    }
    let last = k;
    let head = q_pochhammer_inf(w * qv.powi(last as i32), q);
    let mut products = vec![c(0.0); last + 1];
    products[last] = head.value;
    for j in (0..last).rev() {
        products[j] = products[j + 1] * (c(1.0) - w * qv.powi(j as i32));
    }
    let head_rel = head.relative_error_bound().min(1.0);
    let mut coeff = c(1.0);
    let mut sum = c(0.0);
    let mut err = tail;
    for (j, (&p, &mj)) in products.iter().zip(&majorants).enumerate() {
        sum += coeff * p;
        err += mj * (head_rel + 4.0 * (last + j + 2) as f64 * f64::EPSILON);
        let qj = qv.powi(j as i32);
        coeff *= -z * qj / (1.0 - qj * qv);
    }
    Ok(SeriesValue {
        value: sum,
        abs_error_bound: err,
        terms_used: last + 1,
    })
}

/// `2 phi 1 (a, b; c; q, z)` on the whole plane minus the poles `z = q^{-l}`.
///
/// Inside `|z| < 0.9` (or for terminating series) this is the power series.
/// Further out the three-term q-difference equation
/// `u(z) = [((a+b)z - c/q - 1) u(qz) + (c/q - ab z) u(q^2 z)] / (z - 1)`
/// is run upward from two points inside the disk.
pub fn phi21_continued(a: C64, b: C64, cc: C64, q: QBase, z: C64) -> Result<SeriesValue> {
    let direct = PhiParams::new(vec![a, b], vec![cc], q, z);
    if direct.terminating_degree().is_some() || z.norm() < 0.9 {
        return phi_rs(&direct, SeriesOptions::default());
    }
    if let Some(l) = nonpositive_power_index(z, q, POLE_RTOL) {
        return Err(Error::Domain(format!(
            "2phi1 continuation has a pole at z = q^-{l}"
        )));
    }
    let qv = q.value();
    let mut steps = 0i32;
    while z.norm() * qv.powi(steps) >= 0.5 {
        steps += 1;
    }
    let eval = |j: i32| {
        phi_rs(
            &PhiParams::new(vec![a, b], vec![cc], q, z * qv.powi(j)),
            SeriesOptions::default(),
        )
    };
    let mut u2 = eval(steps + 1)?;
    let mut u1 = eval(steps)?;
    let cq = cc / qv;
    for j in (0..steps).rev() {
        let x = z * qv.powi(j);
        let c1 = (a + b) * x - cq - 1.0;
        let c2 = cq - a * b * x;
        let den = x - 1.0;
        let value = (c1 * u1.value + c2 * u2.value) / den;
        let err = (c1.norm() * u1.abs_error_bound + c2.norm() * u2.abs_error_bound) / den.norm()
            + 4.0 * f64::EPSILON * (c1.norm() * u1.value.norm() + c2.norm() * u2.value.norm())
                / den.norm();
        let next = SeriesValue {
            value,
            abs_error_bound: err,
            terms_used: u1.terms_used + u2.terms_used,
        };
        u2 = u1;
        u1 = next;
    }
    Ok(u1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: f64) -> QBase {
        QBase::new(v).unwrap()
    }

    #[test]
    fn phi11_at_zero_is_one() {
        let v = phi11(C64::new(0.3, 0.2), c(0.0), q(0.5)).unwrap();
        assert_eq!(v.value, c(1.0));
    }

    #[test]
    fn terminating_two_term_series() {
        let qb = q(0.5);
        let (b, cc, z) = (C64::new(0.3, 0.1), c(0.7), C64::new(0.4, -0.2));
        let v = phi21(c(1.0 / 0.5), b, cc, qb, z).unwrap();
        let expected = c(1.0) + (c(1.0) - 2.0) * (c(1.0) - b) * z / ((c(1.0) - cc) * (1.0 - 0.5));
        assert!((v.value - expected).norm() < 1e-15, "{v:?} vs {expected}");
        assert!(v.abs_error_bound < 1e-13);
        // terminating series are fine at any |z|
        assert!(phi21(c(4.0), b, cc, qb, c(30.0)).is_ok());
    }

    #[test]
    fn divergence_and_pole_errors() {
        let qb = q(0.5);
        let p = PhiParams::new(vec![c(0.3), c(0.2), c(0.1)], vec![c(0.4)], qb, c(0.1));
        assert!(matches!(
            phi_rs(&p, SeriesOptions::default()),
            Err(Error::DivergentSeries(_))
        ));
        let p = PhiParams::new(vec![c(0.3), c(0.2)], vec![c(0.4)], qb, c(1.0));
        assert!(matches!(
            phi_rs(&p, SeriesOptions::default()),
            Err(Error::DivergentSeries(_))
        ));
        let p = PhiParams::new(vec![c(0.0)], vec![c(4.0)], qb, c(0.1));
        assert!(matches!(
            phi_rs(&p, SeriesOptions::default()),
            Err(Error::LowerParamPole { index: 2, .. })
        ));
        // terminating before the pole is reached
        let p = PhiParams::new(vec![c(2.0)], vec![c(4.0)], qb, c(0.1));
        assert!(phi_rs(&p, SeriesOptions::default()).is_ok());
    }

    #[test]
    fn no_convergence_on_tiny_budget() {
        let p = PhiParams::new(vec![c(0.2), c(0.3)], vec![c(0.1)], q(0.5), c(0.8));
        let opts = SeriesOptions {
            tol: 1e-13,
            max_terms: 5,
        };
        assert!(matches!(phi_rs(&p, opts), Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn phi11_against_extended_precision() {
        // 1phi1(0; q^{3/2}; q=0.25, z=0.5), 60 terms at 50 digits.
        let qb = q(0.25);
        let v = phi11(c(0.25f64.powf(1.5)), c(0.5), qb).unwrap();
        let oracle = 0.339_630_626_400_065_9;
        assert!((v.value.re - oracle).abs() < 1e-15, "{}", v.value.re);
        assert!(v.abs_error_bound < 1e-13);
    }

    #[test]
    fn regularized_at_zero_is_product() {
        let qb = q(0.5);
        let w = C64::new(0.7, -0.4);
        let v = phi11_regularized(w, c(0.0), qb).unwrap();
        assert!((v.value - q_pochhammer_inf(w, qb).value).norm() < 1e-16);
    }

    #[test]
    fn regularized_symmetry_example() {
        let qb = q(0.5);
        let (w, z) = (C64::new(0.3, 0.1), c(-0.7));
        let a = phi11_regularized(w, z, qb).unwrap();
        let b = phi11_regularized(z, w, qb).unwrap();
        assert!((a.value - b.value).norm() < 1e-15 * a.value.norm().max(1.0));
    }

    #[test]
    fn lattice_reduction_matches_series() {
        // The reduced form against the raw series (terms below k = n vanish).
        let qb = q(0.5);
        let z = c(0.3);
        for n in 1..=4i64 {
            let w = c(qb.pow(1 - n));
            let reduced = phi11_regularized(w, z, qb).unwrap();
            let raw = phi11_regularized_direct(w, z, qb, SeriesOptions::default()).unwrap();
            let scale = reduced.value.norm();
            assert!(
                (reduced.value - raw.value).norm() < 1e-12 * scale,
                "n={n}: {:?} vs {:?}",
                reduced.value,
                raw.value
            );
        }
    }

    #[test]
    fn majorant_values() {
        let qb = q(0.5);
        assert_eq!(majorant(c(0.0), c(0.0), qb), 1.0);
        let m = majorant(c(1.0), c(1.0), qb);
        assert!((m - 22.738_230_399_183_975).abs() < 1e-12);
    }

    #[test]
    fn continuation_matches_series_inside_disk() {
        let qb = q(0.5);
        let (a, b, cc) = (c(0.3), c(0.7), c(0.4));
        for &z in &[c(0.92), C64::new(0.6, 0.7), c(-0.95)] {
            let direct = phi_rs(
                &PhiParams::new(vec![a, b], vec![cc], qb, z),
                SeriesOptions {
                    tol: 1e-15,
                    max_terms: 5000,
                },
            )
            .unwrap();
            let cont = phi21_continued(a, b, cc, qb, z).unwrap();
            assert!((direct.value - cont.value).norm() < 1e-12, "z={z}");
        }
        assert!(phi21_continued(a, b, cc, qb, c(2.0)).is_err());
    }
}
