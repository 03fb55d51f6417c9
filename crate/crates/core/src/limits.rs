//! Little q-Jacobi polynomials and the limit transitions
//! little q-Jacobi -> `1phi1` -> `0F1`, with the explicit error bounds.

use serde::{Deserialize, Serialize};

use crate::bessel::{classical_0f1, dual_kernel, exton_kernel_bound, q_cos, q_sin, Order};
use crate::bilateral::{bilateral_sum, Memo, Window};
use crate::error::{Error, Result};
use crate::qseries::{
    c, phi11, phi21, q_pochhammer, q_pochhammer_inf, q_pochhammer_inf_ratio, QBase, SeriesValue,
    C64,
};
use crate::report::{IdentityReport, Params};
use crate::transform::FourierKind;

/// Parameters `(a, b)` of the little q-Jacobi family, `0 < a < 1/q`, `b < 1/q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LittleQJacobiParams {
    a: f64,
    b: f64,
    q: QBase,
}

impl LittleQJacobiParams {
    pub fn new(a: f64, b: f64, q: QBase) -> Result<Self> {
        let qi = 1.0 / q.value();
        if !(a > 0.0 && a < qi && b < qi && b.is_finite()) {
            return Err(Error::Domain(format!(
                "needs 0 < a < 1/q and b < 1/q, got a = {a}, b = {b}, q = {q}"
            )));
        }
        Ok(LittleQJacobiParams { a, b, q })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn q(&self) -> QBase {
        self.q
    }

    fn params(&self) -> Params {
        Params::new()
            .real("a", self.a)
            .real("b", self.b)
            .real("q", self.q.value())
    }

    /// `(qa, qb;q)_inf / (q, q^2 ab;q)_inf`.
    fn normalizer(&self) -> f64 {
        let (a, b, q) = (self.a, self.b, self.q);
        let qv = q.value();
        let num = q_pochhammer_inf(c(qv * a), q).value * q_pochhammer_inf(c(qv * b), q).value;
        let den = q_pochhammer_inf(c(qv), q).value * q_pochhammer_inf(c(qv * qv * a * b), q).value;
        (num / den).re
    }

    /// `h_n / (qa)^n = (1-qab)(qb,q;q)_n / ((1-q^{2n+1}ab)(qa,qab;q)_n)`.
    fn reduced_norm(&self, n: u32) -> f64 {
        let (a, b, q) = (self.a, self.b, self.q);
        let qv = q.value();
        let k = n as usize;
        let num =
            (1.0 - qv * a * b) * q_pochhammer(c(qv * b), q, k).re * q_pochhammer(c(qv), q, k).re;
        let den = (1.0 - q.pow(2 * n as i64 + 1) * a * b)
            * q_pochhammer(c(qv * a), q, k).re
            * q_pochhammer(c(qv * a * b), q, k).re;
        num / den
    }

    /// `(qa)^k (q^{k+1};q)_inf / (q^{k+1} b;q)_inf`.
    fn weight(&self, k: i64) -> Result<f64> {
        let q = self.q;
        let r = q_pochhammer_inf_ratio(c(q.pow(k + 1)), c(q.pow(k + 1) * self.b), q)?;
        Ok(((k as f64) * (q.value() * self.a).ln()).exp() * r.re)
    }
}

/// `p_n(x;a,b;q) = 2phi1(q^{-n}, abq^{n+1}; aq; q, qx)`, a terminating sum.
pub fn little_q_jacobi(n: u32, x: C64, p: &LittleQJacobiParams) -> Result<SeriesValue> {
    let q = p.q;
    let qv = q.value();
    phi21(
        c(q.pow(-(n as i64))),
        c(p.a * p.b * q.pow(n as i64 + 1)),
        c(qv * p.a),
        q,
        x * qv,
    )
}

/// Sum of the absolute coefficients of `p_n` in powers of `qx`, which bounds
/// `|p_n(x)|` for `|x| <= 1`.
fn coefficient_mass(n: u32, p: &LittleQJacobiParams) -> f64 {
    let q = p.q;
    let qv = q.value();
    let (a1, a2, b1) = (
        q.pow(-(n as i64)),
        p.a * p.b * q.pow(n as i64 + 1),
        qv * p.a,
    );
    let mut t = 1.0f64;
    let mut total = 1.0;
    for k in 0..n as i64 {
        let qk = q.pow(k);
        t *= ((1.0 - a1 * qk) * (1.0 - a2 * qk) / ((1.0 - b1 * qk) * (1.0 - qk * qv))).abs() * qv;
        total += t;
    }
    total
}

/// Weighted sum of `p_n p_m` at `x = q^k`, `k >= 0`, against the orthogonality
/// constant. Without `k_max` the sum stops once the weight is negligible.
pub fn lqj_orthogonality(
    n: u32,
    m: u32,
    p: &LittleQJacobiParams,
    k_max: Option<usize>,
) -> Result<IdentityReport> {
    let q = p.q;
    let qv = q.value();
    let norm = p.normalizer();
    let bound_poly = coefficient_mass(n, p) * coefficient_mass(m, p);
    let mut sum = c(0.0);
    let mut err = 0.0;
    let mut weight_sum = 0.0;
    let mut k = 0usize;
    let tail = loop {
        let x = c(q.pow(k as i64));
        let (pn, pm) = (little_q_jacobi(n, x, p)?, little_q_jacobi(m, x, p)?);
        let w = p.weight(k as i64)?;
        sum += pn.value * pm.value * w;
        err +=
            w.abs() * (pn.abs_error_bound * pm.value.norm() + pm.abs_error_bound * pn.value.norm());
        weight_sum += w.abs();
        // weight ratio bound beyond k
        let qk1 = q.pow(k as i64 + 1);
        let rho = qv * p.a * (1.0 + p.b.abs() * qk1) / (1.0 - qk1);
        let next_w = p.weight(k as i64 + 1)?.abs();
        let tail = if rho < 1.0 {
            bound_poly * next_w / (1.0 - rho)
        } else {
            f64::INFINITY
        };
        let done = match k_max {
            Some(kmax) => k >= kmax,
            None => next_w < 1e-17 * weight_sum && tail < 1e-16 * bound_poly.max(1.0),
        };
        if done {
            break tail;
        }
        if k > 100_000 {
            return Err(Error::NoConvergence {
                max_terms: k,
                last_term: next_w,
            });
        }
        k += 1;
    };
    let lhs = sum * norm;
    let rhs = if n == m {
        (qv * p.a).powi(n as i32) * p.reduced_norm(n)
    } else {
        0.0
    };
    Ok(IdentityReport::new(
        "little_q_jacobi_orthogonality",
        p.params().int("n", n as i64).int("m", m as i64),
        lhs,
        c(rhs),
        k + 1,
        (tail + err) * norm.abs(),
    ))
}

/// The degree-`N` limit toward `1phi1(0;qa;q,x)` with the proof's error bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct A1Check {
    /// lhs `2phi1(q^-N, q^{N+1}ab; qa; q, q^N x)`, rhs `1phi1(0;qa;q,x)`.
    pub report: IdentityReport,
    /// The explicit bound on `|lhs - rhs|` with `M = |x|`.
    pub proof_bound: f64,
    /// Set when `q^{N+1} ab > 1`, where the product inequality behind the
    /// bound does not apply.
    pub bound_flagged: bool,
}

/// `|2phi1(q^-N, q^{N+1}ab; qa; q, q^N x) - 1phi1(0;qa;q,x)|` against
/// `q^{N+1}(1+ab)/(1-q) sum_{k>=1} q^{k(k-1)/2} q^-k M^k/((qa;q)_k (q;q)_k)
/// + sum_{k>N} q^{k(k-1)/2} M^k/((qa;q)_k (q;q)_k)`.
pub fn prop_a1_check(big_n: u32, x: C64, p: &LittleQJacobiParams) -> Result<A1Check> {
    if p.b < 0.0 {
        return Err(Error::Domain(format!("needs b >= 0, got {}", p.b)));
    }
    let q = p.q;
    let qv = q.value();
    let nn = big_n as i64;
    let ab = p.a * p.b;
    let lhs = phi21(
        c(q.pow(-nn)),
        c(ab * q.pow(nn + 1)),
        c(qv * p.a),
        q,
        x * q.pow(nn),
    )?;
    let rhs = phi11(c(qv * p.a), x, q)?;

    let mm = x.norm();
    let mut head = 0.0;
    let mut tail = 0.0;
    let mut t = 1.0f64; // q^{k(k-1)/2} M^k / ((qa;q)_k (q;q)_k)
    for k in 1..2000i64 {
        let qk1 = q.pow(k - 1);
        t *= qk1 * mm / ((1.0 - qv * p.a * qk1) * (1.0 - qk1 * qv));
        if t == 0.0 {
            break;
        }
        head += t * q.pow(-k);
        if k > nn {
            tail += t;
        }
        if k > nn + 2 && t * q.pow(-k) < 1e-30 * (head + tail) {
            break;
        }
    }
    let proof_bound = q.pow(nn + 1) * (1.0 + ab) / (1.0 - qv) * head + tail;
    Ok(A1Check {
        report: IdentityReport::new(
            "prop_a1",
            p.params().int("N", nn).complex("x", x),
            lhs.value,
            rhs.value,
            lhs.terms_used.max(rhs.terms_used),
            lhs.abs_error_bound + rhs.abs_error_bound,
        ),
        proof_bound,
        bound_flagged: ab * q.pow(nn + 1) > 1.0,
    })
}

/// `1phi1(0;q^{alpha+1};q,(1-q)^2 z)` against `0F1(-;alpha+1;-z)`.
pub fn prop_a2_check(alpha: Order, z: C64, q: QBase) -> Result<IdentityReport> {
    let a = alpha.value();
    if a <= -1.0 {
        return Err(Error::Domain(format!("needs alpha > -1, got {a}")));
    }
    let one_minus = 1.0 - q.value();
    let lhs = phi11(c(q.powf(a + 1.0)), z * one_minus * one_minus, q)?;
    let rhs = classical_0f1(a + 1.0, -z)?;
    Ok(IdentityReport::new(
        "prop_a2",
        Params::new()
            .real("alpha", a)
            .complex("z", z)
            .real("q", q.value()),
        lhs.value,
        rhs.value,
        lhs.terms_used.max(rhs.terms_used),
        lhs.abs_error_bound + rhs.abs_error_bound,
    ))
}

/// Term `k` of the `1phi1` in the previous check, the majorant
/// `(q^{-alpha/2}|z|)^k prod_j (q^{(alpha+j)/2} - q^{1+(alpha+j)/2})(q^{j/2} - q^{1+j/2})
/// / ((1-q^{1+alpha+j})(1-q^{1+j}))`, and for `alpha >= 0` the dominating
/// `(2^{alpha/2}|z|)^k / ((alpha+1)_k k!)`, valid for `1/2 < q < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct A2Majorants {
    pub term: f64,
    pub majorant: f64,
    pub dominating: Option<f64>,
}

pub fn prop_a2_majorants(alpha: Order, z: C64, q: QBase, k: u32) -> A2Majorants {
    let a = alpha.value();
    let qv = q.value();
    let za = z.norm();
    let one_minus = 1.0 - qv;
    let mut term = 1.0f64;
    let mut majorant = (q.powf(-a / 2.0) * za).powi(k as i32);
    let mut dominating = (2f64.powf(a / 2.0) * za).powi(k as i32);
    for j in 0..k as i64 {
        let jf = j as f64;
        let den = (1.0 - q.powf(1.0 + a + jf)) * (1.0 - q.pow(1 + j));
        term *= q.pow(j) * one_minus * one_minus * za / den.abs();
        majorant *= (q.powf((a + jf) / 2.0) - q.powf(1.0 + (a + jf) / 2.0))
            * (q.powf(jf / 2.0) - q.powf(1.0 + jf / 2.0))
            / den;
        dominating /= (a + 1.0 + jf) * (jf + 1.0);
    }
    A2Majorants {
        term,
        majorant,
        dominating: (a >= 0.0).then_some(dominating),
    }
}

/// `cos((1-q)z;q^2)` or `sin((1-q)z;q^2)` against `cos z` or `sin z`.
pub fn trig_limit_check(kind: FourierKind, z: C64, q: QBase) -> Result<IdentityReport> {
    let w = z * (1.0 - q.value());
    let (lhs, rhs, id) = match kind {
        FourierKind::Cos => (q_cos(w, q)?, z.cos(), "cos_limit"),
        FourierKind::Sin => (q_sin(w, q)?, z.sin(), "sin_limit"),
    };
    Ok(IdentityReport::new(
        id,
        Params::new().complex("z", z).real("q", q.value()),
        lhs.value,
        rhs,
        lhs.terms_used,
        lhs.abs_error_bound,
    ))
}

/// Outcome of the re-indexed orthogonality against its limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BridgeCheck {
    pub report: IdentityReport,
    /// `sum_k |T_N(k) - D_{n+k} D_{m+k}|` over the window, which bounds the
    /// report's residual up to the dual sum's tail and decays with `N`.
    pub termwise_distance: f64,
}

/// The orthogonality re-indexed by `n, m, k -> N-n, N-m, N+k` and normalised,
/// against the dual orthogonality sum with `z^2 = qa`, both over the dual
/// sum's window. The two agree termwise in the limit `N -> infinity`, so the
/// residual shrinks as `N` grows.
pub fn lqj_limit_to_orthogonality(
    big_n: u32,
    n: i64,
    m: i64,
    p: &LittleQJacobiParams,
    window: Window,
) -> Result<BridgeCheck> {
    let nn = big_n as i64;
    if n > nn || m > nn {
        return Err(Error::Domain(format!(
            "needs n, m <= N, got n = {n}, m = {m}, N = {nn}"
        )));
    }
    let q = p.q;
    let qa = q.value() * p.a;
    let z = c(qa.sqrt());
    let kernel = |j| dual_kernel(j, z, q).map(|v| (v.value, v.abs_error_bound));
    let mut first = Memo::new(kernel);
    let mut second = Memo::new(kernel);
    let dual = bilateral_sum(
        (-n.max(m), -n.min(m)),
        window,
        |k| {
            let (a, ea) = first.get(k + n)?;
            let (b, eb) = second.get(k + m)?;
            Ok((a * b, ea * b.norm() + eb * a.norm()))
        },
        |k| exton_kernel_bound(k + n, z, q) * exton_kernel_bound(k + m, z, q),
    )?;

    let (dn, dm) = ((nn - n) as u32, (nn - m) as u32);
    let scale = p.normalizer() / C64::new(p.reduced_norm(dn) * p.reduced_norm(dm), 0.0).sqrt();
    let mut sum = c(0.0);
    let mut distance = 0.0;
    for k in dual.lo..=dual.hi {
        let limit = first.get(k + n)?.0 * second.get(k + m)?.0;
        let term = if k < -nn {
            c(0.0)
        } else {
            let x = c(q.pow(nn + k));
            let pn = little_q_jacobi(dn, x, p)?.value;
            let pm = little_q_jacobi(dm, x, p)?.value;
            let r = q_pochhammer_inf_ratio(c(q.pow(nn + k + 1)), c(q.pow(nn + k + 1) * p.b), q)?;
            let w = ((k as f64 + (n + m) as f64 / 2.0) * qa.ln()).exp();
            pn * pm * r * w * scale
        };
        sum += term;
        distance += (term - limit).norm();
    }
    let report = IdentityReport::new(
        "little_q_jacobi_bridge",
        p.params().int("N", nn).int("n", n).int("m", m),
        sum,
        dual.value,
        dual.points(),
        dual.tail_bound + dual.abs_error_bound,
    );
    Ok(BridgeCheck {
        report,
        termwise_distance: distance,
    })
}
