//! Generating functions, q-Graf addition formulas, the Poisson kernel,
//! Weber-Sonine, Heine-type expansions and the 2phi1 transformations
//! behind them, each as a two-sided numerical identity.

use serde::{Deserialize, Serialize};

use crate::bessel::{
    dual_kernel, exton_kernel, exton_kernel_bound, hankel_kernel, hankel_kernel_bound, jackson_j1,
    jackson_j1_bound, jackson_j2, jackson_j2_bound, Order,
};
use crate::bilateral::{bilateral_sum, BilateralSum, Memo, Window};
use crate::error::{Error, Result};
use crate::qseries::{
    c, integer_power_index, nonpositive_power_index, phi21_continued, phi_rs, q_pochhammer,
    q_pochhammer_inf, q_pochhammer_inf_ratio, qq_inf, sum_ratio_series, PhiParams, QBase,
    SeriesOptions, SeriesValue, ADMISSIBILITY_RTOL, C64, POLE_RTOL,
};
use crate::report::{IdentityReport, Params};

/// Parameters of the addition formulas. `m` only enters the symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrafParams {
    pub x: C64,
    pub y: C64,
    pub s: C64,
    pub n: i64,
    pub m: i64,
    pub q: QBase,
}

/// Which closed form to use on the right of the symmetric addition formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchChoice {
    First,
    Second,
    Both,
}

/// Which kernel family the generating-function check sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelForm {
    /// `z^n (q^{n+1};q)_inf/(q;q)_inf 1phi1(0;q^{n+1};q,z^2)`
    Exton,
    /// `z^n (z^2;q)_inf/(q;q)_inf 1phi1(0;z^2;q,q^{n+1})`
    Dual,
}

fn trips(v: C64, q: QBase) -> bool {
    nonpositive_power_index(v, q, ADMISSIBILITY_RTOL).is_some()
}

fn pair(v: SeriesValue) -> (C64, f64) {
    (v.value, v.abs_error_bound)
}

fn qfact(k: i64, q: QBase) -> f64 {
    q_pochhammer(c(q.value()), q, k.max(0) as usize).re
}

impl GrafParams {
    pub fn new(x: C64, y: C64, s: C64, n: i64, q: QBase) -> Self {
        GrafParams {
            x,
            y,
            s,
            n,
            m: 0,
            q,
        }
    }

    pub fn with_m(mut self, m: i64) -> Self {
        self.m = m;
        self
    }

    fn params(&self) -> Params {
        Params::new()
            .complex("x", self.x)
            .complex("y", self.y)
            .complex("s", self.s)
            .int("n", self.n)
            .int("m", self.m)
            .real("q", self.q.value())
    }

    fn check_sum(&self) -> Result<()> {
        if self.s == c(0.0) {
            return Err(Error::Domain("s must be nonzero".into()));
        }
        let r = (self.s * self.x * self.y).norm();
        if r >= 1.0 {
            return Err(Error::Domain(format!("needs |sxy| < 1, got {r}")));
        }
        Ok(())
    }

    /// Admissibility of the (first, second) closed forms of the symmetric formula.
    pub fn branch_admissible(&self) -> (bool, bool) {
        let q = self.q;
        let u = self.x / (self.s * self.y);
        let v = self.y / (self.s * self.x);
        let first = !trips(u, q) && !trips(u * q.pow(self.n - self.m), q);
        let second = !trips(v, q) && !trips(v * q.pow(self.m - self.n), q);
        (first, second)
    }
}

/// The prefactor of a coefficient can be large, so its series runs to
/// rounding level.
const TIGHT: SeriesOptions = SeriesOptions {
    tol: 1e-17,
    max_terms: 500,
};

/// `P_n sum_{k >= max(0,-n)} prod_{j<k} f(j) / ((q;q)_k (q;q)_{n+k})` where
/// `P_n = prod_{j<n} g(j)` for `n >= 0` and `1/prod_{i=1..-n} g(-i)` otherwise.
///
/// This is the shape of every regularised `2phi1` coefficient below; `fb`
/// must bound `|f|` and be non-increasing.
fn regularized_coefficient(
    n: i64,
    g: impl Fn(i64) -> C64,
    f: impl Fn(i64) -> C64,
    fb: impl Fn(i64) -> f64,
    q: QBase,
) -> Result<SeriesValue> {
    let mut pre = c(1.0);
    if n >= 0 {
        for j in 0..n {
            pre *= g(j);
        }
    } else {
        for i in 1..=-n {
            let d = g(-i);
            if d.norm() < POLE_RTOL {
                return Err(Error::InadmissibleBranch(format!(
                    "coefficient of order {n} has a vanishing factor at q^-{i}"
                )));
            }
            pre /= d;
        }
    }
    let k0 = (-n).max(0);
    let mut first = c(1.0);
    for j in 0..k0 {
        first *= f(j);
    }
    first /= qfact(k0, q) * qfact(n + k0, q);
    let qv = q.value();
    let den = |k: i64| (1.0 - qv.powi((k + 1) as i32)) * (1.0 - qv.powi((n + k + 1) as i32));
    let sum = sum_ratio_series(
        first,
        |i| {
            let k = k0 + i as i64;
            f(k) / den(k)
        },
        |i| {
            let k = k0 + i as i64;
            fb(k) / den(k)
        },
        None,
        TIGHT,
    )?;
    Ok(sum.scale(pre, 4.0 * (n.unsigned_abs() as f64 + 1.0) * f64::EPSILON))
}

/// `y^n (s^{-1}xy^{-1};q)_n/(q;q)_n 2phi1(s^{-1}yx^{-1}, q^n s^{-1}xy^{-1}; q^{n+1}; q, sxy)`,
/// written without divisions by `x` or `y`; negative `n` follow the
/// prematurely terminating reading of the series.
fn graf_first_form(n: i64, x: C64, y: C64, s: C64, q: QBase) -> Result<SeriesValue> {
    let xs = x / s;
    let sx = s * x;
    let (ya, xsa, sxa) = (y.norm(), xs.norm(), sx.norm());
    regularized_coefficient(
        n,
        |j| y - xs * q.pow(j),
        |j| (sx - y * q.pow(j)) * (y - xs * q.pow(n + j)),
        |j| (sxa + ya * q.pow(j)) * (ya + xsa * q.pow(n + j)),
        q,
    )
}

/// The mirrored expression `s^{-n}` times the first form at `(-n, y, x, s)`.
fn graf_second_form(n: i64, x: C64, y: C64, s: C64, q: QBase) -> Result<SeriesValue> {
    let f = graf_first_form(-n, y, x, s, q)?;
    Ok(f.scale(s.powi(-n as i32), 2.0 * f64::EPSILON))
}

/// Closed form of the addition formula: first expression for `n >= 0`,
/// second for `n < 0`.
pub fn graf_rhs(p: &GrafParams) -> Result<SeriesValue> {
    p.check_sum()?;
    if p.n >= 0 {
        graf_first_form(p.n, p.x, p.y, p.s, p.q)
    } else {
        graf_second_form(p.n, p.x, p.y, p.s, p.q)
    }
}

/// `sum_k s^k A_{n+k}(y) A_k(x)` with the Exton kernels `A`.
pub fn graf_sum(p: &GrafParams, window: Window) -> Result<BilateralSum> {
    p.check_sum()?;
    let GrafParams { x, y, s, n, q, .. } = *p;
    let sa = s.norm();
    let mut ky = Memo::new(|j| exton_kernel(j, y, q).map(pair));
    let mut kx = Memo::new(|j| exton_kernel(j, x, q).map(pair));
    bilateral_sum(
        (0.min(-n), 0.max(-n)),
        window,
        |k| {
            let (a, ea) = ky.get(n + k)?;
            let (b, eb) = kx.get(k)?;
            let sk = s.powi(k as i32);
            Ok((sk * a * b, sk.norm() * (ea * b.norm() + eb * a.norm())))
        },
        |k| sa.powi(k as i32) * exton_kernel_bound(n + k, y, q) * exton_kernel_bound(k, x, q),
    )
}

/// Bilateral sum against the closed form.
pub fn graf_check(p: &GrafParams, window: Window) -> Result<IdentityReport> {
    let lhs = graf_sum(p, window)?;
    let rhs = graf_rhs(p)?;
    Ok(IdentityReport::new(
        "graf",
        p.params(),
        lhs.value,
        rhs.value,
        lhs.points(),
        lhs.tail_bound + lhs.abs_error_bound + rhs.abs_error_bound,
    ))
}

/// The two expressions for the `t^n` coefficient of the generating function
/// of the addition formula, valid for every integer `n` outside the excluded
/// parameter sets (a vanishing factor raises `InadmissibleBranch`).
pub fn graf_forms_check(p: &GrafParams) -> Result<IdentityReport> {
    p.check_sum()?;
    let a = graf_first_form(p.n, p.x, p.y, p.s, p.q)?;
    let b = graf_second_form(p.n, p.x, p.y, p.s, p.q)?;
    Ok(IdentityReport::new(
        "graf_forms",
        p.params(),
        a.value,
        b.value,
        a.terms_used.max(b.terms_used),
        a.abs_error_bound + b.abs_error_bound,
    ))
}

/// `sum_k t^n A_n(z)` (or the dual kernels) against `(z/t;q)_inf/(tz;q)_inf`.
pub fn gen_fn_check(
    z: C64,
    t: C64,
    q: QBase,
    form: KernelForm,
    window: Window,
) -> Result<IdentityReport> {
    if t == c(0.0) || (t * z).norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "needs 0 < |t| < 1/|z|, got |t| = {}, |z| = {}",
            t.norm(),
            z.norm()
        )));
    }
    let num = q_pochhammer_inf(z / t, q);
    let den = q_pochhammer_inf(t * z, q);
    let lhs = num.value / den.value;
    let ta = t.norm();
    let sum = bilateral_sum(
        (0, 0),
        window,
        |n| {
            let v = match form {
                KernelForm::Exton => exton_kernel(n, z, q)?,
                KernelForm::Dual => dual_kernel(n, z, q)?,
            };
            let tn = t.powi(n as i32);
            Ok((tn * v.value, tn.norm() * v.abs_error_bound))
        },
        |n| ta.powi(n as i32) * exton_kernel_bound(n, z, q),
    )?;
    let id = match form {
        KernelForm::Exton => "generating_function",
        KernelForm::Dual => "generating_function_dual",
    };
    Ok(IdentityReport::new(
        id,
        Params::new()
            .complex("z", z)
            .complex("t", t)
            .real("q", q.value()),
        lhs,
        sum.value,
        sum.points(),
        sum.tail_bound
            + sum.abs_error_bound
            + lhs.norm() * (num.relative_error_bound() + den.relative_error_bound()),
    ))
}

/// `sum_n sum_m t^{n-m} A_n(z) A_m(z)` against 1, for `|z| < |t| < 1/|z|`.
///
/// The double sum is absolutely convergent, so it is formed as the product of
/// the two single bilateral sums.
pub fn unit_product_check(z: C64, t: C64, q: QBase, window: Window) -> Result<IdentityReport> {
    let (za, ta) = (z.norm(), t.norm());
    if t == c(0.0) || !(za < ta && ta * za < 1.0) {
        return Err(Error::Domain(format!(
            "needs |z| < |t| < 1/|z|, got |t| = {ta}, |z| = {za}"
        )));
    }
    let mut kernel = Memo::new(|j| exton_kernel(j, z, q).map(pair));
    let mut side = |u: C64| {
        let ua = u.norm();
        bilateral_sum(
            (0, 0),
            window,
            |n| {
                let (v, e) = kernel.get(n)?;
                let un = u.powi(n as i32);
                Ok((un * v, un.norm() * e))
            },
            |n| ua.powi(n as i32) * exton_kernel_bound(n, z, q),
        )
    };
    let a = side(t)?;
    let b = side(t.inv())?;
    let lhs = a.value * b.value;
    let err = (a.tail_bound + a.abs_error_bound) * b.value.norm()
        + (b.tail_bound + b.abs_error_bound) * a.value.norm();
    Ok(IdentityReport::new(
        "unit_product",
        Params::new()
            .complex("z", z)
            .complex("t", t)
            .real("q", q.value()),
        lhs,
        c(1.0),
        a.points() * b.points(),
        err,
    ))
}

/// The symmetric addition formula with its optional branch comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrafSymmetric {
    pub report: IdentityReport,
    /// First against second closed form, when both are admissible and requested.
    pub branch_gap: Option<IdentityReport>,
}

/// `s^{-m} y^{n-m} (s^{-1}xy^{-1},y^2;q)_inf/(sxy,q;q)_inf
/// 2phi1(qsx^{-1}y, sxy; y^2; q, q^{n-m}s^{-1}xy^{-1})`.
fn symmetric_first(n: i64, m: i64, x: C64, y: C64, s: C64, q: QBase) -> Result<SeriesValue> {
    let u = x / (s * y);
    let num = q_pochhammer_inf(u, q).value * q_pochhammer_inf(y * y, q).value;
    let den = q_pochhammer_inf(s * x * y, q).value * qq_inf(q);
    let pre = s.powi(-m as i32) * y.powi((n - m) as i32) * num / den;
    let series = phi21_continued(q.value() * s * y / x, s * x * y, y * y, q, u * q.pow(n - m))?;
    Ok(series.scale(pre, 1e-15))
}

fn symmetric_lhs(p: &GrafParams, window: Window) -> Result<BilateralSum> {
    let GrafParams { x, y, s, n, m, q } = *p;
    let sa = s.norm();
    let mut ky = Memo::new(|j| exton_kernel(j, y, q).map(pair));
    let mut kx = Memo::new(|j| exton_kernel(j, x, q).map(pair));
    bilateral_sum(
        ((-n).min(-m), (-n).max(-m)),
        window,
        |k| {
            let (a, ea) = ky.get(n + k)?;
            let (b, eb) = kx.get(m + k)?;
            let sk = s.powi(k as i32);
            Ok((sk * a * b, sk.norm() * (ea * b.norm() + eb * a.norm())))
        },
        |k| sa.powi(k as i32) * exton_kernel_bound(n + k, y, q) * exton_kernel_bound(m + k, x, q),
    )
}

/// `sum_k s^k D_{n+k}(y) D_{m+k}(x)` with the dual kernels `D`, against one or
/// both closed forms. The kernels are evaluated through their Exton series,
/// which is the better conditioned of the two.
///
/// With `Both`, the report's right side is the admissible form with the
/// smaller `2phi1` argument, and `branch_gap` compares the two forms when
/// both are admissible.
pub fn graf_symmetric(
    p: &GrafParams,
    branch: BranchChoice,
    window: Window,
) -> Result<GrafSymmetric> {
    p.check_sum()?;
    let GrafParams { x, y, s, n, m, q } = *p;
    if x == c(0.0) || y == c(0.0) {
        return Err(Error::Domain("x and y must be nonzero".into()));
    }
    for (name, v) in [("x^2", x * x), ("y^2", y * y)] {
        if let Some(l) = nonpositive_power_index(v, q, ADMISSIBILITY_RTOL) {
            return Err(Error::Domain(format!("{name} equals q^-{l}")));
        }
    }
    let (ok1, ok2) = p.branch_admissible();
    let first = || symmetric_first(n, m, x, y, s, q);
    let second = || symmetric_first(m, n, y, x, s, q);
    let inadmissible = |which: &str| {
        Error::InadmissibleBranch(format!(
            "{which} expression excluded for x = {x}, y = {y}, s = {s}, n - m = {}",
            n - m
        ))
    };
    let (rhs, gap) = match branch {
        BranchChoice::First if ok1 => (first()?, None),
        BranchChoice::First => return Err(inadmissible("first")),
        BranchChoice::Second if ok2 => (second()?, None),
        BranchChoice::Second => return Err(inadmissible("second")),
        BranchChoice::Both => match (ok1, ok2) {
            (true, true) => {
                let (a, b) = (first()?, second()?);
                let gap = IdentityReport::new(
                    "graf_branches",
                    p.params(),
                    a.value,
                    b.value,
                    a.terms_used.max(b.terms_used),
                    a.abs_error_bound + b.abs_error_bound,
                );
                // the smaller argument sits on the first form when n >= m
                (if n >= m { a } else { b }, Some(gap))
            }
            (true, false) => (first()?, None),
            (false, true) => (second()?, None),
            (false, false) => return Err(inadmissible("either")),
        },
    };
    let lhs = symmetric_lhs(p, window)?;
    Ok(GrafSymmetric {
        report: IdentityReport::new(
            "graf_symmetric",
            p.params(),
            lhs.value,
            rhs.value,
            lhs.points(),
            lhs.tail_bound + lhs.abs_error_bound + rhs.abs_error_bound,
        ),
        branch_gap: gap,
    })
}

/// The diagonal case `x = y = z` of the symmetric formula. At `s = 1` the
/// right side is `delta_{nm}` (both closed forms degenerate there).
pub fn poisson_kernel(
    z: C64,
    s: C64,
    n: i64,
    m: i64,
    q: QBase,
    window: Window,
) -> Result<IdentityReport> {
    let p = GrafParams {
        x: z,
        y: z,
        s,
        n,
        m,
        q,
    };
    let mut report = if s == c(1.0) {
        p.check_sum()?;
        if let Some(l) = nonpositive_power_index(z * z, q, ADMISSIBILITY_RTOL) {
            return Err(Error::Domain(format!("z^2 equals q^-{l}")));
        }
        let lhs = symmetric_lhs(&p, window)?;
        IdentityReport::new(
            "poisson_kernel",
            p.params(),
            lhs.value,
            c(if n == m { 1.0 } else { 0.0 }),
            lhs.points(),
            lhs.tail_bound + lhs.abs_error_bound,
        )
    } else {
        graf_symmetric(&p, BranchChoice::Both, window)?.report
    };
    report.identity_id = "poisson_kernel".into();
    Ok(report)
}

/// Smallest real part of the Poisson kernel over `n, m` in `range x range`,
/// for real `z` and `s`; positive whenever `0 < z < 1`, `1 < s < min(1/q, z^-2)`.
pub fn poisson_min_over_grid(
    z: f64,
    s: f64,
    range: (i64, i64),
    q: QBase,
    window: Window,
) -> Result<f64> {
    let mut min = f64::INFINITY;
    for n in range.0..=range.1 {
        for m in range.0..=range.1 {
            let r = poisson_kernel(c(z), c(s), n, m, q, window)?;
            min = min.min(r.lhs[0]);
        }
    }
    Ok(min)
}

/// `(q^{alpha+1-t};q^2)_inf/(q^{alpha+1+t};q^2)_inf` against
/// `sum_n q^{nt} q^n J_alpha(q^n;q^2)`, for `Re t > -alpha - 1`.
pub fn weber_sonine_check(
    alpha: Order,
    t: C64,
    q: QBase,
    window: Window,
) -> Result<IdentityReport> {
    let a = alpha.value();
    if t.re <= -a - 1.0 {
        return Err(Error::Domain(format!(
            "needs Re t > -alpha - 1, got Re t = {}",
            t.re
        )));
    }
    let p = q.squared();
    let lhs = q_pochhammer_inf_ratio(q.powc(c(a + 1.0) - t), q.powc(c(a + 1.0) + t), p)?;
    let decay = q.ln() * t.re;
    let sum = bilateral_sum(
        (0, 0),
        window,
        |n| {
            let v = hankel_kernel(alpha, n, q)?;
            let w = q.powc(t * n as f64);
            Ok((w * v.value, w.norm() * v.abs_error_bound))
        },
        |n| (decay * n as f64).exp() * hankel_kernel_bound(alpha, n, q),
    )?;
    Ok(IdentityReport::new(
        "weber_sonine",
        Params::new()
            .real("alpha", a)
            .complex("t", t)
            .real("q", q.value()),
        lhs,
        sum.value,
        sum.points(),
        sum.tail_bound + sum.abs_error_bound + lhs.norm() * 1e-14,
    ))
}

/// Coefficient `H_n` of `t^n` in the Heine-type expansion:
/// `y^n (s^{-1}xy^{-1},q^{n+1};q)_inf/(q^n s^{-1}xy^{-1},q;q)_inf
/// 2phi1(q^n s^{-1}xy^{-1}, sxy^{-1}; q^{n+1}; q, -y^2)`, in regularised form.
///
/// Negative orders use `H_{-n}(x,y,s) = (-1)^n H_n(x,y,1/s)`, which follows
/// from the Jackson-kernel expansion and avoids the large prefactor of the
/// prematurely terminating form.
pub fn heine_coefficient(n: i64, x: C64, y: C64, s: C64, q: QBase) -> Result<SeriesValue> {
    if s == c(0.0) {
        return Err(Error::Domain("s must be nonzero".into()));
    }
    if n < 0 {
        let h = heine_coefficient(-n, x, y, s.inv(), q)?;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(h.scale(c(sign), 0.0));
    }
    let xs = x / s;
    let sx = s * x;
    let (ya, xsa, sxa) = (y.norm(), xs.norm(), sx.norm());
    regularized_coefficient(
        n,
        |j| y - xs * q.pow(j),
        |j| -(y - xs * q.pow(n + j)) * (y - sx * q.pow(j)),
        |j| (ya + xsa * q.pow(n + j)) * (ya + sxa * q.pow(j)),
        q,
    )
}

/// `max(|s|, 1/|s|)`.
fn spread(s: C64) -> f64 {
    let sa = s.norm();
    sa.max(1.0 / sa)
}

/// Bound `|H_n| <= M |y|^|n|` obtained from the Jackson-kernel expansion of
/// `H_n`; for `y = 0` the single surviving kernel gives the bound directly.
fn heine_coefficient_bound(x: C64, y: C64, s: C64, q: QBase) -> impl Fn(i64) -> f64 {
    let ya = y.norm();
    let sig = spread(s);
    let c1 = 1.0 / (qq_inf(q) * (1.0 - ya * ya));
    let mut m = jackson_j2_bound(0, x, q);
    if ya > 0.0 {
        for k in 1.. {
            let term = 2.0 * (sig / ya).powi(k) * jackson_j2_bound(k as i64, x, q);
            m += term;
            if term < 1e-18 * m || !m.is_finite() {
                break;
            }
        }
    }
    move |n: i64| {
        if ya > 0.0 {
            c1 * m * ya.powi(n.unsigned_abs() as i32)
        } else {
            sig.powi(n.unsigned_abs() as i32) * jackson_j2_bound(n, x, q) / qq_inf(q)
        }
    }
}

/// `(xs^{-1}t, -xst^{-1};q)_inf / (yt, -yt^{-1};q)_inf` against `sum_n t^n H_n`,
/// for `|y| < |t| < 1/|y|`.
pub fn heine_expansion_check(
    x: C64,
    y: C64,
    s: C64,
    t: C64,
    q: QBase,
    window: Window,
) -> Result<IdentityReport> {
    let (ya, ta) = (y.norm(), t.norm());
    if t == c(0.0) || !(ya < ta && ta * ya < 1.0) {
        return Err(Error::Domain(format!(
            "needs |y| < |t| < 1/|y|, got |t| = {ta}, |y| = {ya}"
        )));
    }
    if s == c(0.0) {
        return Err(Error::Domain("s must be nonzero".into()));
    }
    let parts = [
        q_pochhammer_inf(x * t / s, q),
        q_pochhammer_inf(-x * s / t, q),
        q_pochhammer_inf(y * t, q),
        q_pochhammer_inf(-y / t, q),
    ];
    let lhs = parts[0].value * parts[1].value / (parts[2].value * parts[3].value);
    let lhs_rel: f64 = parts.iter().map(|v| v.relative_error_bound()).sum();
    let hb = heine_coefficient_bound(x, y, s, q);
    let sum = bilateral_sum(
        (0, 0),
        window,
        |n| {
            let h = heine_coefficient(n, x, y, s, q)?;
            let tn = t.powi(n as i32);
            Ok((tn * h.value, tn.norm() * h.abs_error_bound))
        },
        |n| ta.powi(n as i32) * hb(n),
    )?;
    Ok(IdentityReport::new(
        "heine_expansion",
        Params::new()
            .complex("x", x)
            .complex("y", y)
            .complex("s", s)
            .complex("t", t)
            .real("q", q.value()),
        lhs,
        sum.value,
        sum.points(),
        sum.tail_bound + sum.abs_error_bound + lhs.norm() * lhs_rel,
    ))
}

/// `H_n(x,y,s)` against `sum_k s^k J1_{k+n}(y) J2_k(x)`, for `|y| < 1`.
pub fn graf_jackson_check(
    x: C64,
    y: C64,
    s: C64,
    n: i64,
    q: QBase,
    window: Window,
) -> Result<IdentityReport> {
    if y.norm() >= 1.0 {
        return Err(Error::Domain(format!("needs |y| < 1, got {}", y.norm())));
    }
    let lhs = heine_coefficient(n, x, y, s, q)?;
    let sa = s.norm();
    let mut j1 = Memo::new(|j| jackson_j1(j, y, q).map(pair));
    let mut j2 = Memo::new(|j| jackson_j2(j, x, q).map(pair));
    let sum = bilateral_sum(
        (0.min(-n), 0.max(-n)),
        window,
        |k| {
            let (a, ea) = j1.get(k + n)?;
            let (b, eb) = j2.get(k)?;
            let sk = s.powi(k as i32);
            Ok((sk * a * b, sk.norm() * (ea * b.norm() + eb * a.norm())))
        },
        |k| sa.powi(k as i32) * jackson_j1_bound(k + n, y, q) * jackson_j2_bound(k, x, q),
    )?;
    Ok(IdentityReport::new(
        "graf_jackson",
        Params::new()
            .complex("x", x)
            .complex("y", y)
            .complex("s", s)
            .int("n", n)
            .real("q", q.value()),
        lhs.value,
        sum.value,
        sum.points(),
        sum.tail_bound + sum.abs_error_bound + lhs.abs_error_bound,
    ))
}

fn require_nonzero(named: &[(&str, C64)]) -> Result<()> {
    match named.iter().find(|(_, v)| *v == c(0.0)) {
        Some((name, _)) => Err(Error::InadmissibleBranch(format!("{name} must be nonzero"))),
        None => Ok(()),
    }
}

fn require_not_nonpositive_power(named: &[(&str, C64)], q: QBase) -> Result<()> {
    for (name, v) in named {
        match nonpositive_power_index(*v, q, ADMISSIBILITY_RTOL) {
            Some(0) => return Err(Error::InadmissibleBranch(format!("{name} = 1"))),
            Some(l) => return Err(Error::InadmissibleBranch(format!("{name} = q^-{l}"))),
            None => {}
        }
    }
    Ok(())
}

fn require_not_power(named: &[(&str, C64)], q: QBase) -> Result<()> {
    for (name, v) in named {
        if let Some(l) = integer_power_index(*v, q, ADMISSIBILITY_RTOL) {
            return Err(Error::InadmissibleBranch(format!("{name} = q^{l}")));
        }
    }
    Ok(())
}

fn inf_product(params: &[C64], q: QBase) -> (C64, f64) {
    params.iter().fold((c(1.0), 0.0), |(p, e), &a| {
        let v = q_pochhammer_inf(a, q);
        (p * v.value, e + v.relative_error_bound())
    })
}

/// `2phi1(a,b;c;q,q^{n+1}/a)` against
/// `(qb/a, c/b;q)_inf/(c, q/a;q)_inf b^{-n} 2phi1(qb/c, b; qb/a; q, q^{-n}c/b)`.
///
/// Both series are continued outside the unit disk where needed.
pub fn b3_transform_check(a: C64, b: C64, cc: C64, n: i64, q: QBase) -> Result<IdentityReport> {
    require_nonzero(&[("a", a), ("b", b), ("c", cc)])?;
    let qv = q.value();
    require_not_nonpositive_power(
        &[
            ("c", cc),
            ("qb/a", qv * b / a),
            ("q/a", qv / a),
            ("q^(n+1)/a", q.pow(n + 1) / a),
            ("q^-n c/b", q.pow(-n) * cc / b),
            ("c/b", cc / b),
        ],
        q,
    )?;
    let lhs = phi21_continued(a, b, cc, q, q.pow(n + 1) / a)?;
    let (num, e1) = inf_product(&[qv * b / a, cc / b], q);
    let (den, e2) = inf_product(&[cc, qv / a], q);
    let series = phi21_continued(qv * b / cc, b, qv * b / a, q, q.pow(-n) * cc / b)?;
    let rhs = series.scale(num / den * b.powi(-n as i32), e1 + e2);
    Ok(IdentityReport::new(
        "b3",
        Params::new()
            .complex("a", a)
            .complex("b", b)
            .complex("c", cc)
            .int("n", n)
            .real("q", qv),
        lhs.value,
        rhs.value,
        lhs.terms_used.max(rhs.terms_used),
        lhs.abs_error_bound + rhs.abs_error_bound,
    ))
}

/// The three-term connection of `2phi1(a,b;c;q,z)` with two series in
/// `cq/(abz)`.
pub fn three_term_b2_check(a: C64, b: C64, cc: C64, z: C64, q: QBase) -> Result<IdentityReport> {
    require_nonzero(&[("a", a), ("b", b), ("c", cc), ("z", z)])?;
    require_not_power(&[("a/b", a / b), ("z", z)], q)?;
    let qv = q.value();
    let w = cc * qv / (a * b * z);
    require_not_nonpositive_power(&[("c", cc), ("cq/(abz)", w)], q)?;
    let lhs = phi21_continued(a, b, cc, q, z)?;
    let (den, ed) = inf_product(&[cc, z, qv / z], q);
    let term = |a: C64, b: C64| -> Result<SeriesValue> {
        let (num, en) = inf_product(&[b, cc / a, a * z, qv / (a * z)], q);
        let bridge = q_pochhammer_inf(b / a, q);
        let series = phi21_continued(a, a * qv / cc, a * qv / b, q, w)?;
        Ok(series.scale(
            num / (den * bridge.value),
            en + ed + bridge.relative_error_bound(),
        ))
    };
    let (t1, t2) = (term(a, b)?, term(b, a)?);
    Ok(IdentityReport::new(
        "b2",
        Params::new()
            .complex("a", a)
            .complex("b", b)
            .complex("c", cc)
            .complex("z", z)
            .real("q", qv),
        lhs.value,
        t1.value + t2.value,
        lhs.terms_used.max(t1.terms_used + t2.terms_used),
        lhs.abs_error_bound + t1.abs_error_bound + t2.abs_error_bound,
    ))
}

/// The q-difference equation
/// `(z-1) u(z) = ((a+b)z - c/q - 1) u(qz) + (c/q - abz) u(q^2 z)`
/// for `u = 2phi1(a,b;c;q,.)`, each value from the power series (`|z| < 1`).
pub fn b1_check(a: C64, b: C64, cc: C64, z: C64, q: QBase) -> Result<IdentityReport> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!("needs |z| < 1, got {}", z.norm())));
    }
    let qv = q.value();
    // near the unit circle the series converges like |z|^k
    let opts = SeriesOptions {
        max_terms: 20_000,
        ..SeriesOptions::default()
    };
    let u = |w: C64| phi_rs(&PhiParams::new(vec![a, b], vec![cc], q, w), opts);
    let (u0, u1, u2) = (u(z)?, u(z * qv)?, u(z * qv * qv)?);
    let cq = cc / qv;
    let c1 = (a + b) * z - cq - 1.0;
    let c2 = cq - a * b * z;
    let lhs = (z - 1.0) * u0.value;
    let rhs = c1 * u1.value + c2 * u2.value;
    Ok(IdentityReport::new(
        "b1",
        Params::new()
            .complex("a", a)
            .complex("b", b)
            .complex("c", cc)
            .complex("z", z)
            .real("q", qv),
        lhs,
        rhs,
        u0.terms_used.max(u1.terms_used).max(u2.terms_used),
        (z - 1.0).norm() * u0.abs_error_bound
            + c1.norm() * u1.abs_error_bound
            + c2.norm() * u2.abs_error_bound,
    ))
}

/// Heine's transformation
/// `2phi1(a,b;c;q,z) = (b,az;q)_inf/(c,z;q)_inf 2phi1(c/b,z;az;q,b)`.
pub fn heine_transform_check(a: C64, b: C64, cc: C64, z: C64, q: QBase) -> Result<IdentityReport> {
    require_nonzero(&[("b", b)])?;
    require_not_nonpositive_power(&[("z", z), ("b", b), ("c", cc), ("az", a * z)], q)?;
    let lhs = phi21_continued(a, b, cc, q, z)?;
    let (num, en) = inf_product(&[b, a * z], q);
    let (den, ed) = inf_product(&[cc, z], q);
    let rhs = phi21_continued(cc / b, z, a * z, q, b)?.scale(num / den, en + ed);
    Ok(IdentityReport::new(
        "heine_transform",
        Params::new()
            .complex("a", a)
            .complex("b", b)
            .complex("c", cc)
            .complex("z", z)
            .real("q", q.value()),
        lhs.value,
        rhs.value,
        lhs.terms_used.max(rhs.terms_used),
        lhs.abs_error_bound + rhs.abs_error_bound,
    ))
}
