//! Functions on the lattice `{q^k}`, the q-integral, the q-Hankel and
//! q-Fourier-cosine/sine transform pairs, and the bilateral orthogonality sums.

use serde::{Deserialize, Serialize};

use crate::bessel::{
    dual_kernel, exton_kernel, exton_kernel_bound, hankel_kernel, hankel_kernel_bound, jackson_j1,
    jackson_j1_bound, jackson_j2, jackson_j2_bound, Order,
};
use crate::bilateral::{bilateral_sum, edge_tail, BilateralSum, Memo, Window};
use crate::error::{Error, Result};
use crate::qseries::{c, QBase, C64};
use crate::report::{IdentityReport, Params};

/// A finitely supported function `k -> f(q^k)`, stored densely on
/// `k_min..=k_max`; zero outside.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct QLatticeFunction {
    q: QBase,
    k_min: i64,
    values: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    q: QBase,
    k_min: i64,
    values: Vec<[f64; 2]>,
}

impl TryFrom<LatticeRepr> for QLatticeFunction {
    type Error = Error;
    fn try_from(r: LatticeRepr) -> Result<Self> {
        QLatticeFunction::new(
            r.q,
            r.k_min,
            r.values.iter().map(|v| C64::new(v[0], v[1])).collect(),
        )
    }
}

impl From<QLatticeFunction> for LatticeRepr {
    fn from(f: QLatticeFunction) -> Self {
        LatticeRepr {
            q: f.q,
            k_min: f.k_min,
            values: f.values.iter().map(|v| [v.re, v.im]).collect(),
        }
    }
}

impl QLatticeFunction {
    pub fn new(q: QBase, k_min: i64, values: Vec<C64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain(
                "lattice function needs at least one value".into(),
            ));
        }
        if values
            .iter()
            .any(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::Domain(
                "lattice function values must be finite".into(),
            ));
        }
        Ok(QLatticeFunction { q, k_min, values })
    }

    pub fn zeros(q: QBase, k_min: i64, k_max: i64) -> Self {
        let len = (k_max - k_min + 1).max(1) as usize;
        QLatticeFunction {
            q,
            k_min,
            values: vec![c(0.0); len],
        }
    }

    /// The function equal to 1 at `q^k` and 0 elsewhere.
    pub fn indicator(q: QBase, k: i64) -> Self {
        QLatticeFunction {
            q,
            k_min: k,
            values: vec![c(1.0)],
        }
    }

    pub fn from_fn(q: QBase, k_min: i64, k_max: i64, f: impl Fn(i64) -> C64) -> Result<Self> {
        QLatticeFunction::new(q, k_min, (k_min..=k_max).map(f).collect())
    }

    pub fn q(&self) -> QBase {
        self.q
    }

    pub fn k_min(&self) -> i64 {
        self.k_min
    }

    pub fn k_max(&self) -> i64 {
        self.k_min + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// `f(q^k)`, exactly zero outside the stored window.
    pub fn get(&self, k: i64) -> C64 {
        if k < self.k_min || k > self.k_max() {
            return c(0.0);
        }
        self.values[(k - self.k_min) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.k_min + i as i64, v))
    }

    /// `sum_k q^{weight k} |f(q^k)|^2`.
    pub fn weighted_norm_sq(&self, weight: f64) -> f64 {
        self.iter()
            .map(|(k, v)| (weight * k as f64 * self.q.ln()).exp() * v.norm_sqr())
            .sum()
    }

    /// Largest `|f(q^k) - g(q^k)|` over the union of both windows.
    pub fn max_abs_diff(&self, other: &QLatticeFunction) -> f64 {
        let lo = self.k_min.min(other.k_min);
        let hi = self.k_max().max(other.k_max());
        (lo..=hi)
            .map(|k| (self.get(k) - other.get(k)).norm())
            .fold(0.0, f64::max)
    }
}

/// `int_0^inf h d_q z = (1-q) sum_j h(q^j) q^j`.
pub fn q_integral(f: &QLatticeFunction) -> C64 {
    let q = f.q;
    f.iter().map(|(k, v)| v * q.pow(k)).sum::<C64>() * (1.0 - q.value())
}

/// Order, base and output window of a q-Hankel transform.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformConfig {
    pub alpha: Order,
    pub q: QBase,
    /// `Auto { tol, .. }` bounds the weighted l2 norm of the discarded output.
    pub output_window: Window,
}

impl TransformConfig {
    pub fn new(alpha: f64, q: QBase) -> Result<Self> {
        Ok(TransformConfig {
            alpha: Order::for_transform(alpha)?,
            q,
            output_window: Window::auto(1e-12),
        })
    }

    pub fn with_window(mut self, window: Window) -> Self {
        self.output_window = window;
        self
    }
}

/// A transformed lattice function and a bound on the weighted l2 norm of
/// the part of the output that lies outside its window.
#[derive(Clone, Debug, PartialEq)]
pub struct Transformed {
    pub output: QLatticeFunction,
    pub tail_bound: f64,
}

/// `G_n = sum_k K(k+n) c_k` with `c_k = q^{s k} f(q^k)` and
/// `g(q^n) = q^{-s n} G_n`; `K` symmetric and orthogonal, so applying the
/// map twice is the identity.
fn kernel_transform(
    f: &QLatticeFunction,
    q: QBase,
    alpha: Order,
    weight: f64,
    window: Window,
) -> Result<Transformed> {
    if f.q != q {
        return Err(Error::Domain(format!(
            "lattice function has base {} but the transform uses {}",
            f.q, q
        )));
    }
    let (a, b) = (f.k_min, f.k_max());
    let coeffs: Vec<C64> = f
        .iter()
        .map(|(k, v)| v * (weight * k as f64 * q.ln()).exp())
        .collect();
    let mags: Vec<f64> = coeffs.iter().map(|v| v.norm()).collect();
    // beta_n >= |G_n|; beta_n^2 has the outward-ratio property of the
    // kernel bound once every k + n has the same sign.
    let beta_sq = |n: i64| -> f64 {
        let s: f64 = mags
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0.0)
            .map(|(i, &m)| m * hankel_kernel_bound(alpha, a + i as i64 + n, q))
            .sum();
        s * s
    };
    let core = (-b, -a);
    let (lo, hi) = match window {
        Window::Fixed { lo, hi } => {
            if lo > hi {
                return Err(Error::Domain(format!("empty window [{lo}, {hi}]")));
            }
            (lo, hi)
        }
        Window::Auto { tol, max_points } => {
            let (mut lo, mut hi) = core;
            loop {
                let up = edge_tail(&beta_sq, hi, 1);
                let down = edge_tail(&beta_sq, lo, -1);
                if (up + down).sqrt() <= tol {
                    break;
                }
                if (hi - lo + 1) as usize >= max_points {
                    return Err(Error::WindowTooSmall {
                        max_points,
                        tol,
                        tail: (up + down).sqrt(),
                    });
                }
                if up >= down {
                    hi += 1;
                } else {
                    lo -= 1;
                }
            }
            (lo, hi)
        }
    };
    let tail_bound = crate::bilateral::fixed_tail(core, lo, hi, &beta_sq).sqrt();
    let kernel: Vec<C64> = (a + lo..=b + hi)
        .map(|j| hankel_kernel(alpha, j, q).map(|v| v.value))
        .collect::<Result<_>>()?;
    let values = (lo..=hi)
        .map(|n| {
            let g: C64 = coeffs
                .iter()
                .enumerate()
                .map(|(i, &ck)| kernel[(i as i64 + n - lo) as usize] * ck)
                .sum();
            g * (-weight * n as f64 * q.ln()).exp()
        })
        .collect();
    Ok(Transformed {
        output: QLatticeFunction::new(q, lo, values)?,
        tail_bound,
    })
}

/// `g(q^n) = sum_k q^{2k} J_alpha(q^{k+n};q^2) f(q^k)`, with the output
/// window and tail bound reported.
pub fn hankel_transform(f: &QLatticeFunction, cfg: &TransformConfig) -> Result<Transformed> {
    kernel_transform(f, cfg.q, cfg.alpha, 1.0, cfg.output_window)
}

/// The q-Hankel transform `f -> g`.
pub fn hankel_forward(f: &QLatticeFunction, cfg: &TransformConfig) -> Result<QLatticeFunction> {
    hankel_transform(f, cfg).map(|t| t.output)
}

/// The inverse `g -> f`; the pair is symmetric, so this is the same sum with
/// the roles of `n` and `k` exchanged.
pub fn hankel_inverse(g: &QLatticeFunction, cfg: &TransformConfig) -> Result<QLatticeFunction> {
    hankel_transform(g, cfg).map(|t| t.output)
}

/// Which q-Fourier pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FourierKind {
    Cos,
    Sin,
}

/// `g(q^n) = (q;q^2)_inf/(q^2;q^2)_inf sum_k q^k {cos|sin}(q^{k+n};q^2) f(q^k)`.
/// The map is its own inverse and preserves `sum_k q^k |f(q^k)|^2`.
pub fn fourier_transform(
    f: &QLatticeFunction,
    kind: FourierKind,
    window: Window,
) -> Result<Transformed> {
    let alpha = match kind {
        FourierKind::Cos => Order::new(-0.5)?,
        FourierKind::Sin => Order::new(0.5)?,
    };
    kernel_transform(f, f.q, alpha, 0.5, window)
}

pub fn fourier_cos(f: &QLatticeFunction, window: Window) -> Result<QLatticeFunction> {
    fourier_transform(f, FourierKind::Cos, window).map(|t| t.output)
}

pub fn fourier_sin(f: &QLatticeFunction, window: Window) -> Result<QLatticeFunction> {
    fourier_transform(f, FourierKind::Sin, window).map(|t| t.output)
}

fn check_unit_disk(z: C64) -> Result<()> {
    if z.norm() >= 1.0 {
        Err(Error::Domain(format!(
            "needs |z| < 1, got |z| = {}",
            z.norm()
        )))
    } else {
        Ok(())
    }
}

fn delta(n: i64, m: i64) -> C64 {
    c(if n == m { 1.0 } else { 0.0 })
}

fn pair_sum(
    n: i64,
    m: i64,
    window: Window,
    first: impl FnMut(i64) -> Result<(C64, f64)>,
    second: impl FnMut(i64) -> Result<(C64, f64)>,
    bound: impl Fn(i64) -> f64,
) -> Result<BilateralSum> {
    let core = (-n.max(m), -n.min(m));
    let mut memo = Memo::new(first);
    let mut memo2 = Memo::new(second);
    bilateral_sum(
        core,
        window,
        |k| {
            let (a, ea) = memo.get(k + n)?;
            let (b, eb) = memo2.get(k + m)?;
            Ok((a * b, ea * b.norm() + eb * a.norm()))
        },
        bound,
    )
}

fn orth_report(id: &str, n: i64, m: i64, z: C64, q: QBase, s: BilateralSum) -> IdentityReport {
    IdentityReport::new(
        id,
        Params::new()
            .int("n", n)
            .int("m", m)
            .complex("z", z)
            .real("q", q.value()),
        s.value,
        delta(n, m),
        s.points(),
        s.tail_bound + s.abs_error_bound,
    )
}

/// `sum_k A_{k+n}(z) A_{k+m}(z)` against `delta_{nm}`, where
/// `A_j(z) = z^j (q^{j+1};q)_inf/(q;q)_inf 1phi1(0;q^{j+1};q,z^2)`.
pub fn hansen_lommel_sum(
    n: i64,
    m: i64,
    z: C64,
    q: QBase,
    window: Window,
) -> Result<IdentityReport> {
    check_unit_disk(z)?;
    let kernel = |j| exton_kernel(j, z, q).map(|v| (v.value, v.abs_error_bound));
    let s = pair_sum(n, m, window, kernel, kernel, |k| {
        exton_kernel_bound(k + n, z, q) * exton_kernel_bound(k + m, z, q)
    })?;
    Ok(orth_report("hansen_lommel", n, m, z, q, s))
}

/// The dual form with kernels `z^j (z^2;q)_inf/(q;q)_inf 1phi1(0;z^2;q,q^{j+1})`.
pub fn dual_orthogonality_sum(
    n: i64,
    m: i64,
    z: C64,
    q: QBase,
    window: Window,
) -> Result<IdentityReport> {
    check_unit_disk(z)?;
    let kernel = |j| dual_kernel(j, z, q).map(|v| (v.value, v.abs_error_bound));
    let s = pair_sum(n, m, window, kernel, kernel, |k| {
        exton_kernel_bound(k + n, z, q) * exton_kernel_bound(k + m, z, q)
    })?;
    Ok(orth_report("dual_orthogonality", n, m, z, q, s))
}

/// `sum_k J1_{k+n}(z) J2_{k+m}(z)` against `delta_{nm}` (Jackson/Ismail kernels).
pub fn biorthogonality_sum(
    n: i64,
    m: i64,
    z: C64,
    q: QBase,
    window: Window,
) -> Result<IdentityReport> {
    check_unit_disk(z)?;
    let s = pair_sum(
        n,
        m,
        window,
        |j| jackson_j1(j, z, q).map(|v| (v.value, v.abs_error_bound)),
        |j| jackson_j2(j, z, q).map(|v| (v.value, v.abs_error_bound)),
        |k| jackson_j1_bound(k + n, z, q) * jackson_j2_bound(k + m, z, q),
    )?;
    Ok(orth_report("biorthogonality", n, m, z, q, s))
}

/// `(D_q^2 f)(q^{k-1}) = q^{1-2k} (q f_{k-1} - (1+q) f_k + f_{k+1}) / (1-q)^2`
/// on `k_min-1..=k_max+1`.
pub fn q_laplacian_lattice(f: &QLatticeFunction) -> QLatticeFunction {
    let q = f.q;
    let qv = q.value();
    let scale = 1.0 / ((1.0 - qv) * (1.0 - qv));
    let values = (f.k_min - 1..=f.k_max() + 1)
        .map(|k| {
            let stencil = qv * f.get(k - 1) - (1.0 + qv) * f.get(k) + f.get(k + 1);
            stencil * ((1 - 2 * k) as f64 * q.ln()).exp() * scale
        })
        .collect();
    QLatticeFunction {
        q,
        k_min: f.k_min - 1,
        values,
    }
}

/// Both sides of `sum_k q^k (D_q^2 f)(q^{k-1}) g(q^k) = sum_k q^k f(q^k) (D_q^2 g)(q^{k-1})`.
pub fn selfadjointness_check(f: &QLatticeFunction, g: &QLatticeFunction) -> Result<IdentityReport> {
    if f.q != g.q {
        return Err(Error::Domain("lattice functions on different bases".into()));
    }
    let q = f.q;
    let (lf, lg) = (q_laplacian_lattice(f), q_laplacian_lattice(g));
    let lhs: C64 = lf.iter().map(|(k, v)| v * g.get(k) * q.pow(k)).sum();
    let rhs: C64 = lg.iter().map(|(k, v)| v * f.get(k) * q.pow(k)).sum();
    let lo = f.k_min.min(g.k_min) - 1;
    let hi = f.k_max().max(g.k_max()) + 1;
    Ok(IdentityReport::new(
        "selfadjointness",
        Params::new().real("q", q.value()),
        lhs,
        rhs,
        (hi - lo + 1) as usize,
        0.0,
    ))
}
