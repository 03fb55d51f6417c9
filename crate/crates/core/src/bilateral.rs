//! Windowed summation of bilateral series `sum_{k in Z} t_k` with an
//! analytic bound on the discarded tails.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::{c, C64};

/// Default cap on the number of lattice points in a window.
pub const DEFAULT_MAX_POINTS: usize = 400;

/// How far a bilateral sum (or a transform's output) extends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    /// Grow until the tail bound drops below `tol`, up to `max_points` points.
    Auto { tol: f64, max_points: usize },
    /// Sum exactly over `lo..=hi`.
    Fixed { lo: i64, hi: i64 },
}

impl Window {
    pub fn auto(tol: f64) -> Self {
        Window::Auto {
            tol,
            max_points: DEFAULT_MAX_POINTS,
        }
    }

    pub fn fixed(lo: i64, hi: i64) -> Self {
        Window::Fixed { lo, hi }
    }
}

impl Default for Window {
    fn default() -> Self {
        Window::auto(1e-14)
    }
}

/// Result of a windowed bilateral sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BilateralSum {
    pub value: C64,
    /// Bound on the terms outside `lo..=hi`.
    pub tail_bound: f64,
    /// Accumulated evaluation error of the included terms.
    pub abs_error_bound: f64,
    pub lo: i64,
    pub hi: i64,
}

impl BilateralSum {
    pub fn points(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }
}

/// Geometric bound on `sum_{j>=1} b(edge + j*dir)` from the first two bounds.
///
/// Valid when the ratio `b(k+dir)/b(k)` does not increase moving outward.
pub(crate) fn edge_tail(bound: &impl Fn(i64) -> f64, edge: i64, dir: i64) -> f64 {
    let b1 = bound(edge + dir);
    if b1 == 0.0 {
        return 0.0;
    }
    let b2 = bound(edge + 2 * dir);
    let r = b2 / b1;
    if r < 1.0 {
        b1 / (1.0 - r)
    } else {
        f64::INFINITY
    }
}

/// Sum `term(k)` over a window containing `core` (when automatic).
///
/// `bound(k) >= |term(k)|` must have ratios `bound(k+1)/bound(k)`
/// non-increasing for `k >= core.1` and `bound(k-1)/bound(k)` non-increasing
/// for `k <= core.0`; the tails beyond the window are then geometric.
/// `term` returns the value and its absolute evaluation error.
pub(crate) fn bilateral_sum(
    core: (i64, i64),
    window: Window,
    mut term: impl FnMut(i64) -> Result<(C64, f64)>,
    bound: impl Fn(i64) -> f64,
) -> Result<BilateralSum> {
    let (lo, hi) = match window {
        Window::Fixed { lo, hi } => {
            if lo > hi {
                return Err(Error::Domain(format!("empty window [{lo}, {hi}]")));
            }
            (lo, hi)
        }
        Window::Auto { tol, max_points } => {
            let (mut lo, mut hi) = (core.0.min(core.1), core.0.max(core.1));
            loop {
                let up = edge_tail(&bound, hi, 1);
                let down = edge_tail(&bound, lo, -1);
                if up + down <= tol {
                    break;
                }
                if (hi - lo + 1) as usize >= max_points {
                    return Err(Error::WindowTooSmall {
                        max_points,
                        tol,
                        tail: up + down,
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
    let mut value = c(0.0);
    let mut err = 0.0;
    for k in lo..=hi {
        let (t, e) = term(k)?;
        value += t;
        err += e + f64::EPSILON * t.norm();
    }
    let tail_bound = fixed_tail(core, lo, hi, &bound);
    Ok(BilateralSum {
        value,
        tail_bound,
        abs_error_bound: err,
        lo,
        hi,
    })
}

/// Tail bound for an arbitrary window: core points left out are bounded
/// one by one, beyond the hull of window and core geometrically.
pub(crate) fn fixed_tail(core: (i64, i64), lo: i64, hi: i64, bound: &impl Fn(i64) -> f64) -> f64 {
    let (hull_lo, hull_hi) = (lo.min(core.0), hi.max(core.1));
    let mut t = edge_tail(bound, hull_hi, 1) + edge_tail(bound, hull_lo, -1);
    for k in hull_lo..lo {
        t += bound(k);
    }
    for k in hi + 1..=hull_hi {
        t += bound(k);
    }
    t
}

/// Memoises an integer-indexed fallible function.
pub(crate) struct Memo<F> {
    f: F,
    cache: HashMap<i64, (C64, f64)>,
}

impl<F: FnMut(i64) -> Result<(C64, f64)>> Memo<F> {
    pub(crate) fn new(f: F) -> Self {
        Memo {
            f,
            cache: HashMap::new(),
        }
    }

    pub(crate) fn get(&mut self, k: i64) -> Result<(C64, f64)> {
        if let Some(&v) = self.cache.get(&k) {
            return Ok(v);
        }
        let v = (self.f)(k)?;
        self.cache.insert(k, v);
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sided_geometric() {
        // sum_k 2^{-|k|} = 3
        let f = |k: i64| 0.5f64.powi(k.abs() as i32);
        let s = bilateral_sum((0, 0), Window::auto(1e-14), |k| Ok((c(f(k)), 0.0)), f).unwrap();
        assert!((s.value.re - 3.0).abs() <= s.tail_bound + 1e-15);
        assert!(s.tail_bound <= 1e-14);
        let fixed = bilateral_sum((0, 0), Window::fixed(-5, 5), |k| Ok((c(f(k)), 0.0)), f).unwrap();
        assert!((fixed.value.re - 3.0).abs() <= fixed.tail_bound);
        assert!((fixed.tail_bound - 2.0 * 0.5f64.powi(5)).abs() < 1e-15);
    }

    #[test]
    fn cap_is_enforced() {
        let f = |k: i64| 0.99f64.powi(k.abs() as i32);
        let r = bilateral_sum(
            (0, 0),
            Window::Auto {
                tol: 1e-14,
                max_points: 50,
            },
            |k| Ok((c(f(k)), 0.0)),
            f,
        );
        assert!(matches!(r, Err(Error::WindowTooSmall { .. })));
    }
}
