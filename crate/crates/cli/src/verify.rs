//! Identity-verification sweeps.

use std::f64::consts::TAU;

use qhankel::addition::{
    b1_check, b3_transform_check, graf_check, graf_forms_check, graf_jackson_check, graf_symmetric,
    heine_expansion_check, poisson_kernel, three_term_b2_check, weber_sonine_check, BranchChoice,
    GrafParams,
};
use qhankel::limits::{
    lqj_limit_to_orthogonality, lqj_orthogonality, prop_a1_check, prop_a2_check, trig_limit_check,
    LittleQJacobiParams,
};
use qhankel::transform::{
    biorthogonality_sum, dual_orthogonality_sum, hansen_lommel_sum, FourierKind,
};
use qhankel::{Error, IdentityReport, Order, Params, QBase, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::CliConfig;
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Orthogonality,
    Graf,
    Poisson,
    WeberSonine,
    Heine,
    B3,
    Limits,
    All,
}

/// What a check's residual is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "criterion", content = "threshold", rename_all = "snake_case")]
pub enum Criterion {
    /// `rel_residual <= tol`.
    Tolerance(f64),
    /// `abs_residual <=` an explicit error bound.
    Bound(f64),
    /// `abs_residual <` the value at the previous, smaller `q`.
    Decrease(f64),
}

/// A finished check.
#[derive(Clone, Debug, Serialize)]
pub struct Checked {
    #[serde(flatten)]
    pub report: IdentityReport,
    #[serde(flatten)]
    pub criterion: Criterion,
}

/// One line of a verification report.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Entry {
    Pass(Checked),
    Fail(Checked),
    /// The parameters fall outside the identity's domain of validity.
    Skipped {
        identity_id: String,
        params: Params,
        reason: String,
    },
}

impl Entry {
    pub fn checked(&self) -> Option<&Checked> {
        match self {
            Entry::Pass(c) | Entry::Fail(c) => Some(c),
            Entry::Skipped { .. } => None,
        }
    }
}

/// Sweep settings shared by the suites.
#[derive(Clone, Debug)]
pub struct Sweep {
    /// Points for the grid suites; empty means the suite's own defaults.
    pub z: Vec<C64>,
    pub range: i64,
    pub draws: usize,
    pub seed: u64,
    pub quick: bool,
    /// Explicit `a, b, c` (and optionally `z`) for the b3 suite instead of draws.
    pub fixed: Option<Fixed>,
}

#[derive(Clone, Copy, Debug)]
pub struct Fixed {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub z: Option<C64>,
}

struct Run<'a> {
    cfg: &'a CliConfig,
    out: Vec<Entry>,
}

impl Run<'_> {
    fn q(&self) -> QBase {
        self.cfg.base()
    }

    fn check(&mut self, r: IdentityReport) {
        let ok = r.passes(self.cfg.tol);
        self.push(r, Criterion::Tolerance(self.cfg.tol), ok);
    }

    fn push(&mut self, report: IdentityReport, criterion: Criterion, ok: bool) {
        let c = Checked { report, criterion };
        self.out
            .push(if ok { Entry::Pass(c) } else { Entry::Fail(c) });
    }

    /// Records an inadmissible draw as skipped; other errors abort the run.
    fn attempt(
        &mut self,
        id: &str,
        params: Params,
        r: qhankel::Result<IdentityReport>,
    ) -> Result<bool, CliError> {
        match r {
            Ok(r) => {
                self.check(r);
                Ok(true)
            }
            Err(Error::InadmissibleBranch(reason)) => {
                self.out.push(Entry::Skipped {
                    identity_id: id.into(),
                    params,
                    reason,
                });
                Ok(false)
            }
            Err(e) => Err(e.into()),
        }
    }
}

fn polar(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> C64 {
    C64::from_polar(rng.gen_range(lo..hi), rng.gen_range(0.0..TAU))
}

fn cplx(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn run(suite: Suite, sweep: &Sweep, cfg: &CliConfig) -> Result<Vec<Entry>, CliError> {
    let mut run = Run {
        cfg,
        out: Vec::new(),
    };
    let suites: &[Suite] = match suite {
        Suite::All => &[
            Suite::Orthogonality,
            Suite::Graf,
            Suite::Poisson,
            Suite::WeberSonine,
            Suite::Heine,
            Suite::B3,
            Suite::Limits,
        ],
        _ => std::slice::from_ref(&suite),
    };
    for &s in suites {
        // each suite has its own stream so that `all` repeats the single runs
        let mut rng = ChaCha8Rng::seed_from_u64(sweep.seed.wrapping_add(s as u64));
        match s {
            Suite::Orthogonality => orthogonality(&mut run, sweep)?,
            Suite::Graf => graf(&mut run, sweep, &mut rng)?,
            Suite::Poisson => poisson(&mut run, sweep)?,
            Suite::WeberSonine => weber_sonine(&mut run)?,
            Suite::Heine => heine(&mut run, sweep, &mut rng)?,
            Suite::B3 => transformation_identities(&mut run, sweep, &mut rng)?,
            Suite::Limits => limits(&mut run, sweep)?,
            Suite::All => unreachable!(),
        }
    }
    Ok(run.out)
}

fn range(sweep: &Sweep) -> i64 {
    if sweep.quick {
        sweep.range.min(2)
    } else {
        sweep.range
    }
}

fn draws(sweep: &Sweep) -> usize {
    if sweep.quick {
        sweep.draws.min(5)
    } else {
        sweep.draws
    }
}

fn orthogonality(run: &mut Run, sweep: &Sweep) -> Result<(), CliError> {
    let zs = if sweep.z.is_empty() {
        vec![cplx(0.2), cplx(0.5), C64::new(0.0, 0.8)]
    } else {
        sweep.z.clone()
    };
    let (q, w, r) = (run.q(), run.cfg.sum_window(), range(sweep));
    for &z in &zs {
        for n in -r..=r {
            for m in -r..=r {
                run.check(hansen_lommel_sum(n, m, z, q, w)?);
                run.check(dual_orthogonality_sum(n, m, z, q, w)?);
                run.check(biorthogonality_sum(n, m, z, q, w)?);
            }
        }
    }
    Ok(())
}

fn graf(run: &mut Run, sweep: &Sweep, rng: &mut ChaCha8Rng) -> Result<(), CliError> {
    let (q, w) = (run.q(), run.cfg.sum_window());
    let mut done = 0;
    while done < draws(sweep) {
        let (x, y, s) = (
            polar(rng, 0.1, 0.9),
            polar(rng, 0.1, 0.9),
            polar(rng, 0.7, 1.3),
        );
        if (s * x * y).norm() >= 0.9 {
            continue;
        }
        let (n, m) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let p = GrafParams::new(x, y, s, n, q);
        run.check(graf_check(&p, w)?);
        run.check(graf_forms_check(&p)?);
        let p = p.with_m(m);
        let params = Params::new()
            .complex("x", x)
            .complex("y", y)
            .complex("s", s)
            .int("n", n)
            .int("m", m)
            .real("q", q.value());
        match graf_symmetric(&p, BranchChoice::Both, w) {
            Ok(g) => {
                run.check(g.report);
                if let Some(gap) = g.branch_gap {
                    run.check(gap);
                }
            }
            Err(e) => {
                run.attempt("graf_symmetric", params, Err(e))?;
            }
        }
        done += 1;
    }
    Ok(())
}

fn poisson(run: &mut Run, sweep: &Sweep) -> Result<(), CliError> {
    let (q, w, r) = (run.q(), run.cfg.sum_window(), range(sweep).min(3));
    let zs: Vec<f64> = if sweep.z.is_empty() {
        vec![0.3, 0.5, 0.7]
    } else {
        sweep.z.iter().map(|z| z.re).collect()
    };
    for &z in &zs {
        // positivity needs 1 <= s < min(1/q, z^-2)
        let cap = (1.0 / q.value()).min(1.0 / (z * z));
        for s in [1.0, 1.1, 1.4].into_iter().filter(|&s| s < cap) {
            for n in -r..=r {
                for m in -r..=r {
                    let rep = poisson_kernel(cplx(z), cplx(s), n, m, q, w)?;
                    // off s = 1 the kernel must also be positive
                    let ok = rep.passes(run.cfg.tol) && (s == 1.0 || rep.lhs[0] > 0.0);
                    run.push(rep, Criterion::Tolerance(run.cfg.tol), ok);
                }
            }
        }
    }
    Ok(())
}

fn weber_sonine(run: &mut Run) -> Result<(), CliError> {
    let (q, w) = (run.q(), run.cfg.sum_window());
    for alpha in [0.0, 0.5, 1.0] {
        for t in [0.0, 0.3, -(alpha + 0.5) / 2.0] {
            run.check(weber_sonine_check(Order::new(alpha)?, cplx(t), q, w)?);
        }
    }
    Ok(())
}

fn heine(run: &mut Run, sweep: &Sweep, rng: &mut ChaCha8Rng) -> Result<(), CliError> {
    let (q, w) = (run.q(), run.cfg.sum_window());
    for _ in 0..draws(sweep) {
        let (x, y, s) = (
            polar(rng, 0.05, 0.8),
            polar(rng, 0.05, 0.6),
            polar(rng, 0.6, 1.5),
        );
        let t = C64::from_polar(
            y.norm().powf(1.0 - 2.0 * rng.gen_range(0.25..0.75)),
            rng.gen_range(0.0..TAU),
        );
        run.check(heine_expansion_check(x, y, s, t, q, w)?);
        run.check(graf_jackson_check(x, y, s, rng.gen_range(-4..=4), q, w)?);
    }
    Ok(())
}

fn transformation_identities(
    run: &mut Run,
    sweep: &Sweep,
    rng: &mut ChaCha8Rng,
) -> Result<(), CliError> {
    let q = run.q();
    if let Some(Fixed { a, b, c: cc, z }) = sweep.fixed {
        let base = Params::new()
            .complex("a", a)
            .complex("b", b)
            .complex("c", cc)
            .real("q", q.value());
        let r = range(sweep);
        for n in -r..=r {
            run.attempt(
                "b3",
                base.clone().int("n", n),
                b3_transform_check(a, b, cc, n, q),
            )?;
        }
        if let Some(z) = z {
            run.attempt(
                "b2",
                base.clone().complex("z", z),
                three_term_b2_check(a, b, cc, z, q),
            )?;
            if z.norm() < 1.0 {
                run.attempt("b1", base.complex("z", z), b1_check(a, b, cc, z, q))?;
            }
        }
        return Ok(());
    }
    for _ in 0..draws(sweep) {
        let (a, b, cc) = (
            polar(rng, 0.2, 2.0),
            polar(rng, 0.2, 2.0),
            polar(rng, 0.2, 2.0),
        );
        let n = rng.gen_range(-3..=3);
        let z = polar(rng, 0.2, 3.0);
        let base = Params::new()
            .complex("a", a)
            .complex("b", b)
            .complex("c", cc)
            .real("q", q.value());
        run.attempt(
            "b3",
            base.clone().int("n", n),
            b3_transform_check(a, b, cc, n, q),
        )?;
        run.attempt(
            "b2",
            base.clone().complex("z", z),
            three_term_b2_check(a, b, cc, z, q),
        )?;
        let z = polar(rng, 0.0, 0.95);
        run.attempt("b1", base.complex("z", z), b1_check(a, b, cc, z, q))?;
    }
    Ok(())
}

/// The 5x5 grid of `re, im` in `[-r/sqrt 2, r/sqrt 2]`.
fn grid(r: f64) -> Vec<C64> {
    let h = r / std::f64::consts::SQRT_2;
    let pts: Vec<f64> = (0..5).map(|i| -h + i as f64 * h / 2.0).collect();
    pts.iter()
        .flat_map(|&re| pts.iter().map(move |&im| C64::new(re, im)))
        .collect()
}

type LimitFamily = Box<dyn Fn(C64, QBase) -> qhankel::Result<IdentityReport>>;

/// Little q-Jacobi orthogonality, the explicit A.1 error bound, and the
/// q -> 1 limits, where each reported residual must beat the one at the
/// previous q.
fn limits(run: &mut Run, sweep: &Sweep) -> Result<(), CliError> {
    let p = LittleQJacobiParams::new(0.5, 0.3, run.q())?;
    let r = range(sweep).clamp(0, 5) as u32;
    for n in 0..=r {
        for m in 0..=r {
            run.check(lqj_orthogonality(n, m, &p, None)?);
        }
    }
    for x in grid(2.0) {
        for big_n in [5, 10, 20, 40] {
            let a1 = prop_a1_check(big_n, x, &p)?;
            let ok = a1.bound_flagged || a1.report.abs_residual <= a1.proof_bound;
            run.push(a1.report, Criterion::Bound(a1.proof_bound), ok);
        }
    }
    for (n, m) in [(0, 0), (1, 1), (0, 2)] {
        let d20 = lqj_limit_to_orthogonality(20, n, m, &p, run.cfg.sum_window())?;
        let d40 = lqj_limit_to_orthogonality(40, n, m, &p, run.cfg.sum_window())?;
        let ok = d40.termwise_distance < d20.termwise_distance;
        run.push(d40.report, Criterion::Decrease(d20.termwise_distance), ok);
    }

    let qs = [0.9, 0.99, 0.999].map(|v| QBase::new(v).expect("in range"));
    let mut families: Vec<LimitFamily> = Vec::new();
    for alpha in [0.0, 0.5, 2.0] {
        let order = Order::new(alpha)?;
        families.push(Box::new(move |z, q| prop_a2_check(order, z, q)));
    }
    families.push(Box::new(|z, q| trig_limit_check(FourierKind::Cos, z, q)));
    families.push(Box::new(|z, q| trig_limit_check(FourierKind::Sin, z, q)));
    for f in &families {
        let mut previous = f64::INFINITY;
        for &q in &qs {
            // worst point of the grid at this q
            let mut worst: Option<IdentityReport> = None;
            for z in grid(4.0) {
                let rep = f(z, q)?;
                if worst
                    .as_ref()
                    .is_none_or(|w| rep.abs_residual > w.abs_residual)
                {
                    worst = Some(rep);
                }
            }
            let worst = worst.expect("grid is not empty");
            let ok = worst.abs_residual < previous;
            let criterion = Criterion::Decrease(previous);
            previous = worst.abs_residual;
            run.push(worst, criterion, ok);
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Over the checks judged by tolerance.
    pub worst_rel_residual: f64,
    pub worst_at: Option<(String, Params)>,
}

pub fn summarize(entries: &[Entry]) -> Summary {
    let mut s = Summary {
        checks: entries.len(),
        failed: 0,
        skipped: 0,
        worst_rel_residual: 0.0,
        worst_at: None,
    };
    for e in entries {
        match e {
            Entry::Fail(_) => s.failed += 1,
            Entry::Skipped { .. } => s.skipped += 1,
            Entry::Pass(_) => {}
        }
        if let Some(Checked {
            report: r,
            criterion: Criterion::Tolerance(_),
        }) = e.checked()
        {
            if s.worst_at.is_none() || r.rel_residual > s.worst_rel_residual {
                s.worst_rel_residual = r.rel_residual;
                s.worst_at = Some((r.identity_id.clone(), r.params.clone()));
            }
        }
    }
    s
}
