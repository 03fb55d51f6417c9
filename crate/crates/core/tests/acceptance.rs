//! End-to-end acceptance run: one PASS/FAIL line per criterion, non-zero
//! exit status if any criterion fails.

use std::f64::consts::{SQRT_2, TAU};
use std::process::ExitCode;
use std::time::Instant;

use qhankel::addition::{
    b1_check, b3_transform_check, gen_fn_check, graf_check, graf_jackson_check, graf_symmetric,
    heine_expansion_check, poisson_kernel, poisson_min_over_grid, three_term_b2_check,
    unit_product_check, weber_sonine_check, BranchChoice, GrafParams, KernelForm,
};
use qhankel::bessel::{q_cos, q_derivative, q_laplacian, q_sin, QDerivativeSpec};
use qhankel::limits::{
    lqj_limit_to_orthogonality, lqj_orthogonality, prop_a1_check, prop_a2_check, trig_limit_check,
    LittleQJacobiParams,
};
use qhankel::qseries::{phi11, phi11_regularized};
use qhankel::transform::{
    biorthogonality_sum, dual_orthogonality_sum, fourier_transform, hankel_forward, hankel_inverse,
    hansen_lommel_sum, selfadjointness_check, FourierKind, QLatticeFunction, TransformConfig,
};
use qhankel::{Error, IdentityReport, Order, QBase, Result, Window, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2024;

fn qb(v: f64) -> QBase {
    QBase::new(v).unwrap()
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

fn win() -> Window {
    Window::auto(1e-14)
}

fn polar(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> C64 {
    C64::from_polar(rng.gen_range(lo..hi), rng.gen_range(0.0..TAU))
}

/// Worst value seen and where.
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Worst {
            value: 0.0,
            at: String::new(),
        }
    }

    fn see(&mut self, v: f64, at: impl FnOnce() -> String) {
        if v.is_nan() || v > self.value {
            self.value = v;
            self.at = at();
        }
    }

    fn report(&mut self, r: &IdentityReport) {
        let v = r.rel_residual;
        self.see(v, || serde_json::to_string(&r.params).unwrap());
    }

    fn within(&self, tol: f64) -> bool {
        self.value.is_finite() && self.value < tol
    }

    fn summary(&self) -> String {
        format!("worst {:.3e} at {}", self.value, self.at)
    }
}

type Outcome = Result<(bool, String)>;

fn symmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = Worst::new();
    for i in 0..200 {
        let q = qb([0.3, 0.5, 0.8][i % 3]);
        let (w, z) = (polar(&mut rng, 0.0, 2.0), polar(&mut rng, 0.0, 2.0));
        let a = phi11_regularized(w, z, q)?.value;
        let b = phi11_regularized(z, w, q)?.value;
        worst.see(rel(a, b), || format!("w={w}, z={z}, q={}", q.value()));
    }
    Ok((worst.within(1e-12), worst.summary()))
}

const ORTH_Z: [C64; 3] = [C64::new(0.2, 0.0), C64::new(0.5, 0.0), C64::new(0.0, 0.8)];

fn orthogonality() -> Outcome {
    let mut worst = Worst::new();
    for &z in &ORTH_Z {
        for q in [0.3, 0.5, 0.8].map(qb) {
            for n in -4..=4 {
                for m in -4..=4 {
                    for r in [
                        hansen_lommel_sum(n, m, z, q, win())?,
                        dual_orthogonality_sum(n, m, z, q, win())?,
                    ] {
                        worst.see(r.abs_residual, || {
                            format!("{} n={n} m={m} z={z} q={}", r.identity_id, q.value())
                        });
                    }
                }
            }
        }
    }
    Ok((worst.within(1e-8), worst.summary()))
}

fn transforms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let q = qb(0.5);
    let (mut trip, mut norm) = (Worst::new(), Worst::new());
    for i in 0..20 {
        let values: Vec<C64> = (0..7)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let f = QLatticeFunction::new(q, -3, values)?;
        let back_window = Window::fixed(-12, 12);
        for alpha in [0.0, 0.5, 2.0] {
            let cfg = TransformConfig::new(alpha, q)?;
            let g = hankel_forward(&f, &cfg)?;
            let back = hankel_inverse(&g, &cfg.with_window(back_window))?;
            trip.see(back.max_abs_diff(&f), || {
                format!("draw {i}, hankel alpha={alpha}")
            });
            let (nf, ng) = (f.weighted_norm_sq(2.0), g.weighted_norm_sq(2.0));
            norm.see((nf - ng).abs() / nf, || {
                format!("draw {i}, hankel alpha={alpha}")
            });
        }
        for kind in [FourierKind::Cos, FourierKind::Sin] {
            let g = fourier_transform(&f, kind, Window::auto(1e-12))?.output;
            let back = fourier_transform(&g, kind, back_window)?.output;
            trip.see(back.max_abs_diff(&f), || format!("draw {i}, {kind:?}"));
            let (nf, ng) = (f.weighted_norm_sq(1.0), g.weighted_norm_sq(1.0));
            norm.see((nf - ng).abs() / nf, || format!("draw {i}, {kind:?}"));
        }
    }
    Ok((
        trip.within(1e-8) && norm.within(1e-8),
        format!("round trip {}; norms {}", trip.summary(), norm.summary()),
    ))
}

fn generating_functions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut worst = Worst::new();
    for i in 0..20 {
        let q = qb([0.3, 0.5, 0.7][i % 3]);
        let z = polar(&mut rng, 0.05, 0.8);
        // |t| geometrically inside the annulus |z| < |t| < 1/|z|
        let za = z.norm();
        let t = C64::from_polar(
            za.powf(1.0 - 2.0 * rng.gen_range(0.2..0.8)),
            rng.gen_range(0.0..TAU),
        );
        for form in [KernelForm::Exton, KernelForm::Dual] {
            worst.report(&gen_fn_check(z, t, q, form, win())?);
        }
        worst.report(&unit_product_check(z, t, q, win())?);
    }
    Ok((worst.within(1e-9), worst.summary()))
}

fn graf() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut first = Worst::new();
    let mut drawn = 0;
    while drawn < 30 {
        let q = qb([0.3, 0.5, 0.7][drawn % 3]);
        let (x, y, s) = (
            polar(&mut rng, 0.05, 0.9),
            polar(&mut rng, 0.05, 0.9),
            polar(&mut rng, 0.6, 1.4),
        );
        if (s * x * y).norm() >= 0.9 {
            continue;
        }
        let n = rng.gen_range(-4..=4);
        first.report(&graf_check(&GrafParams::new(x, y, s, n, q), win())?);
        drawn += 1;
    }

    let (mut sym, mut gap) = (Worst::new(), Worst::new());
    let (mut drawn, mut gaps) = (0, 0);
    while drawn < 30 {
        let q = qb([0.3, 0.5, 0.7][drawn % 3]);
        let (x, y, s) = (
            polar(&mut rng, 0.1, 0.9),
            polar(&mut rng, 0.1, 0.9),
            polar(&mut rng, 0.7, 1.3),
        );
        if (s * x * y).norm() >= 0.9 {
            continue;
        }
        let (n, m) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let p = GrafParams::new(x, y, s, n, q).with_m(m);
        match graf_symmetric(&p, BranchChoice::Both, win()) {
            Ok(g) => {
                sym.report(&g.report);
                if let Some(b) = g.branch_gap {
                    gap.report(&b);
                    gaps += 1;
                }
                drawn += 1;
            }
            Err(Error::InadmissibleBranch(_)) => continue,
            Err(e) => return Err(e),
        }
    }

    // x = y, s = 1 against the orthogonality sums
    let mut diag = Worst::new();
    for &z in &ORTH_Z {
        for q in [0.3, 0.5, 0.8].map(qb) {
            for n in -4..=4 {
                for m in -4..=4 {
                    let a = poisson_kernel(z, c(1.0), n, m, q, win())?;
                    let b = hansen_lommel_sum(n, m, z, q, win())?;
                    diag.see((a.lhs() - b.lhs()).norm(), || {
                        format!("n={n} m={m} z={z} q={}", q.value())
                    });
                }
            }
        }
    }
    Ok((
        first.within(1e-9) && sym.within(1e-9) && gap.within(1e-10) && diag.within(1e-10),
        format!(
            "sum form {}; symmetric form {}; branch gap over {gaps} draws {}; diagonal {}",
            first.summary(),
            sym.summary(),
            gap.summary(),
            diag.summary()
        ),
    ))
}

fn poisson() -> Outcome {
    let q = qb(0.5);
    let mut min = f64::INFINITY;
    let mut at = String::new();
    let mut identity = Worst::new();
    for z in [0.3, 0.5, 0.7] {
        for s in [1.1, 1.4] {
            assert!(s < (1.0 / q.value()).min(1.0 / (z * z)));
            let v = poisson_min_over_grid(z, s, (-3, 3), q, win())?;
            if v < min {
                min = v;
                at = format!("z={z} s={s}");
            }
            for n in -3..=3 {
                for m in -3..=3 {
                    identity.report(&poisson_kernel(c(z), c(s), n, m, q, win())?);
                }
            }
        }
    }
    let mut diag = Worst::new();
    for z in [0.3, 0.5, 0.7] {
        for n in -3..=3 {
            for m in -3..=3 {
                let r = poisson_kernel(c(z), c(1.0), n, m, q, win())?;
                diag.see(r.abs_residual, || format!("z={z} n={n} m={m}"));
            }
        }
    }
    Ok((
        min > 0.0 && diag.within(1e-9) && identity.within(1e-9),
        format!(
            "min kernel {min:.3e} at {at}; closed form {}; s=1 {}",
            identity.summary(),
            diag.summary()
        ),
    ))
}

fn weber_sonine() -> Outcome {
    let mut worst = Worst::new();
    for alpha in [0.0, 0.5, 1.0] {
        for t in [0.0, 0.3, -(alpha + 0.5) / 2.0] {
            for q in [0.4, 0.7].map(qb) {
                worst.report(&weber_sonine_check(Order::new(alpha)?, c(t), q, win())?);
            }
        }
    }
    Ok((worst.within(1e-8), worst.summary()))
}

fn heine() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut worst = Worst::new();
    for i in 0..20 {
        let q = qb([0.3, 0.5, 0.7][i % 3]);
        let (x, y, s) = (
            polar(&mut rng, 0.05, 0.8),
            polar(&mut rng, 0.05, 0.6),
            polar(&mut rng, 0.6, 1.5),
        );
        let t = C64::from_polar(
            y.norm().powf(1.0 - 2.0 * rng.gen_range(0.25..0.75)),
            rng.gen_range(0.0..TAU),
        );
        worst.report(&heine_expansion_check(x, y, s, t, q, win())?);
        let n = rng.gen_range(-4..=4);
        worst.report(&graf_jackson_check(x, y, s, n, q, win())?);
    }
    let mut bi = Worst::new();
    for n in -3..=3 {
        for m in -3..=3 {
            let r = biorthogonality_sum(n, m, c(0.3), qb(0.5), win())?;
            bi.see(r.abs_residual, || format!("n={n} m={m}"));
        }
    }
    Ok((
        worst.within(1e-9) && bi.within(1e-9),
        format!(
            "expansions {}; biorthogonality {}",
            worst.summary(),
            bi.summary()
        ),
    ))
}

fn transformation_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let skip = |e: &Error| {
        matches!(
            e,
            Error::InadmissibleBranch(_) | Error::Domain(_) | Error::LowerParamPole { .. }
        )
    };
    let (mut b2, mut b3) = (Worst::new(), Worst::new());
    let (mut n2, mut n3, mut skipped) = (0, 0, 0);
    while n2 < 20 || n3 < 20 {
        let q = qb([0.3, 0.5, 0.7][(n2 + n3) % 3]);
        let (a, b, cc) = (
            polar(&mut rng, 0.2, 2.0),
            polar(&mut rng, 0.2, 2.0),
            polar(&mut rng, 0.2, 2.0),
        );
        if n2 < 20 {
            let z = polar(&mut rng, 0.2, 3.0);
            match three_term_b2_check(a, b, cc, z, q) {
                Ok(r) => {
                    b2.report(&r);
                    n2 += 1;
                }
                Err(e) if skip(&e) => skipped += 1,
                Err(e) => return Err(e),
            }
        }
        if n3 < 20 {
            let n = rng.gen_range(-3..=3);
            match b3_transform_check(a, b, cc, n, q) {
                Ok(r) => {
                    b3.report(&r);
                    n3 += 1;
                }
                Err(e) if skip(&e) => skipped += 1,
                Err(e) => return Err(e),
            }
        }
    }
    let mut b1 = Worst::new();
    for i in 0..50 {
        let q = qb([0.3, 0.5, 0.7][i % 3]);
        let (a, b, cc) = (
            polar(&mut rng, 0.2, 2.0),
            polar(&mut rng, 0.2, 2.0),
            polar(&mut rng, 0.2, 2.0),
        );
        let z = polar(&mut rng, 0.0, 0.95);
        match b1_check(a, b, cc, z, q) {
            Ok(r) => b1.report(&r),
            Err(e) if skip(&e) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok((
        b2.within(1e-9) && b3.within(1e-9) && b1.within(1e-10),
        format!(
            "three-term {}; transform {}; difference equation {}; {skipped} inadmissible draws skipped",
            b2.summary(),
            b3.summary(),
            b1.summary()
        ),
    ))
}

/// The 5x5 grid of `re, im` in `[-r/sqrt 2, r/sqrt 2]`, inside `|x| <= r`.
fn grid(r: f64) -> Vec<C64> {
    let h = r / SQRT_2;
    let pts: Vec<f64> = (0..5).map(|i| -h + i as f64 * h / 2.0).collect();
    pts.iter()
        .flat_map(|&re| pts.iter().map(move |&im| C64::new(re, im)))
        .collect()
}

type LimitCheck = Box<dyn Fn(C64, QBase) -> Result<IdentityReport>>;

fn limit_transitions() -> Outcome {
    let p = LittleQJacobiParams::new(0.5, 0.3, qb(0.5))?;
    let mut bound_ok = true;
    let mut ratio = Worst::new();
    let mut monotone_ok = true;
    for x in grid(2.0) {
        let mut residual = |nn| -> Result<f64> {
            let r = prop_a1_check(nn, x, &p)?;
            bound_ok &= r.bound_flagged || r.report.abs_residual <= r.proof_bound;
            if r.proof_bound > 0.0 {
                ratio.see(r.report.abs_residual / r.proof_bound, || {
                    format!("N={nn} x={x}")
                });
            }
            Ok(r.report.abs_residual)
        };
        let r: Vec<f64> = [5, 10, 20, 40]
            .into_iter()
            .map(&mut residual)
            .collect::<Result<_>>()?;
        // R_N vanishes identically at x = 0
        monotone_ok &= r[3] < r[2] || (x == c(0.0) && r[3] == 0.0 && r[2] == 0.0);
    }

    let qs = [0.9, 0.99, 0.999].map(qb);
    let mut decreasing = true;
    let mut sups = Vec::new();
    let sup = |f: &dyn Fn(C64, QBase) -> Result<IdentityReport>, q: QBase| -> Result<f64> {
        let mut s = 0f64;
        for z in grid(4.0) {
            s = s.max(f(z, q)?.abs_residual);
        }
        Ok(s)
    };
    let mut checks: Vec<(String, LimitCheck)> = Vec::new();
    for alpha in [0.0, 0.5, 2.0] {
        let order = Order::new(alpha)?;
        checks.push((
            format!("A2 alpha={alpha}"),
            Box::new(move |z, q| prop_a2_check(order, z, q)),
        ));
    }
    checks.push((
        "cos".into(),
        Box::new(|z, q| trig_limit_check(FourierKind::Cos, z, q)),
    ));
    checks.push((
        "sin".into(),
        Box::new(|z, q| trig_limit_check(FourierKind::Sin, z, q)),
    ));
    for (name, f) in &checks {
        let s: Vec<f64> = qs
            .iter()
            .map(|&q| sup(f.as_ref(), q))
            .collect::<Result<_>>()?;
        decreasing &= s.windows(2).all(|w| w[1] < w[0]);
        sups.push(format!("{name}: {:.1e} {:.1e} {:.1e}", s[0], s[1], s[2]));
    }
    Ok((
        bound_ok && monotone_ok && decreasing,
        format!(
            "A1 bound held: {bound_ok} (max residual/bound {:.2e}); R_40 < R_20: {monotone_ok}; sup residuals {}",
            ratio.value,
            sups.join(", ")
        ),
    ))
}

fn q_derivatives() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 11);
    let q = qb(0.5);
    let qv = q.value();
    let spec = QDerivativeSpec { q };
    let cos = |w: C64| {
        q_cos(w, q)
            .map(|v| v.value)
            .unwrap_or(C64::new(f64::NAN, 0.0))
    };
    let sin = |w: C64| {
        q_sin(w, q)
            .map(|v| v.value)
            .unwrap_or(C64::new(f64::NAN, 0.0))
    };
    let mut worst = Worst::new();
    for i in 0..50 {
        let z = if i == 0 {
            c(0.7)
        } else {
            polar(&mut rng, 0.1, 2.0)
        };
        let lam = rng.gen_range(0.2..2.5);
        let dcos = q_derivative(cos, z, spec)? * (1.0 - qv);
        worst.see(rel(dcos, -qv * sin(qv * z)), || format!("D cos at z={z}"));
        let dsin = q_derivative(sin, z, spec)? * (1.0 - qv);
        worst.see(rel(dsin, cos(z)), || format!("D sin at z={z}"));

        let f = |w: C64| cos(lam * w);
        worst.see(
            rel(q_laplacian(f, z, spec)?, -qv * qv * lam * lam * f(z)),
            || format!("cos eigenfunction lambda={lam} z={z}"),
        );
        let g = |w: C64| sin(lam * w);
        worst.see(
            rel(q_laplacian(g, z, spec)?, -qv * lam * lam * g(z)),
            || format!("sin eigenfunction lambda={lam} z={z}"),
        );

        // 1phi1(0;-q^{1/2};q^{1/2}, +-i q^{3/4} lambda z) = cos(lambda z) -+ i q^{1/4} sin(q^{1/2} lambda z)
        let r = q.sqrt();
        for sign in [1.0, -1.0] {
            let h = |w: C64| {
                phi11(
                    c(-r.value()),
                    C64::new(0.0, sign * qv.powf(0.75) * lam) * w,
                    r,
                )
                .map(|v| v.value)
                .unwrap_or(C64::new(f64::NAN, 0.0))
            };
            let closed =
                cos(lam * z) - C64::new(0.0, sign * qv.powf(0.25)) * sin(r.value() * lam * z);
            worst.see(rel(h(z), closed), || {
                format!("combined form lambda={lam} z={z}")
            });
            worst.see(
                rel(q_laplacian(h, z, spec)?, -qv * qv * lam * lam * h(z)),
                || format!("combined eigenfunction lambda={lam} z={z}"),
            );
        }
    }
    for i in 0..20 {
        let draw = |rng: &mut ChaCha8Rng| -> Result<QLatticeFunction> {
            let lo = rng.gen_range(-4..=2);
            let len = rng.gen_range(1..=6);
            let v = (0..len)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            QLatticeFunction::new(q, lo, v)
        };
        let (f, g) = (draw(&mut rng)?, draw(&mut rng)?);
        let r = selfadjointness_check(&f, &g)?;
        worst.see(r.rel_residual, || format!("selfadjointness draw {i}"));
    }
    Ok((worst.within(1e-10), worst.summary()))
}

fn little_q_jacobi() -> Outcome {
    let p = LittleQJacobiParams::new(0.5, 0.3, qb(0.5))?;
    let mut orth = Worst::new();
    for n in 0..=5 {
        for m in 0..=5 {
            orth.report(&lqj_orthogonality(n, m, &p, None)?);
        }
    }
    let mut shrinks = true;
    let mut detail = Vec::new();
    for (n, m) in [(0, 0), (1, 1), (0, 2), (2, 1), (3, 3)] {
        let d20 = lqj_limit_to_orthogonality(20, n, m, &p, win())?.termwise_distance;
        let d40 = lqj_limit_to_orthogonality(40, n, m, &p, win())?.termwise_distance;
        shrinks &= d40 < d20;
        detail.push(format!("({n},{m}): {d20:.1e} -> {d40:.1e}"));
    }
    Ok((
        orth.within(1e-9) && shrinks,
        format!(
            "orthogonality {}; bridge N=20 -> 40 {}",
            orth.summary(),
            detail.join(", ")
        ),
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("1 regularised 1phi1 symmetry", symmetry),
        ("2 Hansen-Lommel and dual orthogonality", orthogonality),
        ("3 transform inversion and Plancherel", transforms),
        (
            "4 generating functions and unit product",
            generating_functions,
        ),
        ("5 q-Graf addition formulas", graf),
        ("6 Poisson kernel", poisson),
        ("7 Weber-Sonine", weber_sonine),
        ("8 Heine expansion and Jackson-Graf", heine),
        (
            "9 three-term relation, transformation, q-difference equation",
            transformation_identities,
        ),
        ("10 limit transitions", limit_transitions),
        ("11 q-derivative structure", q_derivatives),
        (
            "12 little q-Jacobi orthogonality and limit",
            little_q_jacobi,
        ),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let (ok, detail) = match run() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {name} [{:.1}s]: {detail}",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        println!("all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 12 criteria failed");
        ExitCode::FAILURE
    }
}
