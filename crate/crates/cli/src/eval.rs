//! Named library functions callable from the command line.

use qhankel::addition::heine_coefficient;
use qhankel::bessel::{
    dual_kernel, exton_kernel, hahn_exton_j, hankel_kernel, jackson_j1, jackson_j2, q_cos, q_sin,
};
use qhankel::limits::{little_q_jacobi, LittleQJacobiParams};
use qhankel::qseries::{
    e_q, phi11, phi11_regularized, phi21_continued, phi_rs, q_gamma, q_pochhammer,
    q_pochhammer_inf, E_q, PhiParams,
};
use qhankel::{Order, QBase, SeriesOptions, SeriesValue, C64};

use crate::error::CliError;
use crate::params::Params;

type Eval = fn(&Params, QBase) -> Result<SeriesValue, CliError>;

/// Name, parameter synopsis, evaluator.
pub const REGISTRY: &[(&str, &str, Eval)] = &[
    (
        "q_pochhammer",
        "a [n]  ((a;q)_n, or (a;q)_inf without n)",
        |p, q| {
            let a = p.complex("a")?;
            Ok(match p.optional_int("n")? {
                Some(n) if n < 0 => return Err(CliError::Usage("n must be >= 0".into())),
                Some(n) => SeriesValue::exact(q_pochhammer(a, q, n as usize)),
                None => q_pochhammer_inf(a, q),
            })
        },
    ),
    ("phi_rs", "upper=a1,a2,.. lower=b1,.. z", |p, q| {
        let params = PhiParams::new(
            p.complex_list("upper")?,
            p.complex_list("lower")?,
            q,
            p.complex("z")?,
        );
        Ok(phi_rs(&params, SeriesOptions::default())?)
    }),
    ("phi11", "w z  (1phi1(0;w;q,z))", |p, q| {
        Ok(phi11(p.complex("w")?, p.complex("z")?, q)?)
    }),
    (
        "phi11_regularized",
        "w z  ((w;q)_inf 1phi1(0;w;q,z))",
        |p, q| Ok(phi11_regularized(p.complex("w")?, p.complex("z")?, q)?),
    ),
    (
        "phi21",
        "a b c z  (continued outside the unit disk)",
        |p, q| {
            Ok(phi21_continued(
                p.complex("a")?,
                p.complex("b")?,
                p.complex("c")?,
                q,
                p.complex("z")?,
            )?)
        },
    ),
    ("hahn_exton_j", "alpha z", |p, q| {
        Ok(hahn_exton_j(
            Order::new(p.real("alpha")?)?,
            p.complex("z")?,
            q,
        )?)
    }),
    (
        "hankel_kernel",
        "alpha j  (q^{j(alpha+1)} ... on the lattice)",
        |p, q| {
            Ok(hankel_kernel(
                Order::new(p.real("alpha")?)?,
                p.int("j")?,
                q,
            )?)
        },
    ),
    ("exton_kernel", "j z", |p, q| {
        Ok(exton_kernel(p.int("j")?, p.complex("z")?, q)?)
    }),
    ("dual_kernel", "j z", |p, q| {
        Ok(dual_kernel(p.int("j")?, p.complex("z")?, q)?)
    }),
    ("jackson_j1", "n z", |p, q| {
        Ok(jackson_j1(p.int("n")?, p.complex("z")?, q)?)
    }),
    ("jackson_j2", "n z", |p, q| {
        Ok(jackson_j2(p.int("n")?, p.complex("z")?, q)?)
    }),
    ("q_cos", "z  (cos(z;q^2))", |p, q| {
        Ok(q_cos(p.complex("z")?, q)?)
    }),
    ("q_sin", "z  (sin(z;q^2))", |p, q| {
        Ok(q_sin(p.complex("z")?, q)?)
    }),
    ("e_q", "z  (|z| < 1)", |p, q| Ok(e_q(p.complex("z")?, q)?)),
    ("E_q", "z", |p, q| Ok(E_q(p.complex("z")?, q))),
    ("q_gamma", "x  (real)", |p, q| {
        Ok(SeriesValue::exact(C64::new(q_gamma(p.real("x")?, q)?, 0.0)))
    }),
    ("little_q_jacobi", "n x a b", |p, q| {
        let n = p.int("n")?;
        let n =
            u32::try_from(n).map_err(|_| CliError::Usage(format!("n must be >= 0, got {n}")))?;
        let lqj = LittleQJacobiParams::new(p.real("a")?, p.real("b")?, q)?;
        Ok(little_q_jacobi(n, p.complex("x")?, &lqj)?)
    }),
    ("heine_coefficient", "n x y s", |p, q| {
        Ok(heine_coefficient(
            p.int("n")?,
            p.complex("x")?,
            p.complex("y")?,
            p.complex("s")?,
            q,
        )?)
    }),
];

pub fn names() -> String {
    REGISTRY
        .iter()
        .map(|(n, _, _)| *n)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn lookup(name: &str) -> Result<Eval, CliError> {
    REGISTRY
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, _, f)| *f)
        .ok_or_else(|| CliError::UnknownFunction(name.to_string(), names()))
}

/// Evaluates `name`, with an optional `q=` parameter overriding the configured base.
pub fn evaluate(name: &str, params: &Params, q: QBase) -> Result<SeriesValue, CliError> {
    let f = lookup(name)?;
    let q = match params.raw("q") {
        Some(s) => QBase::new(
            s.parse()
                .map_err(|_| CliError::Usage(format!("`q` must be a real number, got `{s}`")))?,
        )?,
        None => q,
    };
    let v = f(params, q)?;
    params.reject_unused()?;
    Ok(v)
}
