//! Output in the three formats. Machine formats keep full float precision;
//! `pretty` rounds to 12 significant digits.

use std::collections::BTreeMap;

use qhankel::transform::QLatticeFunction;
use serde::Serialize;

use crate::config::OutputFormat;
use crate::error::CliError;
use crate::verify::Entry;

/// A single evaluated value.
#[derive(Clone, Debug, Serialize)]
pub struct Evaluated {
    pub function: String,
    pub params: BTreeMap<String, String>,
    pub q: f64,
    pub value: [f64; 2],
    pub abs_error_bound: f64,
    pub terms_used: usize,
}

/// One row of a `table` sweep.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub point: [f64; 2],
    pub value: [f64; 2],
    pub abs_error_bound: f64,
    pub terms_used: usize,
}

/// `x` to 12 significant digits, trailing zeros trimmed.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..12).contains(&mag) {
        let s = format!("{:.*}", (11 - mag).max(0) as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (m, e) = s.split_once('e').expect("exponent form");
        let m = if m.contains('.') {
            m.trim_end_matches('0').trim_end_matches('.')
        } else {
            m
        };
        format!("{m}e{e}")
    }
}

/// Shortest representation that reads back to the same `f64`.
fn num(x: f64) -> String {
    format!("{x:?}")
}

fn pretty_complex(v: [f64; 2]) -> String {
    let [re, im] = v;
    if im == 0.0 {
        sig12(re)
    } else if re == 0.0 {
        format!("{}i", sig12(im))
    } else if im < 0.0 {
        format!("{} - {}i", sig12(re), sig12(-im))
    } else {
        format!("{} + {}i", sig12(re), sig12(im))
    }
}

fn json<T: Serialize + ?Sized>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(qhankel::Error::from)?;
    s.push('\n');
    Ok(s)
}

fn csv_rows(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::from(qhankel::Error::from(e));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn params_text(p: &BTreeMap<String, String>) -> String {
    p.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn evaluated(v: &Evaluated, fmt: OutputFormat) -> Result<String, CliError> {
    match fmt {
        OutputFormat::Json => json(v),
        OutputFormat::Csv => csv_rows(
            &[
                "function",
                "params",
                "q",
                "value_re",
                "value_im",
                "abs_error_bound",
                "terms_used",
            ],
            [vec![
                v.function.clone(),
                params_text(&v.params),
                num(v.q),
                num(v.value[0]),
                num(v.value[1]),
                num(v.abs_error_bound),
                v.terms_used.to_string(),
            ]],
        ),
        OutputFormat::Pretty => Ok(format!(
            "{}({}) with q = {}\n  value        {}\n  error bound  {}\n  terms used   {}\n",
            v.function,
            params_text(&v.params),
            sig12(v.q),
            pretty_complex(v.value),
            sig12(v.abs_error_bound),
            v.terms_used
        )),
    }
}

pub fn table(var: &str, rows: &[Row], fmt: OutputFormat) -> Result<String, CliError> {
    match fmt {
        OutputFormat::Json => json(rows),
        OutputFormat::Csv => csv_rows(
            &[
                &format!("{var}_re"),
                &format!("{var}_im"),
                "value_re",
                "value_im",
                "abs_error_bound",
                "terms_used",
            ],
            rows.iter().map(|r| {
                vec![
                    num(r.point[0]),
                    num(r.point[1]),
                    num(r.value[0]),
                    num(r.value[1]),
                    num(r.abs_error_bound),
                    r.terms_used.to_string(),
                ]
            }),
        ),
        OutputFormat::Pretty => {
            let mut s = format!(
                "{:<24} {:<40} {:<20} {}\n",
                var, "value", "error bound", "terms"
            );
            for r in rows {
                s += &format!(
                    "{:<24} {:<40} {:<20} {}\n",
                    pretty_complex(r.point),
                    pretty_complex(r.value),
                    sig12(r.abs_error_bound),
                    r.terms_used
                );
            }
            Ok(s)
        }
    }
}

pub fn lattice(f: &QLatticeFunction, fmt: OutputFormat) -> Result<String, CliError> {
    match fmt {
        OutputFormat::Json => {
            let mut s = qhankel::io::to_json(f)?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            qhankel::io::write_csv(f, &mut buf)?;
            Ok(String::from_utf8(buf).expect("csv output is utf-8"))
        }
        OutputFormat::Pretty => {
            let mut s = format!("{:>6}  {:<20} {}\n", "k", "q^k", "value");
            for (k, v) in f.iter() {
                s += &format!(
                    "{k:>6}  {:<20} {}\n",
                    sig12(f.q().pow(k)),
                    pretty_complex([v.re, v.im])
                );
            }
            Ok(s)
        }
    }
}

pub fn entries(entries: &[Entry], fmt: OutputFormat) -> Result<String, CliError> {
    match fmt {
        OutputFormat::Json => json(entries),
        OutputFormat::Csv => csv_rows(
            &[
                "status",
                "identity_id",
                "params",
                "lhs_re",
                "lhs_im",
                "rhs_re",
                "rhs_im",
                "abs_residual",
                "rel_residual",
                "window_or_terms",
                "tail_bound",
                "criterion",
                "threshold",
                "reason",
            ],
            entries.iter().map(|e| {
                let text =
                    |p: &qhankel::Params| serde_json::to_string(p).expect("params serialise");
                match e {
                    Entry::Pass(c) | Entry::Fail(c) => {
                        let r = &c.report;
                        let (crit, t) = criterion(c);
                        vec![
                            if matches!(e, Entry::Pass(_)) {
                                "pass"
                            } else {
                                "fail"
                            }
                            .into(),
                            r.identity_id.clone(),
                            text(&r.params),
                            num(r.lhs[0]),
                            num(r.lhs[1]),
                            num(r.rhs[0]),
                            num(r.rhs[1]),
                            num(r.abs_residual),
                            num(r.rel_residual),
                            r.window_or_terms.to_string(),
                            num(r.tail_bound),
                            crit.into(),
                            num(t),
                            String::new(),
                        ]
                    }
                    Entry::Skipped {
                        identity_id,
                        params,
                        reason,
                    } => {
                        let mut row = vec!["skipped".into(), identity_id.clone(), text(params)];
                        row.extend(std::iter::repeat_n(String::new(), 10));
                        row.push(reason.clone());
                        row
                    }
                }
            }),
        ),
        OutputFormat::Pretty => {
            let mut s = String::new();
            for e in entries {
                let line = match e {
                    Entry::Pass(c) | Entry::Fail(c) => {
                        let r = &c.report;
                        let (crit, t) = criterion(c);
                        let measured = match crit {
                            "tolerance" => r.rel_residual,
                            _ => r.abs_residual,
                        };
                        format!(
                            "{:<7} {:<30} {} {} {} ({})  {}",
                            if matches!(e, Entry::Pass(_)) {
                                "PASS"
                            } else {
                                "FAIL"
                            },
                            r.identity_id,
                            sig12(measured),
                            if crit == "decrease" { "<" } else { "<=" },
                            sig12(t),
                            crit,
                            serde_json::to_string(&r.params).expect("params serialise"),
                        )
                    }
                    Entry::Skipped {
                        identity_id,
                        params,
                        reason,
                    } => format!(
                        "{:<7} {:<30} {}  {}",
                        "SKIP",
                        identity_id,
                        reason,
                        serde_json::to_string(params).expect("params serialise")
                    ),
                };
                s += &line;
                s.push('\n');
            }
            Ok(s)
        }
    }
}

fn criterion(c: &crate::verify::Checked) -> (&'static str, f64) {
    use crate::verify::Criterion::*;
    match c.criterion {
        Tolerance(t) => ("tolerance", t),
        Bound(t) => ("bound", t),
        Decrease(t) => ("decrease", t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(0.1234567890123456), "0.123456789012");
        assert_eq!(sig12(-2.5e-9), "-2.5e-9");
        assert_eq!(sig12(123456.0), "123456");
        assert_eq!(pretty_complex([0.5, -0.25]), "0.5 - 0.25i");
    }
}
