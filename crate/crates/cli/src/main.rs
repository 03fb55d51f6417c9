//! `qhankel`: evaluate q-special functions, transform lattice data and run
//! identity-verification sweeps.
//!
//! Exit status: 0 on success, 1 when a verified identity fails, 2 on usage,
//! configuration or evaluation errors.

mod config;
mod error;
mod eval;
mod params;
mod render;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qhankel::transform::{
    fourier_transform, hankel_transform, FourierKind, TransformConfig, Transformed,
};
use qhankel::C64;

use config::{CliConfig, OutputFormat, Overrides};
use error::CliError;
use params::{parse_complex, Params};

#[derive(Parser, Debug)]
#[command(
    name = "qhankel",
    version,
    about = "q-Bessel functions, q-Hankel transforms and identity checks"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Base q in (0, 1).
    #[arg(long, global = true)]
    q: Option<f64>,
    /// Pass threshold for verify; transforms truncate at min(tol, 1e-12).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Most lattice points in any bilateral sum or transform output (>= 16).
    #[arg(long, global = true)]
    max_window: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Seed for the random sweeps.
    #[arg(long, global = true, default_value_t = 20_240_901)]
    seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// JSON file with any of q, tol, max_window, output_format; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a function: `eval q_cos z=0.7`. `eval list` shows the registry.
    Eval {
        function: String,
        /// key=value parameters; complex values as 0.3+0.4i.
        params: Vec<String>,
    },
    /// Transform a lattice function read from JSON or CSV.
    Transform {
        #[arg(value_enum)]
        kind: Kind,
        input: PathBuf,
        /// Order of the Hankel transform (> -1).
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        /// Apply the inverse map (the pairs are self-inverse).
        #[arg(long)]
        inverse: bool,
        /// Also transform back and report the largest deviation from the input.
        #[arg(long)]
        check_roundtrip: bool,
    },
    /// Run an identity-verification suite.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
        /// Comma-separated evaluation points for the grid suites.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        /// Index range -R..=R for the grid suites.
        #[arg(long, default_value_t = 4)]
        range: i64,
        /// Random draws for the sampled suites.
        #[arg(long, default_value_t = 20)]
        draws: usize,
        /// Smaller grids and fewer draws.
        #[arg(long)]
        quick: bool,
        /// Fixed parameters for the b3 suite: --set a=2 --set b=0.3 --set c=0.7 [--set z=0.55].
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Tabulate a function along a line or over the lattice q^k.
    Table {
        function: String,
        params: Vec<String>,
        /// The parameter that varies.
        #[arg(long)]
        var: String,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// Take var = q^k for the integers k from..=to.
        #[arg(long)]
        lattice: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Hankel,
    Cos,
    Sin,
}

/// What a command produced and the status it exits with.
struct Done {
    text: String,
    status: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Library(qhankel::Error::WindowTooSmall { .. }) = e {
                eprintln!("hint: raise --max-window or loosen --tol");
            }
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let g = cli.global;
    let cfg = CliConfig::load(
        g.config.as_deref(),
        &Overrides {
            q: g.q,
            tol: g.tol,
            max_window: g.max_window,
            output_format: g.format,
        },
    )?;
    let done = match cli.command {
        Command::Eval { function, params } => cmd_eval(&function, &params, &cfg)?,
        Command::Transform {
            kind,
            input,
            alpha,
            inverse,
            check_roundtrip,
        } => cmd_transform(kind, &input, alpha, inverse, check_roundtrip, &cfg)?,
        Command::Verify {
            suite,
            z,
            range,
            draws,
            quick,
            set,
        } => {
            if range < 0 {
                return Err(CliError::Usage(format!(
                    "--range must be >= 0, got {range}"
                )));
            }
            let z = match z {
                Some(s) => s.split(',').map(parse_complex).collect::<Result<_, _>>()?,
                None => Vec::new(),
            };
            let fixed = if set.is_empty() {
                None
            } else {
                if suite != verify::Suite::B3 {
                    return Err(CliError::Usage("--set applies to the b3 suite only".into()));
                }
                let p = Params::parse(&set)?;
                let fixed = verify::Fixed {
                    a: p.complex("a")?,
                    b: p.complex("b")?,
                    c: p.complex("c")?,
                    z: p.raw("z").map(parse_complex).transpose()?,
                };
                p.reject_unused()?;
                Some(fixed)
            };
            let sweep = verify::Sweep {
                z,
                range,
                draws,
                seed: g.seed,
                quick,
                fixed,
            };
            cmd_verify(suite, &sweep, &cfg)?
        }
        Command::Table {
            function,
            params,
            var,
            from,
            to,
            steps,
            lattice,
        } => cmd_table(&function, &params, &var, (&from, &to), steps, lattice, &cfg)?,
    };
    match &g.output {
        Some(path) => std::fs::write(path, &done.text)?,
        None => std::io::stdout().write_all(done.text.as_bytes())?,
    }
    Ok(done.status)
}

fn cmd_eval(function: &str, items: &[String], cfg: &CliConfig) -> Result<Done, CliError> {
    if function == "list" {
        let mut text = String::new();
        for (name, synopsis, _) in eval::REGISTRY {
            text += &format!("{name:<20} {synopsis}\n");
        }
        return Ok(Done { text, status: 0 });
    }
    let params = Params::parse(items)?;
    let v = eval::evaluate(function, &params, cfg.base())?;
    let q = params
        .raw("q")
        .and_then(|s| s.parse().ok())
        .unwrap_or(cfg.q);
    let out = render::Evaluated {
        function: function.into(),
        params: params.echo(),
        q,
        value: [v.value.re, v.value.im],
        abs_error_bound: v.abs_error_bound,
        terms_used: v.terms_used,
    };
    Ok(Done {
        text: render::evaluated(&out, cfg.output_format)?,
        status: 0,
    })
}

type TransformFn =
    Box<dyn Fn(&qhankel::transform::QLatticeFunction) -> qhankel::Result<Transformed>>;

fn cmd_transform(
    kind: Kind,
    input: &std::path::Path,
    alpha: f64,
    // every pair is its own inverse, so the direction does not change the sum
    _inverse: bool,
    check_roundtrip: bool,
    cfg: &CliConfig,
) -> Result<Done, CliError> {
    let f = qhankel::io::load(input, Some(cfg.base()))?;
    let window = cfg.transform_window();
    let (apply, weight): (TransformFn, f64) = match kind {
        Kind::Hankel => {
            let tc = TransformConfig::new(alpha, f.q())?.with_window(window);
            (Box::new(move |x| hankel_transform(x, &tc)), 2.0)
        }
        Kind::Cos => (
            Box::new(move |x| fourier_transform(x, FourierKind::Cos, window)),
            1.0,
        ),
        Kind::Sin => (
            Box::new(move |x| fourier_transform(x, FourierKind::Sin, window)),
            1.0,
        ),
    };
    let t = apply(&f)?;
    let g = &t.output;
    eprintln!(
        "plancherel: input {} output {} (weight {}); output k in [{}, {}], truncated norm <= {}",
        render::sig12(f.weighted_norm_sq(weight)),
        render::sig12(g.weighted_norm_sq(weight)),
        if weight == 2.0 { "q^2k" } else { "q^k" },
        g.k_min(),
        g.k_max(),
        render::sig12(t.tail_bound)
    );
    if check_roundtrip {
        let back = apply(g)?.output;
        eprintln!(
            "round trip: max pointwise deviation {}",
            render::sig12(back.max_abs_diff(&f))
        );
    }
    Ok(Done {
        text: render::lattice(g, cfg.output_format)?,
        status: 0,
    })
}

fn cmd_verify(
    suite: verify::Suite,
    sweep: &verify::Sweep,
    cfg: &CliConfig,
) -> Result<Done, CliError> {
    let entries = verify::run(suite, sweep, cfg)?;
    let s = verify::summarize(&entries);
    let worst = match &s.worst_at {
        Some((id, p)) => format!(
            "; worst relative residual {} in {id} {}",
            render::sig12(s.worst_rel_residual),
            serde_json::to_string(p).expect("params serialise")
        ),
        None => String::new(),
    };
    eprintln!(
        "verify: {} checks, {} failed, {} skipped{worst}",
        s.checks, s.failed, s.skipped
    );
    Ok(Done {
        text: render::entries(&entries, cfg.output_format)?,
        status: u8::from(s.failed > 0),
    })
}

fn cmd_table(
    function: &str,
    items: &[String],
    var: &str,
    (from, to): (&str, &str),
    steps: usize,
    lattice: bool,
    cfg: &CliConfig,
) -> Result<Done, CliError> {
    eval::lookup(function)?;
    let base = Params::parse(items)?;
    if base.raw(var).is_some() {
        return Err(CliError::Usage(format!(
            "`{var}` is the table variable; do not also pass it"
        )));
    }
    let points: Vec<C64> = if lattice {
        let parse = |s: &str| {
            s.parse::<i64>()
                .map_err(|_| CliError::Usage(format!("--lattice needs integer bounds, got `{s}`")))
        };
        let (lo, hi) = (parse(from)?, parse(to)?);
        (lo..=hi)
            .map(|k| C64::new(cfg.base().pow(k), 0.0))
            .collect()
    } else {
        if steps < 2 {
            return Err(CliError::Usage("--steps must be at least 2".into()));
        }
        let (a, b) = (parse_complex(from)?, parse_complex(to)?);
        (0..steps)
            .map(|i| a + (b - a) * (i as f64 / (steps - 1) as f64))
            .collect()
    };
    let mut rows = Vec::with_capacity(points.len());
    for p in points {
        let mut items = items.to_vec();
        items.push(format!("{var}={}", format_point(p)));
        let params = Params::parse(&items)?;
        let v = eval::evaluate(function, &params, cfg.base())?;
        rows.push(render::Row {
            point: [p.re, p.im],
            value: [v.value.re, v.value.im],
            abs_error_bound: v.abs_error_bound,
            terms_used: v.terms_used,
        });
    }
    Ok(Done {
        text: render::table(var, &rows, cfg.output_format)?,
        status: 0,
    })
}

/// Lossless literal for a point, readable by `parse_complex`; whole numbers
/// print as integers so integer parameters can be tabulated too.
fn format_point(p: C64) -> String {
    if p.im == 0.0 && p.re.fract() == 0.0 && p.re.abs() < 1e15 {
        format!("{}", p.re as i64)
    } else if p.im == 0.0 {
        format!("{:?}", p.re)
    } else {
        format!("{:?}{:+?}i", p.re, p.im)
    }
}
