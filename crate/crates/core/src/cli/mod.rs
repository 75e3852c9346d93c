//! Command-line front end.
//!
//! Every subcommand prints one JSON report (or CSV for `plot` and, on request,
//! `envelope`) to standard output or `--out`. Exit status: 0 when the checked
//! statement holds or a separator exists, 1 when it fails (the report carries
//! the witness), 2 for usage and input errors.

mod source;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::functions::{merged_grid, IntervalFunction, SampledFunction, DEFAULT_EPS};
use crate::inequalities::{
    lemma5_check, lemma5_check_with_lambdas, popoviciu_check, popoviciu_inclusion_check,
    popoviciu_inclusion_scan, popoviciu_scan, prop3_check, prop3_scan, prop3_setvalued_observe,
    prop6_check, prop7_check, Direction, Lemma5Input, DEFAULT_T_COUNT,
};
use crate::sandwich::{
    check_condition_iii, check_condition_iii_setvalued, convex_concave_interval_separators,
    convex_concave_separators, find_affine_interval_separator, find_affine_separator,
};

pub use source::{load, Source};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON input: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lib(#[from] crate::Error),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser, Debug)]
#[command(
    name = "convex-sandwich",
    version,
    about = "Affine and convex separators, envelopes and Popoviciu-type inequality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Absolute tolerance for every comparison.
    #[arg(long, global = true, default_value_t = DEFAULT_EPS)]
    eps: f64,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format; csv is available for `plot` and `envelope`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cross condition, affine separator and envelope separators for f ≤ g
    /// (or F ⊃ G with --set-valued).
    Sandwich(SandwichArgs),
    /// Test a shape property of a sampled function.
    Check(CheckArgs),
    /// Lower convex or upper concave envelope.
    Envelope(EnvelopeArgs),
    /// Popoviciu's inequality at one triple, or over all refined triples.
    Popoviciu(TripleArgs),
    /// The monotone-difference inequality for a pair (φ, ψ).
    Prop3(Prop3Args),
    /// Convex-combination bound by the endpoint values.
    Lemma5(Lemma5Args),
    /// Two-sided bound around Popoviciu's middle term.
    Prop6(Prop6Args),
    /// Set-valued convex-combination inclusion.
    Prop7(Prop7Args),
    /// Inclusion form of Popoviciu's inequality for interval-valued F.
    PopoviciuSetvalued(TripleSetArgs),
    /// CSV of every input function on the merged breakpoint grid.
    Plot(PlotArgs),
}

#[derive(Args, Debug)]
struct SandwichArgs {
    /// Lower function (real case).
    #[arg(long)]
    f: Option<String>,
    /// Upper function (real case).
    #[arg(long)]
    g: Option<String>,
    /// Outer interval-valued function.
    #[arg(long = "F")]
    big_f: Option<String>,
    /// Inner interval-valued function.
    #[arg(long = "G")]
    big_g: Option<String>,
    #[arg(long)]
    set_valued: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Property {
    Convex,
    Concave,
    Affine,
    Increasing,
    Decreasing,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(value_enum)]
    property: Property,
    #[arg(long)]
    f: Option<String>,
    /// Interval-valued input (convex/concave only).
    #[arg(long = "F")]
    big_f: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnvelopeKind {
    LowerConvex,
    UpperConcave,
}

#[derive(Args, Debug)]
struct EnvelopeArgs {
    #[arg(long)]
    f: String,
    #[arg(long, value_enum, default_value = "lower-convex")]
    kind: EnvelopeKind,
}

#[derive(Args, Debug)]
struct Triple {
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    y: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    z: Option<f64>,
    /// Enumerate all triples of the midpoint-refined grid instead.
    #[arg(long)]
    scan: bool,
}

impl Triple {
    fn get(&self) -> Result<(f64, f64, f64), CliError> {
        match (self.x, self.y, self.z) {
            (Some(x), Some(y), Some(z)) => Ok((x, y, z)),
            _ => Err(usage("pass --x, --y and --z, or --scan")),
        }
    }
}

#[derive(Args, Debug)]
struct TripleArgs {
    #[arg(long)]
    f: String,
    #[command(flatten)]
    at: Triple,
}

#[derive(Args, Debug)]
struct TripleSetArgs {
    #[arg(long = "F")]
    big_f: String,
    #[command(flatten)]
    at: Triple,
}

#[derive(Args, Debug)]
struct Prop3Args {
    #[arg(long)]
    phi: String,
    #[arg(long)]
    psi: String,
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    y: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    /// increasing: ψ−φ increasing and ψ convex (≥); decreasing: ψ−φ
    /// decreasing and ψ concave (≤).
    #[arg(long, default_value = "increasing")]
    direction: Direction,
    #[arg(long)]
    scan: bool,
    /// Interior t values per pair in scans.
    #[arg(long, default_value_t = DEFAULT_T_COUNT)]
    t_count: usize,
    /// Experimental: interval-valued φ, ψ; reports observed inclusions only.
    #[arg(long)]
    set_valued: bool,
}

#[derive(Args, Debug)]
struct Weighted {
    /// Comma-separated points in [a, b].
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    points: Vec<f64>,
    /// Comma-separated weights summing to 1 (default: equal).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
}

impl Weighted {
    fn input(&self) -> Lemma5Input {
        if self.weights.is_empty() {
            Lemma5Input::uniform(self.points.clone(), self.a, self.b)
        } else {
            Lemma5Input::new(self.points.clone(), self.weights.clone(), self.a, self.b)
        }
    }
}

#[derive(Args, Debug)]
struct Lemma5Args {
    #[arg(long)]
    f: String,
    #[command(flatten)]
    input: Weighted,
    /// Explicit endpoint weights λ₁,λ₂, validated against the barycenter.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambdas: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct Prop6Args {
    #[arg(long)]
    f: String,
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    #[arg(long, allow_negative_numbers = true)]
    y: f64,
    #[arg(long, allow_negative_numbers = true)]
    z: f64,
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
}

#[derive(Args, Debug)]
struct Prop7Args {
    #[arg(long = "F")]
    big_f: String,
    #[command(flatten)]
    input: Weighted,
}

#[derive(Args, Debug)]
struct PlotArgs {
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    phi: Option<String>,
    #[arg(long)]
    psi: Option<String>,
    #[arg(long = "F")]
    big_f: Option<String>,
    #[arg(long = "G")]
    big_g: Option<String>,
    /// With --f and --g: add the affine separator h (when one exists) and
    /// the envelopes h1 = lce(g), h2 = uce(f).
    #[arg(long)]
    separators: bool,
}

/// What a subcommand produced: the rendered report and whether it "holds".
struct Rendered {
    text: String,
    ok: bool,
}

fn json(value: &impl Serialize, ok: bool) -> Result<Rendered, CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(Rendered { text, ok })
}

fn csv(columns: &[(String, Vec<f64>)]) -> String {
    let mut out = String::new();
    let names: Vec<&str> = columns.iter().map(|(n, _)| n.as_str()).collect();
    out.push_str(&names.join(","));
    out.push('\n');
    let rows = columns.first().map_or(0, |(_, v)| v.len());
    for r in 0..rows {
        for (c, (_, values)) in columns.iter().enumerate() {
            if c > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}", values[r]);
        }
        out.push('\n');
    }
    out
}

fn json_only(format: Option<Format>) -> Result<(), CliError> {
    match format {
        Some(Format::Csv) => Err(usage("csv output is available for plot and envelope only")),
        _ => Ok(()),
    }
}

fn required<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    value
        .as_deref()
        .ok_or_else(|| usage(format!("--{flag} is required")))
}

#[derive(Serialize)]
struct SandwichReport<C, A, E> {
    condition: C,
    affine: A,
    envelopes: E,
}

fn sandwich(args: &SandwichArgs, eps: f64) -> Result<Rendered, CliError> {
    if args.set_valued {
        let big = source::load_interval("F", required(&args.big_f, "F")?)?;
        let small = source::load_interval("G", required(&args.big_g, "G")?)?;
        let condition = check_condition_iii_setvalued(&big, &small, eps)?;
        let affine = find_affine_interval_separator(&big, &small, eps)?;
        let envelopes = convex_concave_interval_separators(&big, &small, eps)?;
        let ok = condition.is_ok() && affine.is_feasible() && envelopes.is_feasible();
        return json(
            &SandwichReport {
                condition,
                affine,
                envelopes,
            },
            ok,
        );
    }
    let f = source::load_real("f", required(&args.f, "f")?)?;
    let g = source::load_real("g", required(&args.g, "g")?)?;
    let condition = check_condition_iii(&f, &g, eps)?;
    let affine = find_affine_separator(&f, &g, eps)?;
    let envelopes = convex_concave_separators(&f, &g, eps)?;
    let ok = condition.is_ok() && affine.is_feasible() && envelopes.is_feasible();
    json(
        &SandwichReport {
            condition,
            affine,
            envelopes,
        },
        ok,
    )
}

/// First place a shape test fails: breakpoint index and the two compared
/// quantities (slopes for convexity, values for monotonicity).
#[derive(Serialize)]
struct ShapeWitness {
    #[serde(skip_serializing_if = "Option::is_none")]
    endpoint: Option<&'static str>,
    index: usize,
    x: f64,
    left: f64,
    right: f64,
}

#[derive(Serialize)]
struct ShapeReport {
    property: Property,
    holds: bool,
    witness: Option<ShapeWitness>,
}

fn shape_witness(f: &SampledFunction, property: Property, eps: f64) -> Option<ShapeWitness> {
    let s = f.slopes();
    let ys = f.ys();
    let hit = |k: usize, left: f64, right: f64| ShapeWitness {
        endpoint: None,
        index: k,
        x: f.xs()[k],
        left,
        right,
    };
    match property {
        Property::Convex => (1..s.len())
            .find(|&k| s[k - 1] > s[k] + eps)
            .map(|k| hit(k, s[k - 1], s[k])),
        Property::Concave => (1..s.len())
            .find(|&k| s[k - 1] + eps < s[k])
            .map(|k| hit(k, s[k - 1], s[k])),
        Property::Affine => shape_witness(f, Property::Convex, eps)
            .or_else(|| shape_witness(f, Property::Concave, eps)),
        Property::Increasing => (0..ys.len() - 1)
            .find(|&k| ys[k] > ys[k + 1] + eps)
            .map(|k| hit(k, ys[k], ys[k + 1])),
        Property::Decreasing => (0..ys.len() - 1)
            .find(|&k| ys[k] + eps < ys[k + 1])
            .map(|k| hit(k, ys[k], ys[k + 1])),
    }
}

fn check(args: &CheckArgs, eps: f64) -> Result<Rendered, CliError> {
    let witness = match (&args.f, &args.big_f) {
        (Some(spec), None) => shape_witness(&source::load_real("f", spec)?, args.property, eps),
        (None, Some(spec)) => {
            let big = source::load_interval("F", spec)?;
            // lower convex & upper concave, or the reverse
            let (lo_prop, hi_prop) = match args.property {
                Property::Convex => (Property::Convex, Property::Concave),
                Property::Concave => (Property::Concave, Property::Convex),
                _ => {
                    return Err(usage(
                        "interval-valued inputs support convex and concave only",
                    ))
                }
            };
            let lo = big
                .lower()
                .and_then(|l| shape_witness(l, lo_prop, eps))
                .map(|w| ShapeWitness {
                    endpoint: Some("lower"),
                    ..w
                });
            lo.or_else(|| {
                big.upper()
                    .and_then(|u| shape_witness(u, hi_prop, eps))
                    .map(|w| ShapeWitness {
                        endpoint: Some("upper"),
                        ..w
                    })
            })
        }
        _ => return Err(usage("pass exactly one of --f and --F")),
    };
    let holds = witness.is_none();
    json(
        &ShapeReport {
            property: args.property,
            holds,
            witness,
        },
        holds,
    )
}

fn envelope(args: &EnvelopeArgs, format: Option<Format>) -> Result<Rendered, CliError> {
    let f = source::load_real("f", &args.f)?;
    let env = match args.kind {
        EnvelopeKind::LowerConvex => f.lower_convex_envelope(),
        EnvelopeKind::UpperConcave => f.upper_concave_envelope(),
    };
    match format {
        Some(Format::Csv) => Ok(Rendered {
            text: csv(&[
                ("x".into(), f.xs().to_vec()),
                ("f".into(), f.ys().to_vec()),
                ("envelope".into(), env.ys().to_vec()),
            ]),
            ok: true,
        }),
        _ => json(&env, true),
    }
}

fn popoviciu(args: &TripleArgs, eps: f64) -> Result<Rendered, CliError> {
    let f = source::load_real("f", &args.f)?;
    if args.at.scan {
        let scan = popoviciu_scan(&f, eps);
        let ok = scan.outcome.is_ok();
        return json(&scan, ok);
    }
    let (x, y, z) = args.at.get()?;
    let r = popoviciu_check(&f, x, y, z, eps)?;
    let ok = r.holds;
    json(&r, ok)
}

fn popoviciu_setvalued(args: &TripleSetArgs, eps: f64) -> Result<Rendered, CliError> {
    let big = source::load_interval("F", &args.big_f)?;
    if args.at.scan {
        let scan = popoviciu_inclusion_scan(&big, eps)?;
        let ok = scan.outcome.is_ok();
        return json(&scan, ok);
    }
    let (x, y, z) = args.at.get()?;
    let r = popoviciu_inclusion_check(&big, x, y, z, eps)?;
    let ok = r.holds;
    json(&r, ok)
}

fn prop3(args: &Prop3Args, eps: f64) -> Result<Rendered, CliError> {
    if args.set_valued {
        if !args.scan {
            return Err(usage("the set-valued variant is a scan; pass --scan"));
        }
        let phi = source::load_interval("phi", &args.phi)?;
        let psi = source::load_interval("psi", &args.psi)?;
        return json(
            &prop3_setvalued_observe(&phi, &psi, args.t_count, eps)?,
            true,
        );
    }
    let phi = source::load_real("phi", &args.phi)?;
    let psi = source::load_real("psi", &args.psi)?;
    if args.scan {
        let scan = prop3_scan(&phi, &psi, args.direction, args.t_count, eps)?;
        let ok = scan.outcome.is_ok();
        return json(&scan, ok);
    }
    let (x, y, t) = match (args.x, args.y, args.t) {
        (Some(x), Some(y), Some(t)) => (x, y, t),
        _ => return Err(usage("pass --x, --y and --t, or --scan")),
    };
    let r = prop3_check(&phi, &psi, x, y, t, args.direction, eps)?;
    let ok = r.holds;
    json(&r, ok)
}

#[derive(Serialize)]
struct Lemma5Output {
    lambdas: (f64, f64),
    #[serde(flatten)]
    report: crate::inequalities::CheckReport,
}

fn lemma5(args: &Lemma5Args, eps: f64) -> Result<Rendered, CliError> {
    let f = source::load_real("f", &args.f)?;
    let input = args.input.input();
    let (report, lambdas) = match &args.lambdas {
        Some(l) => {
            let &[l1, l2] = l.as_slice() else {
                return Err(usage("--lambdas takes exactly two values"));
            };
            let l = (l1, l2);
            (lemma5_check_with_lambdas(&f, &input, l, eps)?, l)
        }
        None => (lemma5_check(&f, &input, eps)?, input.lambdas()),
    };
    let ok = report.holds;
    json(&Lemma5Output { lambdas, report }, ok)
}

fn prop6(args: &Prop6Args, eps: f64) -> Result<Rendered, CliError> {
    let f = source::load_real("f", &args.f)?;
    let r = prop6_check(&f, args.x, args.y, args.z, args.a, args.b, eps)?;
    let ok = r.holds;
    json(&r, ok)
}

fn prop7(args: &Prop7Args, eps: f64) -> Result<Rendered, CliError> {
    let big = source::load_interval("F", &args.big_f)?;
    let r = prop7_check(&big, &args.input.input(), eps)?;
    let ok = r.report.holds && r.paths_agree;
    json(&r, ok)
}

fn push_interval(columns: &mut Vec<(String, Vec<f64>)>, name: &str, f: &IntervalFunction) {
    if let Some(l) = f.lower() {
        columns.push((format!("{name}_lo"), l.ys().to_vec()));
    }
    if let Some(u) = f.upper() {
        columns.push((format!("{name}_hi"), u.ys().to_vec()));
    }
}

#[derive(Serialize)]
struct Column<'a> {
    name: &'a str,
    values: &'a [f64],
}

fn plot(args: &PlotArgs, eps: f64, format: Option<Format>) -> Result<Rendered, CliError> {
    let mut real = Vec::new();
    for (name, spec) in [
        ("f", &args.f),
        ("g", &args.g),
        ("phi", &args.phi),
        ("psi", &args.psi),
    ] {
        if let Some(spec) = spec {
            real.push((name, source::load_real(name, spec)?));
        }
    }
    let mut sets = Vec::new();
    for (name, spec) in [("F", &args.big_f), ("G", &args.big_g)] {
        if let Some(spec) = spec {
            sets.push((name, source::load_interval(name, spec)?));
        }
    }
    let grids: Vec<&[f64]> = real
        .iter()
        .map(|(_, f)| f.xs())
        .chain(sets.iter().map(|(_, f)| f.xs()))
        .collect();
    if grids.is_empty() {
        return Err(usage(
            "plot needs at least one of --f, --g, --phi, --psi, --F, --G",
        ));
    }
    let grid = merged_grid(&grids)?;
    let mut columns = vec![("x".to_string(), grid.clone())];
    for (name, f) in &real {
        columns.push((name.to_string(), f.resample(&grid)?.ys().to_vec()));
    }
    for (name, f) in &sets {
        push_interval(&mut columns, name, &f.resample(&grid)?);
    }
    if args.separators {
        let pick = |n: &str| {
            real.iter()
                .find(|(name, _)| *name == n)
                .map(|(_, f)| f.resample(&grid))
        };
        let (Some(f), Some(g)) = (pick("f"), pick("g")) else {
            return Err(usage("--separators needs --f and --g"));
        };
        let (f, g) = (f?, g?);
        if let Some(h) = find_affine_separator(&f, &g, eps)?.separator() {
            columns.push(("h".into(), grid.iter().map(|&x| h.eval(x)).collect()));
        }
        if let Some(pair) = convex_concave_separators(&f, &g, eps)?.separator() {
            columns.push(("h1".into(), pair.h1.ys().to_vec()));
            columns.push(("h2".into(), pair.h2.ys().to_vec()));
        }
    }
    match format {
        Some(Format::Json) => {
            let cols: Vec<Column> = columns
                .iter()
                .map(|(name, values)| Column { name, values })
                .collect();
            json(&cols, true)
        }
        _ => Ok(Rendered {
            text: csv(&columns),
            ok: true,
        }),
    }
}

fn dispatch(cli: &Cli) -> Result<Rendered, CliError> {
    if !(cli.eps >= 0.0 && cli.eps.is_finite()) {
        return Err(usage(format!(
            "--eps must be a finite non-negative number, got {}",
            cli.eps
        )));
    }
    let eps = cli.eps;
    match &cli.command {
        Command::Envelope(a) => envelope(a, cli.format),
        Command::Plot(a) => plot(a, eps, cli.format),
        other => {
            json_only(cli.format)?;
            match other {
                Command::Sandwich(a) => sandwich(a, eps),
                Command::Check(a) => check(a, eps),
                Command::Popoviciu(a) => popoviciu(a, eps),
                Command::Prop3(a) => prop3(a, eps),
                Command::Lemma5(a) => lemma5(a, eps),
                Command::Prop6(a) => prop6(a, eps),
                Command::Prop7(a) => prop7(a, eps),
                Command::PopoviciuSetvalued(a) => popoviciu_setvalued(a, eps),
                Command::Envelope(_) | Command::Plot(_) => unreachable!("handled above"),
            }
        }
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let rendered = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &rendered.text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io {
                    path: "<stdout>".into(),
                    source: e,
                })
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    if rendered.ok {
        0
    } else {
        1
    }
}
