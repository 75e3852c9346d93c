//! Function sources accepted on the command line.
//!
//! * `expr:<formula>@[a,b]:n` samples a formula at `n` uniform points;
//! * `ivf:<kind>:<lower>|<upper>@[a,b]:n` does the same for an interval-valued
//!   function (`ivf:upper_half:<lower>@..`, `ivf:lower_half:<upper>@..`,
//!   `ivf:all_reals@..`);
//! * anything starting with `{` is an inline JSON document;
//! * everything else is a path to a JSON document.
//!
//! JSON documents are tagged by `"type"`: `sampled`, `interval`, `expr` or
//! `interval_expr`.

use std::path::Path;

use serde::Deserialize;

use super::CliError;
use crate::expr::{parse, sample};
use crate::functions::{IntervalFunction, SampledFunction};
use crate::intervals::IntervalKind;

#[derive(Debug, Clone)]
pub enum Source {
    Real(SampledFunction),
    Interval(IntervalFunction),
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum Document {
    Sampled {
        xs: Vec<f64>,
        ys: Vec<f64>,
    },
    Interval {
        kind: IntervalKind,
        xs: Vec<f64>,
        #[serde(default)]
        lower: Option<Vec<f64>>,
        #[serde(default)]
        upper: Option<Vec<f64>>,
    },
    Expr {
        formula: String,
        domain: [f64; 2],
        samples: usize,
    },
    IntervalExpr {
        kind: IntervalKind,
        #[serde(default)]
        lower: Option<String>,
        #[serde(default)]
        upper: Option<String>,
        domain: [f64; 2],
        samples: usize,
    },
}

fn sample_formula(formula: &str, [a, b]: [f64; 2], n: usize) -> Result<SampledFunction, CliError> {
    let e = parse(formula).map_err(crate::Error::from)?;
    Ok(sample(&e, a, b, n)?)
}

fn interval_from_formulas(
    kind: IntervalKind,
    lower: Option<&str>,
    upper: Option<&str>,
    domain: [f64; 2],
    n: usize,
) -> Result<IntervalFunction, CliError> {
    if kind == IntervalKind::AllReals {
        return Ok(IntervalFunction::all_reals(
            crate::functions::uniform_grid(domain[0], domain[1], n)?,
        )?);
    }
    let lower = lower.map(|f| sample_formula(f, domain, n)).transpose()?;
    let upper = upper.map(|f| sample_formula(f, domain, n)).transpose()?;
    Ok(IntervalFunction::from_endpoints(kind, lower, upper)?)
}

impl Document {
    fn build(self) -> Result<Source, CliError> {
        Ok(match self {
            Document::Sampled { xs, ys } => Source::Real(SampledFunction::new(xs, ys)?),
            Document::Interval {
                kind,
                xs,
                lower,
                upper,
            } => Source::Interval(IntervalFunction::new(kind, xs, lower, upper)?),
            Document::Expr {
                formula,
                domain,
                samples,
            } => Source::Real(sample_formula(&formula, domain, samples)?),
            Document::IntervalExpr {
                kind,
                lower,
                upper,
                domain,
                samples,
            } => Source::Interval(interval_from_formulas(
                kind,
                lower.as_deref(),
                upper.as_deref(),
                domain,
                samples,
            )?),
        })
    }
}

/// Splits `<body>@[a,b]:n`.
fn split_domain(spec: &str) -> Result<(&str, [f64; 2], usize), CliError> {
    let bad = || CliError::Usage(format!("expected '<formula>@[a,b]:n', got '{spec}'"));
    let (body, grid) = spec.rsplit_once('@').ok_or_else(bad)?;
    let (range, n) = grid.rsplit_once(':').ok_or_else(bad)?;
    let inner = range
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(bad)?;
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    Ok((body, [a, b], n))
}

fn parse_ivf(spec: &str) -> Result<IntervalFunction, CliError> {
    let (body, domain, n) = split_domain(spec)?;
    let (kind, rest) = match body.split_once(':') {
        Some((k, r)) => (k, Some(r)),
        None => (body, None),
    };
    let kind: IntervalKind = kind.trim().parse().map_err(CliError::Usage)?;
    let missing = |what: &str| CliError::Usage(format!("ivf source of kind {kind} needs {what}"));
    let (lower, upper) = match kind {
        IntervalKind::Bounded => {
            let (l, u) = rest
                .and_then(|r| r.split_once('|'))
                .ok_or_else(|| missing("'<lower>|<upper>'"))?;
            (Some(l), Some(u))
        }
        IntervalKind::UpperHalf => (Some(rest.ok_or_else(|| missing("a lower formula"))?), None),
        IntervalKind::LowerHalf => (None, Some(rest.ok_or_else(|| missing("an upper formula"))?)),
        IntervalKind::AllReals => (None, None),
    };
    interval_from_formulas(kind, lower, upper, domain, n)
}

pub fn load(spec: &str) -> Result<Source, CliError> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("expr:") {
        let (formula, domain, n) = split_domain(rest)?;
        return Ok(Source::Real(sample_formula(formula, domain, n)?));
    }
    if let Some(rest) = spec.strip_prefix("ivf:") {
        return Ok(Source::Interval(parse_ivf(rest)?));
    }
    let text = if spec.starts_with('{') {
        spec.to_string()
    } else {
        std::fs::read_to_string(Path::new(spec)).map_err(|e| CliError::Io {
            path: spec.to_string(),
            source: e,
        })?
    };
    let doc: Document = serde_json::from_str(&text)?;
    doc.build()
}

pub fn load_real(flag: &str, spec: &str) -> Result<SampledFunction, CliError> {
    match load(spec)? {
        Source::Real(f) => Ok(f),
        Source::Interval(_) => Err(CliError::Usage(format!(
            "--{flag} expects a real-valued function, got an interval-valued one"
        ))),
    }
}

pub fn load_interval(flag: &str, spec: &str) -> Result<IntervalFunction, CliError> {
    match load(spec)? {
        Source::Interval(f) => Ok(f),
        Source::Real(_) => Err(CliError::Usage(format!(
            "--{flag} expects an interval-valued function, got a real-valued one"
        ))),
    }
}
