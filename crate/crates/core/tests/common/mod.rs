//! Generators and independent oracles shared by the integration suites.
#![allow(dead_code)]

use convex_sandwich::expr::{BinaryOp, CallOp, Expr, UnaryOp};
use convex_sandwich::functions::{IntervalFunction, SampledFunction};
use convex_sandwich::intervals::{ExtInterval, IntervalKind};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// lcm(1, …, 24). On integer grids inside `[0, 24]` every chord between two
/// breakpoints has a span dividing this, so values that are multiples of it
/// interpolate (and form hull chords) without rounding.
pub const LCM24: f64 = 5_354_228_880.0;

/// `n` sorted distinct points with `a` and `b` as ends.
pub fn random_grid(r: &mut impl Rng, n: usize, a: f64, b: f64) -> Vec<f64> {
    loop {
        let mut xs: Vec<f64> = (0..n - 2).map(|_| r.gen_range(a..b)).collect();
        xs.push(a);
        xs.push(b);
        xs.sort_by(f64::total_cmp);
        let min_gap = (b - a) * 1e-6;
        if xs.windows(2).all(|w| w[1] - w[0] > min_gap) {
            return xs;
        }
    }
}

/// `n ≤ 25` distinct integer breakpoints from `0..=24`, sorted.
pub fn integer_grid(r: &mut impl Rng, n: usize) -> Vec<f64> {
    let all: Vec<u32> = (0..=24).collect();
    let mut picked: Vec<u32> = all.choose_multiple(r, n).copied().collect();
    picked.sort_unstable();
    picked.into_iter().map(f64::from).collect()
}

pub fn random_pl(r: &mut impl Rng, xs: Vec<f64>, amplitude: f64) -> SampledFunction {
    let ys = xs
        .iter()
        .map(|_| r.gen_range(-amplitude..amplitude))
        .collect();
    SampledFunction::new(xs, ys).unwrap()
}

/// Values in `LCM24·{−k..k}` on an integer grid.
pub fn exact_pl(r: &mut impl Rng, n: usize, k: i64) -> SampledFunction {
    let xs = integer_grid(r, n);
    let ys = xs
        .iter()
        .map(|_| LCM24 * r.gen_range(-k..=k) as f64)
        .collect();
    SampledFunction::new(xs, ys).unwrap()
}

/// Convex data on an integer grid: slopes are non-decreasing multiples of
/// `LCM24`, so every value is an exact integer.
pub fn exact_convex(r: &mut impl Rng, n: usize) -> SampledFunction {
    let xs = integer_grid(r, n);
    let mut slopes: Vec<i64> = (1..n).map(|_| r.gen_range(-20..=20)).collect();
    slopes.sort_unstable();
    let mut ys = vec![LCM24 * r.gen_range(-50..=50) as f64];
    for (k, s) in slopes.iter().enumerate() {
        let dy = LCM24 * (*s as f64) * (xs[k + 1] - xs[k]);
        ys.push(ys[k] + dy);
    }
    SampledFunction::new(xs, ys).unwrap()
}

/// Convex data on an arbitrary grid: random non-decreasing slopes.
pub fn random_convex(r: &mut impl Rng, xs: Vec<f64>) -> SampledFunction {
    let mut slopes: Vec<f64> = (1..xs.len()).map(|_| r.gen_range(-3.0..3.0)).collect();
    slopes.sort_by(f64::total_cmp);
    let mut ys = vec![r.gen_range(-1.0..1.0)];
    for (k, s) in slopes.iter().enumerate() {
        ys.push(ys[k] + s * (xs[k + 1] - xs[k]));
    }
    SampledFunction::new(xs, ys).unwrap()
}

/// How a random sandwich instance was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `f ≤ h ≤ g` around a known line.
    Feasible,
    /// `f` above `g` somewhere, or `f = g` with a kink.
    Infeasible,
    /// Independent random `f ≤ g`; feasibility unknown in advance.
    Free,
}

pub struct Instance {
    pub family: Family,
    pub f: SampledFunction,
    pub g: SampledFunction,
}

fn noise(r: &mut impl Rng) -> f64 {
    if r.gen_bool(0.25) {
        0.0
    } else {
        r.gen_range(0.0..0.5_f64).powi(2)
    }
}

pub fn sandwich_instance(r: &mut impl Rng, family: Family) -> Instance {
    let a = r.gen_range(-2.0..0.0);
    let b = a + r.gen_range(0.5..3.0);
    let nf = r.gen_range(2..=20);
    let ng = if r.gen_bool(0.5) {
        nf
    } else {
        r.gen_range(2..=20)
    };
    let xf = random_grid(r, nf, a, b);
    let xg = if ng == nf && r.gen_bool(0.5) {
        xf.clone()
    } else {
        random_grid(r, ng, a, b)
    };
    let (m, c) = (r.gen_range(-2.0..2.0), r.gen_range(-1.0..1.0));
    let line = |x: f64| m * x + c;
    match family {
        Family::Feasible => {
            let f = SampledFunction::from_fn(xf, line).unwrap();
            let f = SampledFunction::new(
                f.xs().to_vec(),
                f.ys().iter().map(|y| y - noise(r)).collect(),
            )
            .unwrap();
            let g =
                SampledFunction::new(xg.clone(), xg.iter().map(|&x| line(x) + noise(r)).collect())
                    .unwrap();
            Instance { family, f, g }
        }
        Family::Infeasible => {
            if r.gen_bool(0.5) && nf >= 3 {
                // f = g = line + bend at an interior breakpoint
                let k = r.gen_range(1..nf - 1);
                let bend = r.gen_range(0.1..2.0) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
                let xk = xf[k];
                let g = SampledFunction::from_fn(xf, |x| line(x) + bend * (x - xk).abs()).unwrap();
                Instance {
                    family,
                    f: g.clone(),
                    g,
                }
            } else {
                let g = SampledFunction::new(
                    xg.clone(),
                    xg.iter().map(|&x| line(x) + noise(r)).collect(),
                )
                .unwrap();
                let k = r.gen_range(0..nf);
                let mut ys: Vec<f64> = xf.iter().map(|&x| line(x) - noise(r)).collect();
                ys[k] = g.eval(xf[k]).unwrap() + r.gen_range(0.01..1.0);
                Instance {
                    family,
                    f: SampledFunction::new(xf, ys).unwrap(),
                    g,
                }
            }
        }
        Family::Free => {
            let g = random_pl(r, xg, 2.0);
            let ys = xf
                .iter()
                .map(|&x| g.eval(x).unwrap() - r.gen_range(0.0..1.5))
                .collect();
            Instance {
                family,
                f: SampledFunction::new(xf, ys).unwrap(),
                g,
            }
        }
    }
}

/// Dyadic endpoints `k/8` with `|k| ≤ 800`: sums and products by the dyadic
/// factors below are exact.
pub fn dyadic(r: &mut impl Rng) -> f64 {
    r.gen_range(-800..=800) as f64 / 8.0
}

pub fn dyadic_factor(r: &mut impl Rng, nonneg: bool) -> f64 {
    let k = if nonneg {
        r.gen_range(0..=32)
    } else {
        r.gen_range(-32..=32)
    };
    k as f64 / 16.0
}

pub const KINDS: [IntervalKind; 4] = [
    IntervalKind::Bounded,
    IntervalKind::UpperHalf,
    IntervalKind::LowerHalf,
    IntervalKind::AllReals,
];

pub fn interval_of(r: &mut impl Rng, kind: IntervalKind) -> ExtInterval {
    let (p, q) = (dyadic(r), dyadic(r));
    match kind {
        IntervalKind::Bounded => ExtInterval::bounded(p.min(q), p.max(q)).unwrap(),
        IntervalKind::UpperHalf => ExtInterval::upper_half(p).unwrap(),
        IntervalKind::LowerHalf => ExtInterval::lower_half(p).unwrap(),
        IntervalKind::AllReals => ExtInterval::AllReals,
    }
}

pub fn any_interval(r: &mut impl Rng) -> ExtInterval {
    let kind = *KINDS.choose(r).unwrap();
    interval_of(r, kind)
}

/// Independent inclusion test: compare endpoints as extended reals.
pub fn ext_bounds(a: &ExtInterval) -> (f64, f64) {
    (
        a.lo().unwrap_or(f64::NEG_INFINITY),
        a.hi().unwrap_or(f64::INFINITY),
    )
}

pub fn oracle_subset(a: &ExtInterval, b: &ExtInterval) -> bool {
    let ((a0, a1), (b0, b1)) = (ext_bounds(a), ext_bounds(b));
    b0 <= a0 && a1 <= b1
}

/// Convex interval-valued function: convex lower, concave upper, with the
/// kind chosen at random.
pub fn random_convex_ivf(r: &mut impl Rng, kind: IntervalKind) -> IntervalFunction {
    let n = r.gen_range(2..=12);
    let xs = random_grid(r, n, -1.0, 1.0);
    if kind == IntervalKind::AllReals {
        return IntervalFunction::all_reals(xs).unwrap();
    }
    let lower = random_convex(r, xs.clone());
    // concave upper above the lower one: negate a convex function and lift it
    let neg = random_convex(r, xs.clone());
    let lift = lower
        .ys()
        .iter()
        .zip(neg.ys())
        .map(|(l, n)| l + n)
        .fold(f64::NEG_INFINITY, f64::max)
        + r.gen_range(0.0..1.0);
    let upper =
        SampledFunction::new(xs.clone(), neg.ys().iter().map(|n| lift - n).collect()).unwrap();
    let (lo, hi) = match kind {
        IntervalKind::Bounded => (Some(lower.ys().to_vec()), Some(upper.ys().to_vec())),
        IntervalKind::UpperHalf => (Some(lower.ys().to_vec()), None),
        IntervalKind::LowerHalf => (None, Some(upper.ys().to_vec())),
        IntervalKind::AllReals => unreachable!(),
    };
    IntervalFunction::new(kind, xs, lo, hi).unwrap()
}

/// Expression trees of the shape the parser produces: constants are
/// non-negative (a leading minus is always a `Neg` node).
pub fn random_expr(r: &mut impl Rng, depth: u32) -> Expr {
    if depth == 0 || r.gen_bool(0.3) {
        return if r.gen_bool(0.5) {
            Expr::Variable
        } else {
            let c = match r.gen_range(0..3) {
                0 => r.gen_range(0..10) as f64,
                1 => r.gen_range(0..1000) as f64 / 100.0,
                _ => r.gen_range(0.0..5.0),
            };
            Expr::Constant(c)
        };
    }
    let sub = |r: &mut ChaCha8Rng| Box::new(random_expr(r, depth - 1));
    let mut local = ChaCha8Rng::seed_from_u64(r.gen());
    match r.gen_range(0..4) {
        0 => {
            let op = *[UnaryOp::Neg, UnaryOp::Abs, UnaryOp::Exp, UnaryOp::Log]
                .choose(r)
                .unwrap();
            Expr::Unary(op, sub(&mut local))
        }
        1 | 2 => {
            let op = *[
                BinaryOp::Add,
                BinaryOp::Sub,
                BinaryOp::Mul,
                BinaryOp::Div,
                BinaryOp::Pow,
            ]
            .choose(r)
            .unwrap();
            let a = sub(&mut local);
            let b = if op == BinaryOp::Pow && r.gen_bool(0.6) {
                Box::new(Expr::Constant(r.gen_range(0..5) as f64))
            } else {
                sub(&mut local)
            };
            Expr::Binary(op, a, b)
        }
        _ => {
            let op = *[CallOp::Min, CallOp::Max].choose(r).unwrap();
            Expr::Call(op, sub(&mut local), sub(&mut local))
        }
    }
}

/// Evaluator built by compiling the tree into closures; shares no code with
/// the library's interpreter. `None` marks an evaluation error.
pub fn compile(e: &Expr) -> Box<dyn Fn(f64) -> Option<f64>> {
    let finite = |v: f64| v.is_finite().then_some(v);
    match e {
        Expr::Constant(c) => {
            let c = *c;
            Box::new(move |_| finite(c))
        }
        Expr::Variable => Box::new(finite),
        Expr::Unary(op, a) => {
            let a = compile(a);
            let op = *op;
            Box::new(move |x| {
                let v = a(x)?;
                finite(match op {
                    UnaryOp::Neg => -v,
                    UnaryOp::Abs => v.abs(),
                    UnaryOp::Exp => v.exp(),
                    UnaryOp::Log => {
                        if v > 0.0 {
                            v.ln()
                        } else {
                            return None;
                        }
                    }
                })
            })
        }
        Expr::Binary(op, a, b) => {
            let (a, b, op) = (compile(a), compile(b), *op);
            Box::new(move |x| {
                let (u, v) = (a(x)?, b(x)?);
                finite(match op {
                    BinaryOp::Add => u + v,
                    BinaryOp::Sub => u - v,
                    BinaryOp::Mul => u * v,
                    BinaryOp::Div => {
                        if v == 0.0 {
                            return None;
                        }
                        u / v
                    }
                    BinaryOp::Pow => {
                        let integral = v >= 0.0 && v == v.trunc() && v <= i32::MAX as f64;
                        if integral {
                            u.powi(v as i32)
                        } else if u > 0.0 {
                            (v * u.ln()).exp()
                        } else {
                            return None;
                        }
                    }
                })
            })
        }
        Expr::Call(op, a, b) => {
            let (a, b, op) = (compile(a), compile(b), *op);
            Box::new(move |x| {
                let (u, v) = (a(x)?, b(x)?);
                finite(match op {
                    CallOp::Min => u.min(v),
                    CallOp::Max => u.max(v),
                })
            })
        }
    }
}

/// Direct two-point interpolation on the original data, for checking `eval`.
pub fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    for k in 0..xs.len() - 1 {
        if xs[k] <= x && x <= xs[k + 1] {
            if x == xs[k] {
                return ys[k];
            }
            if x == xs[k + 1] {
                return ys[k + 1];
            }
            let w = (x - xs[k]) / (xs[k + 1] - xs[k]);
            return ys[k] * (1.0 - w) + ys[k + 1] * w;
        }
    }
    panic!("{x} outside the grid");
}

pub fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// One CLI invocation and the exit status it must produce.
pub struct Case {
    pub args: Vec<String>,
    pub code: i32,
}

fn case(code: i32, args: &[&str]) -> Case {
    let args = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(name) => fixture(name),
            None => a.to_string(),
        })
        .collect();
    Case { args, code }
}

/// Exit-code corpus touching every subcommand. `@name` expands to a fixture path.
pub fn cli_corpus() -> Vec<Case> {
    const SQ: &str = "expr:x^2@[-1,1]:101";
    const SQ_M1: &str = "expr:x^2-1@[-1,1]:101";
    const CUBE: &str = "expr:x^3@[-1,1]:101";
    const BIG: &str = "ivf:bounded:x^2-1|3-x^2@[-1,1]:101";
    const SMALL: &str = "ivf:bounded:x^2|2-x^2@[-1,1]:101";
    vec![
        case(0, &["--help"]),
        case(2, &["frobnicate"]),
        case(
            2,
            &["--eps", "-1", "check", "convex", "--f", "@parabola.json"],
        ),
        case(0, &["sandwich", "--f", SQ_M1, "--g", SQ]),
        case(1, &["sandwich", "--f", SQ, "--g", SQ_M1]),
        case(1, &["sandwich", "--f", CUBE, "--g", CUBE]),
        case(2, &["sandwich", "--f", "@bad_grid.json", "--g", SQ]),
        case(2, &["sandwich", "--f", SQ]),
        case(0, &["sandwich", "--set-valued", "--F", BIG, "--G", SMALL]),
        case(1, &["sandwich", "--set-valued", "--F", SMALL, "--G", BIG]),
        case(0, &["check", "convex", "--f", "@parabola.json"]),
        case(1, &["check", "concave", "--f", "@parabola.json"]),
        case(0, &["check", "convex", "--f", "@abs.json"]),
        case(0, &["check", "convex", "--F", "@lens.json"]),
        case(
            1,
            &["check", "convex", "--F", "ivf:bounded:-x^2|x^2@[-1,1]:21"],
        ),
        case(2, &["check", "convex", "--f", "@crossing.json"]),
        case(2, &["check", "convex", "--f", "@lens.json"]),
        case(0, &["envelope", "--f", CUBE]),
        case(
            0,
            &[
                "--format",
                "csv",
                "envelope",
                "--f",
                CUBE,
                "--kind",
                "upper-concave",
            ],
        ),
        case(2, &["envelope", "--f", "expr:log(x)@[-1,1]:11"]),
        case(0, &["popoviciu", "--f", "@parabola.json", "--scan"]),
        case(
            0,
            &[
                "popoviciu",
                "--f",
                "expr:x^2@[0,2]:3",
                "--x",
                "0",
                "--y",
                "1",
                "--z",
                "2",
            ],
        ),
        case(1, &["popoviciu", "--f", CUBE, "--scan"]),
        case(
            1,
            &[
                "popoviciu",
                "--f",
                "expr:x^3@[-1,1]:201",
                "--x",
                "-1",
                "--y",
                "-0.5",
                "--z",
                "0",
            ],
        ),
        case(2, &["popoviciu", "--f", "@parabola.json", "--x", "0"]),
        case(
            2,
            &[
                "popoviciu",
                "--f",
                "@parabola.json",
                "--x",
                "0",
                "--y",
                "0",
                "--z",
                "5",
            ],
        ),
        case(
            2,
            &[
                "--format",
                "csv",
                "popoviciu",
                "--f",
                "@parabola.json",
                "--scan",
            ],
        ),
        case(
            0,
            &[
                "prop3",
                "--phi",
                "expr:x^2-x@[-1,1]:21",
                "--psi",
                "expr:x^2@[-1,1]:21",
                "--scan",
            ],
        ),
        case(
            1,
            &[
                "prop3",
                "--phi",
                "expr:x^2+x@[-1,1]:201",
                "--psi",
                "expr:x^2@[-1,1]:201",
                "--x",
                "0",
                "--y",
                "0.5",
                "--t",
                "0.5",
            ],
        ),
        case(
            2,
            &[
                "prop3", "--phi", SQ, "--psi", SQ, "--x", "0", "--y", "0.5", "--t", "1.5",
            ],
        ),
        case(
            0,
            &[
                "prop3",
                "--set-valued",
                "--scan",
                "--phi",
                SMALL,
                "--psi",
                BIG,
                "--t-count",
                "3",
            ],
        ),
        case(
            0,
            &[
                "lemma5",
                "--f",
                "expr:x^2@[0,2]:201",
                "--points",
                "0.5,1.5,1",
                "--a",
                "0",
                "--b",
                "2",
            ],
        ),
        case(
            2,
            &[
                "lemma5",
                "--f",
                "expr:x^2@[0,2]:201",
                "--points",
                "0.5,3",
                "--a",
                "0",
                "--b",
                "2",
            ],
        ),
        case(
            2,
            &[
                "lemma5",
                "--f",
                "expr:x^2@[0,2]:201",
                "--points",
                "1",
                "--a",
                "0",
                "--b",
                "2",
                "--lambdas",
                "0.5",
            ],
        ),
        case(
            0,
            &[
                "prop6",
                "--f",
                "expr:x^2@[0,2]:201",
                "--x",
                "0",
                "--y",
                "1",
                "--z",
                "2",
                "--a",
                "0",
                "--b",
                "2",
            ],
        ),
        case(
            2,
            &[
                "prop6", "--f", CUBE, "--x", "-1", "--y", "0", "--z", "1", "--a", "-1", "--b", "1",
            ],
        ),
        case(
            0,
            &[
                "prop7",
                "--F",
                "@lens.json",
                "--points",
                "-0.5,0.5,0",
                "--a",
                "-1",
                "--b",
                "1",
            ],
        ),
        case(
            2,
            &[
                "prop7",
                "--F",
                "ivf:bounded:-x^2|x^2@[-1,1]:21",
                "--points",
                "0",
                "--a",
                "-1",
                "--b",
                "1",
            ],
        ),
        case(
            0,
            &[
                "popoviciu-setvalued",
                "--F",
                "@lens.json",
                "--x",
                "-1",
                "--y",
                "0",
                "--z",
                "1",
            ],
        ),
        case(
            0,
            &["popoviciu-setvalued", "--F", "@wide_lens.json", "--scan"],
        ),
        case(
            1,
            &[
                "popoviciu-setvalued",
                "--F",
                "ivf:bounded:-x^2|x^2@[-1,1]:21",
                "--scan",
            ],
        ),
        case(
            2,
            &[
                "popoviciu-setvalued",
                "--F",
                "ivf:all_reals@[-1,1]:5",
                "--scan",
            ],
        ),
        case(0, &["plot", "--f", SQ_M1, "--g", SQ, "--separators"]),
        case(0, &["--format", "json", "plot", "--F", "@lens.json"]),
        case(2, &["plot", "--f", "@no_such_file.json"]),
    ]
}
