//! Separating convex and concave functions by lines, convex envelopes, and
//! three-point convexity inequalities, for sampled and interval-valued functions.
//!
//! The crate works with piecewise-linear functions on a breakpoint grid and
//! with interval-valued functions whose values are closed convex subsets of
//! the line. On top of that it provides
//!
//! * [`intervals`]: extended intervals and their Minkowski algebra;
//! * [`functions`]: sampled functions, convexity predicates, convex and
//!   concave envelopes;
//! * [`sandwich`]: affine, convex/concave and set-valued separators between
//!   two functions, with witnesses when none exists;
//! * [`inequalities`]: checkers and falsifiers for Popoviciu's inequality and
//!   related Jensen-type bounds;
//! * [`expr`]: a tiny formula language for defining test functions;
//! * [`cli`]: the command-line front end.
//!
//! ```
//! use convex_sandwich::functions::{SampledFunction, DEFAULT_EPS};
//! use convex_sandwich::sandwich::find_affine_separator;
//!
//! let f = SampledFunction::uniform(-1.0, 1.0, 101, |x| x * x - 1.0).unwrap();
//! let g = SampledFunction::uniform(-1.0, 1.0, 101, |x| x * x).unwrap();
//! let h = find_affine_separator(&f, &g, DEFAULT_EPS).unwrap();
//! let h = h.separator().unwrap();
//! assert!(h.m.abs() < 1e-9 && h.c.abs() < 1e-9);
//! ```

pub mod cli;
pub mod error;
pub mod expr;
pub mod functions;
pub mod inequalities;
pub mod intervals;
pub mod sandwich;

pub use error::{Error, Result};
