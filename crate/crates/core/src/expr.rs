//! A small arithmetic language in one variable `x`, used to describe analytic
//! test functions (`"x^2-1"`, `"max(x, 1-x)"`) that are then sampled onto a grid.
//!
//! Grammar, lowest precedence first:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?          right-associative
//! atom  := number | 'x' | ident '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! so `-x^2` is `-(x^2)` and `2^3^2` is `2^(3^2)`. There is no unary plus and
//! no implicit multiplication. Functions: `abs`, `exp`, `log` (one argument),
//! `min`, `max` (two arguments).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::Result;
use crate::functions::{uniform_grid, SampledFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Abs,
    Exp,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CallOp {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Constant(f64),
    Variable,
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Call(CallOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: expected one of {}, found {found}", expected.join(", "))]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalErrorKind {
    DivisionByZero,
    LogOfNonPositive,
    NonPositiveBase,
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("evaluation failed at x = {x}: {kind:?}")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub x: f64,
}

const ATOM_START: &[&str] = &["number", "'x'", "identifier", "'('", "'-'"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(v) => write!(f, "number {v}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> std::result::Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit()
            || (c == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit))
        {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            // the scanned slice is always a valid float literal
            let v = f64::from_str(&text[start..i]).expect("scanned number literal");
            out.push((start, Tok::Num(v)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if b"+-*/^(),".contains(&c) {
            out.push((i, Tok::Sym(c as char)));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(SyntaxError {
                offset: i,
                expected: vec!["token"],
                found: format!("'{ch}'"),
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

type PResult<T> = std::result::Result<T, SyntaxError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> SyntaxError {
        SyntaxError {
            offset: self.offset(),
            expected: expected.to_vec(),
            found: self.peek().to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, expected: &'static str) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[expected]))
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinaryOp::Add
            } else if self.eat('-') {
                BinaryOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinaryOp::Mul
            } else if self.eat('/') {
                BinaryOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat('-') {
            Ok(Expr::Unary(UnaryOp::Neg, Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let exp = self.unary()?;
            Ok(Expr::Binary(BinaryOp::Pow, Box::new(base), Box::new(exp)))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Constant(v))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')', "')'")?;
                Ok(e)
            }
            Tok::Ident(name) if name == "x" => {
                self.bump();
                Ok(Expr::Variable)
            }
            Tok::Ident(name) => {
                let arity = match name.as_str() {
                    "abs" | "exp" | "log" => 1,
                    "min" | "max" => 2,
                    _ => {
                        return Err(
                            self.error(&["'x'", "'abs'", "'exp'", "'log'", "'min'", "'max'"])
                        )
                    }
                };
                self.bump();
                self.expect('(', "'('")?;
                let first = self.expr()?;
                let e = if arity == 1 {
                    let op = match name.as_str() {
                        "abs" => UnaryOp::Abs,
                        "exp" => UnaryOp::Exp,
                        _ => UnaryOp::Log,
                    };
                    Expr::Unary(op, Box::new(first))
                } else {
                    self.expect(',', "','")?;
                    let second = self.expr()?;
                    let op = if name == "min" {
                        CallOp::Min
                    } else {
                        CallOp::Max
                    };
                    Expr::Call(op, Box::new(first), Box::new(second))
                };
                self.expect(')', "')'")?;
                Ok(e)
            }
            _ => Err(self.error(ATOM_START)),
        }
    }
}

/// Parses a formula in `x`.
pub fn parse(text: &str) -> std::result::Result<Expr, SyntaxError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}

impl FromStr for Expr {
    type Err = SyntaxError;

    fn from_str(s: &str) -> std::result::Result<Self, SyntaxError> {
        parse(s)
    }
}

impl Expr {
    pub fn eval(&self, x: f64) -> std::result::Result<f64, EvalError> {
        let fail = |kind| EvalError { kind, x };
        let v = match self {
            Expr::Constant(c) => *c,
            Expr::Variable => x,
            Expr::Unary(op, a) => {
                let a = a.eval(x)?;
                match op {
                    UnaryOp::Neg => -a,
                    UnaryOp::Abs => a.abs(),
                    UnaryOp::Exp => a.exp(),
                    UnaryOp::Log if a <= 0.0 => return Err(fail(EvalErrorKind::LogOfNonPositive)),
                    UnaryOp::Log => a.ln(),
                }
            }
            Expr::Binary(op, a, b) => {
                let (a, b) = (a.eval(x)?, b.eval(x)?);
                match op {
                    BinaryOp::Add => a + b,
                    BinaryOp::Sub => a - b,
                    BinaryOp::Mul => a * b,
                    BinaryOp::Div if b == 0.0 => return Err(fail(EvalErrorKind::DivisionByZero)),
                    BinaryOp::Div => a / b,
                    BinaryOp::Pow => pow(a, b).ok_or(fail(EvalErrorKind::NonPositiveBase))?,
                }
            }
            Expr::Call(op, a, b) => {
                let (a, b) = (a.eval(x)?, b.eval(x)?);
                match op {
                    CallOp::Min => a.min(b),
                    CallOp::Max => a.max(b),
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(fail(EvalErrorKind::NonFinite))
        }
    }
}

// Non-negative integer exponents use repeated multiplication; anything else
// goes through exp(b·ln a) and needs a positive base.
fn pow(a: f64, b: f64) -> Option<f64> {
    if b >= 0.0 && b.fract() == 0.0 && b <= i32::MAX as f64 {
        Some(a.powi(b as i32))
    } else if a > 0.0 {
        Some((b * a.ln()).exp())
    } else {
        None
    }
}

/// Samples `e` at `n` equally spaced points of `[a, b]`.
pub fn sample(e: &Expr, a: f64, b: f64, n: usize) -> Result<SampledFunction> {
    let xs = uniform_grid(a, b, n)?;
    let ys = xs
        .iter()
        .map(|&x| e.eval(x))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    SampledFunction::new(xs, ys)
}

/// Fully parenthesized form; parsing it back yields the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Constant(c) if c.is_sign_negative() => write!(f, "(-{})", -c),
            Expr::Constant(c) => write!(f, "{c}"),
            Expr::Variable => f.write_str("x"),
            Expr::Unary(UnaryOp::Neg, a) => write!(f, "(-{a})"),
            Expr::Unary(op, a) => {
                let name = match op {
                    UnaryOp::Abs => "abs",
                    UnaryOp::Exp => "exp",
                    _ => "log",
                };
                write!(f, "{name}({a})")
            }
            Expr::Binary(op, a, b) => {
                let sym = match op {
                    BinaryOp::Add => '+',
                    BinaryOp::Sub => '-',
                    BinaryOp::Mul => '*',
                    BinaryOp::Div => '/',
                    BinaryOp::Pow => '^',
                };
                write!(f, "({a}{sym}{b})")
            }
            Expr::Call(op, a, b) => {
                let name = if *op == CallOp::Min { "min" } else { "max" };
                write!(f, "{name}({a},{b})")
            }
        }
    }
}
