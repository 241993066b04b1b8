//! Expression language for warping functions of the radial variable `r`.
//!
//! Grammar (EBNF, also reproduced in the README):
//!
//! ```text
//! expr   := term  { ("+" | "-") term }
//! term   := unary { ("*" | "/") unary }
//! unary  := "-" unary | power
//! power  := atom [ "^" unary ]                     (right-associative)
//! atom   := number | "r" | func "(" expr ")"
//!         | "bump" "(" expr "," snum "," snum "," snum ")"
//!         | "(" expr ")"
//! func   := "sin" | "cos" | "exp" | "log" | "sqrt" | "tanh" | "sinh" | "cosh"
//! snum   := ["-"] number
//! ```
//!
//! `bump(e, c, i, o)` is the smooth plateau cutoff: 1 where |e − c| ≤ i, 0
//! where |e − c| ≥ o (0 < i < o constants). `bump_d1` / `bump_d2` name its
//! first and second derivative profiles so that differentiated trees still
//! print and re-parse.
//!
//! The canonical printer emits minimal parentheses; `parse(print(e))` is
//! structurally identical to `e`. Error offsets are 1-based byte positions.

use crate::bump;
use crate::float;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Tanh,
    Sinh,
    Cosh,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Tanh => "tanh",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }
}

/// Abstract syntax tree over the radial variable.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    /// The radial variable `r`.
    Var,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
    /// Smooth plateau cutoff of `arg`; `order` ∈ {0, 1, 2} selects the
    /// profile itself or one of its derivative profiles.
    Bump {
        order: u8,
        arg: Box<Expr>,
        center: f64,
        inner: f64,
        outer: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseError {
    /// Unexpected byte at `offset` (1-based).
    UnexpectedChar { offset: usize, ch: char },
    /// Input ended where more was required; `offset` is one past the end.
    UnexpectedEnd { offset: usize },
    UnexpectedToken { offset: usize, found: String, expected: &'static str },
    UnknownFunction { offset: usize, name: String },
    WrongArity { offset: usize, name: String, expected: usize, found: usize },
    InvalidNumber { offset: usize },
    /// bump parameters must satisfy 0 < inner < outer.
    BadBumpShape { offset: usize },
}

impl ParseError {
    /// 1-based byte offset of the error.
    pub fn offset(&self) -> usize {
        match self {
            ParseError::UnexpectedChar { offset, .. }
            | ParseError::UnexpectedEnd { offset }
            | ParseError::UnexpectedToken { offset, .. }
            | ParseError::UnknownFunction { offset, .. }
            | ParseError::WrongArity { offset, .. }
            | ParseError::InvalidNumber { offset }
            | ParseError::BadBumpShape { offset } => *offset,
        }
    }
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ParseError::UnexpectedChar { offset, ch } => {
                write!(f, "unexpected character '{ch}' at offset {offset}")
            }
            ParseError::UnexpectedEnd { offset } => {
                write!(f, "unexpected end of input at offset {offset}")
            }
            ParseError::UnexpectedToken { offset, found, expected } => {
                write!(f, "expected {expected} but found '{found}' at offset {offset}")
            }
            ParseError::UnknownFunction { offset, name } => {
                write!(f, "unknown function '{name}' at offset {offset}")
            }
            ParseError::WrongArity { offset, name, expected, found } => write!(
                f,
                "function '{name}' takes {expected} argument(s), found {found} (offset {offset})"
            ),
            ParseError::InvalidNumber { offset } => {
                write!(f, "invalid numeric literal at offset {offset}")
            }
            ParseError::BadBumpShape { offset } => write!(
                f,
                "bump parameters must satisfy 0 < inner < outer (offset {offset})"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    LogNonPositive { r: f64, arg: f64 },
    SqrtNegative { r: f64, arg: f64 },
    DivByZero { r: f64 },
    PowDomain { r: f64, base: f64, exponent: f64 },
    NonFinite { r: f64 },
}

impl core::fmt::Display for EvalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EvalError::LogNonPositive { r, arg } => {
                write!(f, "log of non-positive value {arg} at r = {r}")
            }
            EvalError::SqrtNegative { r, arg } => {
                write!(f, "sqrt of negative value {arg} at r = {r}")
            }
            EvalError::DivByZero { r } => write!(f, "division by zero at r = {r}"),
            EvalError::PowDomain { r, base, exponent } => {
                write!(f, "{base}^{exponent} is undefined at r = {r}")
            }
            EvalError::NonFinite { r } => write!(f, "expression overflows at r = {r}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EvalError {}

/// Differentiation can fail only on a third derivative of a bump profile,
/// which has no closed form in this language.
#[derive(Debug, Clone, PartialEq)]
pub enum DiffError {
    BumpOrderExceeded,
}

impl core::fmt::Display for DiffError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DiffError::BumpOrderExceeded => {
                write!(f, "third derivative of a bump profile is not representable")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DiffError {}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("{v}"),
            Tok::Ident(s) => s.clone(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Comma => ",".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(text: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        loop {
            lx.skip_ws();
            if lx.pos >= lx.src.len() {
                break;
            }
            let start = lx.pos;
            let c = lx.src[lx.pos];
            let tok = match c {
                b'+' => {
                    lx.pos += 1;
                    Tok::Plus
                }
                b'-' => {
                    lx.pos += 1;
                    Tok::Minus
                }
                b'*' => {
                    lx.pos += 1;
                    Tok::Star
                }
                b'/' => {
                    lx.pos += 1;
                    Tok::Slash
                }
                b'^' => {
                    lx.pos += 1;
                    Tok::Caret
                }
                b'(' => {
                    lx.pos += 1;
                    Tok::LParen
                }
                b')' => {
                    lx.pos += 1;
                    Tok::RParen
                }
                b',' => {
                    lx.pos += 1;
                    Tok::Comma
                }
                b'0'..=b'9' | b'.' => lx.number(start)?,
                c if c.is_ascii_alphabetic() || c == b'_' => lx.ident(start),
                other => {
                    return Err(ParseError::UnexpectedChar {
                        offset: start + 1,
                        ch: other as char,
                    })
                }
            };
            out.push((tok, start + 1));
        }
        Ok(out)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn number(&mut self, start: usize) -> Result<Tok, ParseError> {
        let mut saw_exp = false;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            let take = match c {
                b'0'..=b'9' | b'.' => true,
                b'e' | b'E' if !saw_exp => {
                    saw_exp = true;
                    true
                }
                b'+' | b'-' if saw_exp && matches!(self.src[self.pos - 1], b'e' | b'E') => true,
                _ => false,
            };
            if !take {
                break;
            }
            self.pos += 1;
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<f64>()
            .map(Tok::Num)
            .map_err(|_| ParseError::InvalidNumber { offset: start + 1 })
    }

    fn ident(&mut self, start: usize) -> Tok {
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Tok::Ident(core::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    end_offset: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.idx).map(|(_, o)| *o).unwrap_or(self.end_offset)
    }

    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        let item = self
            .toks
            .get(self.idx)
            .cloned()
            .ok_or(ParseError::UnexpectedEnd { offset: self.end_offset })?;
        self.idx += 1;
        Ok(item)
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<(), ParseError> {
        let (tok, offset) = self.next()?;
        if tok == want {
            Ok(())
        } else {
            Err(ParseError::UnexpectedToken { offset, found: tok.describe(), expected })
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.idx += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Bin(BinOp::Add, Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.idx += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Bin(BinOp::Sub, Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.idx += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Bin(BinOp::Mul, Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.idx += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Bin(BinOp::Div, Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.idx += 1;
            let inner = self.unary()?;
            // Fold a minus applied directly to a literal so that negative
            // constants round-trip structurally.
            return Ok(match inner {
                Expr::Num(v) => Expr::Num(-v),
                other => Expr::Neg(Box::new(other)),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.idx += 1;
            let exponent = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (tok, offset) = self.next()?;
        match tok {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(name) => self.call(name, offset),
            other => Err(ParseError::UnexpectedToken {
                offset,
                found: other.describe(),
                expected: "a number, 'r', a function call, or '('",
            }),
        }
    }

    fn call(&mut self, name: String, offset: usize) -> Result<Expr, ParseError> {
        if name == "r" {
            return Ok(Expr::Var);
        }
        let func = match name.as_str() {
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "exp" => Some(Func::Exp),
            "log" => Some(Func::Log),
            "sqrt" => Some(Func::Sqrt),
            "tanh" => Some(Func::Tanh),
            "sinh" => Some(Func::Sinh),
            "cosh" => Some(Func::Cosh),
            _ => None,
        };
        let bump_order = match name.as_str() {
            "bump" => Some(0u8),
            "bump_d1" => Some(1u8),
            "bump_d2" => Some(2u8),
            _ => None,
        };
        if func.is_none() && bump_order.is_none() {
            return Err(ParseError::UnknownFunction { offset, name });
        }

        self.expect(Tok::LParen, "'('")?;
        let mut args = Vec::new();
        if !matches!(self.peek(), Some(Tok::RParen)) {
            loop {
                args.push((self.expr()?, self.offset()));
                if matches!(self.peek(), Some(Tok::Comma)) {
                    self.idx += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen, "')' or ','")?;

        if let Some(f) = func {
            if args.len() != 1 {
                return Err(ParseError::WrongArity {
                    offset,
                    name,
                    expected: 1,
                    found: args.len(),
                });
            }
            return Ok(Expr::Call(f, Box::new(args.remove(0).0)));
        }

        let order = bump_order.unwrap();
        if args.len() != 4 {
            return Err(ParseError::WrongArity { offset, name, expected: 4, found: args.len() });
        }
        let arg = args.remove(0).0;
        let mut params = [0.0f64; 3];
        for (slot, (e, argoff)) in params.iter_mut().zip(args) {
            match e {
                Expr::Num(v) => *slot = v,
                _ => {
                    return Err(ParseError::UnexpectedToken {
                        offset: argoff,
                        found: print(&e),
                        expected: "a numeric constant",
                    })
                }
            }
        }
        let [center, inner, outer] = params;
        if !(inner > 0.0 && outer > inner) {
            return Err(ParseError::BadBumpShape { offset });
        }
        Ok(Expr::Bump { order, arg: Box::new(arg), center, inner, outer })
    }
}

/// Parse an expression in the radial variable.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = Lexer::tokenize(text)?;
    let end_offset = text.len() + 1;
    let mut p = Parser { toks, idx: 0, end_offset };
    let e = p.expr()?;
    if let Some(tok) = p.peek() {
        return Err(ParseError::UnexpectedToken {
            offset: p.offset(),
            found: tok.describe(),
            expected: "end of input or an operator",
        });
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

/// Precedence levels used by both the parser and the printer. Atoms are 5,
/// `^` is 4, unary minus 3, `*` `/` 2, `+` `-` 1. A negative literal prints
/// with a leading minus, so it carries unary precedence.
fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Num(v) if *v < 0.0 => 3,
        Expr::Num(_) | Expr::Var | Expr::Call(..) | Expr::Bump { .. } => 5,
        Expr::Bin(BinOp::Pow, ..) => 4,
        Expr::Neg(_) => 3,
        Expr::Bin(BinOp::Mul, ..) | Expr::Bin(BinOp::Div, ..) => 2,
        Expr::Bin(BinOp::Add, ..) | Expr::Bin(BinOp::Sub, ..) => 1,
    }
}

fn write_child(out: &mut String, child: &Expr, needs_parens: bool) {
    if needs_parens {
        out.push('(');
        write_expr(out, child);
        out.push(')');
    } else {
        write_expr(out, child);
    }
}

fn write_expr(out: &mut String, e: &Expr) {
    match e {
        Expr::Num(v) => {
            // `{}` on f64 is the shortest representation that re-parses to
            // the same bits, which the round-trip property depends on.
            out.push_str(&format!("{v}"));
        }
        Expr::Var => out.push('r'),
        Expr::Neg(inner) => {
            out.push('-');
            write_child(out, inner, precedence(inner) < 3);
        }
        Expr::Bin(op, lhs, rhs) => {
            let (sym, lp, rp) = match op {
                // Left-associative: right child at equal precedence needs parens.
                BinOp::Add => ("+", 1, 2),
                BinOp::Sub => ("-", 1, 2),
                BinOp::Mul => ("*", 2, 3),
                BinOp::Div => ("/", 2, 3),
                // Right-associative; grammar allows a unary on the right.
                BinOp::Pow => ("^", 5, 3),
            };
            write_child(out, lhs, precedence(lhs) < lp);
            out.push_str(sym);
            write_child(out, rhs, precedence(rhs) < rp);
        }
        Expr::Call(f, arg) => {
            out.push_str(f.name());
            out.push('(');
            write_expr(out, arg);
            out.push(')');
        }
        Expr::Bump { order, arg, center, inner, outer } => {
            out.push_str(match order {
                0 => "bump",
                1 => "bump_d1",
                _ => "bump_d2",
            });
            out.push('(');
            write_expr(out, arg);
            out.push_str(&format!(",{center},{inner},{outer}"));
            out.push(')');
        }
    }
}

/// Canonical printer; `parse(print(e))` is structurally identical to `e`.
pub fn print(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e);
    out
}

impl core::fmt::Display for Expr {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&print(self))
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

impl Expr {
    /// Evaluate at radius `r`.
    pub fn eval(&self, r: f64) -> Result<f64, EvalError> {
        let v = self.eval_inner(r)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite { r })
        }
    }

    fn eval_inner(&self, r: f64) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Var => r,
            Expr::Neg(e) => -e.eval_inner(r)?,
            Expr::Bin(op, lhs, rhs) => {
                let a = lhs.eval_inner(r)?;
                let b = rhs.eval_inner(r)?;
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == 0.0 {
                            return Err(EvalError::DivByZero { r });
                        }
                        a / b
                    }
                    BinOp::Pow => pow_checked(a, b, r)?,
                }
            }
            Expr::Call(f, arg) => {
                let x = arg.eval_inner(r)?;
                match f {
                    Func::Sin => float::sin(x),
                    Func::Cos => float::cos(x),
                    Func::Exp => float::exp(x),
                    Func::Log => {
                        if x <= 0.0 {
                            return Err(EvalError::LogNonPositive { r, arg: x });
                        }
                        float::ln(x)
                    }
                    Func::Sqrt => {
                        if x < 0.0 {
                            return Err(EvalError::SqrtNegative { r, arg: x });
                        }
                        float::sqrt(x)
                    }
                    Func::Tanh => float::tanh(x),
                    Func::Sinh => float::sinh(x),
                    Func::Cosh => float::cosh(x),
                }
            }
            Expr::Bump { order, arg, center, inner, outer } => {
                let x = arg.eval_inner(r)?;
                let parts = bump::profile_parts(x, *center, *inner, *outer);
                match order {
                    0 => parts.0,
                    1 => parts.1,
                    _ => parts.2,
                }
            }
        })
    }
}

fn pow_checked(base: f64, exponent: f64, r: f64) -> Result<f64, EvalError> {
    if base > 0.0 {
        return Ok(float::pow(base, exponent));
    }
    if base == 0.0 {
        return if exponent > 0.0 {
            Ok(0.0)
        } else if exponent == 0.0 {
            Ok(1.0)
        } else {
            Err(EvalError::PowDomain { r, base, exponent })
        };
    }
    // Negative base: only integer exponents of reasonable size are defined.
    if exponent == float::round(exponent) && float::abs(exponent) < 1e15 {
        Ok(float::pow(base, exponent))
    } else {
        Err(EvalError::PowDomain { r, base, exponent })
    }
}

// ---------------------------------------------------------------------------
// Symbolic differentiation
// ---------------------------------------------------------------------------

fn num(v: f64) -> Expr {
    Expr::Num(v)
}

fn boxed(e: Expr) -> Box<Expr> {
    Box::new(e)
}

fn is_zero(e: &Expr) -> bool {
    matches!(e, Expr::Num(v) if *v == 0.0)
}

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Num(v) if *v == 1.0)
}

/// Constructors with light constant folding, so that second derivatives of
/// nested expressions stay reasonably sized.
fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), Expr::Num(y)) => num(x + y),
        (a, b) if is_zero(&a) => b,
        (a, b) if is_zero(&b) => a,
        (a, b) => Expr::Bin(BinOp::Add, boxed(a), boxed(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), Expr::Num(y)) => num(x - y),
        (a, b) if is_zero(&b) => a,
        (a, b) if is_zero(&a) => neg(b),
        (a, b) => Expr::Bin(BinOp::Sub, boxed(a), boxed(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), Expr::Num(y)) => num(x * y),
        (a, b) if is_zero(&a) || is_zero(&b) => num(0.0),
        (a, b) if is_one(&a) => b,
        (a, b) if is_one(&b) => a,
        (a, b) => Expr::Bin(BinOp::Mul, boxed(a), boxed(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (a, b) if is_zero(&a) && !is_zero(&b) => num(0.0),
        (a, b) if is_one(&b) => a,
        (a, b) => Expr::Bin(BinOp::Div, boxed(a), boxed(b)),
    }
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Num(x) => num(-x),
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(boxed(other)),
    }
}

fn powe(a: Expr, b: Expr) -> Expr {
    if is_zero(&b) {
        return num(1.0);
    }
    if is_one(&b) {
        return a;
    }
    Expr::Bin(BinOp::Pow, boxed(a), boxed(b))
}

fn call(f: Func, arg: Expr) -> Expr {
    Expr::Call(f, boxed(arg))
}

impl Expr {
    /// Symbolic derivative with respect to `r`.
    pub fn derivative(&self) -> Result<Expr, DiffError> {
        Ok(match self {
            Expr::Num(_) => num(0.0),
            Expr::Var => num(1.0),
            Expr::Neg(e) => neg(e.derivative()?),
            Expr::Bin(BinOp::Add, a, b) => add(a.derivative()?, b.derivative()?),
            Expr::Bin(BinOp::Sub, a, b) => sub(a.derivative()?, b.derivative()?),
            Expr::Bin(BinOp::Mul, a, b) => add(
                mul(a.derivative()?, (**b).clone()),
                mul((**a).clone(), b.derivative()?),
            ),
            Expr::Bin(BinOp::Div, a, b) => {
                // (a/b)′ = (a′b − ab′)/b²
                let numerator = sub(
                    mul(a.derivative()?, (**b).clone()),
                    mul((**a).clone(), b.derivative()?),
                );
                div(numerator, powe((**b).clone(), num(2.0)))
            }
            Expr::Bin(BinOp::Pow, a, b) => match &**b {
                // Constant exponent: power rule, valid wherever the base is.
                Expr::Num(c) => mul(
                    mul(num(*c), powe((**a).clone(), num(c - 1.0))),
                    a.derivative()?,
                ),
                // General case: a^b · (b′ ln a + b a′ / a), requires a > 0.
                _ => mul(
                    powe((**a).clone(), (**b).clone()),
                    add(
                        mul(b.derivative()?, call(Func::Log, (**a).clone())),
                        div(mul((**b).clone(), a.derivative()?), (**a).clone()),
                    ),
                ),
            },
            Expr::Call(f, arg) => {
                let inner = arg.derivative()?;
                let outer = match f {
                    Func::Sin => call(Func::Cos, (**arg).clone()),
                    Func::Cos => neg(call(Func::Sin, (**arg).clone())),
                    Func::Exp => call(Func::Exp, (**arg).clone()),
                    Func::Log => div(num(1.0), (**arg).clone()),
                    Func::Sqrt => div(num(0.5), call(Func::Sqrt, (**arg).clone())),
                    // tanh′ = 1 − tanh²
                    Func::Tanh => sub(
                        num(1.0),
                        powe(call(Func::Tanh, (**arg).clone()), num(2.0)),
                    ),
                    Func::Sinh => call(Func::Cosh, (**arg).clone()),
                    Func::Cosh => call(Func::Sinh, (**arg).clone()),
                };
                mul(outer, inner)
            }
            Expr::Bump { order, arg, center, inner, outer } => {
                if *order >= 2 {
                    return Err(DiffError::BumpOrderExceeded);
                }
                mul(
                    Expr::Bump {
                        order: order + 1,
                        arg: arg.clone(),
                        center: *center,
                        inner: *inner,
                        outer: *outer,
                    },
                    arg.derivative()?,
                )
            }
        })
    }
}
