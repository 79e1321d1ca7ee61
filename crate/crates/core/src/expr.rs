//! Scalar expressions in one variable `t`, with symbolic differentiation.
//!
//! Grammar: `+ - * / ^` (also `− × ÷`), unary minus, parentheses, numeric
//! literals, the constant `pi`, caller-supplied named constants and the
//! functions `sin`, `cos`, `sqrt`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::Vector3;

use crate::curve::Curve3;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Sqrt(Box<Expr>),
    /// Only produced by differentiation of non-constant exponents.
    Ln(Box<Expr>),
}

use Expr::*;

fn num(x: f64) -> Expr {
    Num(x)
}

fn neg(a: Expr) -> Expr {
    match a {
        Num(x) => Num(-x),
        Neg(inner) => *inner,
        other => Neg(Box::new(other)),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Num(x), Num(y)) => Num(x + y),
        (Num(z), e) | (e, Num(z)) if z == 0.0 => e,
        (a, Neg(b)) => sub(a, *b),
        (a, b) => Add(Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Num(x), Num(y)) => Num(x - y),
        (e, Num(z)) if z == 0.0 => e,
        (Num(z), e) if z == 0.0 => neg(e),
        (a, Neg(b)) => add(a, *b),
        (a, b) => Sub(Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Num(x), Num(y)) => Num(x * y),
        (Num(z), _) | (_, Num(z)) if z == 0.0 => Num(0.0),
        (Num(o), e) | (e, Num(o)) if o == 1.0 => e,
        (Num(m), e) | (e, Num(m)) if m == -1.0 => neg(e),
        (Neg(a), b) => neg(mul(*a, b)),
        (a, Neg(b)) => neg(mul(a, *b)),
        (e, Num(c)) => Mul(Box::new(Num(c)), Box::new(e)),
        (a, b) => Mul(Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Num(x), Num(y)) if y != 0.0 => Num(x / y),
        (Num(z), _) if z == 0.0 => Num(0.0),
        (e, Num(o)) if o == 1.0 => e,
        (e, Num(c)) if c != 0.0 => mul(Num(1.0 / c), e),
        (a, b) => Div(Box::new(a), Box::new(b)),
    }
}

fn pow(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Num(x), Num(y)) => Num(x.powf(y)),
        (_, Num(z)) if z == 0.0 => Num(1.0),
        (e, Num(o)) if o == 1.0 => e,
        (a, b) => Pow(Box::new(a), Box::new(b)),
    }
}

fn unary(f: fn(Box<Expr>) -> Expr, eval: fn(f64) -> f64, a: Expr) -> Expr {
    match a {
        Num(x) => Num(eval(x)),
        other => f(Box::new(other)),
    }
}

impl Expr {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Num(x) => *x,
            Var => t,
            Neg(a) => -a.eval(t),
            Add(a, b) => a.eval(t) + b.eval(t),
            Sub(a, b) => a.eval(t) - b.eval(t),
            Mul(a, b) => a.eval(t) * b.eval(t),
            Div(a, b) => a.eval(t) / b.eval(t),
            Pow(a, b) => pow_eval(a.eval(t), b, t),
            Sin(a) => a.eval(t).sin(),
            Cos(a) => a.eval(t).cos(),
            Sqrt(a) => a.eval(t).sqrt(),
            Ln(a) => a.eval(t).ln(),
        }
    }

    /// Symbolic derivative with respect to the variable.
    pub fn derivative(&self) -> Expr {
        match self {
            Num(_) => num(0.0),
            Var => num(1.0),
            Neg(a) => neg(a.derivative()),
            Add(a, b) => add(a.derivative(), b.derivative()),
            Sub(a, b) => sub(a.derivative(), b.derivative()),
            Mul(a, b) => add(
                mul(a.derivative(), (**b).clone()),
                mul((**a).clone(), b.derivative()),
            ),
            Div(a, b) => div(
                sub(
                    mul(a.derivative(), (**b).clone()),
                    mul((**a).clone(), b.derivative()),
                ),
                pow((**b).clone(), num(2.0)),
            ),
            Pow(a, b) => match (&**a, &**b) {
                (_, Num(c)) => mul(
                    mul(num(*c), pow((**a).clone(), num(c - 1.0))),
                    a.derivative(),
                ),
                (Num(base), _) => mul(
                    mul(self.clone(), num(base.ln())),
                    b.derivative(),
                ),
                _ => mul(
                    self.clone(),
                    add(
                        mul(b.derivative(), unary(Ln, f64::ln, (**a).clone())),
                        div(mul((**b).clone(), a.derivative()), (**a).clone()),
                    ),
                ),
            },
            Sin(a) => mul(unary(Cos, f64::cos, (**a).clone()), a.derivative()),
            Cos(a) => neg(mul(unary(Sin, f64::sin, (**a).clone()), a.derivative())),
            Sqrt(a) => div(a.derivative(), mul(num(2.0), self.clone())),
            Ln(a) => div(a.derivative(), (**a).clone()),
        }
    }

    pub fn parse(text: &str) -> Result<Expr> {
        Self::parse_with(text, &[])
    }

    /// Parses with additional named constants.
    pub fn parse_with(text: &str, constants: &[(&str, f64)]) -> Result<Expr> {
        let tokens = tokenize(text)?;
        let mut p = Parser {
            tokens: &tokens,
            pos: 0,
            constants,
            end: text.chars().count(),
        };
        let e = p.expr()?;
        if let Some(tok) = p.peek() {
            return Err(Error::Parse {
                position: tok.pos,
                message: format!("unexpected {}", tok.kind),
            });
        }
        Ok(e)
    }
}

fn pow_eval(base: f64, exponent: &Expr, t: f64) -> f64 {
    match exponent {
        Num(n) if n.fract() == 0.0 && n.abs() <= 64.0 => base.powi(*n as i32),
        e => base.powf(e.eval(t)),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokKind {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

impl fmt::Display for TokKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokKind::Num(x) => write!(f, "number {x}"),
            TokKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokKind::Op(c) => write!(f, "operator `{c}`"),
            TokKind::LParen => write!(f, "`(`"),
            TokKind::RParen => write!(f, "`)`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokKind,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let pos = i;
        let kind = match c {
            '+' => TokKind::Op('+'),
            '-' | '−' => TokKind::Op('-'),
            '*' | '×' => TokKind::Op('*'),
            '/' | '÷' => TokKind::Op('/'),
            '^' => TokKind::Op('^'),
            '(' => TokKind::LParen,
            ')' => TokKind::RParen,
            d if d.is_ascii_digit() || d == '.' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                    j += 1;
                }
                if j < chars.len() && (chars[j] == 'e' || chars[j] == 'E') {
                    let mut k = j + 1;
                    if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                        k += 1;
                    }
                    if k < chars.len() && chars[k].is_ascii_digit() {
                        while k < chars.len() && chars[k].is_ascii_digit() {
                            k += 1;
                        }
                        j = k;
                    }
                }
                let lit: String = chars[i..j].iter().collect();
                let value = lit.parse::<f64>().map_err(|_| Error::Parse {
                    position: pos,
                    message: format!("malformed number `{lit}`"),
                })?;
                i = j;
                out.push(Token {
                    kind: TokKind::Num(value),
                    pos,
                });
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let name: String = chars[i..j].iter().collect();
                i = j;
                out.push(Token {
                    kind: TokKind::Ident(name),
                    pos,
                });
                continue;
            }
            other => {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Token { kind, pos });
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    constants: &'a [(&'a str, f64)],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn eat_op(&mut self, ops: &[char]) -> Option<char> {
        match self.peek() {
            Some(Token {
                kind: TokKind::Op(c),
                ..
            }) if ops.contains(c) => {
                let c = *c;
                self.pos += 1;
                Some(c)
            }
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(op) = self.eat_op(&['+', '-']) {
            let rhs = self.term()?;
            lhs = if op == '+' { add(lhs, rhs) } else { sub(lhs, rhs) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.eat_op(&['*', '/']) {
            let rhs = self.unary()?;
            lhs = if op == '*' { mul(lhs, rhs) } else { div(lhs, rhs) };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.eat_op(&['-', '+']) {
            Some('-') => Ok(neg(self.unary()?)),
            Some(_) => self.unary(),
            None => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat_op(&['^']).is_some() {
            let exponent = self.unary()?;
            return Ok(pow(base, exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let position = self.here();
        let Some(tok) = self.next() else {
            return Err(Error::Parse {
                position,
                message: "unexpected end of expression".into(),
            });
        };
        match tok.kind {
            TokKind::Num(x) => Ok(num(x)),
            TokKind::LParen => {
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            TokKind::Ident(name) => {
                let func: Option<(fn(Box<Expr>) -> Expr, fn(f64) -> f64)> = match name.as_str() {
                    "sin" => Some((Sin, f64::sin)),
                    "cos" => Some((Cos, f64::cos)),
                    "sqrt" => Some((Sqrt, f64::sqrt)),
                    _ => None,
                };
                if let Some((ctor, eval)) = func {
                    match self.next() {
                        Some(Token {
                            kind: TokKind::LParen,
                            ..
                        }) => {}
                        other => {
                            return Err(Error::Parse {
                                position: other.map_or(self.end, |t| t.pos),
                                message: format!("expected `(` after `{name}`"),
                            })
                        }
                    }
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    return Ok(unary(ctor, eval, arg));
                }
                match name.as_str() {
                    "t" => Ok(Var),
                    "pi" => Ok(num(PI)),
                    _ => self
                        .constants
                        .iter()
                        .find(|(n, _)| *n == name)
                        .map(|(_, v)| num(*v))
                        .ok_or(Error::UnknownIdentifier {
                            name,
                            position: tok.pos,
                        }),
                }
            }
            other => Err(Error::Parse {
                position: tok.pos,
                message: format!("unexpected {other}"),
            }),
        }
    }

    fn expect_rparen(&mut self) -> Result<()> {
        let position = self.here();
        match self.next() {
            Some(Token {
                kind: TokKind::RParen,
                ..
            }) => Ok(()),
            _ => Err(Error::Parse {
                position,
                message: "expected `)`".into(),
            }),
        }
    }
}

/// Three component expressions together with their first three derivatives.
#[derive(Debug, Clone)]
pub struct CurveExpression {
    components: [Expr; 3],
    derivatives: [[Expr; 3]; 3],
}

impl CurveExpression {
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with(text, &[])
    }

    pub fn parse_with(text: &str, constants: &[(&str, f64)]) -> Result<Self> {
        let pieces = split_components(text)?;
        let mut comps = Vec::with_capacity(3);
        for (offset, piece) in pieces {
            let e = Expr::parse_with(piece, constants).map_err(|e| shift_position(e, offset))?;
            comps.push(e);
        }
        let components: [Expr; 3] = comps.try_into().expect("three components");
        let d1 = components.clone().map(|e| e.derivative());
        let d2 = d1.clone().map(|e| e.derivative());
        let d3 = d2.clone().map(|e| e.derivative());
        Ok(Self {
            components,
            derivatives: [d1, d2, d3],
        })
    }

    pub fn point(&self, t: f64) -> Vector3<f64> {
        Vector3::new(
            self.components[0].eval(t),
            self.components[1].eval(t),
            self.components[2].eval(t),
        )
    }

    pub fn derivative(&self, t: f64, order: usize) -> Vector3<f64> {
        let d = &self.derivatives[order - 1];
        Vector3::new(d[0].eval(t), d[1].eval(t), d[2].eval(t))
    }

    /// A curve on `domain` with the symbolic derivatives attached.
    pub fn into_curve(self, domain: (f64, f64)) -> Result<Curve3> {
        let this = Arc::new(self);
        let (a, b, c, d) = (this.clone(), this.clone(), this.clone(), this);
        Curve3::new(domain, move |t| a.point(t))?.with_derivatives(
            Some(Arc::new(move |t| b.derivative(t, 1))),
            Some(Arc::new(move |t| c.derivative(t, 2))),
            Some(Arc::new(move |t| d.derivative(t, 3))),
        )
    }
}

fn shift_position(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse {
            position: position + offset,
            message,
        },
        Error::UnknownIdentifier { name, position } => Error::UnknownIdentifier {
            name,
            position: position + offset,
        },
        other => other,
    }
}

fn split_components(text: &str) -> Result<Vec<(usize, &str)>> {
    let mut depth = 0i32;
    let mut pieces = Vec::new();
    let mut start_byte = 0;
    let mut start_char = 0;
    for (ci, (bi, c)) in text.char_indices().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                pieces.push((start_char, &text[start_byte..bi]));
                start_byte = bi + c.len_utf8();
                start_char = ci + 1;
            }
            _ => {}
        }
    }
    pieces.push((start_char, &text[start_byte..]));
    if pieces.len() != 3 {
        return Err(Error::Parse {
            position: 0,
            message: format!(
                "expected three comma-separated components, found {}",
                pieces.len()
            ),
        });
    }
    Ok(pieces)
}

/// Parses `"x(t), y(t), z(t)"` into a curve with symbolic derivatives.
pub fn parse_curve_expression(text: &str, domain: (f64, f64)) -> Result<Curve3> {
    CurveExpression::parse(text)?.into_curve(domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ev(s: &str, t: f64) -> f64 {
        Expr::parse(s).unwrap().eval(t)
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(ev("1 + 2 * 3", 0.0), 7.0);
        assert_eq!(ev("2 ^ 3 ^ 2", 0.0), 512.0);
        assert_eq!(ev("-2 ^ 2", 0.0), -4.0);
        assert_eq!(ev("(1 - 4) / 2", 0.0), -1.5);
        assert_eq!(ev("8 − 2 × 3 ÷ 4", 0.0), 6.5);
        assert_abs_diff_eq!(ev("sin(pi/2) + cos(0) + sqrt(4)", 0.0), 4.0, epsilon = 1e-15);
        assert_eq!(ev("1.5e2 + t", 1.0), 151.0);
    }

    #[test]
    fn derivatives_match_closed_forms() {
        let e = Expr::parse("t^3 * sin(2*t) + sqrt(1 + t^2) / cos(t)").unwrap();
        let d = e.derivative();
        let t = 0.37f64;
        let exact = 3.0 * t * t * (2.0 * t).sin()
            + t.powi(3) * 2.0 * (2.0 * t).cos()
            + (t / (1.0 + t * t).sqrt() * t.cos() + (1.0 + t * t).sqrt() * t.sin()) / t.cos().powi(2);
        assert_abs_diff_eq!(d.eval(t), exact, epsilon = 1e-12);

        let e = Expr::parse("2^t + t^t").unwrap();
        let exact = 2f64.powf(t) * 2f64.ln() + t.powf(t) * (t.ln() + 1.0);
        assert_abs_diff_eq!(e.derivative().eval(t), exact, epsilon = 1e-12);
    }

    #[test]
    fn errors_carry_positions() {
        match Expr::parse("1 + * 2") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        match Expr::parse("sin(t) + foo") {
            Err(Error::UnknownIdentifier { name, position }) => {
                assert_eq!(name, "foo");
                assert_eq!(position, 9);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(Expr::parse("(t + 1"), Err(Error::Parse { .. })));
        assert!(matches!(Expr::parse("t $ 2"), Err(Error::Parse { .. })));
        match CurveExpression::parse("t, 0, bar") {
            Err(Error::UnknownIdentifier { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        assert!(CurveExpression::parse("t, 0").is_err());
    }

    #[test]
    fn named_constants() {
        let e = Expr::parse_with("theta * t", &[("theta", 2.0)]).unwrap();
        assert_eq!(e.eval(3.0), 6.0);
    }

    #[test]
    fn curve_derivatives() {
        let c = CurveExpression::parse("cos(t), sin(t), t^2").unwrap();
        let t = 0.8f64;
        assert_abs_diff_eq!(c.derivative(t, 1).x, -t.sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(c.derivative(t, 2).y, -t.sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(c.derivative(t, 3).x, t.sin(), epsilon = 1e-15);
        assert_eq!(c.derivative(t, 3).z, 0.0);
    }
}
