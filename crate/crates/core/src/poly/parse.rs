//! Text grammar shared by every polynomial input.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := unary (('*'|'/') unary)*
//! unary   := '-' unary | power
//! power   := atom ['^' exponent]
//! exponent:= ['+'|'-'] INT | '(' ['+'|'-'] INT ')'
//! atom    := INT | IDENT | '(' expr ')'
//! ```
//!
//! Positions are 0-based byte offsets into the input.

use num_bigint::BigInt;
use num_traits::One;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::rational::Rational;
use super::PolyError;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    /// Index into the declared variable list.
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Divisor position is kept for error reporting.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64, usize),
}

/// Target of expression evaluation. The commutative instance builds a
/// `Polynomial`; the noncommutative one lives in `weyl`.
pub trait ExprAlgebra: Sized {
    fn int(n: &BigInt, nvars: usize) -> Self;
    fn var(index: usize, nvars: usize) -> Self;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn mul(self, other: Self) -> Self;
    fn neg(self) -> Self;
    fn div(self, other: Self, pos: usize) -> Result<Self, PolyError>;
    fn pow(self, n: i64, pos: usize) -> Result<Self, PolyError>;
}

impl Expr {
    pub fn eval<A: ExprAlgebra>(&self, nvars: usize) -> Result<A, PolyError> {
        Ok(match self {
            Expr::Int(n) => A::int(n, nvars),
            Expr::Var(i) => A::var(*i, nvars),
            Expr::Neg(a) => a.eval::<A>(nvars)?.neg(),
            Expr::Add(a, b) => a.eval::<A>(nvars)?.add(b.eval(nvars)?),
            Expr::Sub(a, b) => a.eval::<A>(nvars)?.sub(b.eval(nvars)?),
            Expr::Mul(a, b) => a.eval::<A>(nvars)?.mul(b.eval(nvars)?),
            Expr::Div(a, b, pos) => a.eval::<A>(nvars)?.div(b.eval(nvars)?, *pos)?,
            Expr::Pow(a, n, pos) => a.eval::<A>(nvars)?.pow(*n, *pos)?,
        })
    }
}

/// Polynomial over a fixed alphabet; the alphabet is attached by the caller.
struct CommPoly(Polynomial);

impl CommPoly {
    fn blank(nvars: usize) -> Vec<String> {
        (0..nvars).map(|i| format!("_{i}")).collect()
    }
}

impl ExprAlgebra for CommPoly {
    fn int(n: &BigInt, nvars: usize) -> Self {
        CommPoly(Polynomial::constant(
            &Self::blank(nvars),
            Rational::from_integer(n.clone()),
        ))
    }
    fn var(index: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        CommPoly(Polynomial::monomial(&Self::blank(nvars), e, Rational::one()))
    }
    fn add(self, other: Self) -> Self {
        CommPoly(self.0 + other.0)
    }
    fn sub(self, other: Self) -> Self {
        CommPoly(self.0 - other.0)
    }
    fn mul(self, other: Self) -> Self {
        CommPoly(self.0 * other.0)
    }
    fn neg(self) -> Self {
        CommPoly(-self.0)
    }
    fn div(self, other: Self, pos: usize) -> Result<Self, PolyError> {
        if other.0.is_zero() {
            return Err(PolyError::DivisionByZero { pos });
        }
        let inv = other
            .0
            .monomial_inverse()
            .ok_or(PolyError::NonMonomialDivision { pos })?;
        Ok(CommPoly(self.0 * inv))
    }
    fn pow(self, n: i64, pos: usize) -> Result<Self, PolyError> {
        if n < 0 && self.0.is_zero() {
            return Err(PolyError::DivisionByZero { pos });
        }
        self.0
            .pow_i(n)
            .map(CommPoly)
            .ok_or(PolyError::NonMonomialDivision { pos })
    }
}

/// Parses `text` over the declared `vars` and expands it commutatively.
pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Polynomial, PolyError> {
    let names: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    let expr = parse_expr(text, &names)?;
    let CommPoly(p) = expr.eval::<CommPoly>(names.len())?;
    // rebuild on the real alphabet (the evaluator used placeholder names)
    let mut out = Polynomial::zero(&names);
    for (m, c) in p.terms() {
        out.add_term(Monomial(m.0.clone()), c.clone());
    }
    Ok(out)
}

/// Parses `text` into an expression tree over the declared `vars`.
pub fn parse_expr(text: &str, vars: &[String]) -> Result<Expr, PolyError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        at: 0,
        vars,
        end: text.len(),
    };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(PolyError::Syntax {
            pos: t.pos,
            msg: format!("unexpected {}", t.kind.describe()),
        });
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Kind {
    fn describe(&self) -> String {
        match self {
            Kind::Int(n) => format!("integer `{n}`"),
            Kind::Ident(s) => format!("identifier `{s}`"),
            Kind::Plus => "`+`".into(),
            Kind::Minus => "`-`".into(),
            Kind::Star => "`*`".into(),
            Kind::Slash => "`/`".into(),
            Kind::Caret => "`^`".into(),
            Kind::LParen => "`(`".into(),
            Kind::RParen => "`)`".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Kind,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Kind::Plus,
            b'-' => Kind::Minus,
            b'*' => Kind::Star,
            b'/' => Kind::Slash,
            b'^' => Kind::Caret,
            b'(' => Kind::LParen,
            b')' => Kind::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push(Token {
                    kind: Kind::Int(n),
                    pos: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    kind: Kind::Ident(text[start..i].to_string()),
                    pos: start,
                });
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(PolyError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push(Token { kind, pos: start });
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    at: usize,
    vars: &'a [String],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn pos(&self) -> usize {
        self.peek().map(|t| t.pos).unwrap_or(self.end)
    }

    fn eat(&mut self, k: &Kind) -> bool {
        if self.peek().map(|t| &t.kind == k).unwrap_or(false) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, PolyError> {
        let mut lhs = if self.eat(&Kind::Plus) {
            self.term()?
        } else if self.eat(&Kind::Minus) {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.eat(&Kind::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Kind::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, PolyError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Kind::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(&Kind::Slash) {
                let pos = self.pos();
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, PolyError> {
        if self.eat(&Kind::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, PolyError> {
        let base_pos = self.pos();
        let base = self.atom()?;
        if self.eat(&Kind::Caret) {
            let n = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), n, base_pos));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, PolyError> {
        let paren = self.eat(&Kind::LParen);
        let neg = if self.eat(&Kind::Minus) {
            true
        } else {
            self.eat(&Kind::Plus);
            false
        };
        let pos = self.pos();
        let n = match self.peek().map(|t| t.kind.clone()) {
            Some(Kind::Int(n)) => {
                self.at += 1;
                i64::try_from(&n).map_err(|_| PolyError::Syntax {
                    pos,
                    msg: "exponent out of range".into(),
                })?
            }
            Some(k) => {
                return Err(PolyError::Syntax {
                    pos,
                    msg: format!("expected integer exponent, found {}", k.describe()),
                })
            }
            None => {
                return Err(PolyError::Syntax {
                    pos,
                    msg: "expected integer exponent, found end of input".into(),
                })
            }
        };
        if paren && !self.eat(&Kind::RParen) {
            return Err(PolyError::Syntax {
                pos: self.pos(),
                msg: "expected `)`".into(),
            });
        }
        Ok(if neg { -n } else { n })
    }

    fn atom(&mut self) -> Result<Expr, PolyError> {
        let pos = self.pos();
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => {
                return Err(PolyError::Syntax {
                    pos,
                    msg: "unexpected end of input".into(),
                })
            }
        };
        self.at += 1;
        match tok.kind {
            Kind::Int(n) => Ok(Expr::Int(n)),
            Kind::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(Expr::Var(i)),
                None => Err(PolyError::UndeclaredVariable { name, pos }),
            },
            Kind::LParen => {
                let e = self.expr()?;
                if !self.eat(&Kind::RParen) {
                    return Err(PolyError::Syntax {
                        pos: self.pos(),
                        msg: "expected `)`".into(),
                    });
                }
                Ok(e)
            }
            k => Err(PolyError::Syntax {
                pos,
                msg: format!("unexpected {}", k.describe()),
            }),
        }
    }
}
