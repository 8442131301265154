//! Noncommutative expressions over named generators:
//! `+ - * / ^`, commutators `[a, b]`, integers, parentheses, and `lhs = rhs`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{BigRational, RatFunc};
use crate::actions::{Context, VariableTable};
use crate::constructors::AlgebraSpec;
use crate::error::{Error, Result};
use crate::skewring::SkewElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Commutator(Box<Expr>, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Name(s) => write!(f, "{s}"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/{b}"),
            Expr::Pow(a, k) => write!(f, "{a}^{k}"),
            Expr::Commutator(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Int(s.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^[](),=".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek_sym(&self, c: char) -> bool {
        self.toks.get(self.pos) == Some(&Tok::Sym(c))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at token {} in {:?}", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let Some(Tok::Int(k)) = self.toks.get(self.pos).cloned() else {
                return Err(self.error("expected an integer exponent"));
            };
            self.pos += 1;
            let k = k.to_i64().ok_or_else(|| self.error("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Name(s))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(Expr::Commutator(Box::new(a), Box::new(b)))
            }
            _ => Err(self.error("expected an operand")),
        }
    }
}

/// Parses `expr` or `lhs = rhs`; the latter becomes `lhs − rhs`.
pub fn parse_relation(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0, src };
    let lhs = p.expr()?;
    let e = if p.eat('=') { Expr::Sub(Box::new(lhs), Box::new(p.expr()?)) } else { lhs };
    if p.pos != p.toks.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

impl Expr {
    /// Names referenced by the expression, in first-use order.
    pub fn names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Int(_) => {}
            Expr::Name(s) => {
                if !out.contains(&s.as_str()) {
                    out.push(s);
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_names(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Commutator(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
        }
    }

    /// Evaluates in `spec`; names resolve to generators first, then to
    /// variables of the context.
    pub fn eval(&self, spec: &AlgebraSpec) -> Result<SkewElement> {
        let ctx = &spec.context;
        Ok(match self {
            Expr::Int(n) => {
                SkewElement::from_coeff(ctx, RatFunc::constant(ctx.nvars(), BigRational::from_integer(n.clone())))
            }
            Expr::Name(s) => match spec.generators.get(s) {
                Some(g) => g.clone(),
                None if ctx.vars().index_of(s).is_some() => SkewElement::variable(ctx, s)?,
                None => return Err(Error::Definition(format!("unresolved name {s:?}"))),
            },
            Expr::Neg(a) => -&a.eval(spec)?,
            Expr::Add(a, b) => a.eval(spec)?.checked_add(&b.eval(spec)?)?,
            Expr::Sub(a, b) => a.eval(spec)?.checked_sub(&b.eval(spec)?)?,
            Expr::Mul(a, b) => a.eval(spec)?.checked_mul(&b.eval(spec)?)?,
            Expr::Div(a, b) => {
                let d = b.eval(spec)?;
                let c = coefficient_only(&d).ok_or_else(|| {
                    Error::Definition(format!("division by {b}, which is not a coefficient"))
                })?;
                a.eval(spec)?.checked_mul(&SkewElement::from_coeff(ctx, c.inv()?))?
            }
            Expr::Pow(a, k) => {
                let base = a.eval(spec)?;
                if *k >= 0 {
                    base.pow(u32::try_from(*k).map_err(|_| Error::Resource("exponent too large".into()))?)?
                } else {
                    let c = coefficient_only(&base)
                        .ok_or_else(|| Error::Definition(format!("negative power of {a}, which is not a coefficient")))?;
                    SkewElement::from_coeff(ctx, c.pow(*k)?)
                }
            }
            Expr::Commutator(a, b) => a.eval(spec)?.commutator(&b.eval(spec)?)?,
        })
    }
}

/// The coefficient of an element supported on the identity key only.
fn coefficient_only(u: &SkewElement) -> Option<RatFunc> {
    let ctx = u.context();
    match u.terms().iter().collect::<Vec<_>>()[..] {
        [] => Some(RatFunc::zero(ctx.nvars())),
        [(k, c)] if ctx.is_identity(k) => Some(c.clone()),
        _ => None,
    }
}

/// Parses a rational function in the named variables, e.g. `x1^2 - 3/2*x2`.
pub fn parse_coefficient(src: &str, vars: &VariableTable) -> Result<RatFunc> {
    let ctx = Context::builder(vars.clone()).build()?;
    let spec = AlgebraSpec { context: ctx, generators: Default::default(), gamma_generators: Vec::new() };
    let value = parse_relation(src)?.eval(&spec)?;
    coefficient_only(&value).ok_or_else(|| Error::Parse(format!("{src:?} is not a rational function")))
}

/// Evaluates an expression inside `spec`.
pub fn parse_element(src: &str, spec: &AlgebraSpec) -> Result<SkewElement> {
    parse_relation(src)?.eval(spec)
}
