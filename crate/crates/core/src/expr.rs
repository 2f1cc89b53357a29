//! A small expression language for rational functions.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' exponent)?
//! exponent := '-'? digits | '(' '-'? digits ')'
//! atom  := digits | 'q' | 'x' | 'q1' | 'q2' | '(' expr ')'
//! ```

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::ratfun::{RatFun, Var};
use crate::scalars::{ArithError, Field, Rational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("parse error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("exponent at byte {offset} is not an integer")]
    NonIntegerExponent { offset: usize },
    #[error("expected a function of one variable, found {0}")]
    TooManyVariables(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::NonIntegerExponent { offset } => Some(*offset),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

const VARS: [Var; 4] = [Var::Q, Var::X, Var::Q1, Var::Q2];

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, ParseError> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("unexpected input"));
        }
        Ok(e)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                out.insert(*v);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Evaluate with `var` mapped by `leaf`.
    pub fn eval_with<F: Field>(&self, leaf: &impl Fn(Var) -> F) -> Result<F, ArithError> {
        Ok(match self {
            Expr::Int(n) => F::from_rational(&Rational::from_integer(n.clone())),
            Expr::Var(v) => leaf(*v),
            Expr::Neg(a) => -a.eval_with(leaf)?,
            Expr::Add(a, b) => a.eval_with(leaf)? + b.eval_with(leaf)?,
            Expr::Sub(a, b) => a.eval_with(leaf)? - b.eval_with(leaf)?,
            Expr::Mul(a, b) => a.eval_with(leaf)? * b.eval_with(leaf)?,
            Expr::Div(a, b) => a.eval_with(leaf)?.div(&b.eval_with(leaf)?)?,
            Expr::Pow(a, e) => {
                let base = a.eval_with(leaf)?;
                if *e >= 0 {
                    base.pow(*e as u32)
                } else {
                    base.inv()?.pow(e.unsigned_abs() as u32)
                }
            }
        })
    }

    /// As a function of its single variable (`q` if it has none).
    pub fn to_ratfun(&self) -> Result<RatFun<Rational>, ParseError> {
        let vars = self.variables();
        if vars.len() > 1 {
            return Err(ParseError::TooManyVariables(names(&vars)));
        }
        let v = vars.into_iter().next().unwrap_or(Var::Q);
        Ok(self.eval_with(&|_| RatFun::var(v))?.with_var(v))
    }

    /// As an element of `Q(inner)(outer)`; variables other than these two are rejected.
    pub fn to_bivariate(&self, outer: Var, inner: Var) -> Result<RatFun<RatFun<Rational>>, ParseError> {
        let vars = self.variables();
        if vars.iter().any(|v| *v != outer && *v != inner) {
            return Err(ParseError::TooManyVariables(names(&vars)));
        }
        let f = self.eval_with(&|v| {
            if v == outer {
                RatFun::var(outer)
            } else {
                RatFun::constant(outer, RatFun::var(inner))
            }
        })?;
        Ok(f.with_var(outer))
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Var(_) => 5,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

fn names(vars: &BTreeSet<Var>) -> String {
    vars.iter().map(|v| v.name()).collect::<Vec<_>>().join(", ")
}

/// Prints with the fewest parentheses that re-parse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.fmt_child(f, 3)
            }
            Expr::Add(a, b) => {
                a.fmt_child(f, 1)?;
                f.write_str(" + ")?;
                b.fmt_child(f, 2)
            }
            Expr::Sub(a, b) => {
                a.fmt_child(f, 1)?;
                f.write_str(" - ")?;
                b.fmt_child(f, 2)
            }
            Expr::Mul(a, b) => {
                a.fmt_child(f, 2)?;
                f.write_str("*")?;
                b.fmt_child(f, 3)
            }
            Expr::Div(a, b) => {
                a.fmt_child(f, 2)?;
                f.write_str("/")?;
                b.fmt_child(f, 3)
            }
            Expr::Pow(a, e) => {
                a.fmt_child(f, 5)?;
                if *e < 0 {
                    write!(f, "^({e})")
                } else {
                    write!(f, "^{e}")
                }
            }
        }
    }
}

/// Parse a rational function of one variable among `q`, `x`, `q1`, `q2`.
pub fn parse_ratfun(text: &str) -> Result<RatFun<Rational>, ParseError> {
    Expr::parse(text)?.to_ratfun()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> ParseError {
        ParseError::Syntax { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let start = {
            self.skip_ws();
            self.pos
        };
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() || paren && !self.eat(b')') || matches!(self.peek(), Some(b'.') | Some(b'0'..=b'9')) {
            return Err(ParseError::NonIntegerExponent { offset: start });
        }
        let e: i64 = digits.parse().map_err(|_| ParseError::NonIntegerExponent { offset: start })?;
        Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
    }

    fn digits(&mut self) -> String {
        let s = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[s..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(b'0'..=b'9') => {
                let d = self.digits();
                if self.src.get(self.pos) == Some(&b'.') {
                    return Err(self.err("decimal literals are not supported; write a fraction"));
                }
                Ok(Expr::Int(d.parse().expect("digits")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let s = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[s..self.pos]).expect("ascii");
                match Var::parse(name).filter(|v| VARS.contains(v)) {
                    Some(v) => Ok(Expr::Var(v)),
                    None => {
                        self.pos = s;
                        Err(self.err(&format!("unknown variable '{name}'")))
                    }
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus1::CorrelatorTable;
    use crate::scalars::rat;

    #[test]
    fn one_point_function() {
        let f = parse_ratfun("1/((1-q^4)*(1-q^6))").unwrap();
        assert_eq!(f, CorrelatorTable::point().one_point);
        assert_eq!(parse_ratfun("q").unwrap(), RatFun::var(Var::Q));
    }

    #[test]
    fn unbalanced_parenthesis_offset() {
        let e = parse_ratfun("1/(1-q^5").unwrap_err();
        assert_eq!(e.offset(), Some(8));
        assert!(matches!(e, ParseError::Syntax { .. }));
    }

    #[test]
    fn exponents() {
        assert!(matches!(parse_ratfun("q^1.5"), Err(ParseError::NonIntegerExponent { offset: 2 })));
        assert!(matches!(parse_ratfun("q^q"), Err(ParseError::NonIntegerExponent { .. })));
        let f = parse_ratfun("q^(-2) + q^-1").unwrap();
        let q = RatFun::<Rational>::var(Var::Q);
        assert_eq!(f, q.pow(2).inv().unwrap() + &q.inv().unwrap());
    }

    #[test]
    fn print_parse_fixed_point() {
        for s in ["1/((1-q^4)*(1-q^6))", "-x^2 - (1 - x)*3", "q1*q2/((1-q1)^2*(1-q2)^2)", "2^(-3)*q - -q", "a"] {
            let Ok(e) = Expr::parse(s) else { continue };
            let p = e.to_string();
            let e2 = Expr::parse(&p).unwrap();
            assert_eq!(e2, e, "{s} -> {p}");
            assert_eq!(e2.to_string(), p);
        }
    }

    #[test]
    fn bivariate_and_errors() {
        let f = Expr::parse("1/(1-q1*q2)").unwrap().to_bivariate(Var::Q1, Var::Q2).unwrap();
        let v = f.eval(&RatFun::from_rational(&rat(1, 2))).unwrap();
        assert_eq!(v.eval(&rat(1, 3)).unwrap(), rat(6, 5));
        assert!(matches!(parse_ratfun("q1 + q2"), Err(ParseError::TooManyVariables(_))));
        assert!(matches!(parse_ratfun("y"), Err(ParseError::Syntax { offset: 0, .. })));
        assert!(matches!(parse_ratfun("1/(q-q)"), Err(ParseError::Arith(ArithError::DivisionByZero))));
    }
}
