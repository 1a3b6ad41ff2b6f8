//! A small expression language for polynomials, shared by fixtures and the
//! command-line front end.
//!
//! Grammar, with the usual precedences (`^` binds tightest, unary minus next):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' int)?
//! atom  := int ('/' int)? | ident ('(' int ')')? | '(' expr ')'
//! ```
//!
//! `g(2)` names generator `g` in tensor slot 2.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt, Option<BigInt>),
    Var(String, Option<u32>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the parsed text.
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expected {} but found {}", self.expected.join(" or "), self.found)
    }
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c == ' ' || c == '\t' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&mut self, expected: &[&str]) -> ParseError {
        self.skip_ws();
        let found = match self.src[self.pos..].chars().next() {
            Some(c) => format!("`{c}`"),
            None => "end of input".into(),
        };
        ParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
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

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> std::result::Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.int().ok_or_else(|| self.error(&["exponent"]))?;
            let e = e.parse::<u32>().map_err(|_| self.error(&["small exponent"]))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Expr, ParseError> {
        const EXPECTED: &[&str] = &["number", "identifier", "`(`", "`-`"];
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.int().unwrap().parse().unwrap();
                if self.eat('/') {
                    let d = self.int().ok_or_else(|| self.error(&["denominator"]))?;
                    return Ok(Expr::Num(n, Some(d.parse().unwrap())));
                }
                Ok(Expr::Num(n, None))
            }
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                while self.src[self.pos..].starts_with(is_ident_char) {
                    self.pos += 1;
                }
                let name = self.src[start..self.pos].to_string();
                // a slot suffix must follow the identifier directly
                if self.src[self.pos..].starts_with('(') {
                    let save = self.pos;
                    self.pos += 1;
                    if let Some(s) = self.int() {
                        if self.eat(')') {
                            return Ok(Expr::Var(name, Some(s.parse().unwrap())));
                        }
                    }
                    self.pos = save;
                    return Err(self.error(&["slot `(n)`"]));
                }
                Ok(Expr::Var(name, None))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error(&["`)`", "operator"]));
                }
                Ok(e)
            }
            _ => Err(self.error(EXPECTED)),
        }
    }
}

impl Expr {
    /// Parses a complete expression.
    pub fn parse(src: &str) -> std::result::Result<Expr, ParseError> {
        let mut p = Parser { src, pos: 0 };
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.error(&["operator", "end of expression"]));
        }
        Ok(e)
    }

    /// Parses an expression prefix; returns it with the number of bytes consumed.
    pub fn parse_prefix(src: &str) -> std::result::Result<(Expr, usize), ParseError> {
        let mut p = Parser { src, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        Ok((e, p.pos))
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(_, Some(_)) => 4,
            Expr::Num(..) | Expr::Var(..) => 5,
        }
    }

    /// Evaluates in `ring`: `g(s)` and `g` are looked up by name; other
    /// identifiers resolve through `scalar` (e.g. a field generator).
    pub fn to_poly(&self, ring: &Arc<PolyRing>, scalar: &dyn Fn(&str) -> Option<crate::field::Scalar>) -> Result<Poly> {
        let f = &ring.field;
        Ok(match self {
            Expr::Num(n, d) => {
                let r = BigRational::new(n.clone(), d.clone().unwrap_or_else(|| BigInt::from(1)));
                Poly::constant(ring, f.from_rational(&r)?)
            }
            Expr::Var(name, slot) => {
                let full = match slot {
                    Some(s) => format!("{name}({s})"),
                    None => name.clone(),
                };
                match ring.index_of(&full) {
                    Some(i) => Poly::var(ring, i),
                    None => match (slot, scalar(name)) {
                        (None, Some(c)) => Poly::constant(ring, c),
                        _ => return Err(Error::UnknownVariable(full)),
                    },
                }
            }
            Expr::Add(a, b) => &a.to_poly(ring, scalar)? + &b.to_poly(ring, scalar)?,
            Expr::Sub(a, b) => &a.to_poly(ring, scalar)? - &b.to_poly(ring, scalar)?,
            Expr::Mul(a, b) => &a.to_poly(ring, scalar)? * &b.to_poly(ring, scalar)?,
            Expr::Neg(a) => -&a.to_poly(ring, scalar)?,
            Expr::Pow(a, e) => a.to_poly(ring, scalar)?.pow(*e),
        })
    }

    /// Variable names used, with their slots.
    pub fn vars(&self) -> Vec<(String, Option<u32>)> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<(String, Option<u32>)>) {
        match self {
            Expr::Num(..) => {}
            Expr::Var(n, s) => {
                if !out.iter().any(|(m, t)| m == n && t == s) {
                    out.push((n.clone(), *s));
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr, min: u8, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if e.prec() < min {
                f.write_str("(")?;
                e.write(f)?;
                f.write_str(")")
            } else {
                e.write(f)
            }
        };
        match self {
            Expr::Num(n, None) => write!(f, "{n}"),
            Expr::Num(n, Some(d)) => write!(f, "{n}/{d}"),
            Expr::Var(n, None) => f.write_str(n),
            Expr::Var(n, Some(s)) => write!(f, "{n}({s})"),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                wrap(a, 1, f)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                wrap(b, 2, f)
            }
            Expr::Mul(a, b) => {
                wrap(a, 2, f)?;
                f.write_str("*")?;
                wrap(b, 3, f)
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                wrap(a, 3, f)
            }
            Expr::Pow(a, e) => {
                wrap(a, 5, f)?;
                write!(f, "^{e}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

/// Parses `src` and evaluates it in `ring`.
pub fn parse_poly(ring: &Arc<PolyRing>, src: &str) -> Result<Poly> {
    let e = Expr::parse(src).map_err(|e| Error::BadParameters(format!("`{src}`: {e}")))?;
    let field = ring.field.clone();
    e.to_poly(ring, &|name| {
        (field.generator_name() == Some(name)).then(|| field.generator().unwrap())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use proptest::prelude::*;

    #[test]
    fn parses_tensor_slots() {
        let e = Expr::parse("x(1)*e(2) + e(1)*x(2)").unwrap();
        assert_eq!(e.to_string(), "x(1)*e(2) + e(1)*x(2)");
        assert_eq!(e.vars().len(), 4);
        let ring = PolyRing::new(Field::rationals(), vec!["e(1)".into(), "e(2)".into()]);
        let p = parse_poly(&ring, "(e(1) + e(2))^2 - 1/2").unwrap();
        assert_eq!(p.to_string(), "e(1)^2 + 2*e(1)*e(2) + e(2)^2 - 1/2");
    }

    #[test]
    fn incomplete_expression_is_an_error() {
        let err = Expr::parse("e(1) + ").unwrap_err();
        assert_eq!(err.offset, 7);
        assert_eq!(err.found, "end of input");
        assert!(Expr::parse("e(x)").is_err());
        assert!(Expr::parse("(e").is_err());
    }

    #[test]
    fn minimal_parentheses() {
        for s in ["a - (b - c)", "-(a + b)*c", "(-a)^2", "-a^2", "a*(b*c)", "(a^2)^3", "1/2*x", "--a"] {
            assert_eq!(Expr::parse(s).unwrap().to_string(), s);
        }
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0i64..20).prop_map(|n| Expr::Num(BigInt::from(n), None)),
            (0i64..5, 1i64..5).prop_map(|(n, d)| Expr::Num(BigInt::from(n), Some(BigInt::from(d)))),
            prop_oneof![Just("e"), Just("x"), Just("c'")].prop_map(|v| Expr::Var(v.into(), None)),
            (prop_oneof![Just("e"), Just("h")], 1u32..4).prop_map(|(v, s)| Expr::Var(v.into(), Some(s))),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                (inner, 0u32..4).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(e in arb_expr()) {
            prop_assert_eq!(Expr::parse(&e.to_string()).unwrap(), e);
        }
    }
}
