//! Rational polynomial expressions over named generators.
//!
//! The syntax is `+ - * ^`, parentheses, integer or `p/q` literals and
//! identifiers; whitespace is ignored. `^` binds tighter than unary minus, so
//! `-x^2` is `-(x^2)`.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var { name: String, offset: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { src, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    /// Formal degrees of the terms of the expanded expression, before any
    /// cancellation (so `a*a` for odd `a` still has degree `2|a|`).
    pub fn term_degrees(&self, degree_of: &dyn Fn(&str) -> Option<u32>) -> Result<BTreeSet<u32>> {
        Ok(match self {
            Expr::Num(c) => {
                let mut s = BTreeSet::new();
                if !c.is_zero() {
                    s.insert(0);
                }
                s
            }
            Expr::Var { name, .. } => {
                let d = degree_of(name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                BTreeSet::from([d])
            }
            Expr::Neg(a) => a.term_degrees(degree_of)?,
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let mut s = a.term_degrees(degree_of)?;
                s.extend(b.term_degrees(degree_of)?);
                s
            }
            Expr::Mul(a, b) => {
                let da = a.term_degrees(degree_of)?;
                let db = b.term_degrees(degree_of)?;
                da.iter().flat_map(|x| db.iter().map(move |y| x + y)).collect()
            }
            Expr::Pow(a, k) => {
                if *k == 0 {
                    BTreeSet::from([0])
                } else {
                    a.term_degrees(degree_of)?.iter().map(|d| d * k).collect()
                }
            }
        })
    }

    /// Names of all variables mentioned, in order of first appearance.
    pub fn variables(&self) -> alloc::vec::Vec<String> {
        let mut out = alloc::vec::Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut alloc::vec::Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var { name, .. } => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
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
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let k = self.integer()?;
            let k: u32 = k
                .try_into()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while let Some(c) = self.peek_raw() {
            if c.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        self.src[start..self.pos]
            .parse::<BigInt>()
            .map_err(|_| self.error("bad integer"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let save = self.pos;
                if self.eat('/') {
                    self.skip_ws();
                    if self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
                        let den = self.integer()?;
                        if den.is_zero() {
                            return Err(self.error("division by zero"));
                        }
                        return Ok(Expr::Num(Rational::new(num, den)));
                    }
                    self.pos = save;
                    return Err(self.error("expected a denominator"));
                }
                Ok(Expr::Num(Rational::from_integer(num)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while let Some(c) = self.peek_raw() {
                    if c.is_alphanumeric() || c == '_' {
                        self.pos += c.len_utf8();
                    } else {
                        break;
                    }
                }
                Ok(Expr::Var {
                    name: self.src[start..self.pos].to_string(),
                    offset: start,
                })
            }
            Some(c) => Err(self.error(&format!("unexpected character `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// `1` as an expression; handy for building constants.
pub fn one() -> Expr {
    Expr::Num(Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(name: &str) -> Option<u32> {
        match name {
            "x" => Some(2),
            "a" => Some(3),
            _ => None,
        }
    }

    #[test]
    fn parses_rationals_and_powers() {
        let e = Expr::parse(" 1/2 * x ^ 3 - (a*a) ").unwrap();
        assert_eq!(e.term_degrees(&deg).unwrap(), BTreeSet::from([6]));
        assert_eq!(e.variables(), alloc::vec!["x".to_string(), "a".to_string()]);
    }

    #[test]
    fn zero_has_no_degree() {
        let e = Expr::parse("0").unwrap();
        assert!(e.term_degrees(&deg).unwrap().is_empty());
    }

    #[test]
    fn reports_offsets() {
        match Expr::parse("x + * a") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Expr::parse("x)"), Err(Error::Parse { .. })));
        assert!(matches!(
            Expr::parse("q").unwrap().term_degrees(&deg),
            Err(Error::UnknownGenerator(_))
        ));
    }
}
