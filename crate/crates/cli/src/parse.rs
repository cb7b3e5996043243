//! Text syntax for PBW expressions and polynomials.
//!
//! Expressions: `E`, `F`, `H`, rational literals (`3`, `3/2`), `+ - * ^`
//! and parentheses. `*` keeps factor order; juxtaposition is rejected.

use std::fmt;
use std::str::FromStr;

use smithalg::pbw::{Monomial, PbwElement};
use smithalg::poly::Polynomial;
use smithalg::{Algebra, Element, Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at position {}: expected one of {}, found {}",
            self.position,
            self.expected.join(", "),
            self.found
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number {n:?}"),
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push((start, Tok::Num(text[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(ParseError {
                    position: start,
                    expected: vec!["a token".into()],
                    found: format!("character {other:?}"),
                })
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

/// An unreduced expression tree; products keep their factor order.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(char),
    Num(Rational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Evaluates in `R(f)`, normal-ordering every product.
    pub fn eval(&self, alg: &Algebra) -> Element {
        match self {
            Expr::Gen('E') => PbwElement::e(),
            Expr::Gen('F') => PbwElement::f(),
            Expr::Gen(_) => PbwElement::h(),
            Expr::Num(c) => PbwElement::scalar(c.clone()),
            Expr::Neg(x) => -&x.eval(alg),
            Expr::Add(a, b) => &a.eval(alg) + &b.eval(alg),
            Expr::Sub(a, b) => &a.eval(alg) - &b.eval(alg),
            Expr::Mul(a, b) => alg.mul(&a.eval(alg), &b.eval(alg)),
            Expr::Pow(a, k) => alg.pow(&a.eval(alg), *k),
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    /// Identifiers accepted as atoms.
    vars: &'static [&'static str],
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let (position, tok) = &self.toks[self.pos];
        ParseError { position: *position, expected: expected.iter().map(|s| s.to_string()).collect(), found: tok.to_string() }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        self.pos += 1;
        t
    }

    fn atom_expectation(&self) -> Vec<&'static str> {
        let mut v: Vec<&str> = self.vars.to_vec();
        v.extend(["number", "'('", "'-'"]);
        v
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Num(n) if !n.contains('/') => match n.parse::<u32>() {
                Ok(k) => {
                    self.bump();
                    Ok(Expr::Pow(Box::new(base), k))
                }
                Err(_) => Err(self.error(&["exponent below 2^32"])),
            },
            _ => Err(self.error(&["nonnegative integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                let value = Rational::from_str(&n).map_err(|_| self.error(&["nonzero denominator"]))?;
                self.bump();
                Ok(Expr::Num(value))
            }
            Tok::Ident(s) if self.vars.contains(&s.as_str()) => {
                self.bump();
                Ok(Expr::Gen(s.chars().next().expect("nonempty identifier")))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["'+'", "'-'", "'*'", "'^'", "')'"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(&self.atom_expectation())),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() != Tok::End {
            return Err(self.error(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
        }
        Ok(())
    }
}

fn parse_with(text: &str, vars: &'static [&'static str]) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0, vars };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses a PBW expression without reducing it.
pub fn parse_pbw_expression(text: &str) -> Result<Expr, ParseError> {
    parse_with(text, &["E", "F", "H"])
}

/// Parses and normal-orders a PBW expression.
pub fn normalize(text: &str, alg: &Algebra) -> Result<Element, ParseError> {
    Ok(parse_pbw_expression(text)?.eval(alg))
}

/// Parses a polynomial in `var` (`H` or `Omega`). Any expression built from
/// `var`, rationals, `+ - * ^` and parentheses is accepted.
pub fn parse_poly(text: &str, var: &str) -> Result<Poly, ParseError> {
    let vars: &'static [&'static str] = match var {
        "Omega" => &["Omega"],
        _ => &["H"],
    };
    fn eval(e: &Expr) -> Poly {
        match e {
            Expr::Gen(_) => Polynomial::x(),
            Expr::Num(c) => Polynomial::constant(c.clone()),
            Expr::Neg(x) => -&eval(x),
            Expr::Add(a, b) => &eval(a) + &eval(b),
            Expr::Sub(a, b) => &eval(a) - &eval(b),
            Expr::Mul(a, b) => &eval(a) * &eval(b),
            Expr::Pow(a, k) => eval(a).pow(*k),
        }
    }
    Ok(eval(&parse_with(text, vars)?))
}

/// Canonical text of an element; parses back to the same element.
pub fn print_element(x: &Element) -> String {
    x.to_string()
}

/// The element `sum c F^a H^b E^c` given as `((a, b, c), coeff)` terms.
pub fn element_from_terms(terms: impl IntoIterator<Item = ((u32, u32, u32), Rational)>) -> Element {
    PbwElement::from_terms(terms.into_iter().map(|((a, b, c), k)| (Monomial::new(a, b, c), k)))
}
