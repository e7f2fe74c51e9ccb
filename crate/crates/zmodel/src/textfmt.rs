//! Text format for polynomials and rational functions.
//!
//! The printer emits the canonical grammar: rational coefficients as `n` or
//! `n/d`, polynomials as sign-joined terms `c0 + c1*t + c2*t^2` in ascending
//! degree, and non-polynomial fractions as `(num)/(den)` with a monic
//! denominator. The parser accepts a superset: full `+ - * / ^` expressions
//! with parentheses over integers and one variable, so every canonical form
//! parses back bit-exactly and hand-written inputs like `t/(1+t)^3` work too.

use crate::poly::Polynomial;
use crate::rational::{rational_to_text, Rational};
use crate::ratfunc::RationalFunction;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character '{0}' at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected '{0}'")]
    Expected(char),
    #[error("division by zero in expression")]
    DivisionByZero,
    #[error("exponent out of range")]
    BadExponent,
    #[error("expected a polynomial but found a proper fraction")]
    NotAPolynomial,
    #[error("{0}")]
    Other(String),
}

pub fn poly_to_text(p: &Polynomial, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                out.push('-');
            }
            first = false;
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let coef_txt = rational_to_text(&mag);
        match i {
            0 => out.push_str(&coef_txt),
            _ => {
                if !mag.is_one() {
                    out.push_str(&coef_txt);
                    out.push('*');
                }
                out.push_str(var);
                if i > 1 {
                    out.push_str(&format!("^{}", i));
                }
            }
        }
    }
    out
}

pub fn ratfunc_to_text(r: &RationalFunction, var: &str) -> String {
    if r.is_polynomial() {
        poly_to_text(r.num(), var)
    } else {
        format!(
            "({})/({})",
            poly_to_text(r.num(), var),
            poly_to_text(r.den(), var)
        )
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, ch: u8) -> Result<(), ParseError> {
        match self.bump() {
            Some(c) if c == ch => Ok(()),
            Some(_) | None => Err(ParseError::Expected(ch as char)),
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, ParseError> {
        // Polynomial summands accumulate coefficient-wise so long printed
        // polynomials parse in linear time; everything else folds generically.
        let mut poly_acc: Vec<Rational> = Vec::new();
        let mut general: Option<RationalFunction> = None;
        let mut absorb = |term: RationalFunction, negate: bool, general: &mut Option<RationalFunction>| {
            if term.is_polynomial() {
                // canonical denominators are monic, so den = 1 here
                let coeffs = term.num().coeffs();
                if poly_acc.len() < coeffs.len() {
                    poly_acc.resize(coeffs.len(), Rational::zero());
                }
                for (i, c) in coeffs.into_iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if negate {
                        poly_acc[i] -= c;
                    } else {
                        poly_acc[i] += c;
                    }
                }
            } else {
                let signed = if negate { -&term } else { term };
                *general = Some(match general.take() {
                    Some(g) => &g + &signed,
                    None => signed,
                });
            }
        };
        absorb(self.term()?, false, &mut general);
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let t = self.term()?;
                    absorb(t, false, &mut general);
                }
                Some(b'-') => {
                    self.bump();
                    let t = self.term()?;
                    absorb(t, true, &mut general);
                }
                _ => break,
            }
        }
        let poly = RationalFunction::from_poly(Polynomial::new(poly_acc));
        Ok(match general {
            Some(g) => &g + &poly,
            None => poly,
        })
    }

    fn term(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.bump();
                    let d = self.factor()?;
                    if d.is_zero() {
                        return Err(ParseError::DivisionByZero);
                    }
                    acc = &acc / &d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunction, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.bump();
                Ok(-&self.factor()?)
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    self.bump();
                    let e = self.integer()?;
                    let e = num_traits::ToPrimitive::to_u32(&e).ok_or(ParseError::BadExponent)?;
                    // var^k builds the monomial directly
                    if base == RationalFunction::var() {
                        return Ok(RationalFunction::from_poly(Polynomial::monomial(
                            Rational::one(),
                            e as usize,
                        )));
                    }
                    Ok(base.pow(e))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .map(|b| b.is_ascii_digit())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return match self.bytes.get(self.pos) {
                Some(&c) => Err(ParseError::UnexpectedChar(c as char, self.pos)),
                None => Err(ParseError::UnexpectedEnd),
            };
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<RationalFunction, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalFunction::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.bump();
                // Any single letter denotes the variable.
                if self
                    .bytes
                    .get(self.pos)
                    .map(|b| b.is_ascii_alphanumeric())
                    .unwrap_or(false)
                {
                    return Err(ParseError::UnexpectedChar(
                        self.bytes[self.pos] as char,
                        self.pos,
                    ));
                }
                Ok(RationalFunction::var())
            }
            Some(c) => Err(ParseError::UnexpectedChar(c as char, self.pos)),
            None => Err(ParseError::UnexpectedEnd),
        }
    }
}

pub fn parse_ratfunc(s: &str) -> Result<RationalFunction, ParseError> {
    let mut p = Parser::new(s);
    let r = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(ParseError::UnexpectedChar(c as char, p.pos));
    }
    Ok(r)
}

pub fn parse_poly(s: &str) -> Result<Polynomial, ParseError> {
    let r = parse_ratfunc(s)?;
    if !r.is_polynomial() {
        return Err(ParseError::NotAPolynomial);
    }
    Ok(r.num().clone())
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let r = parse_ratfunc(s)?;
    r.as_constant().ok_or(ParseError::NotAPolynomial)
}
