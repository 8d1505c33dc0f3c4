//! Reader for polynomial strings such as `3/2*x1*q1^2 - p1_1`.
//!
//! Grammar: a sum of signed terms, each term a `*`-separated product of
//! factors, each factor either a rational literal `a` / `a/b` or a
//! coordinate name with an optional `^k` exponent. Whitespace is ignored
//! between tokens. This is exactly the shape produced by
//! [`Polynomial::render`](multiphase::Polynomial::render).

use multiphase::{Monomial, Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at column {column} of {text:?}")]
pub struct ParseError {
    pub text: String,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

struct Lexer<'a> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { text, chars: text.char_indices().collect(), pos: 0 }
    }

    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { text: self.text.to_string(), column, message: message.into() }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Token)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.chars.len() {
            let (col, c) = self.chars[self.pos];
            let col = col + 1;
            match c {
                ' ' | '\t' | '\n' | '\r' => {
                    self.pos += 1;
                }
                '+' => {
                    out.push((col, Token::Plus));
                    self.pos += 1;
                }
                // accept the typographic minus too
                '-' | '−' => {
                    out.push((col, Token::Minus));
                    self.pos += 1;
                }
                '*' => {
                    out.push((col, Token::Star));
                    self.pos += 1;
                }
                '/' => {
                    out.push((col, Token::Slash));
                    self.pos += 1;
                }
                '^' => {
                    out.push((col, Token::Caret));
                    self.pos += 1;
                }
                c if c.is_ascii_digit() => {
                    let start = self.pos;
                    while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
                        self.pos += 1;
                    }
                    let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                    let value: BigInt = digits.parse().map_err(|_| self.error(col, "bad integer"))?;
                    out.push((col, Token::Int(value)));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = self.pos;
                    while self.pos < self.chars.len()
                        && (self.chars[self.pos].1.is_ascii_alphanumeric() || self.chars[self.pos].1 == '_')
                    {
                        self.pos += 1;
                    }
                    let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                    out.push((col, Token::Name(name)));
                }
                other => return Err(self.error(col, format!("unexpected character {other:?}"))),
            }
        }
        Ok(out)
    }
}

struct Parser<'a, F> {
    text: &'a str,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    lookup: F,
}

impl<F: Fn(&str) -> Option<usize>> Parser<'_, F> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        let column = self.tokens.get(self.pos).map(|(c, _)| *c).unwrap_or(self.text.chars().count() + 1);
        ParseError { text: self.text.to_string(), column, message: message.into() }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expression(&mut self) -> Result<Polynomial<Rational>, ParseError> {
        if self.tokens.is_empty() {
            return Err(self.error("empty polynomial"));
        }
        let mut out = Polynomial::zero();
        let mut first = true;
        while self.pos < self.tokens.len() {
            let negative = match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(self.error("expected '+' or '-'")),
            };
            first = false;
            let (c, m) = self.term()?;
            out.add_term(m, if negative { -c } else { c });
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Rational, Monomial), ParseError> {
        let mut coeff = Rational::one();
        let mut mono = Monomial::one();
        loop {
            match self.next() {
                Some(Token::Int(num)) => {
                    let mut value = Rational::from_integer(num);
                    if self.peek() == Some(&Token::Slash) {
                        self.pos += 1;
                        match self.next() {
                            Some(Token::Int(den)) if !den.is_zero() => {
                                value /= Rational::from_integer(den);
                            }
                            Some(Token::Int(_)) => {
                                self.pos -= 1;
                                return Err(self.error("zero denominator"));
                            }
                            _ => {
                                self.pos -= 1;
                                return Err(self.error("expected a denominator"));
                            }
                        }
                    }
                    coeff *= value;
                }
                Some(Token::Name(name)) => {
                    let Some(v) = (self.lookup)(&name) else {
                        self.pos -= 1;
                        return Err(self.error(format!("unknown coordinate {name:?}")));
                    };
                    let mut exp = 1u32;
                    if self.peek() == Some(&Token::Caret) {
                        self.pos += 1;
                        match self.next() {
                            Some(Token::Int(e)) => {
                                exp = u32::try_from(e).map_err(|_| {
                                    self.pos -= 1;
                                    self.error("exponent too large")
                                })?;
                            }
                            _ => {
                                self.pos -= 1;
                                return Err(self.error("expected an integer exponent"));
                            }
                        }
                    }
                    mono = mono.mul(&Monomial::from_powers([(v, exp)]));
                }
                _ => {
                    self.pos -= 1;
                    return Err(self.error("expected a number or a coordinate name"));
                }
            }
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
            } else {
                return Ok((coeff, mono));
            }
        }
    }
}

/// Parses `text` with coordinate names resolved by `lookup`.
pub fn parse_polynomial(
    text: &str,
    lookup: impl Fn(&str) -> Option<usize>,
) -> Result<Polynomial<Rational>, ParseError> {
    let tokens = Lexer::new(text).tokens()?;
    let mut parser = Parser { text, tokens, pos: 0, lookup };
    parser.expression()
}

/// Parses a rational literal `a` or `a/b`, normalizing sign and reducing.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    multiphase::scalar::parse_rational(text).ok_or_else(|| ParseError {
        text: text.to_string(),
        column: 1,
        message: "expected a rational \"a\" or \"a/b\" with b nonzero".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["x1", "q1", "p1_1", "p"].iter().map(|s| s.to_string()).collect()
    }

    fn parse(text: &str) -> Result<Polynomial<Rational>, ParseError> {
        let n = names();
        parse_polynomial(text, |s| n.iter().position(|x| x == s))
    }

    #[test]
    fn rendered_polynomials_parse_back() {
        let n = names();
        let p = parse("3/2*x1*q1^2 - p1_1 + 7").unwrap();
        assert_eq!(p.render(&n), "7 + 3/2*x1*q1^2 - p1_1");
        assert_eq!(parse(&p.render(&n)).unwrap(), p);
        assert_eq!(parse("0").unwrap(), Polynomial::zero());
        assert_eq!(parse("-p").unwrap(), -&Polynomial::var(3));
    }

    #[test]
    fn like_terms_combine() {
        assert_eq!(parse("q1 + q1 - 2*q1").unwrap(), Polynomial::zero());
        assert_eq!(parse("2/4*x1").unwrap(), parse("1/2 * x1").unwrap());
        assert_eq!(parse("x1*x1").unwrap(), parse("x1^2").unwrap());
    }

    #[test]
    fn errors_carry_location() {
        let e = parse("q1 + z").unwrap_err();
        assert_eq!(e.column, 6);
        assert!(e.message.contains("\"z\""));
        assert!(parse("").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("q1 q1").is_err());
        assert!(parse("q1^").is_err());
        assert!(parse("q1 + $").is_err());
    }
}
