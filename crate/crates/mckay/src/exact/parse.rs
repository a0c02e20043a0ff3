//! Textual syntax for cyclotomic numbers: `z(m)^k` for zeta_m^k,
//! rational literals `p/q`, operators `+ - *` and parentheses.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Cyclotomic, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Z,
    LParen,
    RParen,
    Caret,
    Plus,
    Minus,
    Star,
    Slash,
}

fn lex(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Int(digits.parse().unwrap()));
            }
            'z' => {
                chars.next();
                tokens.push(Token::Z);
            }
            '(' => {
                chars.next();
                tokens.push(Token::LParen);
            }
            ')' => {
                chars.next();
                tokens.push(Token::RParen);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '/' => {
                chars.next();
                tokens.push(Token::Slash);
            }
            other => {
                return Err(Error::Parse(format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        match self.next() {
            Some(found) if found == t => Ok(()),
            found => Err(Error::Parse(format!("expected {t:?}, found {found:?}"))),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.next() {
            Some(Token::Int(n)) => Ok(n),
            found => Err(Error::Parse(format!("expected integer, found {found:?}"))),
        }
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        if self.peek() == Some(&Token::Minus) {
            self.next();
            Ok(-self.int()?)
        } else {
            self.int()
        }
    }

    fn expr(&mut self) -> Result<Cyclotomic> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Cyclotomic> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Cyclotomic> {
        if self.peek() == Some(&Token::Minus) {
            self.next();
            return Ok(-self.factor()?);
        }
        match self.next() {
            Some(Token::Int(n)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.next();
                    let d = self.int()?;
                    if d.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    Ok(Cyclotomic::from_rational(Rational::new(n, d)))
                } else {
                    Ok(Cyclotomic::from_rational(Rational::from_integer(n)))
                }
            }
            Some(Token::Z) => {
                self.expect(Token::LParen)?;
                let m = self.int()?;
                self.expect(Token::RParen)?;
                let m: u64 = m
                    .try_into()
                    .map_err(|_| Error::Parse("conductor out of range".into()))?;
                if m == 0 {
                    return Err(Error::Parse("conductor must be positive".into()));
                }
                let exp = if self.peek() == Some(&Token::Caret) {
                    self.next();
                    let e = self.signed_int()?;
                    i64::try_from(e).map_err(|_| Error::Parse("exponent out of range".into()))?
                } else {
                    1
                };
                Ok(Cyclotomic::zeta_pow(m, exp))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            found => Err(Error::Parse(format!("unexpected token {found:?}"))),
        }
    }
}

/// Parse an element in the `z(m)^k` grammar.
pub fn parse(input: &str) -> Result<Cyclotomic> {
    let tokens = lex(input)?;
    let mut p = Parser { tokens, pos: 0 };
    let value = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse("trailing input".into()));
    }
    Ok(value)
}

fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical rendering in the same grammar, terms by ascending exponent.
pub fn render(a: &Cyclotomic) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let m = a.conductor();
    let mut out = String::new();
    for (k, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let monomial = match k {
            0 => None,
            1 => Some(format!("z({m})")),
            _ => Some(format!("z({m})^{k}")),
        };
        match monomial {
            None => out.push_str(&render_rational(&mag)),
            Some(mon) => {
                if mag.is_one() {
                    out.push_str(&mon);
                } else {
                    out.push_str(&render_rational(&mag));
                    out.push('*');
                    out.push_str(&mon);
                }
            }
        }
    }
    out
}
