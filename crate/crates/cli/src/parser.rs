//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar:
//! ```text
//! expr   := '-'? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' natural)?
//! base   := rational | 'i' | identifier | '(' expr ')'
//! ```
//! Rationals are `integer` or `integer '/' integer`; `i` is the imaginary
//! unit.  Whitespace is insignificant; errors carry line and column.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use singeq_core::ring::{GaussianRational, Poly, RingContext};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Eof,
}

struct Lexer {
    tokens: Vec<(Token, usize, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut tokens = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (tline, tcol) = (line, col);
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '+' | '-' | '*' | '^' | '/' | '(' | ')' => {
                chars.next();
                col += 1;
                tokens.push((
                    match ch {
                        '+' => Token::Plus,
                        '-' => Token::Minus,
                        '*' => Token::Star,
                        '^' => Token::Caret,
                        '/' => Token::Slash,
                        '(' => Token::LParen,
                        _ => Token::RParen,
                    },
                    tline,
                    tcol,
                ));
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let value = digits.parse::<BigInt>().expect("digits");
                tokens.push((Token::Int(value), tline, tcol));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                tokens.push((Token::Ident(name), tline, tcol));
            }
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    tokens.push((Token::Eof, line, col));
    Ok(Lexer { tokens, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> &(Token, usize, usize) {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> (Token, usize, usize) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (_, line, col) = *&self.tokens[self.pos];
        ParseError { line, col, message: message.into() }
    }
}

struct Parser<'a> {
    lexer: Lexer,
    ring: &'a Arc<RingContext>,
}

impl<'a> Parser<'a> {
    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = if matches!(self.lexer.peek().0, Token::Minus) {
            self.lexer.next();
            -&self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.lexer.peek().0 {
                Token::Plus => {
                    self.lexer.next();
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.lexer.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.lexer.peek().0, Token::Star) {
            self.lexer.next();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        if matches!(self.lexer.peek().0, Token::Caret) {
            self.lexer.next();
            let exp = match self.lexer.peek().0.clone() {
                Token::Int(n) => {
                    self.lexer.next();
                    u32::try_from(n.clone())
                        .map_err(|_| self.lexer.error("exponent out of range"))?
                }
                _ => return Err(self.lexer.error("expected a natural number after '^'")),
            };
            let mut acc = Poly::one(base.ring());
            for _ in 0..exp {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        match self.lexer.peek().0.clone() {
            Token::Int(numer) => {
                self.lexer.next();
                // rational := integer ('/' integer)?
                if matches!(self.lexer.peek().0, Token::Slash) {
                    self.lexer.next();
                    match self.lexer.peek().0.clone() {
                        Token::Int(denom) => {
                            if denom == BigInt::from(0) {
                                return Err(self.lexer.error("zero denominator"));
                            }
                            self.lexer.next();
                            Ok(Poly::constant(
                                self.ring,
                                GaussianRational::from_rational(BigRational::new(numer, denom)),
                            ))
                        }
                        _ => Err(self.lexer.error("expected an integer after '/'")),
                    }
                } else {
                    Ok(Poly::constant(
                        self.ring,
                        GaussianRational::from_rational(BigRational::from_integer(numer)),
                    ))
                }
            }
            Token::Ident(name) => {
                if name == "i" {
                    self.lexer.next();
                    return Ok(Poly::constant(self.ring, GaussianRational::i()));
                }
                match self.ring.position(&name) {
                    Some(idx) => {
                        self.lexer.next();
                        Ok(Poly::variable(self.ring, idx).expect("declared variable"))
                    }
                    None => Err(self.lexer.error(format!("unknown identifier '{name}'"))),
                }
            }
            Token::LParen => {
                self.lexer.next();
                let inner = self.expr()?;
                if !matches!(self.lexer.peek().0, Token::RParen) {
                    return Err(self.lexer.error("expected ')'"));
                }
                self.lexer.next();
                Ok(inner)
            }
            _ => Err(self.lexer.error("expected a rational, 'i', an identifier, or '('")),
        }
    }
}

/// Parse a polynomial over the given ring.  The name `i` is reserved for
/// the imaginary unit, so rings declaring it are rejected.
pub fn parse_poly(text: &str, ring: &Arc<RingContext>) -> Result<Poly, ParseError> {
    if ring.position("i").is_some() {
        return Err(ParseError {
            line: 1,
            col: 1,
            message: "the variable name 'i' is reserved for the imaginary unit".into(),
        });
    }
    let lexer = lex(text)?;
    let mut parser = Parser { lexer, ring };
    let poly = parser.expr()?;
    if !matches!(parser.lexer.peek().0, Token::Eof) {
        return Err(parser.lexer.error("unexpected trailing input"));
    }
    Ok(poly)
}
