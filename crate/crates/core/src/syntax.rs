//! Concrete syntax: a recursive-descent parser and a minimal-parentheses
//! printer.
//!
//! Precedence, loosest first:
//!
//! ```text
//! expr    := mul ('+' mul)*
//! mul     := unary (('*' | '/') unary)*        left-associative
//! unary   := '-' unary | postfix
//! postfix := atom ('^' '-' '1' | '^' NAT)*
//! atom    := NAT | IDENT | 'inv' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Natural literals expand to structural numerals and `t^n` expands to
//! `((1 * t) * t) ...`. Identifiers match `[a-z][a-z0-9_]*`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::term::{numeral, power, SignatureId, Term, MAX_NUMERAL};

/// Byte offsets into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedInput {
    pub term: Term,
    /// The part of the input the term was read from, excluding surrounding
    /// whitespace.
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Nat(u64),
    Ident(String),
    Plus,
    Star,
    Slash,
    Minus,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Nat(n) => write!(f, "`{n}`"),
            Tok::Ident(x) => write!(f, "`{x}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
    end: usize,
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(offset, |nl| offset - nl - 1) + 1;
    (line, column)
}

fn syntax_error(text: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = position(text, offset);
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'-' => Some(Tok::Minus),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            i += 1;
            tokens.push(Token {
                tok,
                offset: start,
                end: i,
            });
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits = &text[start..i];
            let n = digits.parse::<u64>().map_err(|_| {
                syntax_error(text, start, format!("literal `{digits}` is too large"))
            })?;
            tokens.push(Token {
                tok: Tok::Nat(n),
                offset: start,
                end: i,
            });
        } else if c.is_ascii_lowercase() {
            while i < bytes.len()
                && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == b'_')
            {
                i += 1;
            }
            tokens.push(Token {
                tok: Tok::Ident(text[start..i].to_string()),
                offset: start,
                end: i,
            });
        } else {
            let ch = text[start..].chars().next().unwrap_or('?');
            return Err(syntax_error(
                text,
                start,
                format!("unexpected character `{ch}`"),
            ));
        }
    }
    tokens.push(Token {
        tok: Tok::Eof,
        offset: text.len(),
        end: text.len(),
    });
    Ok(tokens)
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        syntax_error(self.text, self.tokens[self.pos].offset, message)
    }

    fn unexpected(&self, wanted: &str) -> Error {
        self.error_here(format!("expected {wanted}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn expr(&mut self) -> Result<Term> {
        let mut lhs = self.mul()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            lhs = Term::add(lhs, self.mul()?);
        }
        Ok(lhs)
    }

    fn mul(&mut self) -> Result<Term> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Term::mul(lhs, self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Term::div(lhs, self.unary()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Term> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Term::neg(self.unary()?));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            match (self.peek().clone(), self.peek_at(1).clone()) {
                (Tok::Minus, Tok::Nat(1)) => {
                    self.bump();
                    self.bump();
                    t = Term::inv(t);
                }
                (Tok::Minus, _) => {
                    self.bump();
                    return Err(self.error_here("only `^-1` is allowed as a negative exponent"));
                }
                (Tok::Nat(n), _) => {
                    if n > MAX_NUMERAL {
                        return Err(self.error_here(format!("exponent {n} exceeds {MAX_NUMERAL}")));
                    }
                    self.bump();
                    t = power(&t, n as u32);
                }
                _ => return Err(self.unexpected("`-1` or a natural exponent after `^`")),
            }
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                if n > MAX_NUMERAL {
                    return Err(self.error_here(format!("numeral {n} exceeds {MAX_NUMERAL}")));
                }
                self.bump();
                Ok(numeral(n, SignatureId::Cr).expect("Cr has zero"))
            }
            Tok::Ident(name) if name == "inv" && *self.peek_at(1) == Tok::LParen => {
                self.bump();
                self.bump();
                let arg = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Term::inv(arg))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Term::Var(name))
            }
            Tok::LParen => {
                self.bump();
                let t = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

pub fn parse(text: &str) -> Result<ParsedInput> {
    let tokens = lex(text)?;
    let start = tokens[0].offset;
    let mut parser = Parser {
        text,
        tokens,
        pos: 0,
    };
    let term = parser.expr()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.unexpected("an operator or end of input"));
    }
    let end = parser
        .tokens
        .get(parser.pos.wrapping_sub(1))
        .map_or(start, |t| t.end);
    Ok(ParsedInput {
        term,
        span: Span { start, end },
    })
}

/// Parses and discards span information.
pub fn parse_term(text: &str) -> Result<Term> {
    parse(text).map(|p| p.term)
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

/// How numerals and powers are rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Numerals {
    /// Every `1 + 1` written out.
    Structural,
    /// Numerals as decimal literals and `((1 * t) * t)` as `t^2`.
    #[default]
    Decimal,
}

impl FromStr for Numerals {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "structural" => Ok(Numerals::Structural),
            "decimal" => Ok(Numerals::Decimal),
            _ => Err(format!("unknown numeral mode `{s}`")),
        }
    }
}

const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POSTFIX: u8 = 4;
const PREC_ATOM: u8 = 5;

/// `((1 * b) * b) * ...` with at least two factors of `b`.
fn as_power(t: &Term) -> Option<(&Term, u32)> {
    let Term::Mul(lhs, base) = t else {
        return None;
    };
    let mut count = 1u32;
    let mut cur: &Term = lhs;
    while let Term::Mul(l, r) = cur {
        if r != base {
            break;
        }
        count += 1;
        cur = l;
    }
    (*cur == Term::One && count >= 2).then_some((&**base, count))
}

struct Printer {
    mode: Numerals,
}

impl Printer {
    fn precedence(&self, t: &Term) -> u8 {
        if self.mode == Numerals::Decimal {
            if t.as_numeral().is_some() {
                return PREC_ATOM;
            }
            if as_power(t).is_some() {
                return PREC_POSTFIX;
            }
        }
        match t {
            Term::Zero | Term::One | Term::Var(_) => PREC_ATOM,
            Term::Add(..) => PREC_ADD,
            Term::Mul(..) | Term::Div(..) => PREC_MUL,
            Term::Neg(_) => PREC_NEG,
            Term::Inv(_) => PREC_POSTFIX,
        }
    }

    fn write(&self, out: &mut String, t: &Term, min: u8) {
        let parens = self.precedence(t) < min;
        if parens {
            out.push('(');
        }
        self.write_bare(out, t);
        if parens {
            out.push(')');
        }
    }

    fn write_bare(&self, out: &mut String, t: &Term) {
        if self.mode == Numerals::Decimal {
            if let Some(n) = t.as_numeral() {
                out.push_str(&n.to_string());
                return;
            }
            if let Some((base, n)) = as_power(t) {
                self.write(out, base, PREC_POSTFIX);
                out.push('^');
                out.push_str(&n.to_string());
                return;
            }
        }
        match t {
            Term::Zero => out.push('0'),
            Term::One => out.push('1'),
            Term::Var(x) => out.push_str(x),
            Term::Add(a, b) => self.binary(out, a, " + ", b, PREC_ADD),
            Term::Mul(a, b) => self.binary(out, a, " * ", b, PREC_MUL),
            Term::Div(a, b) => self.binary(out, a, " / ", b, PREC_MUL),
            Term::Neg(a) => {
                out.push('-');
                self.write(out, a, PREC_NEG);
            }
            Term::Inv(a) => {
                self.write(out, a, PREC_POSTFIX);
                out.push_str("^-1");
            }
        }
    }

    fn binary(&self, out: &mut String, a: &Term, op: &str, b: &Term, prec: u8) {
        self.write(out, a, prec);
        out.push_str(op);
        self.write(out, b, prec + 1);
    }
}

pub fn print_with(t: &Term, mode: Numerals) -> String {
    let mut out = String::new();
    Printer { mode }.write(&mut out, t, PREC_ADD);
    out
}

/// Renders with decimal numerals.
pub fn print(t: &Term) -> String {
    print_with(t, Numerals::Decimal)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}
