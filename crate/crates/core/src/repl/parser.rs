//! Expression syntax for the calculator.
//!
//! Binding strength, tightest first:
//!
//! | level | operators            | meaning                         |
//! |-------|----------------------|---------------------------------|
//! | 1     | unary `-`, `+`       | negation                        |
//! | 2     | `**`                 | integer power                   |
//! | 3     | `*`                  | geometric product               |
//! | 4     | `^`                  | wedge product                   |
//! | 5     | `_|`, `|_`           | left and right contraction      |
//! | 6     | `+`, `-`             | sum and difference              |
//!
//! All binary operators associate to the left. Contractions bind more
//! loosely than products, so `e(2) _| e(1) * e(2)` is `e_2 ⌋ (e_1 e_2)`.
//!
//! Blade literals are `e_12` (one digit per index), `e[1,10,12]`, or a
//! number glued to either form (`4e_23`). `e(7)` calls the generator
//! function.

use std::fmt;

use thiserror::Error;

use crate::blade::Blade;
use crate::multivector::Multivector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {pos}: expected {}, found {found}", expected.join(" or "))]
pub struct SyntaxError {
    pub pos: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Geometric,
    Wedge,
    LeftContract,
    RightContract,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Geometric => "*",
            BinOp::Wedge => "^",
            BinOp::LeftContract => "_|",
            BinOp::RightContract => "|_",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::LeftContract | BinOp::RightContract => 2,
            BinOp::Wedge => 3,
            BinOp::Geometric => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    /// A blade literal, possibly with a glued coefficient.
    Blade(Multivector),
    Var(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// Exponent as written; evaluation rejects non-integers.
    Power(Box<Expr>, f64),
    Call(String, Vec<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(x) => write!(f, "{x}"),
            Expr::Blade(m) => {
                let (b, c) = m.terms().next().expect("blade literal has one term");
                write!(f, "{c}e{:?}", b.to_vec())
            }
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Power(b, k) => write!(f, "({b} ** {k})"),
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Assign(String, Expr),
    Expr(Expr),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Blade(Multivector),
    Ident(String),
    Op(BinOp),
    StarStar,
    LParen,
    RParen,
    Comma,
    Assign,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(x) => format!("number {x}"),
            Tok::Blade(_) => "blade literal".into(),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Op(op) => format!("`{}`", op.symbol()),
            Tok::StarStar => "`**`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Assign => "`=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex_error(pos: usize, expected: &str, found: &str) -> SyntaxError {
    SyntaxError {
        pos,
        expected: vec![expected.to_string()],
        found: found.to_string(),
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn peek(&self, k: usize) -> Option<u8> {
        self.src.get(self.pos + k).copied()
    }

    fn starts_with(&self, s: &str) -> bool {
        self.src[self.pos..].starts_with(s.as_bytes())
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.peek(0).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.pos - start
    }

    fn number(&mut self) -> Result<f64, SyntaxError> {
        let start = self.pos;
        let int = self.digits();
        let mut frac = 0;
        if self.peek(0) == Some(b'.') {
            self.pos += 1;
            frac = self.digits();
        }
        if int + frac == 0 {
            return Err(lex_error(start, "a number", "`.`"));
        }
        if matches!(self.peek(0), Some(b'e' | b'E')) {
            let sign = usize::from(matches!(self.peek(1), Some(b'+' | b'-')));
            if self.peek(1 + sign).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1 + sign;
                self.digits();
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse().map_err(|_| lex_error(start, "a number", text))
    }

    fn at_blade(&self) -> bool {
        self.peek(0) == Some(b'e')
            && (self.peek(1) == Some(b'[')
                || (self.peek(1) == Some(b'_') && self.peek(2).is_some_and(|c| c.is_ascii_digit())))
    }

    fn blade(&mut self, coeff: f64) -> Result<Multivector, SyntaxError> {
        let start = self.pos;
        let mut indices: Vec<u64> = Vec::new();
        if self.peek(1) == Some(b'[') {
            self.pos += 2;
            loop {
                while self.peek(0).is_some_and(|c| c == b' ' || c == b'\t') {
                    self.pos += 1;
                }
                let at = self.pos;
                let n = self.digits();
                if n == 0 {
                    return Err(lex_error(at, "a generator index", &self.found_char()));
                }
                let text = std::str::from_utf8(&self.src[at..self.pos]).expect("ascii");
                indices.push(text.parse().unwrap_or(u64::MAX));
                while self.peek(0).is_some_and(|c| c == b' ' || c == b'\t') {
                    self.pos += 1;
                }
                match self.peek(0) {
                    Some(b']') => {
                        self.pos += 1;
                        break;
                    }
                    Some(b',') => self.pos += 1,
                    _ => return Err(lex_error(self.pos, "`,` or `]`", &self.found_char())),
                }
            }
        } else {
            self.pos += 2;
            while let Some(c) = self.peek(0).filter(u8::is_ascii_digit) {
                indices.push(u64::from(c - b'0'));
                self.pos += 1;
            }
        }
        let (sign, blade) = Blade::from_unordered(indices).map_err(|e| SyntaxError {
            pos: start,
            expected: vec!["a valid blade".into()],
            found: e.to_string(),
        })?;
        Ok(Multivector::from_blade(blade, sign.as_f64() * coeff))
    }

    fn found_char(&self) -> String {
        match self.peek(0) {
            None => "end of input".into(),
            Some(c) => format!("`{}`", c as char),
        }
    }

    fn next(&mut self) -> Result<(usize, Tok), SyntaxError> {
        while self.peek(0).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(c) = self.peek(0) else {
            return Ok((start, Tok::Eof));
        };
        let two = |l: &mut Self, t: Tok| {
            l.pos += 2;
            Ok((start, t))
        };
        let one = |l: &mut Self, t: Tok| {
            l.pos += 1;
            Ok((start, t))
        };
        match c {
            b'0'..=b'9' | b'.' => {
                let x = self.number()?;
                if self.at_blade() {
                    return Ok((start, Tok::Blade(self.blade(x)?)));
                }
                Ok((start, Tok::Num(x)))
            }
            _ if self.at_blade() => Ok((start, Tok::Blade(self.blade(1.0)?))),
            b'a'..=b'z' | b'A'..=b'Z' => {
                while let Some(c) = self.peek(0) {
                    let ident_char = c.is_ascii_alphanumeric() || c == b'_';
                    // `x_|y` is `x _| y`
                    if !ident_char || (c == b'_' && self.peek(1) == Some(b'|')) {
                        break;
                    }
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok((start, Tok::Ident(s.to_string())))
            }
            _ if self.starts_with("**") => two(self, Tok::StarStar),
            _ if self.starts_with("_|") => two(self, Tok::Op(BinOp::LeftContract)),
            _ if self.starts_with("|_") => two(self, Tok::Op(BinOp::RightContract)),
            b'*' => one(self, Tok::Op(BinOp::Geometric)),
            b'^' => one(self, Tok::Op(BinOp::Wedge)),
            b'+' => one(self, Tok::Op(BinOp::Add)),
            b'-' => one(self, Tok::Op(BinOp::Sub)),
            b'(' => one(self, Tok::LParen),
            b')' => one(self, Tok::RParen),
            b',' => one(self, Tok::Comma),
            b'=' => one(self, Tok::Assign),
            _ => Err(lex_error(start, "an expression", &self.found_char())),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let mut lexer = Lexer {
        src: input.as_bytes(),
        pos: 0,
    };
    let mut toks = Vec::new();
    loop {
        let t = lexer.next()?;
        let done = t.1 == Tok::Eof;
        toks.push(t);
        if done {
            return Ok(toks);
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(&[what])
        }
    }

    /// Precedence climbing over the binary operators.
    fn binary(&mut self, min_prec: u8) -> Result<Expr, SyntaxError> {
        let mut lhs = self.power()?;
        while let Tok::Op(op) = *self.peek() {
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            self.bump();
            let rhs = self.binary(prec + 1)?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let mut base = self.unary()?;
        while *self.peek() == Tok::StarStar {
            self.bump();
            let Tok::Num(k) = *self.peek() else {
                return self.error(&["an integer exponent"]);
            };
            self.bump();
            base = Expr::Power(Box::new(base), k);
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek() {
            Tok::Op(BinOp::Sub) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Op(BinOp::Add) => {
                self.bump();
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().clone() {
            Tok::Num(x) => {
                self.bump();
                Ok(Expr::Number(x))
            }
            Tok::Blade(m) => {
                self.bump();
                Ok(Expr::Blade(m))
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Ok(Expr::Var(name));
                }
                self.bump();
                let mut args = Vec::new();
                if *self.peek() != Tok::RParen {
                    loop {
                        args.push(self.binary(0)?);
                        match self.peek() {
                            Tok::Comma => {
                                self.bump();
                            }
                            Tok::RParen => break,
                            _ => return self.error(&["`,`", "`)`"]),
                        }
                    }
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Call(name, args))
            }
            Tok::LParen => {
                self.bump();
                let e = self.binary(0)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => self.error(&["a number", "a blade", "a name", "`(`", "`-`"]),
        }
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(&["an operator", "end of input"])
        }
    }
}

/// Parses a single expression.
pub fn parse_expr(input: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser {
        toks: tokenize(input)?,
        at: 0,
    };
    let e = p.binary(0)?;
    p.finish()?;
    Ok(e)
}

/// Parses `name = expr` or a bare expression.
pub fn parse_statement(input: &str) -> Result<Statement, SyntaxError> {
    let toks = tokenize(input)?;
    if let [(_, Tok::Ident(name)), (_, Tok::Assign), ..] = toks.as_slice() {
        let name = name.clone();
        let mut p = Parser { toks, at: 2 };
        let e = p.binary(0)?;
        p.finish()?;
        return Ok(Statement::Assign(name, e));
    }
    let mut p = Parser { toks, at: 0 };
    let e = p.binary(0)?;
    p.finish()?;
    Ok(Statement::Expr(e))
}
