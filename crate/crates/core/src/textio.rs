//! Text forms of multivectors: the console rendering, multivector literals
//! and the line-oriented `.mv` file format.
//!
//! Rendering follows the classic console layout:
//!
//! ```text
//! + 1 + 2e_1 + 3e_2 + 4e_23
//! scalar ( -1 )
//! the zero clifford element (0)
//! ```
//!
//! Indices are concatenated unless a basis separator is set. A blade that
//! could not be read back unambiguously that way (a multi-digit index with no
//! separator, or a lone multi-digit index) is written in bracket form,
//! `e[1,10]`.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use thiserror::Error;

use crate::blade::{Blade, BladeError};
use crate::multivector::{Multivector, TermAccumulator};

#[derive(Debug, Error)]
pub enum TextError {
    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("invalid basis separator {0:?}: must not contain digits, '+', '-' or whitespace")]
    Separator(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintOptions {
    basis_sep: String,
    prefix: String,
}

impl Default for PrintOptions {
    fn default() -> Self {
        PrintOptions {
            basis_sep: String::new(),
            prefix: "e_".to_string(),
        }
    }
}

impl PrintOptions {
    pub fn with_separator(sep: &str) -> Result<Self, TextError> {
        let mut opts = Self::default();
        opts.set_basis_sep(sep)?;
        Ok(opts)
    }

    pub fn basis_sep(&self) -> &str {
        &self.basis_sep
    }

    pub fn prefix(&self) -> &str {
        &self.prefix
    }

    pub fn set_basis_sep(&mut self, sep: &str) -> Result<(), TextError> {
        if sep
            .chars()
            .any(|c| c.is_ascii_digit() || c == '+' || c == '-' || c.is_whitespace())
        {
            return Err(TextError::Separator(sep.to_string()));
        }
        self.basis_sep = sep.to_string();
        Ok(())
    }

    pub fn set_prefix(&mut self, prefix: &str) -> Result<(), TextError> {
        if prefix.is_empty()
            || prefix
                .chars()
                .any(|c| c.is_ascii_digit() || "+-.[(".contains(c) || c.is_whitespace())
        {
            return Err(TextError::Parse {
                pos: 0,
                message: format!("invalid prefix {prefix:?}"),
            });
        }
        self.prefix = prefix.to_string();
        Ok(())
    }

    fn bracket_head(&self) -> &str {
        self.prefix.strip_suffix('_').unwrap_or(&self.prefix)
    }
}

/// Shortest decimal text that reads back to the same `f64`.
pub fn format_coefficient(c: f64) -> String {
    format!("{c}")
}

fn render_blade(out: &mut String, blade: &Blade, opts: &PrintOptions) {
    let multi_digit = blade.indices().any(|i| i > 9);
    let join = |out: &mut String, sep: &str| {
        for (k, i) in blade.indices().enumerate() {
            if k > 0 {
                out.push_str(sep);
            }
            let _ = write!(out, "{i}");
        }
    };
    if multi_digit && (opts.basis_sep.is_empty() || blade.grade() == 1) {
        out.push_str(opts.bracket_head());
        out.push('[');
        join(out, ",");
        out.push(']');
    } else {
        out.push_str(&opts.prefix);
        join(out, &opts.basis_sep);
    }
}

pub fn render(a: &Multivector, opts: &PrintOptions) -> String {
    if a.is_zero() {
        return "the zero clifford element (0)".to_string();
    }
    if a.is_scalar() {
        return format!("scalar ( {} )", format_coefficient(a.scalar_part()));
    }
    let mut out = String::new();
    for (k, (blade, c)) in a.terms().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        out.push_str(if c.is_sign_negative() { "- " } else { "+ " });
        out.push_str(&format_coefficient(c.abs()));
        if !blade.is_scalar() {
            render_blade(&mut out, blade, opts);
        }
    }
    out
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, TextError> {
        Err(TextError::Parse {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    /// Unsigned decimal number; an `e` followed by anything but a digit or
    /// sign+digit is left alone since it starts a blade.
    fn number(&mut self) -> Option<f64> {
        let start = self.pos;
        let int = self.digits().len();
        let mut frac = 0;
        if self.peek() == Some(b'.') {
            self.pos += 1;
            frac = self.digits().len();
        }
        if int + frac == 0 {
            self.pos = start;
            return None;
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let exp_start = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.digits().is_empty() {
                self.pos = exp_start;
            }
        }
        self.src[start..self.pos].parse().ok()
    }

    /// True when `sep` follows immediately and is itself followed by a digit.
    fn at_separator(&self, sep: &str) -> bool {
        self.rest()
            .strip_prefix(sep)
            .is_some_and(|r| r.starts_with(|c: char| c.is_ascii_digit()))
    }

    fn index(&self, digits: &str, at: usize) -> Result<u32, TextError> {
        let bad = |message: String| Err(TextError::Parse { pos: at, message });
        match digits.parse::<u64>() {
            Ok(0) => bad("generator index 0 is invalid".into()),
            Ok(i) if i <= u64::from(crate::blade::MAX_INDEX) => Ok(i as u32),
            _ => bad(format!("generator index {digits} is too large")),
        }
    }
}

fn blade_from(indices: Vec<u32>, at: usize) -> Result<(f64, Blade), TextError> {
    Blade::from_unordered(indices)
        .map(|(s, b)| (s.as_f64(), b))
        .map_err(|e: BladeError| TextError::Parse {
            pos: at,
            message: e.to_string(),
        })
}

/// Parses the indices after a blade prefix. Digit runs are split into single
/// digits unless the separator follows the first run.
fn parse_indices(cur: &mut Cursor, sep: &str) -> Result<(f64, Blade), TextError> {
    let at = cur.pos;
    let first = cur.digits();
    if first.is_empty() {
        return cur.err("expected generator indices");
    }
    let mut indices = Vec::new();
    if cur.at_separator(sep) {
        indices.push(cur.index(first, at)?);
        while cur.at_separator(sep) {
            cur.pos += sep.len();
            let p = cur.pos;
            let d = cur.digits();
            indices.push(cur.index(d, p)?);
        }
    } else {
        for (k, ch) in first.char_indices() {
            indices.push(cur.index(&first[k..k + ch.len_utf8()], at + k)?);
        }
    }
    blade_from(indices, at)
}

fn parse_bracket(cur: &mut Cursor) -> Result<(f64, Blade), TextError> {
    let at = cur.pos;
    let mut indices = Vec::new();
    loop {
        cur.skip_ws();
        let p = cur.pos;
        let d = cur.digits();
        if d.is_empty() {
            return cur.err("expected generator index");
        }
        indices.push(cur.index(d, p)?);
        cur.skip_ws();
        if cur.eat("]") {
            break;
        }
        if !cur.eat(",") {
            return cur.err("expected ',' or ']'");
        }
    }
    blade_from(indices, at)
}

fn parse_blade(cur: &mut Cursor, opts: &PrintOptions) -> Result<Option<(f64, Blade)>, TextError> {
    let bracket = format!("{}[", opts.bracket_head());
    if cur.eat(&bracket) || cur.eat("e[") {
        return parse_bracket(cur).map(Some);
    }
    if cur.eat(&opts.prefix) || cur.eat("e_") {
        let sep = if opts.basis_sep.is_empty() {
            ","
        } else {
            opts.basis_sep.as_str()
        };
        return parse_indices(cur, sep).map(Some);
    }
    Ok(None)
}

fn parse_term(cur: &mut Cursor, opts: &PrintOptions) -> Result<(Blade, f64), TextError> {
    let coeff = cur.number();
    let before_ws = cur.pos;
    cur.skip_ws();
    let blade = parse_blade(cur, opts)?;
    if blade.is_none() {
        cur.pos = before_ws;
    }
    match blade {
        Some((s, b)) => Ok((b, s * coeff.unwrap_or(1.0))),
        None => match coeff {
            Some(c) => Ok((Blade::scalar(), c)),
            None => cur.err("expected a coefficient or a blade"),
        },
    }
}

fn parse_signed(cur: &mut Cursor) -> Result<f64, TextError> {
    let neg = if cur.eat("-") {
        true
    } else {
        cur.eat("+");
        false
    };
    cur.skip_ws();
    match cur.number() {
        Some(c) if neg => Ok(-c),
        Some(c) => Ok(c),
        None => cur.err("expected a number"),
    }
}

/// Parses a multivector literal, accepting `,` as index separator.
pub fn parse_multivector(text: &str) -> Result<Multivector, TextError> {
    parse_multivector_with(text, &PrintOptions::default())
}

/// Parses a multivector literal written with the given options; this is the
/// inverse of [`render`].
pub fn parse_multivector_with(text: &str, opts: &PrintOptions) -> Result<Multivector, TextError> {
    let mut cur = Cursor { src: text, pos: 0 };
    cur.skip_ws();
    if cur.eat("the zero clifford element (0)") {
        cur.skip_ws();
        return match cur.peek() {
            None => Ok(Multivector::zero()),
            Some(_) => cur.err("unexpected trailing input"),
        };
    }
    if cur.eat("scalar") {
        cur.skip_ws();
        if !cur.eat("(") {
            return cur.err("expected '('");
        }
        cur.skip_ws();
        let c = parse_signed(&mut cur)?;
        cur.skip_ws();
        if !cur.eat(")") {
            return cur.err("expected ')'");
        }
        cur.skip_ws();
        return match cur.peek() {
            None => Ok(Multivector::from_scalar(c)),
            Some(_) => cur.err("unexpected trailing input"),
        };
    }

    let mut acc = TermAccumulator::default();
    let mut first = true;
    loop {
        cur.skip_ws();
        let sign = match cur.peek() {
            None if first => return cur.err("empty input"),
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                1.0
            }
            Some(b'-') => {
                cur.pos += 1;
                -1.0
            }
            Some(_) if first => 1.0,
            Some(_) => return cur.err("expected '+' or '-'"),
        };
        cur.skip_ws();
        let (blade, c) = parse_term(&mut cur, opts)?;
        acc.push(blade, sign * c);
        first = false;
    }
    Ok(acc.finish())
}

/// Writes the `.mv` form: one `<coefficient> ; <i1> <i2> ...` line per term.
pub fn write_mv<W: Write>(a: &Multivector, mut w: W) -> io::Result<()> {
    for (blade, c) in a.terms() {
        write!(w, "{} ;", format_coefficient(c))?;
        for i in blade.indices() {
            write!(w, " {i}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn to_mv_string(a: &Multivector) -> String {
    let mut buf = Vec::new();
    write_mv(a, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

/// Reads the `.mv` form. Blank lines and lines starting with `#` are skipped;
/// repeated blades are summed.
pub fn read_mv<R: BufRead>(r: R) -> Result<Multivector, TextError> {
    let mut acc = TermAccumulator::default();
    for (n, line) in r.lines().enumerate() {
        let line = line?;
        let lineno = n + 1;
        let bad = |message: String| TextError::Line {
            line: lineno,
            message,
        };
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (coeff, indices) = t
            .split_once(';')
            .ok_or_else(|| bad("missing ';' between coefficient and indices".into()))?;
        let coeff: f64 = coeff
            .trim()
            .parse()
            .map_err(|_| bad(format!("malformed coefficient {:?}", coeff.trim())))?;
        let indices = indices
            .split_whitespace()
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|_| bad(format!("malformed index {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let (sign, blade) = Blade::from_unordered(indices).map_err(|e| bad(e.to_string()))?;
        acc.push(blade, sign.as_f64() * coeff);
    }
    Ok(acc.finish())
}

pub fn from_mv_str(s: &str) -> Result<Multivector, TextError> {
    read_mv(s.as_bytes())
}

pub fn save(a: &Multivector, path: impl AsRef<Path>) -> Result<(), TextError> {
    let mut f = io::BufWriter::new(fs::File::create(path)?);
    write_mv(a, &mut f)?;
    f.flush()?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<Multivector, TextError> {
    read_mv(BufReader::new(fs::File::open(path)?))
}
