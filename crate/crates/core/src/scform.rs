//! Sum-of-conjunctions expressions and the plain-text table formats.
//!
//! Expressions follow
//!
//! ```text
//! expr   := term { ('+' | '⊕') term } ;
//! term   := coeff [ mult ] [ factor { factor } ] | factor { factor } ;
//! mult   := '*' | '.' | '·' ;
//! factor := 'x' nat '^' nat ;
//! ```
//!
//! where `x_i^a` is 1 when `x_i = a` and 0 otherwise, juxtaposition is
//! product and `+` is addition mod k. A table file is a header line `k n`
//! followed by the `k^n` values in index order; `#` starts a comment.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;

use crate::ktable::{check_base, stride, table_len, KTable};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Unexpected input; the payload says what was expected.
    Syntax(String),
    VariableOutOfRange { index: String, n: usize },
    ConstantOutOfRange { value: String, k: usize },
    ExponentOutOfRange { value: String, k: usize },
    DuplicateVariable(usize),
    /// Table file with the wrong number of values.
    ValueCount { expected: usize, got: usize },
    MalformedHeader(String),
    /// `(k, n)` itself is unusable.
    Shape(Error),
}

/// A diagnostic with a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax(expected) => write!(f, "syntax error: expected {expected}"),
            ParseErrorKind::VariableOutOfRange { index, n } => {
                write!(f, "variable x{index} is outside x1..x{n}")
            }
            ParseErrorKind::ConstantOutOfRange { value, k } => {
                write!(f, "constant {value} is not below k = {k}")
            }
            ParseErrorKind::ExponentOutOfRange { value, k } => {
                write!(f, "exponent {value} is not below k = {k}")
            }
            ParseErrorKind::DuplicateVariable(i) => write!(f, "variable x{i} appears twice in one term"),
            ParseErrorKind::ValueCount { expected, got } => write!(f, "expected {expected} values, got {got}"),
            ParseErrorKind::MalformedHeader(why) => write!(f, "malformed header: {why}"),
            ParseErrorKind::Shape(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Nat(String),
    X,
    Caret,
    Plus,
    Mult,
    Other(char),
    End,
}

struct Lexer<'a> {
    chars: core::iter::Peekable<core::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    /// Next token with the position of its first character.
    fn next(&mut self) -> (Tok, usize, usize) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.bump();
        }
        let (line, column) = (self.line, self.column);
        let Some(c) = self.bump() else {
            return (Tok::End, line, column);
        };
        let tok = match c {
            '0'..='9' => {
                let mut s = String::from(c);
                while let Some(&d) = self.chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    self.bump();
                }
                Tok::Nat(s)
            }
            'x' | 'X' => Tok::X,
            '^' => Tok::Caret,
            '+' | '⊕' => Tok::Plus,
            '*' | '.' | '·' => Tok::Mult,
            other => Tok::Other(other),
        };
        (tok, line, column)
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    line: usize,
    column: usize,
    k: usize,
    n: usize,
}

struct Term {
    coeff: u8,
    factors: Vec<(usize, u8)>,
}

/// Parses a decimal token, `None` when it does not fit.
fn nat_value(s: &str) -> Option<usize> {
    s.parse().ok()
}

impl<'a> Parser<'a> {
    fn advance(&mut self) {
        let (tok, line, column) = self.lexer.next();
        self.tok = tok;
        self.line = line;
        self.column = column;
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
        }
    }

    fn syntax(&self, expected: &str) -> ParseError {
        self.error(ParseErrorKind::Syntax(expected.to_string()))
    }

    fn residue(&self, s: &str, exponent: bool) -> Result<u8, ParseError> {
        match nat_value(s) {
            Some(v) if v < self.k => Ok(v as u8),
            _ => Err(self.error(if exponent {
                ParseErrorKind::ExponentOutOfRange {
                    value: s.to_string(),
                    k: self.k,
                }
            } else {
                ParseErrorKind::ConstantOutOfRange {
                    value: s.to_string(),
                    k: self.k,
                }
            })),
        }
    }

    fn factor(&mut self, factors: &mut Vec<(usize, u8)>) -> Result<(), ParseError> {
        // current token is X
        let (line, column) = (self.line, self.column);
        self.advance();
        let Tok::Nat(index) = self.tok.clone() else {
            return Err(self.syntax("variable index after 'x'"));
        };
        let var = match nat_value(&index) {
            Some(i) if (1..=self.n).contains(&i) => i,
            _ => {
                return Err(self.error(ParseErrorKind::VariableOutOfRange { index, n: self.n }));
            }
        };
        self.advance();
        if self.tok != Tok::Caret {
            return Err(self.syntax("'^' after variable"));
        }
        self.advance();
        let Tok::Nat(alpha) = self.tok.clone() else {
            return Err(self.syntax("exponent after '^'"));
        };
        let alpha = self.residue(&alpha, true)?;
        if factors.iter().any(|&(v, _)| v == var) {
            return Err(ParseError {
                line,
                column,
                kind: ParseErrorKind::DuplicateVariable(var),
            });
        }
        factors.push((var, alpha));
        self.advance();
        Ok(())
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut coeff = 1;
        let mut factors = Vec::new();
        match self.tok.clone() {
            Tok::Nat(s) => {
                coeff = self.residue(&s, false)?;
                self.advance();
                if self.tok == Tok::Mult {
                    self.advance();
                    if self.tok != Tok::X {
                        return Err(self.syntax("factor after '*'"));
                    }
                }
            }
            Tok::X => {}
            _ => return Err(self.syntax("coefficient or factor")),
        }
        while self.tok == Tok::X {
            self.factor(&mut factors)?;
        }
        Ok(Term { coeff, factors })
    }

    fn expr(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.tok {
                Tok::Plus => {
                    self.advance();
                    terms.push(self.term()?);
                }
                Tok::End => return Ok(terms),
                _ => return Err(self.syntax("'+' or end of input")),
            }
        }
    }
}

/// Evaluates an expression to the `n`-ary table it denotes over `Z_k`.
/// Variables the expression never mentions are fictive.
pub fn parse_expr(text: &str, k: usize, n: usize) -> Result<KTable, ParseError> {
    let shape_err = |e| ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::Shape(e),
    };
    check_base(k).map_err(shape_err)?;
    let len = table_len(k, n).ok_or(Error::TableTooLarge { k, n }).map_err(shape_err)?;
    let mut lexer = Lexer::new(text);
    let (tok, line, column) = lexer.next();
    let mut parser = Parser {
        lexer,
        tok,
        line,
        column,
        k,
        n,
    };
    let terms = parser.expr()?;

    let mut values = vec![0u8; len];
    let mut free = Vec::with_capacity(n);
    for term in terms {
        if term.coeff == 0 {
            continue;
        }
        let base: usize = term.factors.iter().map(|&(v, a)| a as usize * stride(k, n, v - 1)).sum();
        free.clear();
        free.extend((0..n).filter(|p| term.factors.iter().all(|&(v, _)| v - 1 != *p)));
        let count = free.iter().fold(1usize, |acc, _| acc * k);
        for mut c in 0..count {
            let mut m = base;
            for &p in free.iter().rev() {
                m += (c % k) * stride(k, n, p);
                c /= k;
            }
            values[m] = ((values[m] as usize + term.coeff as usize) % k) as u8;
        }
    }
    Ok(KTable::new(k, n, values).expect("values reduced mod k"))
}

/// Canonical SC expression: one full conjunction per nonzero entry, in index
/// order, coefficient 1 left implicit; `"0"` for the zero table.
pub fn print_sc(f: &KTable) -> String {
    let (k, n) = (f.k(), f.n());
    let mut out = String::new();
    let mut point = vec![0u8; n];
    for (m, &c) in f.values().iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        crate::ktable::decode_into(k, m, &mut point);
        if n == 0 {
            let _ = write!(out, "{c}");
            continue;
        }
        if c != 1 {
            let _ = write!(out, "{c}*");
        }
        for (i, a) in point.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "x{}^{a}", i + 1);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical table file: `k n` then all values on one line.
pub fn write_table(f: &KTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", f.k(), f.n());
    push_values(&mut out, f.values());
    out.push('\n');
    out
}

/// One-line stream form `k n : v v ...`.
pub fn write_compact(f: &KTable) -> String {
    let mut out = String::new();
    let _ = write!(out, "{} {} : ", f.k(), f.n());
    push_values(&mut out, f.values());
    out
}

fn push_values(out: &mut String, values: &[u8]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
}

/// Whitespace-separated words with positions, comments removed.
fn words(text: &str) -> impl Iterator<Item = (&str, usize, usize)> {
    text.lines().enumerate().flat_map(|(l, line)| {
        let line = line.split('#').next().unwrap_or("");
        let mut col = 0;
        line.split_inclusive(char::is_whitespace).filter_map(move |chunk| {
            let start = col;
            col += chunk.chars().count();
            let word = chunk.trim_end();
            (!word.is_empty()).then_some((word, l + 1, start + 1))
        })
    })
}

fn header_error(line: usize, column: usize, why: &str) -> ParseError {
    ParseError {
        line,
        column,
        kind: ParseErrorKind::MalformedHeader(why.to_string()),
    }
}

fn read_values<'a>(
    k: usize,
    n: usize,
    mut rest: impl Iterator<Item = (&'a str, usize, usize)>,
    end: (usize, usize),
) -> Result<KTable, ParseError> {
    let len = table_len(k, n).ok_or(ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::Shape(Error::TableTooLarge { k, n }),
    })?;
    let mut values = Vec::with_capacity(len);
    let mut last = end;
    for (word, line, column) in rest.by_ref() {
        last = (line, column);
        let value = match word.parse::<usize>() {
            Ok(v) if v < k => v as u8,
            Ok(_) => {
                return Err(ParseError {
                    line,
                    column,
                    kind: ParseErrorKind::ConstantOutOfRange {
                        value: word.to_string(),
                        k,
                    },
                })
            }
            Err(_) => {
                return Err(ParseError {
                    line,
                    column,
                    kind: ParseErrorKind::Syntax(alloc::format!("a value, found {word:?}")),
                })
            }
        };
        values.push(value);
    }
    if values.len() != len {
        return Err(ParseError {
            line: last.0,
            column: last.1,
            kind: ParseErrorKind::ValueCount {
                expected: len,
                got: values.len(),
            },
        });
    }
    Ok(KTable::new(k, n, values).expect("validated values"))
}

fn header_number(word: Option<(&str, usize, usize)>, what: &str) -> Result<usize, ParseError> {
    let (w, line, column) = word.ok_or_else(|| header_error(1, 1, &alloc::format!("missing {what}")))?;
    w.parse()
        .map_err(|_| header_error(line, column, &alloc::format!("{what} must be a natural number, found {w:?}")))
}

/// Parses the full table file format.
pub fn read_table(text: &str) -> Result<KTable, ParseError> {
    let mut lines = text.lines().enumerate().filter_map(|(l, line)| {
        let line = line.split('#').next().unwrap_or("");
        (!line.trim().is_empty()).then_some(l)
    });
    let Some(header_line) = lines.next() else {
        return Err(header_error(1, 1, "empty input"));
    };
    let mut all = words(text);
    let mut header = Vec::new();
    let mut body_start = None;
    for w in all.by_ref() {
        if w.1 - 1 == header_line {
            header.push(w);
        } else {
            body_start = Some(w);
            break;
        }
    }
    if header.len() != 2 {
        let (line, column) = header.first().map_or((header_line + 1, 1), |w| (w.1, w.2));
        return Err(header_error(line, column, "expected exactly `k n`"));
    }
    let mut h = header.into_iter();
    let k = header_number(h.next(), "k")?;
    let n = header_number(h.next(), "n")?;
    check_base(k).map_err(|e| ParseError {
        line: header_line + 1,
        column: 1,
        kind: ParseErrorKind::Shape(e),
    })?;
    read_values(k, n, body_start.into_iter().chain(all), (header_line + 1, 1))
}

/// Parses one line of the compact `k n : v ...` form.
pub fn read_compact(line: &str) -> Result<KTable, ParseError> {
    let (head, body) = line
        .split_once(':')
        .ok_or_else(|| header_error(1, 1, "missing ':' separator"))?;
    let mut head_words = words(head);
    let k = header_number(head_words.next(), "k")?;
    let n = header_number(head_words.next(), "n")?;
    if let Some((_, line, column)) = head_words.next() {
        return Err(header_error(line, column, "expected exactly `k n` before ':'"));
    }
    check_base(k).map_err(|e| ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::Shape(e),
    })?;
    let offset = head.chars().count() + 1;
    let shifted = words(body).map(|(w, l, c)| (w, l, c + offset));
    read_values(k, n, shifted, (1, offset))
}
